#pragma once

// Text format for derivations.
//
//   deriv     ::= '(' TAG attrs? judgement? deriv* ')'
//   attrs     ::= '{' (key value)* '}'        value ::= ident | '"' chars '"'
//   judgement ::= '[' (hyp (',' hyp)*)? '|-' term ':' formula ']'
//   hyp       ::= ident ':' formula
//
// '#' starts a comment running to the end of the line. Judgements are
// optional; when present they are checked against the derived conclusion
// and fix the order of the context.

#include <cctype>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "lamping/derivation.hpp"

namespace lamping {

namespace detail {

class DerivationParser {
 public:
  explicit DerivationParser(std::string_view text) : s_(text) {}

  Derivation parse_all() {
    Derivation d = parse();
    skip();
    if (i_ != s_.size()) fail("trailing input after derivation");
    return d;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(i_, msg); }

  void skip() {
    while (i_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        ++i_;
      } else if (s_[i_] == '#') {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    skip();
    if (i_ >= s_.size() || s_[i_] != c) fail(std::string("expected '") + c + "'");
    ++i_;
  }

  bool at(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }

  std::string word() {
    skip();
    std::size_t j = i_;
    while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
    if (j == i_) fail("expected identifier");
    std::string w(s_.substr(i_, j - i_));
    i_ = j;
    return w;
  }

  std::string value() {
    skip();
    if (at('"')) {
      ++i_;
      std::string out;
      while (i_ < s_.size() && s_[i_] != '"') {
        if (s_[i_] == '\\' && i_ + 1 < s_.size()) ++i_;
        out += s_[i_++];
      }
      if (i_ >= s_.size()) fail("unterminated string");
      ++i_;
      return out;
    }
    return word();
  }

  Derivation parse() {
    expect('(');
    std::size_t tag_pos = i_;
    std::string tag = word();
    auto rule = rule_from_string(tag);
    if (!rule) {
      i_ = tag_pos;
      fail("unknown rule tag '" + tag + "'");
    }
    Derivation d;
    d.rule = *rule;
    if (at('{')) {
      ++i_;
      while (!at('}')) {
        if (i_ >= s_.size()) fail("unterminated attribute block");
        std::string k = word();
        d.attrs[k] = value();
      }
      ++i_;
    }
    if (at('[')) d.stated = judgement();
    while (!at(')')) {
      if (i_ >= s_.size()) fail("unterminated derivation");
      d.premises.push_back(parse());
    }
    ++i_;
    return d;
  }

  Judgement judgement() {
    expect('[');
    std::size_t close = s_.find(']', i_);
    if (close == std::string_view::npos) fail("unterminated judgement");
    std::size_t turn = s_.find("|-", i_);
    if (turn == std::string_view::npos || turn > close) fail("judgement needs '|-'");
    Judgement j{{}, Term::var("_"), Formula::atom("_")};
    std::string_view ctx = s_.substr(i_, turn - i_);
    std::size_t start = 0;
    while (start < ctx.size()) {
      std::size_t comma = ctx.find(',', start);
      if (comma == std::string_view::npos) comma = ctx.size();
      std::string_view item = ctx.substr(start, comma - start);
      std::size_t colon = item.find(':');
      bool blank = item.find_first_not_of(" \t\r\n") == std::string_view::npos;
      if (!blank) {
        if (colon == std::string_view::npos) throw SyntaxError(i_ + start, "hypothesis needs ':'");
        std::string var(item.substr(0, colon));
        var.erase(0, var.find_first_not_of(" \t\r\n"));
        var.erase(var.find_last_not_of(" \t\r\n") + 1);
        j.ctx.push_back(Hyp{var, parse_formula(item.substr(colon + 1), i_ + start + colon + 1)});
      }
      start = comma + 1;
    }
    std::size_t body = turn + 2;
    std::size_t colon = s_.find(':', body);
    if (colon == std::string_view::npos || colon > close) fail("judgement needs ': formula'");
    j.subject = detail::TermParser(s_.substr(body, colon - body), body).parse_all();
    j.type = parse_formula(s_.substr(colon + 1, close - colon - 1), colon + 1);
    i_ = close + 1;
    return j;
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

inline bool plain_word(const std::string& v) {
  if (v.empty()) return false;
  for (char c : v)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

inline void print_derivation(const Derivation& d, std::string& out, int indent) {
  out.append(static_cast<std::size_t>(indent), ' ');
  out += '(';
  out += to_string(d.rule);
  if (!d.attrs.empty()) {
    out += " {";
    bool first = true;
    for (const auto& [k, v] : d.attrs) {
      if (!first) out += ' ';
      first = false;
      out += k + ' ';
      if (plain_word(v)) {
        out += v;
      } else {
        out += '"';
        for (char c : v) {
          if (c == '"' || c == '\\') out += '\\';
          out += c;
        }
        out += '"';
      }
    }
    out += '}';
  }
  if (d.stated) out += " [" + to_string(*d.stated) + "]";
  for (const auto& p : d.premises) {
    out += '\n';
    print_derivation(p, out, indent + 2);
  }
  out += ')';
}

}  // namespace detail

inline Derivation parse_derivation(std::string_view text) { return detail::DerivationParser(text).parse_all(); }

inline std::string to_string(const Derivation& d) {
  std::string out;
  detail::print_derivation(d, out, 0);
  out += '\n';
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Input, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Derivation load_derivation(const std::string& path) { return parse_derivation(read_file(path)); }

/// A leading comment line "# mode: eal" or "# mode: lal", if any.
inline std::optional<Mode> mode_hint(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.remove_prefix(1);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
    if (!line.empty() && line.front() != '#') break;
    if (line == "# mode: lal") return Mode::LAL;
    if (line == "# mode: eal") return Mode::EAL;
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return std::nullopt;
}

}  // namespace lamping
