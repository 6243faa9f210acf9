#pragma once

// Formulas of elementary and light affine logic with second order
// quantification and least fixpoints.

#include <cctype>
#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "lamping/error.hpp"

namespace lamping {

class Formula {
 public:
  enum class Kind { Atom, Lolli, Bang, Para, Forall, Mu };

  /// The atom with the empty name; placeholder for default construction.
  Formula() : Formula(Kind::Atom, {}, {}) {}

  static Formula atom(std::string name) { return Formula(Kind::Atom, std::move(name), {}); }
  static Formula lolli(Formula a, Formula b) { return Formula(Kind::Lolli, {}, {std::move(a), std::move(b)}); }
  static Formula bang(Formula a) { return Formula(Kind::Bang, {}, {std::move(a)}); }
  static Formula para(Formula a) { return Formula(Kind::Para, {}, {std::move(a)}); }
  static Formula forall(std::string var, Formula body) { return Formula(Kind::Forall, std::move(var), {std::move(body)}); }
  static Formula mu(std::string var, Formula body) { return Formula(Kind::Mu, std::move(var), {std::move(body)}); }

  Kind kind() const { return node_->kind; }
  /// Atom name, or bound variable of a quantifier/fixpoint.
  const std::string& name() const { return node_->name; }
  const Formula& left() const { return node_->kids.at(0); }
  const Formula& right() const { return node_->kids.at(1); }
  /// Operand of !, $, forall, mu.
  const Formula& inner() const { return node_->kids.at(0); }

  bool is(Kind k) const { return kind() == k; }

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<Formula> kids;
  };

  Formula(Kind k, std::string name, std::vector<Formula> kids)
      : node_(std::make_shared<const Node>(Node{k, std::move(name), std::move(kids)})) {}

  std::shared_ptr<const Node> node_;
};

inline std::set<std::string> free_type_vars(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return {f.name()};
    case Formula::Kind::Lolli: {
      auto a = free_type_vars(f.left());
      auto b = free_type_vars(f.right());
      a.insert(b.begin(), b.end());
      return a;
    }
    case Formula::Kind::Bang:
    case Formula::Kind::Para:
      return free_type_vars(f.inner());
    case Formula::Kind::Forall:
    case Formula::Kind::Mu: {
      auto s = free_type_vars(f.inner());
      s.erase(f.name());
      return s;
    }
  }
  return {};
}

namespace detail {
inline void formula_names(const Formula& f, std::set<std::string>& out) {
  out.insert(f.name());
  if (f.is(Formula::Kind::Lolli)) {
    formula_names(f.left(), out);
    formula_names(f.right(), out);
  } else if (!f.is(Formula::Kind::Atom)) {
    formula_names(f.inner(), out);
  }
}
}  // namespace detail

/// Capture-avoiding A{B/alpha}.
inline Formula subst_formula(const Formula& a, const std::string& alpha, const Formula& b) {
  switch (a.kind()) {
    case Formula::Kind::Atom:
      return a.name() == alpha ? b : a;
    case Formula::Kind::Lolli:
      return Formula::lolli(subst_formula(a.left(), alpha, b), subst_formula(a.right(), alpha, b));
    case Formula::Kind::Bang:
      return Formula::bang(subst_formula(a.inner(), alpha, b));
    case Formula::Kind::Para:
      return Formula::para(subst_formula(a.inner(), alpha, b));
    case Formula::Kind::Forall:
    case Formula::Kind::Mu: {
      if (a.name() == alpha) return a;
      auto fv_body = free_type_vars(a.inner());
      if (!fv_body.count(alpha)) return a;
      auto fv_b = free_type_vars(b);
      std::string var = a.name();
      Formula body = a.inner();
      if (fv_b.count(var)) {
        std::set<std::string> taken = fv_b;
        detail::formula_names(a, taken);
        std::string fresh = var;
        for (std::size_t i = 1; taken.count(fresh); ++i) fresh = var + std::to_string(i);
        body = subst_formula(body, var, Formula::atom(fresh));
        var = fresh;
      }
      body = subst_formula(body, alpha, b);
      return a.is(Formula::Kind::Forall) ? Formula::forall(var, body) : Formula::mu(var, body);
    }
  }
  return a;
}

/// mu alpha.A unfolded once: A{mu alpha.A / alpha}.
inline Formula unfold_mu(const Formula& m) {
  if (!m.is(Formula::Kind::Mu)) throw Error(ErrorKind::Input, "unfold of a non-fixpoint formula");
  return subst_formula(m.inner(), m.name(), m);
}

inline bool formula_eq(const Formula& a, const Formula& b) {
  std::vector<std::pair<std::string, std::string>> env;
  struct Go {
    std::vector<std::pair<std::string, std::string>>& env;
    bool operator()(const Formula& x, const Formula& y) {
      if (x.kind() != y.kind()) return false;
      switch (x.kind()) {
        case Formula::Kind::Atom:
          for (auto it = env.rbegin(); it != env.rend(); ++it) {
            bool hx = it->first == x.name(), hy = it->second == y.name();
            if (hx || hy) return hx && hy;
          }
          return x.name() == y.name();
        case Formula::Kind::Lolli:
          return (*this)(x.left(), y.left()) && (*this)(x.right(), y.right());
        case Formula::Kind::Bang:
        case Formula::Kind::Para:
          return (*this)(x.inner(), y.inner());
        case Formula::Kind::Forall:
        case Formula::Kind::Mu: {
          env.emplace_back(x.name(), y.name());
          bool ok = (*this)(x.inner(), y.inner());
          env.pop_back();
          return ok;
        }
      }
      return false;
    }
  };
  return Go{env}(a, b);
}

inline bool contains_para(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return false;
    case Formula::Kind::Lolli:
      return contains_para(f.left()) || contains_para(f.right());
    case Formula::Kind::Para:
      return true;
    default:
      return contains_para(f.inner());
  }
}

/// Replaces every $ by !.
inline Formula erase_para(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return f;
    case Formula::Kind::Lolli:
      return Formula::lolli(erase_para(f.left()), erase_para(f.right()));
    case Formula::Kind::Bang:
    case Formula::Kind::Para:
      return Formula::bang(erase_para(f.inner()));
    case Formula::Kind::Forall:
      return Formula::forall(f.name(), erase_para(f.inner()));
    case Formula::Kind::Mu:
      return Formula::mu(f.name(), erase_para(f.inner()));
  }
  return f;
}

// ---------------------------------------------------------------------------
// Printing and parsing

namespace detail {
inline void print_formula(const Formula& f, std::string& out, int prec) {
  // prec 0: anything; 1: left of -o; 2: operand of a unary modality
  switch (f.kind()) {
    case Formula::Kind::Atom:
      out += f.name();
      return;
    case Formula::Kind::Bang:
    case Formula::Kind::Para:
      out += f.is(Formula::Kind::Bang) ? '!' : '$';
      print_formula(f.inner(), out, 2);
      return;
    case Formula::Kind::Lolli:
      if (prec > 0) out += '(';
      print_formula(f.left(), out, 1);
      out += " -o ";
      print_formula(f.right(), out, 0);
      if (prec > 0) out += ')';
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Mu:
      if (prec > 0) out += '(';
      out += f.is(Formula::Kind::Forall) ? "forall " : "mu ";
      out += f.name();
      out += ". ";
      print_formula(f.inner(), out, 0);
      if (prec > 0) out += ')';
      return;
  }
}

class FormulaParser {
 public:
  FormulaParser(std::string_view text, std::size_t offset) : s_(text), base_(offset) {}

  Formula parse_all() {
    Formula f = parse();
    skip_ws();
    if (i_ != s_.size()) fail("trailing input in formula");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(base_ + i_, msg); }

  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool peek_word(std::string_view w) {
    skip_ws();
    if (s_.substr(i_, w.size()) != w) return false;
    std::size_t j = i_ + w.size();
    return j >= s_.size() || !(std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_');
  }

  std::string ident() {
    skip_ws();
    if (i_ >= s_.size() || !std::isalpha(static_cast<unsigned char>(s_[i_]))) fail("expected identifier");
    std::size_t j = i_;
    while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
    std::string name(s_.substr(i_, j - i_));
    i_ = j;
    return name;
  }

  Formula parse() {
    for (auto [word, is_forall] : {std::pair{std::string_view("forall"), true}, std::pair{std::string_view("mu"), false}}) {
      if (peek_word(word)) {
        i_ += word.size();
        std::string var = ident();
        skip_ws();
        if (i_ >= s_.size() || s_[i_] != '.') fail("expected '.' after bound type variable");
        ++i_;
        Formula body = parse();
        return is_forall ? Formula::forall(var, body) : Formula::mu(var, body);
      }
    }
    Formula lhs = parse_unary();
    skip_ws();
    if (s_.substr(i_, 2) == "-o") {
      i_ += 2;
      return Formula::lolli(lhs, parse());
    }
    return lhs;
  }

  Formula parse_unary() {
    skip_ws();
    if (i_ < s_.size() && (s_[i_] == '!' || s_[i_] == '$')) {
      char c = s_[i_++];
      Formula a = parse_unary();
      return c == '!' ? Formula::bang(a) : Formula::para(a);
    }
    if (i_ < s_.size() && s_[i_] == '(') {
      ++i_;
      Formula f = parse();
      skip_ws();
      if (i_ >= s_.size() || s_[i_] != ')') fail("expected ')' in formula");
      ++i_;
      return f;
    }
    if (peek_word("forall") || peek_word("mu")) return parse();
    return Formula::atom(ident());
  }

  std::string_view s_;
  std::size_t base_;
  std::size_t i_ = 0;
};
}  // namespace detail

inline std::string to_string(const Formula& f) {
  std::string out;
  detail::print_formula(f, out, 0);
  return out;
}

/// A ::= 'forall' a '.' A | 'mu' a '.' A | U ('-o' A)? ; U ::= '!' U | '$' U | ident | '(' A ')'
inline Formula parse_formula(std::string_view text, std::size_t offset = 0) {
  return detail::FormulaParser(text, offset).parse_all();
}

}  // namespace lamping
