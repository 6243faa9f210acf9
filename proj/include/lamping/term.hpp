#pragma once

// Pure untyped lambda-terms with named binders: parsing, printing,
// alpha-equivalence, capture-avoiding substitution and a normal-order
// reference normalizer.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "lamping/error.hpp"

namespace lamping {

class Term;

namespace term_node {
struct Var;
struct Abs;
struct App;
}  // namespace term_node

class Term {
 public:
  using Var = term_node::Var;
  using Abs = term_node::Abs;
  using App = term_node::App;

  /// The variable with the empty name; placeholder for default construction.
  Term();

  static Term var(std::string name);
  static Term abs(std::string binder, Term body);
  static Term app(Term fun, Term arg);

  bool is_var() const;
  bool is_abs() const;
  bool is_app() const;

  const Var& as_var() const;
  const Abs& as_abs() const;
  const App& as_app() const;

  bool same_node(const Term& other) const { return node_ == other.node_; }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

namespace term_node {
struct Var {
  std::string name;
};
struct Abs {
  std::string binder;
  Term body;
};
struct App {
  Term fun;
  Term arg;
};
}  // namespace term_node

struct Term::Node {
  std::variant<Var, Abs, App> v;
};

inline Term::Term() : Term(var("")) {}
inline Term Term::var(std::string name) { return Term(std::make_shared<const Node>(Node{Var{std::move(name)}})); }
inline Term Term::abs(std::string binder, Term body) {
  return Term(std::make_shared<const Node>(Node{Abs{std::move(binder), std::move(body)}}));
}
inline Term Term::app(Term fun, Term arg) {
  return Term(std::make_shared<const Node>(Node{App{std::move(fun), std::move(arg)}}));
}
inline bool Term::is_var() const { return std::holds_alternative<Var>(node_->v); }
inline bool Term::is_abs() const { return std::holds_alternative<Abs>(node_->v); }
inline bool Term::is_app() const { return std::holds_alternative<App>(node_->v); }
inline const Term::Var& Term::as_var() const { return std::get<Var>(node_->v); }
inline const Term::Abs& Term::as_abs() const { return std::get<Abs>(node_->v); }
inline const Term::App& Term::as_app() const { return std::get<App>(node_->v); }

inline std::size_t term_size(const Term& t) {
  if (t.is_var()) return 1;
  if (t.is_abs()) return 1 + term_size(t.as_abs().body);
  return 1 + term_size(t.as_app().fun) + term_size(t.as_app().arg);
}

inline std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  std::function<void(const Term&)> go = [&](const Term& u) {
    if (u.is_var()) {
      const auto& n = u.as_var().name;
      for (const auto& b : bound)
        if (b == n) return;
      out.insert(n);
    } else if (u.is_abs()) {
      bound.push_back(u.as_abs().binder);
      go(u.as_abs().body);
      bound.pop_back();
    } else {
      go(u.as_app().fun);
      go(u.as_app().arg);
    }
  };
  go(t);
  return out;
}

inline void all_names(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) {
    out.insert(t.as_var().name);
  } else if (t.is_abs()) {
    out.insert(t.as_abs().binder);
    all_names(t.as_abs().body, out);
  } else {
    all_names(t.as_app().fun, out);
    all_names(t.as_app().arg, out);
  }
}

/// Returns `base` or `base_N` for the smallest N that avoids `taken`.
inline std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
  if (!taken.count(base)) return base;
  std::string stem = base;
  if (auto us = stem.rfind('_'); us != std::string::npos && us + 1 < stem.size()) {
    bool digits = true;
    for (std::size_t i = us + 1; i < stem.size(); ++i) digits = digits && std::isdigit(static_cast<unsigned char>(stem[i]));
    if (digits) stem = stem.substr(0, us);
  }
  for (std::size_t i = 1;; ++i) {
    std::string cand = stem + "_" + std::to_string(i);
    if (!taken.count(cand)) return cand;
  }
}

/// Simultaneous capture-avoiding substitution t{s_i/x_i}.
inline Term substitute(const Term& t, const std::vector<std::pair<std::string, Term>>& subst) {
  if (subst.empty()) return t;
  if (t.is_var()) {
    for (const auto& [x, s] : subst)
      if (x == t.as_var().name) return s;
    return t;
  }
  if (t.is_app()) {
    return Term::app(substitute(t.as_app().fun, subst), substitute(t.as_app().arg, subst));
  }
  const auto& abs = t.as_abs();
  std::vector<std::pair<std::string, Term>> inner;
  std::set<std::string> fv_body = free_vars(abs.body);
  for (const auto& entry : subst)
    if (entry.first != abs.binder && fv_body.count(entry.first)) inner.push_back(entry);
  if (inner.empty()) return t;
  std::set<std::string> danger;
  for (const auto& [x, s] : inner) {
    auto fv = free_vars(s);
    danger.insert(fv.begin(), fv.end());
  }
  if (!danger.count(abs.binder)) return Term::abs(abs.binder, substitute(abs.body, inner));
  std::set<std::string> taken = danger;
  taken.insert(fv_body.begin(), fv_body.end());
  for (const auto& [x, s] : inner) taken.insert(x);
  std::string fresh = fresh_name(abs.binder, taken);
  inner.emplace_back(abs.binder, Term::var(fresh));
  return Term::abs(fresh, substitute(abs.body, inner));
}

inline Term substitute(const Term& t, const std::string& x, const Term& s) {
  return substitute(t, {{x, s}});
}

// ---------------------------------------------------------------------------
// Printing and parsing

inline void print_term(const Term& t, std::string& out) {
  auto atom = [&](const Term& u) {
    if (u.is_var()) {
      out += u.as_var().name;
    } else {
      out += '(';
      print_term(u, out);
      out += ')';
    }
  };
  if (t.is_var()) {
    out += t.as_var().name;
  } else if (t.is_abs()) {
    out += '\\';
    out += t.as_abs().binder;
    out += '.';
    print_term(t.as_abs().body, out);
  } else {
    const auto& app = t.as_app();
    if (app.fun.is_abs())
      atom(app.fun);
    else
      print_term(app.fun, out);
    out += ' ';
    atom(app.arg);
  }
}

inline std::string to_string(const Term& t) {
  std::string out;
  print_term(t, out);
  return out;
}

namespace detail {

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
inline bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }

class TermParser {
 public:
  explicit TermParser(std::string_view text, std::size_t offset = 0) : s_(text), base_(offset) {}

  Term parse_all() {
    Term t = parse_term();
    skip_ws();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(base_ + i_, msg); }

  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  std::string ident() {
    skip_ws();
    if (i_ >= s_.size() || !ident_start(s_[i_])) fail("expected identifier");
    std::size_t j = i_;
    while (j < s_.size() && ident_char(s_[j])) ++j;
    std::string name(s_.substr(i_, j - i_));
    i_ = j;
    return name;
  }

  bool at_atom_start() {
    skip_ws();
    return i_ < s_.size() && (ident_start(s_[i_]) || s_[i_] == '(');
  }

  Term parse_term() {
    skip_ws();
    if (i_ < s_.size() && s_[i_] == '\\') {
      ++i_;
      std::string x = ident();
      skip_ws();
      if (i_ >= s_.size() || s_[i_] != '.') fail("expected '.' after binder");
      ++i_;
      return Term::abs(std::move(x), parse_term());
    }
    Term t = parse_atom();
    while (true) {
      skip_ws();
      if (i_ < s_.size() && s_[i_] == '\\') {
        // abstraction as the last argument extends maximally right
        t = Term::app(std::move(t), parse_term());
        return t;
      }
      if (!at_atom_start()) return t;
      t = Term::app(std::move(t), parse_atom());
    }
  }

  Term parse_atom() {
    skip_ws();
    if (i_ < s_.size() && s_[i_] == '(') {
      ++i_;
      Term t = parse_term();
      skip_ws();
      if (i_ >= s_.size() || s_[i_] != ')') fail("expected ')'");
      ++i_;
      return t;
    }
    return Term::var(ident());
  }

  std::string_view s_;
  std::size_t base_;
  std::size_t i_ = 0;
};

}  // namespace detail

/// Grammar: term ::= '\' ident '.' term | appterm ; appterm ::= appterm atom | atom ;
/// atom ::= ident | '(' term ')'. A trailing abstraction argument is accepted
/// without parentheses ("f \x.x").
inline Term parse_term(std::string_view text) { return detail::TermParser(text).parse_all(); }

// ---------------------------------------------------------------------------
// Alpha-equivalence

inline bool alpha_eq(const Term& a, const Term& b) {
  std::vector<std::pair<std::string, std::string>> env;  // innermost last
  std::function<bool(const Term&, const Term&)> go = [&](const Term& x, const Term& y) -> bool {
    if (x.is_var() && y.is_var()) {
      const auto& nx = x.as_var().name;
      const auto& ny = y.as_var().name;
      for (auto it = env.rbegin(); it != env.rend(); ++it) {
        bool hx = it->first == nx, hy = it->second == ny;
        if (hx || hy) return hx && hy;
      }
      return nx == ny;
    }
    if (x.is_abs() && y.is_abs()) {
      env.emplace_back(x.as_abs().binder, y.as_abs().binder);
      bool ok = go(x.as_abs().body, y.as_abs().body);
      env.pop_back();
      return ok;
    }
    if (x.is_app() && y.is_app())
      return go(x.as_app().fun, y.as_app().fun) && go(x.as_app().arg, y.as_app().arg);
    return false;
  };
  return go(a, b);
}

// ---------------------------------------------------------------------------
// Reference normalizer

inline constexpr std::uint64_t kDefaultBetaFuel = 1'000'000;

inline bool is_beta_normal(const Term& t) {
  if (t.is_var()) return true;
  if (t.is_abs()) return is_beta_normal(t.as_abs().body);
  const auto& app = t.as_app();
  if (app.fun.is_abs()) return false;
  return is_beta_normal(app.fun) && is_beta_normal(app.arg);
}

namespace detail {

class NormalOrder {
 public:
  explicit NormalOrder(std::uint64_t fuel) : fuel_(fuel) {}

  Term normal(const Term& t) {
    Term w = whnf(t);
    if (w.is_abs()) return Term::abs(w.as_abs().binder, normal(w.as_abs().body));
    if (w.is_var()) return w;
    std::vector<Term> args;
    Term head = w;
    while (head.is_app()) {
      args.push_back(head.as_app().arg);
      head = head.as_app().fun;
    }
    Term out = head;
    for (auto it = args.rbegin(); it != args.rend(); ++it) out = Term::app(std::move(out), normal(*it));
    return out;
  }

  std::uint64_t steps() const { return steps_; }

 private:
  // Weak head normal form; the spine head is never an abstraction applied to an argument.
  Term whnf(Term t) {
    std::vector<Term> args;
    while (true) {
      if (t.is_app()) {
        args.push_back(t.as_app().arg);
        t = t.as_app().fun;
        continue;
      }
      if (t.is_abs() && !args.empty()) {
        if (steps_ >= fuel_) throw Error(ErrorKind::FuelExhausted, "beta normalization exceeded " + std::to_string(fuel_) + " steps");
        ++steps_;
        Term arg = std::move(args.back());
        args.pop_back();
        t = substitute(t.as_abs().body, t.as_abs().binder, arg);
        continue;
      }
      break;
    }
    for (auto it = args.rbegin(); it != args.rend(); ++it) t = Term::app(std::move(t), *it);
    return t;
  }

  std::uint64_t fuel_;
  std::uint64_t steps_ = 0;
};

}  // namespace detail

/// Beta-normal form by leftmost-outermost reduction; throws FuelExhausted
/// when more than `fuel` contractions would be needed.
inline Term beta_normalize(const Term& t, std::uint64_t fuel = kDefaultBetaFuel) {
  if (fuel == 0) throw Error(ErrorKind::Input, "fuel must be positive");
  return detail::NormalOrder(fuel).normal(t);
}

// ---------------------------------------------------------------------------
// Head decomposition  t = \x1...\xn. y t1 ... tm

struct HeadVar {
  bool bound = false;
  std::string name;       // free variable name (when !bound); binder name otherwise
  std::size_t index = 0;  // 1-based position of the binding abstraction when bound
};

struct HeadDecomposition {
  std::size_t abstractions = 0;
  std::vector<std::string> binders;
  HeadVar head;
  std::vector<Term> args;
};

inline HeadDecomposition head_decompose(const Term& t) {
  if (!is_beta_normal(t)) throw Error(ErrorKind::NotNormal, "term contains a beta-redex: " + to_string(t));
  HeadDecomposition d;
  Term cur = t;
  while (cur.is_abs()) {
    d.binders.push_back(cur.as_abs().binder);
    cur = cur.as_abs().body;
  }
  d.abstractions = d.binders.size();
  while (cur.is_app()) {
    d.args.push_back(cur.as_app().arg);
    cur = cur.as_app().fun;
  }
  std::reverse(d.args.begin(), d.args.end());
  const std::string& y = cur.as_var().name;
  d.head.name = y;
  for (std::size_t i = d.binders.size(); i-- > 0;) {
    if (d.binders[i] == y) {
      d.head.bound = true;
      d.head.index = i + 1;
      break;
    }
  }
  return d;
}

inline Term reassemble(const HeadDecomposition& d) {
  Term out = Term::var(d.head.bound ? d.binders.at(d.head.index - 1) : d.head.name);
  for (const auto& a : d.args) out = Term::app(std::move(out), a);
  for (std::size_t i = d.binders.size(); i-- > 0;) out = Term::abs(d.binders[i], std::move(out));
  return out;
}

}  // namespace lamping
