#pragma once

// Sequent derivations of EAL / LAL type assignment and their checker.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lamping/error.hpp"
#include "lamping/formula.hpp"
#include "lamping/term.hpp"

namespace lamping {

enum class Rule { A, U, W, X, RLolli, LLolli, PBang, PBang1, PBang2, PPara, RForall, LForall, RMu, LMu };

enum class Mode { EAL, LAL };

inline const char* to_string(Rule r) {
  switch (r) {
    case Rule::A: return "A";
    case Rule::U: return "U";
    case Rule::W: return "W";
    case Rule::X: return "X";
    case Rule::RLolli: return "RLolli";
    case Rule::LLolli: return "LLolli";
    case Rule::PBang: return "PBang";
    case Rule::PBang1: return "PBang1";
    case Rule::PBang2: return "PBang2";
    case Rule::PPara: return "PPara";
    case Rule::RForall: return "RForall";
    case Rule::LForall: return "LForall";
    case Rule::RMu: return "RMu";
    case Rule::LMu: return "LMu";
  }
  return "?";
}

inline std::optional<Rule> rule_from_string(const std::string& s) {
  for (Rule r : {Rule::A, Rule::U, Rule::W, Rule::X, Rule::RLolli, Rule::LLolli, Rule::PBang, Rule::PBang1,
                 Rule::PBang2, Rule::PPara, Rule::RForall, Rule::LForall, Rule::RMu, Rule::LMu})
    if (s == to_string(r)) return r;
  return std::nullopt;
}

inline std::size_t rule_arity(Rule r) {
  switch (r) {
    case Rule::A: return 0;
    case Rule::U:
    case Rule::LLolli: return 2;
    default: return 1;
  }
}

struct Hyp {
  std::string var;
  Formula type;
};

struct Judgement {
  std::vector<Hyp> ctx;
  Term subject;
  Formula type;

  const Hyp* find(const std::string& x) const {
    for (const auto& h : ctx)
      if (h.var == x) return &h;
    return nullptr;
  }
};

inline std::string to_string(const Judgement& j) {
  std::string out;
  for (std::size_t i = 0; i < j.ctx.size(); ++i) {
    if (i) out += ", ";
    out += j.ctx[i].var + ":" + to_string(j.ctx[i].type);
  }
  if (!j.ctx.empty()) out += ' ';
  out += "|- " + to_string(j.subject) + " : " + to_string(j.type);
  return out;
}

/// Contexts are compared as multisets, formulas and subjects up to renaming.
inline bool judgement_eq(const Judgement& a, const Judgement& b) {
  if (a.ctx.size() != b.ctx.size()) return false;
  for (const auto& h : a.ctx) {
    const Hyp* o = b.find(h.var);
    if (!o || !formula_eq(h.type, o->type)) return false;
  }
  return alpha_eq(a.subject, b.subject) && formula_eq(a.type, b.type);
}

/// A node of a derivation tree. Rule data lives in `attrs`:
///   A{x type}  U{x}  W{x type}  X{x y z}  RLolli{x}  LLolli{y x}
///   PPara{bang "v1 v2 ..."}  RForall{var}  LForall{x type witness}
///   RMu{type}  LMu{x type}
/// `type` on LForall/RMu/LMu is the quantified/fixpoint formula being introduced.
struct Derivation {
  Rule rule = Rule::A;
  std::map<std::string, std::string> attrs;
  std::vector<Derivation> premises;
  std::optional<Judgement> stated;

  const std::string& attr(const std::string& key) const {
    auto it = attrs.find(key);
    if (it == attrs.end()) throw Error(ErrorKind::Input, std::string("rule ") + to_string(rule) + " needs attribute '" + key + "'");
    return it->second;
  }
  bool has(const std::string& key) const { return attrs.count(key) != 0; }
};

/// Derivation with every conclusion filled in, mirroring the input tree.
struct CheckedDerivation {
  const Derivation* source = nullptr;
  Rule rule = Rule::A;
  Judgement conclusion;
  std::vector<CheckedDerivation> premises;
};

namespace detail {

class Checker {
 public:
  explicit Checker(Mode mode) : mode_(mode) {}

  CheckedDerivation check(const Derivation& d, const std::string& path) {
    if (d.premises.size() != rule_arity(d.rule))
      fail(path, std::string(to_string(d.rule)) + " takes " + std::to_string(rule_arity(d.rule)) + " premise(s), got " +
                     std::to_string(d.premises.size()));
    CheckedDerivation out;
    out.source = &d;
    out.rule = d.rule;
    for (std::size_t i = 0; i < d.premises.size(); ++i)
      out.premises.push_back(check(d.premises[i], path + "." + std::to_string(i)));
    try {
      out.conclusion = conclude(d, out.premises, path);
    } catch (const SyntaxError& e) {
      fail(path, std::string("bad attribute: ") + e.what());
    } catch (const RuleViolation&) {
      throw;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Input) throw;
      fail(path, e.what());
    }
    if (d.stated) {
      check_para(*d.stated, path);
      if (!judgement_eq(*d.stated, out.conclusion))
        fail(path, "stated conclusion [" + to_string(*d.stated) + "] differs from derived [" + to_string(out.conclusion) + "]");
      // keep the context order as written
      Judgement j = out.conclusion;
      j.ctx.clear();
      for (const auto& h : d.stated->ctx) j.ctx.push_back(*out.conclusion.find(h.var));
      out.conclusion = j;
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& path, const std::string& why) const { throw RuleViolation(path, why); }

  Formula formula_attr(const Derivation& d, const std::string& key, const std::string& path) const {
    Formula f = parse_formula(d.attr(key));
    if (mode_ == Mode::EAL && contains_para(f)) fail(path, "'$' is not available in EAL mode");
    return f;
  }

  void check_para(const Judgement& j, const std::string& path) const {
    if (mode_ != Mode::EAL) return;
    bool bad = contains_para(j.type);
    for (const auto& h : j.ctx) bad = bad || contains_para(h.type);
    if (bad) fail(path, "'$' is not available in EAL mode");
  }

  static std::vector<Hyp> without(const std::vector<Hyp>& ctx, const std::string& x) {
    std::vector<Hyp> out;
    for (const auto& h : ctx)
      if (h.var != x) out.push_back(h);
    return out;
  }

  const Hyp& need(const Judgement& j, const std::string& x, const std::string& path) const {
    const Hyp* h = j.find(x);
    if (!h) fail(path, "variable " + x + " is not in the premise context");
    return *h;
  }

  void disjoint(const std::vector<Hyp>& a, const std::vector<Hyp>& b, const std::string& path) const {
    for (const auto& h : a)
      for (const auto& g : b)
        if (h.var == g.var) fail(path, "contexts share variable " + h.var);
  }

  Judgement conclude(const Derivation& d, const std::vector<CheckedDerivation>& prem, const std::string& path) {
    auto P = [&](std::size_t i) -> const Judgement& { return prem[i].conclusion; };
    switch (d.rule) {
      case Rule::A: {
        const std::string& x = d.attr("x");
        Formula a = formula_attr(d, "type", path);
        return Judgement{{Hyp{x, a}}, Term::var(x), a};
      }
      case Rule::U: {
        const std::string& x = d.attr("x");
        const Hyp& hx = need(P(1), x, path);
        if (!formula_eq(hx.type, P(0).type))
          fail(path, "cut formula mismatch: " + to_string(P(0).type) + " vs " + to_string(hx.type));
        auto delta = without(P(1).ctx, x);
        disjoint(P(0).ctx, delta, path);
        std::vector<Hyp> ctx = P(0).ctx;
        ctx.insert(ctx.end(), delta.begin(), delta.end());
        return Judgement{ctx, substitute(P(1).subject, x, P(0).subject), P(1).type};
      }
      case Rule::W: {
        const std::string& x = d.attr("x");
        if (P(0).find(x)) fail(path, "weakened variable " + x + " already in context");
        Judgement j = P(0);
        j.ctx.push_back(Hyp{x, formula_attr(d, "type", path)});
        return j;
      }
      case Rule::X: {
        const std::string &x = d.attr("x"), &y = d.attr("y"), &z = d.attr("z");
        if (x == y) fail(path, "contraction needs two distinct variables");
        const Hyp& hx = need(P(0), x, path);
        const Hyp& hy = need(P(0), y, path);
        if (!hx.type.is(Formula::Kind::Bang)) fail(path, "contraction on non-! formula " + to_string(hx.type));
        if (!formula_eq(hx.type, hy.type))
          fail(path, "contracted formulas differ: " + to_string(hx.type) + " vs " + to_string(hy.type));
        auto gamma = without(without(P(0).ctx, x), y);
        for (const auto& h : gamma)
          if (h.var == z) fail(path, "contraction target " + z + " already in context");
        Formula a = hx.type;
        gamma.push_back(Hyp{z, a});
        Term t = substitute(P(0).subject, {{x, Term::var(z)}, {y, Term::var(z)}});
        return Judgement{gamma, t, P(0).type};
      }
      case Rule::RLolli: {
        const std::string& x = d.attr("x");
        const Hyp& hx = need(P(0), x, path);
        return Judgement{without(P(0).ctx, x), Term::abs(x, P(0).subject), Formula::lolli(hx.type, P(0).type)};
      }
      case Rule::LLolli: {
        const std::string &y = d.attr("y"), &x = d.attr("x");
        const Hyp& hx = need(P(1), x, path);
        auto delta = without(P(1).ctx, x);
        disjoint(P(0).ctx, delta, path);
        std::vector<Hyp> ctx = P(0).ctx;
        ctx.insert(ctx.end(), delta.begin(), delta.end());
        for (const auto& h : ctx)
          if (h.var == y) fail(path, "variable " + y + " already in context");
        ctx.push_back(Hyp{y, Formula::lolli(P(0).type, hx.type)});
        Term yt = Term::app(Term::var(y), P(0).subject);
        return Judgement{ctx, substitute(P(1).subject, x, yt), P(1).type};
      }
      case Rule::PBang: {
        if (mode_ == Mode::LAL) fail(path, "general promotion is not an LAL rule (use PBang1, PBang2 or PPara)");
        Judgement j = P(0);
        for (auto& h : j.ctx) h.type = Formula::bang(h.type);
        j.type = Formula::bang(j.type);
        return j;
      }
      case Rule::PBang1: {
        if (!P(0).ctx.empty()) fail(path, "PBang1 needs an empty context");
        Judgement j = P(0);
        j.type = Formula::bang(j.type);
        return j;
      }
      case Rule::PBang2: {
        if (P(0).ctx.size() != 1) fail(path, "PBang2 needs exactly one hypothesis, got " + std::to_string(P(0).ctx.size()));
        Judgement j = P(0);
        j.ctx[0].type = Formula::bang(j.ctx[0].type);
        j.type = Formula::bang(j.type);
        return j;
      }
      case Rule::PPara: {
        if (mode_ == Mode::EAL) fail(path, "PPara is not available in EAL mode");
        std::set<std::string> bang;
        if (d.has("bang")) {
          std::istringstream ss(d.attr("bang"));
          for (std::string v; ss >> v;) {
            need(P(0), v, path);
            bang.insert(v);
          }
        }
        Judgement j = P(0);
        for (auto& h : j.ctx) h.type = bang.count(h.var) ? Formula::bang(h.type) : Formula::para(h.type);
        j.type = Formula::para(j.type);
        return j;
      }
      case Rule::RForall: {
        const std::string& a = d.attr("var");
        for (const auto& h : P(0).ctx)
          if (free_type_vars(h.type).count(a)) fail(path, "type variable " + a + " is free in the context (" + h.var + ")");
        Judgement j = P(0);
        j.type = Formula::forall(a, j.type);
        return j;
      }
      case Rule::LForall: {
        const std::string& x = d.attr("x");
        Formula q = formula_attr(d, "type", path);
        if (!q.is(Formula::Kind::Forall)) fail(path, "LForall type must be a forall formula");
        Formula b = formula_attr(d, "witness", path);
        Formula expect = subst_formula(q.inner(), q.name(), b);
        const Hyp& hx = need(P(0), x, path);
        if (!formula_eq(hx.type, expect))
          fail(path, "instance mismatch: expected " + to_string(expect) + ", got " + to_string(hx.type));
        Judgement j = P(0);
        for (auto& h : j.ctx)
          if (h.var == x) h.type = q;
        return j;
      }
      case Rule::RMu: {
        Formula m = formula_attr(d, "type", path);
        if (!m.is(Formula::Kind::Mu)) fail(path, "RMu type must be a mu formula");
        if (!formula_eq(P(0).type, unfold_mu(m)))
          fail(path, "fold mismatch: expected " + to_string(unfold_mu(m)) + ", got " + to_string(P(0).type));
        Judgement j = P(0);
        j.type = m;
        return j;
      }
      case Rule::LMu: {
        const std::string& x = d.attr("x");
        Formula m = formula_attr(d, "type", path);
        if (!m.is(Formula::Kind::Mu)) fail(path, "LMu type must be a mu formula");
        const Hyp& hx = need(P(0), x, path);
        if (!formula_eq(hx.type, unfold_mu(m)))
          fail(path, "unfold mismatch: expected " + to_string(unfold_mu(m)) + ", got " + to_string(hx.type));
        Judgement j = P(0);
        for (auto& h : j.ctx)
          if (h.var == x) h.type = m;
        return j;
      }
    }
    fail(path, "unknown rule");
  }

  Mode mode_;
};

}  // namespace detail

/// Verifies every rule application and returns the annotated tree.
inline CheckedDerivation check_tree(const Derivation& d, Mode mode) { return detail::Checker(mode).check(d, "root"); }

inline Judgement check_derivation(const Derivation& d, Mode mode) { return check_tree(d, mode).conclusion; }

/// The subject term, computed from the rule structure alone.
inline Term derivation_subject(const Derivation& d) {
  auto sub = [&](std::size_t i) { return derivation_subject(d.premises.at(i)); };
  switch (d.rule) {
    case Rule::A:
      return Term::var(d.attr("x"));
    case Rule::U:
      return substitute(sub(1), d.attr("x"), sub(0));
    case Rule::X:
      return substitute(sub(0), {{d.attr("x"), Term::var(d.attr("z"))}, {d.attr("y"), Term::var(d.attr("z"))}});
    case Rule::RLolli:
      return Term::abs(d.attr("x"), sub(0));
    case Rule::LLolli:
      return substitute(sub(1), d.attr("x"), Term::app(Term::var(d.attr("y")), sub(0)));
    default:
      return sub(0);
  }
}

/// Image of an LAL derivation in EAL: every $ becomes ! and every LAL
/// promotion becomes PBang.
inline Derivation erase_para(const Derivation& d) {
  Derivation out;
  out.rule = d.rule;
  if (d.rule == Rule::PPara || d.rule == Rule::PBang1 || d.rule == Rule::PBang2) out.rule = Rule::PBang;
  for (const auto& [k, v] : d.attrs) {
    if (out.rule == Rule::PBang && k == "bang") continue;
    if (k == "type" || k == "witness")
      out.attrs[k] = to_string(erase_para(parse_formula(v)));
    else
      out.attrs[k] = v;
  }
  for (const auto& p : d.premises) out.premises.push_back(erase_para(p));
  if (d.stated) {
    Judgement j = *d.stated;
    for (auto& h : j.ctx) h.type = erase_para(h.type);
    j.type = erase_para(j.type);
    out.stated = j;
  }
  return out;
}

}  // namespace lamping
