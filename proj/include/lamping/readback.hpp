#pragma once

// Read-back of beta-normal forms through context-semantics queries only.

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lamping/context.hpp"
#include "lamping/error.hpp"
#include "lamping/term.hpp"

namespace lamping {

/// A head subterm, designated by a terminal and a context.
struct HeadQuery {
  NodeId terminal = kNoNode;
  Context ctx;
  friend auto operator<=>(const HeadQuery&, const HeadQuery&) = default;
  friend bool operator==(const HeadQuery&, const HeadQuery&) = default;
};

struct PsiAnswer {
  std::size_t n = 0;            // abstractions in front of the head
  bool bound = false;           // head variable bound by an abstraction
  NodeId free_head = kNoNode;   // terminal of the free head variable
  HeadQuery binder;             // head subterm owning the binding abstraction
  std::size_t l = 0;            // which of its abstractions (0 = outermost)
  std::vector<HeadQuery> args;  // one per argument of the head
};

inline constexpr std::size_t kDefaultNSearch = 64;

namespace detail {
inline std::string q_power(std::size_t n) { return std::string(n, 'q'); }
}  // namespace detail

/// Stacks inside a Context keep their top at the back, so "appending at
/// the bottom" of T means prepending in storage order.
inline PsiAnswer psi_query(const TokenView& view, const HeadQuery& q, std::size_t n_cap = kDefaultNSearch,
                           std::uint64_t fuel = kDefaultPathFuel) {
  const NodeId root = view.terminals().empty() ? kNoNode : view.terminals().front();
  for (std::size_t n = 0; n <= n_cap; ++n) {
    Context c = q.ctx;
    c.mult = detail::q_power(n) + c.mult;
    RunResult r = run_token(view, view.leave(q.terminal), c, fuel);
    if (r.status == RunResult::Status::FuelExhausted)
      throw Error(ErrorKind::FuelExhausted, "token run exceeded " + std::to_string(fuel) + " steps");
    if (r.status == RunResult::Status::Stuck) {
      if (r.reason == StuckReason::EmptyStack && r.stack == view.k()) continue;
      throw Error(ErrorKind::NoNFound, std::string("query blocked by ") +
                                           (r.reason == StuckReason::Weakening ? "a weakening" : "an empty exponential stack") +
                                           " at node " + std::to_string(r.at));
    }
    PsiAnswer a;
    a.n = n;
    std::string s = show_stack(r.ctx.mult);  // top first
    if (s == "e") s.clear();
    // strip the bottom q^m
    std::size_t end = s.size();
    std::size_t m = 0;
    while (end > 0 && s[end - 1] == 'q') --end, ++m;
    HeadQuery base{r.at, r.ctx};
    auto anchor = [&](const std::string& top_first) {
      HeadQuery h = base;
      h.ctx.mult = std::string(top_first.rbegin(), top_first.rend());
      return h;
    };
    if (end == 0) {
      if (r.at == root) throw Error(ErrorKind::MalformedStack, "free head found at the main conclusion");
      a.free_head = r.at;
      for (std::size_t i = 1; i <= m; ++i) a.args.push_back(anchor(detail::q_power(i - 1) + "p"));
      return a;
    }
    // s = R' q^l p q^m, with R' empty or ending in p
    std::size_t pos = end - 1;  // the p
    std::size_t l = 0;
    std::size_t j = pos;
    while (j > 0 && s[j - 1] == 'q') --j, ++l;
    std::string rprime = s.substr(0, j);
    std::string upto_p = s.substr(0, pos + 1);
    a.bound = true;
    a.binder = anchor(rprime);
    a.l = l;
    for (std::size_t i = 1; i <= m; ++i) a.args.push_back(anchor(upto_p + detail::q_power(i - 1) + "p"));
    return a;
  }
  throw Error(ErrorKind::NoNFound, "no n <= " + std::to_string(n_cap) + " makes the query defined");
}

struct ReadbackOptions {
  std::size_t n_cap = kDefaultNSearch;
  std::uint64_t fuel = kDefaultPathFuel;
  std::size_t max_queries = 100000;
};

/// One Psi call made during read-back, in the order issued.
struct ReadbackStep {
  HeadQuery query;
  PsiAnswer answer;
  std::vector<std::string> binders;
};

namespace detail {

class Reader {
 public:
  Reader(const TokenView& view, const ReadbackOptions& opt, std::vector<ReadbackStep>* log) : view_(view), opt_(opt), log_(log) {
    for (NodeId t : view.terminals()) taken_.insert(view.cell(t).name);
  }

  Term expand(const HeadQuery& q) {
    if (++queries_ > opt_.max_queries) throw Error(ErrorKind::FuelExhausted, "read-back issued too many queries");
    PsiAnswer a = psi_query(view_, q, opt_.n_cap, opt_.fuel);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < a.n; ++i) names.push_back(fresh());
    if (log_) log_->push_back(ReadbackStep{q, a, names});
    open_.push_back(Open{q, names});
    Term head;
    if (a.bound) {
      const Open& b = binder(a.binder);
      if (a.l >= b.names.size())
        throw Error(ErrorKind::UnresolvedBinder, "binder position " + std::to_string(a.l) + " out of range");
      head = Term::var(b.names[a.l]);
    } else {
      head = Term::var(view_.cell(a.free_head).name);
    }
    Term body = head;
    for (const auto& arg : a.args) body = Term::app(body, expand(arg));
    for (std::size_t i = names.size(); i-- > 0;) body = Term::abs(names[i], body);
    open_.pop_back();
    return body;
  }

 private:
  std::string fresh() {
    while (true) {
      std::string s = "x" + std::to_string(counter_++);
      if (!taken_.count(s)) {
        taken_.insert(s);
        return s;
      }
    }
  }

  const TokenView& view_;
  ReadbackOptions opt_;
  std::vector<ReadbackStep>* log_;
  struct Open {
    HeadQuery anchor;
    std::vector<std::string> names;
  };

  /// The enclosing head subterm a binder anchor designates. Terminal and
  /// multiplicative stack must agree exactly. Exponential stacks may carry
  /// extra symbols on top, pushed by the contraction that shares the bound
  /// variable; an exact match wins, then the longest compatible one.
  const Open& binder(const HeadQuery& b) const {
    const Open* best = nullptr;
    std::size_t best_len = 0;
    for (auto it = open_.rbegin(); it != open_.rend(); ++it) {
      const HeadQuery& c = it->anchor;
      if (c == b) return *it;
      if (c.terminal != b.terminal || c.ctx.mult != b.ctx.mult || c.ctx.exp.size() != b.ctx.exp.size()) continue;
      bool ok = true;
      std::size_t len = 0;
      for (std::size_t i = 0; ok && i < c.ctx.exp.size(); ++i) {
        ok = b.ctx.exp[i].compare(0, c.ctx.exp[i].size(), c.ctx.exp[i]) == 0;
        len += c.ctx.exp[i].size();
      }
      if (ok && (!best || len > best_len)) best = &*it, best_len = len;
    }
    if (!best) throw Error(ErrorKind::UnresolvedBinder, "binder anchor matches no enclosing head subterm");
    return *best;
  }

  std::vector<Open> open_;
  std::set<std::string> taken_;
  std::size_t counter_ = 0;
  std::size_t queries_ = 0;
};

}  // namespace detail

/// Initial query: the main conclusion with every stack empty.
inline HeadQuery initial_query(const TokenView& view) {
  if (view.terminals().empty()) throw Error(ErrorKind::Input, "structure has no conclusion");
  return HeadQuery{view.terminals().front(), Context::empty(view.k())};
}

inline Term readback_term(const TokenView& view, const ReadbackOptions& opt = {}, std::vector<ReadbackStep>* log = nullptr) {
  detail::Reader reader(view, opt, log);
  return reader.expand(initial_query(view));
}

}  // namespace lamping
