#pragma once

// Symbolic exploration of the token machine. Stacks start with unknown
// tails; popping an unknown symbol branches on p and q and records the
// forced prefix. Each finished branch therefore describes the run on a
// whole cone of contexts: input prefix P with any tails X, output c X.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lamping/context.hpp"
#include "lamping/error.hpp"

namespace lamping {

/// Forced input prefixes, one top-first string per stack (multiplicative last).
using Prefix = std::vector<std::string>;

struct SymState {
  PortRef enter;
  Context cur;    // symbols sitting above the unknown tails
  Prefix prefix;  // symbols of the input consumed from the tails so far
  std::uint64_t steps = 0;
};

struct SymLeaf {
  enum class Kind { Reached, Stuck, Truncated, FuelExhausted } kind;
  SymState state;
  NodeId at = kNoNode;
  StuckReason reason = StuckReason::EmptyStack;
  int stack = -1;
};

struct ExploreOptions {
  /// Branches whose forced prefix would exceed this length end Truncated.
  std::size_t prefix_bound = 4;
  std::uint64_t fuel = kDefaultPathFuel;
  /// A stack known to be exactly empty (no tail), or -1.
  int fixed_stack = -1;
};

/// Depth-first over all branches, p before q. `on_state` sees every state
/// before its transition and may return false to stop everything; the
/// function then returns false.
inline bool explore(const TokenView& view, PortRef start, const ExploreOptions& opt, const std::function<void(const SymLeaf&)>& on_leaf,
                    const std::function<bool(const SymState&)>& on_state = {}) {
  const std::size_t nstacks = static_cast<std::size_t>(view.k()) + 1;
  std::vector<SymState> todo;
  todo.push_back(SymState{start, Context::empty(view.k()), Prefix(nstacks), 0});
  while (!todo.empty()) {
    SymState s = std::move(todo.back());
    todo.pop_back();
    while (true) {
      if (on_state && !on_state(s)) return false;
      if (s.steps > opt.fuel) {
        on_leaf(SymLeaf{SymLeaf::Kind::FuelExhausted, std::move(s)});
        break;
      }
      TokenState t{s.enter, std::move(s.cur)};
      NodeId here = t.enter.node;
      StepOutcome o = step_token(view, t);
      s.cur = std::move(t.ctx);
      if (o.kind == StepOutcome::Kind::Moved) {
        s.enter = t.enter;
        ++s.steps;
        continue;
      }
      if (o.kind == StepOutcome::Kind::Reached) {
        on_leaf(SymLeaf{SymLeaf::Kind::Reached, std::move(s), here});
        break;
      }
      if (o.reason == StuckReason::Weakening || o.stack == opt.fixed_stack) {
        on_leaf(SymLeaf{SymLeaf::Kind::Stuck, std::move(s), here, o.reason, o.stack});
        break;
      }
      auto si = static_cast<std::size_t>(o.stack);
      if (s.prefix[si].size() >= opt.prefix_bound) {
        on_leaf(SymLeaf{SymLeaf::Kind::Truncated, std::move(s), here, o.reason, o.stack});
        break;
      }
      SymState q = s;
      q.prefix[si] += 'q';
      q.cur.stack(si).push_back('q');
      todo.push_back(std::move(q));
      s.prefix[si] += 'p';
      s.cur.stack(si).push_back('p');
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Semantics tables

struct SemKey {
  std::string from;
  Prefix in;
  friend auto operator<=>(const SemKey&, const SemKey&) = default;
  friend bool operator==(const SemKey&, const SemKey&) = default;
};

struct SemValue {
  std::string to;
  Context out;  // output above the tails
  friend auto operator<=>(const SemValue&, const SemValue&) = default;
  friend bool operator==(const SemValue&, const SemValue&) = default;
};

/// Terminal-to-terminal behaviour on all contexts whose stacks have length
/// at most `bound`, stored as minimal input prefixes. Two structures have
/// the same bounded semantics exactly when their tables are equal.
struct SemanticsTable {
  std::size_t bound = 0;
  int k = 0;
  std::map<SemKey, SemValue> entries;
  bool fuel_exhausted = false;

  friend bool operator==(const SemanticsTable& a, const SemanticsTable& b) {
    return a.bound == b.bound && a.k == b.k && a.entries == b.entries && a.fuel_exhausted == b.fuel_exhausted;
  }

  /// Concrete pairs ((terminal, C), (terminal, D)) with every stack of C of
  /// length at most d (d <= bound).
  std::map<std::pair<std::string, Context>, std::pair<std::string, Context>> expand(std::size_t d) const {
    std::map<std::pair<std::string, Context>, std::pair<std::string, Context>> out;
    const std::size_t n = static_cast<std::size_t>(k) + 1;
    for (const auto& [key, val] : entries) {
      std::vector<std::vector<std::string>> tails(n);
      bool ok = true;
      for (std::size_t i = 0; i < n; ++i) {
        if (key.in[i].size() > d) ok = false;
        if (!ok) break;
        std::size_t room = d - key.in[i].size();
        std::vector<std::string> level{""};
        tails[i].push_back("");
        for (std::size_t len = 1; len <= room; ++len) {
          std::vector<std::string> next;
          for (const auto& t : level)
            for (char c : {'p', 'q'}) next.push_back(t + c);
          tails[i].insert(tails[i].end(), next.begin(), next.end());
          level = std::move(next);
        }
      }
      if (!ok) continue;
      std::vector<std::size_t> pick(n, 0);
      while (true) {
        Context c = Context::empty(k), o = val.out;
        for (std::size_t i = 0; i < n; ++i) {
          const std::string& tail = tails[i][pick[i]];  // top-first
          std::string in_tf = key.in[i] + tail;
          c.stack(i) = std::string(in_tf.rbegin(), in_tf.rend());
          o.stack(i) = std::string(tail.rbegin(), tail.rend()) + o.stack(i);
        }
        out[{key.from, c}] = {val.to, o};
        std::size_t i = 0;
        while (i < n && ++pick[i] == tails[i].size()) pick[i++] = 0;
        if (i == n) break;
      }
    }
    return out;
  }
};

inline SemanticsTable semantics_table(const TokenView& view, std::size_t bound = 4, std::uint64_t fuel = kDefaultPathFuel) {
  SemanticsTable t;
  t.bound = bound;
  t.k = view.k();
  ExploreOptions opt;
  opt.prefix_bound = bound;
  opt.fuel = fuel;
  for (NodeId term : view.terminals()) {
    const std::string& from = view.cell(term).name;
    explore(view, view.leave(term), opt, [&](const SymLeaf& leaf) {
      if (leaf.kind == SymLeaf::Kind::FuelExhausted) t.fuel_exhausted = true;
      if (leaf.kind != SymLeaf::Kind::Reached) return;
      t.entries[SemKey{from, leaf.state.prefix}] = SemValue{view.cell(leaf.at).name, leaf.state.cur};
    });
  }
  return t;
}

/// Context with exactly the stacks of a prefix (empty tails).
inline Context context_of(const Prefix& p) {
  Context c = Context::empty(static_cast<int>(p.size()) - 1);
  for (std::size_t i = 0; i < p.size(); ++i) c.stack(i) = std::string(p[i].rbegin(), p[i].rend());
  return c;
}

/// Every entry of `smaller` is reproduced by `view`: same target and
/// output on the entry's minimal context (and, by monotonicity, on the
/// whole cone above it). Returns the number of entries that fail.
inline std::size_t entries_not_reproduced(const SemanticsTable& smaller, const TokenView& view, std::uint64_t fuel = kDefaultPathFuel) {
  std::size_t bad = 0;
  for (const auto& [key, val] : smaller.entries) {
    RunResult r = run_from(view, key.from, context_of(key.in), fuel);
    if (!r.reached() || view.cell(r.at).name != val.to || r.ctx != val.out) ++bad;
  }
  return bad;
}

// ---------------------------------------------------------------------------
// Cycles

namespace detail {
inline bool prefix_comparable(const std::string& a, const std::string& b) {
  std::size_t n = std::min(a.size(), b.size());
  return a.compare(0, n, b, 0, n) == 0;
}
}  // namespace detail

/// True when no run from any directed edge comes back to that edge with a
/// context comparable (stack by stack, in the prefix order) to the one it
/// started with. Runs exceeding fuel count as cycles.
inline bool check_acyclicity(const TokenView& view, std::size_t bound = 4, std::uint64_t fuel = kDefaultPathFuel) {
  ExploreOptions opt;
  opt.prefix_bound = bound;
  opt.fuel = fuel;
  for (NodeId v = 0; v < view.capacity(); ++v) {
    if (!view.live(v)) continue;
    for (std::uint8_t p = 0; p < view.cell(v).arity; ++p) {
      PortRef start{v, p};
      bool fuel_hit = false;
      bool ok = explore(
          view, start, opt, [&](const SymLeaf& leaf) { fuel_hit = fuel_hit || leaf.kind == SymLeaf::Kind::FuelExhausted; },
          [&](const SymState& s) {
            if (s.steps == 0 || s.enter != start) return true;
            for (std::size_t i = 0; i < s.prefix.size(); ++i) {
              const std::string& now = s.cur.stack(i);
              if (!detail::prefix_comparable(s.prefix[i], std::string(now.rbegin(), now.rend()))) return true;
            }
            return false;
          });
      if (!ok || fuel_hit) return false;
    }
  }
  return true;
}

}  // namespace lamping
