#pragma once

// Elementary contexts and the context-semantics token machine, run over a
// flat view shared by proof-nets and sharing graphs.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lamping/error.hpp"
#include "lamping/port_graph.hpp"
#include "lamping/proofnet.hpp"
#include "lamping/sharegraph.hpp"
#include "lamping/translate.hpp"

namespace lamping {

/// Stacks over {p,q}. Internally the top of each stack is the last
/// character; printing shows the top first.
struct Context {
  std::vector<std::string> exp;
  std::string mult;

  static Context empty(int k) { return Context{std::vector<std::string>(static_cast<std::size_t>(k)), {}}; }

  std::size_t length() const { return exp.size(); }

  /// Stack i, with i == length() naming the multiplicative stack.
  std::string& stack(std::size_t i) { return i == exp.size() ? mult : exp.at(i); }
  const std::string& stack(std::size_t i) const { return i == exp.size() ? mult : exp.at(i); }

  friend bool operator==(const Context&, const Context&) = default;
  friend auto operator<=>(const Context&, const Context&) = default;
};

/// Top-first rendering of one stack; "e" for the empty stack.
inline std::string show_stack(const std::string& s) {
  if (s.empty()) return "e";
  return std::string(s.rbegin(), s.rend());
}

/// Reads a top-first stack ("e" or "" for empty).
inline std::string read_stack(std::string_view top_first) {
  std::string s;
  if (top_first == "e" || top_first == "ε") return s;
  for (auto it = top_first.rbegin(); it != top_first.rend(); ++it) {
    if (*it != 'p' && *it != 'q') throw Error(ErrorKind::Input, "stack symbols must be p or q: '" + std::string(top_first) + "'");
    s += *it;
  }
  return s;
}

/// "S1|...|Sk|T", stacks shown top first.
inline std::string to_string(const Context& c) {
  std::string out;
  for (const auto& s : c.exp) out += show_stack(s) + "|";
  out += show_stack(c.mult);
  return out;
}

inline Context parse_context(std::string_view text, int k) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t bar = text.find('|', start);
    std::string_view part = text.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start);
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
    parts.push_back(read_stack(part));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  if (parts.size() != static_cast<std::size_t>(k) + 1)
    throw Error(ErrorKind::Input, "context needs " + std::to_string(k + 1) + " stacks, got " + std::to_string(parts.size()));
  Context c;
  c.mult = parts.back();
  parts.pop_back();
  c.exp = std::move(parts);
  return c;
}

/// Read-only view of a net or graph as seen by the token.
class TokenView {
 public:
  enum class Role : std::uint8_t { Dead, Terminal, Mult, Exp, Identity, Eraser };

  struct Cell {
    Role role = Role::Dead;
    int index = 0;  // exponential stack for Exp cells
    std::uint8_t arity = 0;
    std::array<PortRef, 3> peer{};
    std::string name;
  };

  static TokenView of(const SharingGraph& g) {
    TokenView v;
    v.k_ = g.index_width();
    v.cells_.resize(g.capacity());
    for (NodeId id : g.live_nodes()) {
      Cell& c = v.cells_[id];
      c.arity = static_cast<std::uint8_t>(g.arity(id));
      c.name = g.node(id).name;
      for (std::uint8_t p = 0; p < c.arity; ++p) c.peer[p] = g.peer(PortRef{id, p});
      switch (g.kind(id)) {
        case SGKind::Free: c.role = Role::Terminal; break;
        case SGKind::Lambda:
        case SGKind::App: c.role = Role::Mult; break;
        case SGKind::Fan:
          c.role = Role::Exp;
          c.index = g.label(id);
          break;
        case SGKind::Eraser: c.role = Role::Eraser; break;
        case SGKind::Wire: c.role = Role::Identity; break;
      }
    }
    v.terminals_ = g.free_ports();
    v.check_indices();
    return v;
  }

  static TokenView of(const ProofNet& n, const Labelling& f) {
    TokenView v;
    v.k_ = f.width;
    v.cells_.resize(n.capacity());
    for (NodeId id : n.live_nodes()) {
      Cell& c = v.cells_[id];
      c.arity = static_cast<std::uint8_t>(n.arity(id));
      c.name = n.node(id).name;
      for (std::uint8_t p = 0; p < c.arity; ++p) c.peer[p] = n.peer(PortRef{id, p});
      switch (n.kind(id)) {
        case PNKind::Conclusion: c.role = Role::Terminal; break;
        case PNKind::RLolli:
        case PNKind::LLolli: c.role = Role::Mult; break;
        case PNKind::X:
          c.role = Role::Exp;
          c.index = f.at(id);
          break;
        case PNKind::W: c.role = Role::Eraser; break;
        default: c.role = Role::Identity; break;
      }
    }
    v.terminals_ = n.conclusions();
    v.check_indices();
    return v;
  }

  int k() const { return k_; }
  std::size_t capacity() const { return cells_.size(); }
  const Cell& cell(NodeId id) const { return cells_.at(id); }
  bool live(NodeId id) const { return id < cells_.size() && cells_[id].role != Role::Dead; }
  PortRef peer(PortRef x) const { return cells_.at(x.node).peer.at(x.port); }

  const std::vector<NodeId>& terminals() const { return terminals_; }

  std::optional<NodeId> terminal(const std::string& name) const {
    for (NodeId t : terminals_)
      if (cells_[t].name == name) return t;
    return std::nullopt;
  }

  /// Stack touched by a node: exponential index, k for the multiplicative
  /// stack, -1 for nodes without a stack.
  int stack_of(NodeId id) const {
    const Cell& c = cells_.at(id);
    if (c.role == Role::Mult) return k_;
    if (c.role == Role::Exp) return c.index;
    return -1;
  }

  /// Port to enter when leaving terminal t.
  PortRef leave(NodeId t) const { return peer(PortRef{t, 0}); }

  /// Human-readable name of the edge entered through x: the terminal's name
  /// when one endpoint is a terminal, "node.port" otherwise.
  std::string port_name(PortRef x) const {
    if (cells_.at(x.node).role == Role::Terminal) return cells_[x.node].name;
    return std::to_string(x.node) + "." + std::to_string(x.port);
  }

 private:
  void check_indices() const {
    for (const auto& c : cells_)
      if (c.role == Role::Exp && (c.index < 0 || c.index >= k_))
        throw Error(ErrorKind::IncompatibleLabelling, "fan index " + std::to_string(c.index) + " outside 0.." + std::to_string(k_ - 1));
  }

  int k_ = 0;
  std::vector<Cell> cells_;
  std::vector<NodeId> terminals_;
};

/// A token about to enter port `enter` carrying `ctx`.
struct TokenState {
  PortRef enter;
  Context ctx;
};

enum class StuckReason { EmptyStack, Weakening };

struct StepOutcome {
  enum class Kind { Moved, Reached, Stuck } kind;
  StuckReason reason = StuckReason::EmptyStack;
  int stack = -1;  // stack that was empty, for EmptyStack
};

/// One transition. Entering an auxiliary port pushes p (port 1) or q
/// (port 2) and leaves through the principal port; entering a principal
/// port pops and leaves through the matching auxiliary port.
inline StepOutcome step_token(const TokenView& view, TokenState& s) {
  const auto& c = view.cell(s.enter.node);
  switch (c.role) {
    case TokenView::Role::Terminal: return {StepOutcome::Kind::Reached};
    case TokenView::Role::Eraser: return {StepOutcome::Kind::Stuck, StuckReason::Weakening};
    case TokenView::Role::Dead: throw Error(ErrorKind::UnmatchedPair, "token entered a dead node");
    case TokenView::Role::Identity:
      s.enter = view.peer(PortRef{s.enter.node, static_cast<std::uint8_t>(1 - s.enter.port)});
      return {StepOutcome::Kind::Moved};
    case TokenView::Role::Mult:
    case TokenView::Role::Exp: {
      int si = view.stack_of(s.enter.node);
      std::string& st = s.ctx.stack(static_cast<std::size_t>(si));
      std::uint8_t out;
      if (s.enter.port == 0) {
        if (st.empty()) return {StepOutcome::Kind::Stuck, StuckReason::EmptyStack, si};
        out = st.back() == 'p' ? 1 : 2;
        st.pop_back();
      } else {
        st.push_back(s.enter.port == 1 ? 'p' : 'q');
        out = 0;
      }
      s.enter = view.peer(PortRef{s.enter.node, out});
      return {StepOutcome::Kind::Moved};
    }
  }
  return {StepOutcome::Kind::Stuck, StuckReason::EmptyStack};
}

inline constexpr std::uint64_t kDefaultPathFuel = 100000;

struct RunResult {
  enum class Status { Reached, Stuck, FuelExhausted } status = Status::FuelExhausted;
  NodeId at = kNoNode;  // terminal reached, or node where the token got stuck
  StuckReason reason = StuckReason::EmptyStack;
  int stack = -1;
  Context ctx;
  std::uint64_t steps = 0;

  bool reached() const { return status == Status::Reached; }
};

/// Runs the token from port `enter`; `on_move` sees the state before each transition.
template <class OnMove>
RunResult run_token(const TokenView& view, PortRef enter, Context ctx, std::uint64_t fuel, OnMove&& on_move) {
  if (ctx.length() != static_cast<std::size_t>(view.k()))
    throw Error(ErrorKind::Input, "context has " + std::to_string(ctx.length()) + " exponential stacks, structure needs " +
                                      std::to_string(view.k()));
  TokenState s{enter, std::move(ctx)};
  RunResult r;
  for (std::uint64_t n = 0; n <= fuel; ++n) {
    on_move(s);
    NodeId here = s.enter.node;
    StepOutcome o = step_token(view, s);
    if (o.kind == StepOutcome::Kind::Moved) {
      ++r.steps;
      continue;
    }
    r.status = o.kind == StepOutcome::Kind::Reached ? RunResult::Status::Reached : RunResult::Status::Stuck;
    r.at = here;
    r.reason = o.reason;
    r.stack = o.stack;
    r.ctx = std::move(s.ctx);
    return r;
  }
  r.status = RunResult::Status::FuelExhausted;
  r.ctx = std::move(s.ctx);
  return r;
}

inline RunResult run_token(const TokenView& view, PortRef enter, Context ctx, std::uint64_t fuel = kDefaultPathFuel) {
  return run_token(view, enter, std::move(ctx), fuel, [](const TokenState&) {});
}

/// Runs from a named terminal into the structure.
inline RunResult run_from(const TokenView& view, const std::string& terminal, Context ctx, std::uint64_t fuel = kDefaultPathFuel) {
  auto t = view.terminal(terminal);
  if (!t) throw Error(ErrorKind::Input, "no conclusion or free port named " + terminal);
  return run_token(view, view.leave(*t), std::move(ctx), fuel);
}

}  // namespace lamping
