#pragma once

// Minimal contexts B_u, P_u, E_u of a node and the weight of a graph.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lamping/context.hpp"
#include "lamping/semantics.hpp"

namespace lamping {

struct MinimalContexts {
  std::vector<Prefix> B;  // reach the principal edge of a node sharing u's stack, that stack empty
  std::vector<Prefix> P;  // reach a free port / conclusion
  std::vector<Prefix> E;  // reach an eraser
  bool infinite = false;  // some branch did not finish within the bounds
};

inline constexpr std::size_t kDefaultWeightPrefixBound = 64;

/// Minimal contexts of u, starting on u's principal edge with u's own
/// stack empty. Erasers contribute exactly one E context.
inline MinimalContexts minimal_contexts(const TokenView& view, NodeId u, std::uint64_t fuel = kDefaultPathFuel,
                                        std::size_t prefix_bound = kDefaultWeightPrefixBound) {
  const auto& c = view.cell(u);
  MinimalContexts out;
  const std::size_t n = static_cast<std::size_t>(view.k()) + 1;
  if (c.role == TokenView::Role::Eraser) {
    out.E.push_back(Prefix(n));
    return out;
  }
  int own = view.stack_of(u);
  if (own < 0) throw Error(ErrorKind::Input, "node " + std::to_string(u) + " has no principal port with a stack");
  ExploreOptions opt;
  opt.prefix_bound = prefix_bound;
  opt.fuel = fuel;
  opt.fixed_stack = own;
  explore(view, view.peer(PortRef{u, 0}), opt, [&](const SymLeaf& leaf) {
    switch (leaf.kind) {
      case SymLeaf::Kind::Reached: out.P.push_back(leaf.state.prefix); break;
      case SymLeaf::Kind::Stuck:
        if (leaf.reason == StuckReason::Weakening)
          out.E.push_back(leaf.state.prefix);
        else
          out.B.push_back(leaf.state.prefix);
        break;
      default: out.infinite = true; break;
    }
  });
  return out;
}

struct NodeWeight {
  NodeId node = kNoNode;
  std::size_t b = 0, p = 0, e = 0;
  bool infinite = false;
};

struct WeightReport {
  std::vector<NodeWeight> nodes;
  bool infinite = false;
  std::int64_t total = 0;  // meaningful when !infinite

  std::string str() const { return infinite ? std::string("inf") : std::to_string(total); }
};

/// W = sum over nodes of (|B^-| + |P^-| + |E^-| - 1).
inline WeightReport weight(const TokenView& view, std::uint64_t fuel = kDefaultPathFuel,
                           std::size_t prefix_bound = kDefaultWeightPrefixBound) {
  WeightReport r;
  for (NodeId u = 0; u < view.capacity(); ++u) {
    if (!view.live(u)) continue;
    auto role = view.cell(u).role;
    if (role != TokenView::Role::Mult && role != TokenView::Role::Exp && role != TokenView::Role::Eraser) continue;
    MinimalContexts m = minimal_contexts(view, u, fuel, prefix_bound);
    NodeWeight w{u, m.B.size(), m.P.size(), m.E.size(), m.infinite};
    r.nodes.push_back(w);
    if (m.infinite) r.infinite = true;
    r.total += static_cast<std::int64_t>(w.b + w.p + w.e) - 1;
  }
  return r;
}

}  // namespace lamping
