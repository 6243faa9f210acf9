#pragma once

// Generic port graphs: nodes with up to three ports, each port wired to
// exactly one peer port. Kind-specific facts (arity, principal port) come
// from a traits class.

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lamping/error.hpp"

namespace lamping {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

struct PortRef {
  NodeId node = kNoNode;
  std::uint8_t port = 0;

  bool valid() const { return node != kNoNode; }
  friend bool operator==(const PortRef&, const PortRef&) = default;
  friend auto operator<=>(const PortRef&, const PortRef&) = default;
};

/// An undirected edge between two ports, stored with a <= b.
struct Edge {
  PortRef a, b;

  static Edge of(PortRef x, PortRef y) { return x <= y ? Edge{x, y} : Edge{y, x}; }
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Traits must provide, for Kind K:
///   static int arity(K);           number of ports (1..3)
///   static bool has_principal(K);  port 0 is principal when true
///   static const char* name(K);
///   static constexpr K wire;       identity node of arity 2 spliced away
template <class Kind, class Traits>
class PortGraph {
 public:
  struct Node {
    Kind kind;
    int label = 0;
    std::array<PortRef, 3> peer{};
    bool alive = true;
    std::string name;
  };

  NodeId add(Kind kind, int label = 0, std::string name = {}) {
    Node n;
    n.kind = kind;
    n.label = label;
    n.name = std::move(name);
    nodes_.push_back(std::move(n));
    return static_cast<NodeId>(nodes_.size() - 1);
  }

  void connect(PortRef x, PortRef y) {
    check_port(x);
    check_port(y);
    nodes_[x.node].peer[x.port] = y;
    nodes_[y.node].peer[y.port] = x;
  }

  PortRef peer(PortRef x) const {
    check_port(x);
    return nodes_[x.node].peer[x.port];
  }

  const Node& node(NodeId id) const { return nodes_.at(id); }
  Node& node(NodeId id) { return nodes_.at(id); }
  Kind kind(NodeId id) const { return nodes_.at(id).kind; }
  int label(NodeId id) const { return nodes_.at(id).label; }
  bool alive(NodeId id) const { return id < nodes_.size() && nodes_[id].alive; }
  int arity(NodeId id) const { return Traits::arity(kind(id)); }
  bool has_principal(NodeId id) const { return Traits::has_principal(kind(id)); }
  bool is_principal(PortRef x) const { return x.port == 0 && has_principal(x.node); }

  void kill(NodeId id) { nodes_.at(id).alive = false; }

  /// Number of node slots ever allocated (ids are never reused).
  std::size_t capacity() const { return nodes_.size(); }

  std::vector<NodeId> live_nodes() const {
    std::vector<NodeId> out;
    for (NodeId i = 0; i < nodes_.size(); ++i)
      if (nodes_[i].alive) out.push_back(i);
    return out;
  }

  /// Every edge once, in ascending order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (NodeId i = 0; i < nodes_.size(); ++i) {
      if (!nodes_[i].alive) continue;
      for (int p = 0; p < arity(i); ++p) {
        PortRef x{i, static_cast<std::uint8_t>(p)};
        PortRef y = nodes_[i].peer[p];
        if (x <= y) out.push_back(Edge{x, y});
      }
    }
    return out;
  }

  /// True when both endpoints are principal ports.
  bool is_cut(const Edge& e) const { return e.a != e.b && is_principal(e.a) && is_principal(e.b); }

  /// Removes all wire nodes, joining their two neighbours. A wire closed on
  /// itself disappears together with its loop.
  void splice_wires() {
    for (NodeId i = 0; i < nodes_.size(); ++i) {
      if (!nodes_[i].alive || nodes_[i].kind != Traits::wire) continue;
      PortRef a = nodes_[i].peer[0];
      PortRef b = nodes_[i].peer[1];
      nodes_[i].alive = false;
      if (a.node == i) continue;  // self loop
      if (a.valid() && b.valid()) connect(a, b);
    }
  }

  /// Replaces dying nodes by new ports: every port x listed in `map` is
  /// reconnected so that map[x] takes over x's old connection. When x's old
  /// peer is itself in `map`, the two replacements are joined directly.
  void rewire(const std::map<PortRef, PortRef>& map) {
    std::vector<std::pair<PortRef, PortRef>> links;
    for (const auto& [x, nx] : map) {
      PortRef y = peer(x);
      auto it = map.find(y);
      PortRef target = it == map.end() ? y : it->second;
      links.emplace_back(nx, target);
    }
    for (const auto& [a, b] : links) connect(a, b);
  }

  /// Checks that peers are symmetric and every live port is wired to a live node.
  void validate() const {
    for (NodeId i = 0; i < nodes_.size(); ++i) {
      if (!nodes_[i].alive) continue;
      for (int p = 0; p < arity(i); ++p) {
        PortRef y = nodes_[i].peer[p];
        if (!y.valid() || !alive(y.node) || y.port >= arity(y.node))
          throw Error(ErrorKind::UnmatchedPair,
                      "dangling port " + std::to_string(i) + "." + std::to_string(p) + " (" + Traits::name(kind(i)) + ")");
        PortRef back = nodes_[y.node].peer[y.port];
        if (back != PortRef{i, static_cast<std::uint8_t>(p)})
          throw Error(ErrorKind::UnmatchedPair, "asymmetric wiring at " + std::to_string(i) + "." + std::to_string(p));
      }
    }
  }

 protected:
  void check_port(PortRef x) const {
    if (!x.valid() || x.node >= nodes_.size() || x.port >= Traits::arity(nodes_[x.node].kind))
      throw Error(ErrorKind::Input, "invalid port reference " + (x.valid() ? std::to_string(x.node) : std::string("none")) +
                                        "." + std::to_string(x.port));
  }

  std::vector<Node> nodes_;
};

}  // namespace lamping
