#pragma once

// Labelling functions on contraction nodes and the translation from
// proof-nets to sharing graphs.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>

#include "lamping/error.hpp"
#include "lamping/proofnet.hpp"
#include "lamping/sharegraph.hpp"

namespace lamping {

/// Index assignment for the contraction nodes of a net. `width` is the
/// number of exponential stacks of the contexts; it is fixed when the
/// labelling is first computed and kept through reduction even if some
/// indices stop being used.
struct Labelling {
  std::map<NodeId, int> index;
  int width = 0;

  std::size_t image_size() const {
    std::set<int> img;
    for (const auto& [v, i] : index) img.insert(i);
    return img.size();
  }
  int at(NodeId v) const {
    auto it = index.find(v);
    if (it == index.end()) throw Error(ErrorKind::IncompatibleLabelling, "contraction node " + std::to_string(v) + " has no index");
    return it->second;
  }
};

/// Indices given by depth (distinct depths ranked 0, 1, ...).
inline Labelling labelling_lt(const ProofNet& n) {
  std::set<int> depths;
  for (NodeId v : n.nodes_of(PNKind::X)) depths.insert(n.node_depth(v));
  std::map<int, int> rank;
  for (int d : depths) rank[d] = static_cast<int>(rank.size());
  Labelling f;
  for (NodeId v : n.nodes_of(PNKind::X)) f.index[v] = rank[n.node_depth(v)];
  f.width = static_cast<int>(rank.size());
  return f;
}

/// A distinct index per contraction node, in node-id order.
inline Labelling labelling_dlt(const ProofNet& n) {
  Labelling f;
  for (NodeId v : n.nodes_of(PNKind::X)) f.index[v] = static_cast<int>(f.index.size());
  f.width = static_cast<int>(f.index.size());
  return f;
}

enum class Translation { LT, DLT };

inline Labelling labelling(const ProofNet& n, Translation t) { return t == Translation::LT ? labelling_lt(n) : labelling_dlt(n); }

/// Equal indices must mean equal depths, and every contraction is labelled.
inline bool check_compatible(const ProofNet& n, const Labelling& f) {
  std::map<int, int> depth_of;
  for (NodeId v : n.nodes_of(PNKind::X)) {
    auto it = f.index.find(v);
    if (it == f.index.end() || it->second < 0 || it->second >= f.width) return false;
    int d = n.node_depth(v);
    auto [pos, fresh] = depth_of.emplace(it->second, d);
    if (!fresh && pos->second != d) return false;
  }
  return true;
}

/// Labelling of the reduct after `step`: nodes keep their index, nodes
/// created by the step take the index of the node they come from.
inline Labelling induced_labelling(const ProofNet& reduct, const Labelling& f, const PNStep& step) {
  Labelling g;
  g.width = f.width;
  for (NodeId v : reduct.nodes_of(PNKind::X)) {
    auto it = step.origin.find(v);
    NodeId src = it == step.origin.end() ? v : it->second;
    g.index[v] = f.at(src);
  }
  return g;
}

/// Sharing graph of n under f. Optionally reports which graph node each
/// net node became (door, quantifier and fixpoint nodes vanish).
inline SharingGraph translate(const ProofNet& n, const Labelling& f, std::map<NodeId, NodeId>* net_to_graph = nullptr) {
  if (!check_compatible(n, f)) throw Error(ErrorKind::IncompatibleLabelling, "labelling is not compatible with depths");
  SharingGraph g;
  g.set_index_width(f.width);
  std::map<NodeId, NodeId> m;
  for (NodeId c : n.conclusions()) m[c] = g.add_free(n.node(c).name);
  for (NodeId v : n.live_nodes()) {
    if (m.count(v)) continue;
    const std::string& name = n.node(v).name;
    switch (n.kind(v)) {
      case PNKind::RLolli: m[v] = g.add(SGKind::Lambda, 0, name); break;
      case PNKind::LLolli: m[v] = g.add(SGKind::App, 0, name); break;
      case PNKind::X: m[v] = g.add(SGKind::Fan, f.at(v), name); break;
      case PNKind::W: m[v] = g.add(SGKind::Eraser, 0, name); break;
      case PNKind::Conclusion: throw Error(ErrorKind::UnmatchedPair, "conclusion node not registered");
      default: m[v] = g.add(SGKind::Wire); break;
    }
  }
  for (const auto& e : n.edges())
    g.connect(PortRef{m.at(e.a.node), e.a.port}, PortRef{m.at(e.b.node), e.b.port});
  g.splice_wires();
  g.validate();
  if (net_to_graph) {
    net_to_graph->clear();
    for (const auto& [a, b] : m)
      if (g.alive(b)) (*net_to_graph)[a] = b;
  }
  return g;
}

}  // namespace lamping
