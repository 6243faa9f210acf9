#pragma once

// Graphviz export. Output depends only on the structure, so it is stable
// across runs.

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "lamping/proofnet.hpp"
#include "lamping/sharegraph.hpp"

namespace lamping {

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

template <class G>
void dot_edges(const G& g, std::ostringstream& os) {
  for (const auto& e : g.edges()) {
    os << "  n" << e.a.node << " -- n" << e.b.node << " [taillabel=\"" << int(e.a.port) << "\", headlabel=\"" << int(e.b.port) << "\"";
    if (g.is_cut(e)) os << ", color=red, penwidth=2";
    os << "];\n";
  }
}

}  // namespace detail

inline std::string to_dot(const SharingGraph& g, const std::string& title = "G") {
  std::ostringstream os;
  os << "graph \"" << detail::dot_escape(title) << "\" {\n  node [fontname=\"monospace\"];\n";
  for (NodeId v : g.live_nodes()) {
    os << "  n" << v << " [";
    switch (g.kind(v)) {
      case SGKind::Free: os << "shape=plaintext, label=\"" << detail::dot_escape(g.node(v).name) << "\""; break;
      case SGKind::Lambda: os << "shape=circle, label=\"λ\""; break;
      case SGKind::App: os << "shape=circle, label=\"@\""; break;
      case SGKind::Fan: os << "shape=triangle, label=\"" << g.label(v) << "\""; break;
      case SGKind::Eraser: os << "shape=point, width=0.15"; break;
      case SGKind::Wire: os << "shape=point, width=0.05"; break;
    }
    os << "];\n";
  }
  detail::dot_edges(g, os);
  os << "}\n";
  return os.str();
}

/// Boxes become nested clusters.
inline std::string to_dot(const ProofNet& n, const std::string& title = "N") {
  std::ostringstream os;
  os << "graph \"" << detail::dot_escape(title) << "\" {\n  node [fontname=\"monospace\"];\n";
  std::map<int, std::vector<NodeId>> members;
  std::map<int, std::vector<int>> children;
  for (NodeId v : n.live_nodes()) members[n.region(v)].push_back(v);
  for (int b : n.live_boxes()) children[n.box(b).parent].push_back(b);
  auto node_line = [&](NodeId v, const std::string& indent) {
    os << indent << "n" << v << " [";
    PNKind k = n.kind(v);
    if (k == PNKind::Conclusion)
      os << "shape=plaintext, label=\"" << detail::dot_escape(n.node(v).name) << "\"";
    else
      os << "shape=box, label=\"" << PNTraits::name(k) << "\"";
    os << "];\n";
  };
  auto emit = [&](auto&& self, int region, const std::string& indent) -> void {
    for (NodeId v : members[region]) node_line(v, indent);
    for (int b : children[region]) {
      os << indent << "subgraph cluster_" << b << " {\n" << indent << "  style=" << (n.box(b).para ? "dashed" : "solid") << ";\n";
      self(self, b, indent + "  ");
      os << indent << "}\n";
    }
  };
  emit(emit, kTopRegion, "  ");
  detail::dot_edges(n, os);
  os << "}\n";
  return os.str();
}

}  // namespace lamping
