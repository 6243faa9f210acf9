#pragma once

// Proof-nets for EAL / LAL: construction from checked derivations, boxes
// and depths, paths, and cut elimination with the MLBL strategy.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lamping/derivation.hpp"
#include "lamping/error.hpp"
#include "lamping/port_graph.hpp"

namespace lamping {

enum class PNKind { Wire, Conclusion, RLolli, LLolli, X, W, RBang, LBang, RPara, LPara, RForall, LForall, RMu, LMu };

// Port layout (port 0 is principal whenever the kind has one):
//   RLolli  0 conclusion A-o B, 1 hypothesis A, 2 premise B
//   LLolli  0 hypothesis A-o B, 1 argument A, 2 result B
//   X       0 contracted hypothesis, 1 first copy, 2 second copy
//   W       0 discarded hypothesis
//   doors, forall, mu   0 outside / introduced formula, 1 inside / premise
//   Conclusion          0 (no principal port)
struct PNTraits {
  static constexpr PNKind wire = PNKind::Wire;

  static int arity(PNKind k) {
    switch (k) {
      case PNKind::Conclusion:
      case PNKind::W: return 1;
      case PNKind::RLolli:
      case PNKind::LLolli:
      case PNKind::X: return 3;
      default: return 2;
    }
  }
  static bool has_principal(PNKind k) { return k != PNKind::Wire && k != PNKind::Conclusion; }
  static const char* name(PNKind k) {
    switch (k) {
      case PNKind::Wire: return "wire";
      case PNKind::Conclusion: return "conclusion";
      case PNKind::RLolli: return "RLolli";
      case PNKind::LLolli: return "LLolli";
      case PNKind::X: return "X";
      case PNKind::W: return "W";
      case PNKind::RBang: return "RBang";
      case PNKind::LBang: return "LBang";
      case PNKind::RPara: return "RPara";
      case PNKind::LPara: return "LPara";
      case PNKind::RForall: return "RForall";
      case PNKind::LForall: return "LForall";
      case PNKind::RMu: return "RMu";
      case PNKind::LMu: return "LMu";
    }
    return "?";
  }
};

inline bool is_door(PNKind k) {
  return k == PNKind::RBang || k == PNKind::LBang || k == PNKind::RPara || k == PNKind::LPara;
}

inline constexpr int kTopRegion = -1;

struct Box {
  bool para = false;  // $-box when true
  int parent = kTopRegion;
  NodeId principal = kNoNode;
  std::vector<NodeId> aux;
  bool alive = true;
};

enum class PNStepKind { Lolli, BoxBox, Contraction, Forall, Mu };

inline const char* to_string(PNStepKind k) {
  switch (k) {
    case PNStepKind::Lolli: return "lolli";
    case PNStepKind::BoxBox: return "box-box";
    case PNStepKind::Contraction: return "contraction";
    case PNStepKind::Forall: return "forall";
    case PNStepKind::Mu: return "mu";
  }
  return "?";
}

/// What one reduction step did. `origin` maps every node created by the
/// step to the node of the redex it comes from.
struct PNStep {
  PNStepKind kind;
  int depth = 0;
  std::map<NodeId, NodeId> origin;
};

class ProofNet : public PortGraph<PNKind, PNTraits> {
 public:
  explicit ProofNet(Mode mode = Mode::EAL) : mode_(mode) {}

  Mode mode() const { return mode_; }

  NodeId add_node(PNKind k, int region, std::string name = {}, int label = 0) {
    NodeId id = add(k, label, std::move(name));
    region_.push_back(region);
    door_of_.push_back(kTopRegion);
    return id;
  }

  /// Innermost box containing the node (doors belong to the outside).
  int region(NodeId v) const { return region_.at(v); }
  int door_of(NodeId v) const { return door_of_.at(v); }

  void set_door(NodeId v, int b) { door_of_.at(v) = b; }

  void set_box_doors(int b, NodeId principal, std::vector<NodeId> aux) {
    Box& bx = boxes_.at(static_cast<std::size_t>(b));
    bx.principal = principal;
    bx.aux = std::move(aux);
  }

  int new_box(bool para, int parent) {
    Box b;
    b.para = para;
    b.parent = parent;
    boxes_.push_back(b);
    return static_cast<int>(boxes_.size() - 1);
  }

  const Box& box(int b) const { return boxes_.at(static_cast<std::size_t>(b)); }
  std::vector<int> live_boxes() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < boxes_.size(); ++i)
      if (boxes_[i].alive) out.push_back(static_cast<int>(i));
    return out;
  }

  int region_depth(int r) const {
    int d = 0;
    for (; r != kTopRegion; r = boxes_.at(static_cast<std::size_t>(r)).parent) ++d;
    return d;
  }

  int node_depth(NodeId v) const { return region_depth(region(v)); }

  /// Region seen from a port: the inside port of a door lives in its box.
  int port_region(PortRef x) const {
    if (is_door(kind(x.node)) && x.port == 1) return door_of(x.node);
    return region(x.node);
  }

  int edge_depth(const Edge& e) const { return region_depth(port_region(e.a)); }

  int depth() const {
    int d = 0;
    for (const auto& e : edges()) d = std::max(d, edge_depth(e));
    return d;
  }

  /// Is region r equal to or nested inside box b?
  bool inside(int r, int b) const {
    for (; r != kTopRegion; r = boxes_.at(static_cast<std::size_t>(r)).parent)
      if (r == b) return true;
    return false;
  }

  /// Nodes strictly inside b, including doors of nested boxes.
  std::vector<NodeId> contents(int b) const {
    std::vector<NodeId> out;
    for (NodeId v : live_nodes())
      if (inside(region(v), b)) out.push_back(v);
    return out;
  }

  /// Conclusion pseudo-nodes, main conclusion first.
  const std::vector<NodeId>& conclusions() const { return conclusions_; }
  void add_conclusion(NodeId c) { conclusions_.push_back(c); }

  std::optional<NodeId> conclusion(const std::string& name) const {
    for (NodeId c : conclusions_)
      if (node(c).name == name) return c;
    return std::nullopt;
  }

  /// Proper nodes (conclusions and wires excluded).
  std::size_t size() const {
    std::size_t n = 0;
    for (NodeId v : live_nodes())
      if (kind(v) != PNKind::Conclusion && kind(v) != PNKind::Wire) ++n;
    return n;
  }

  std::size_t count(PNKind k) const {
    std::size_t n = 0;
    for (NodeId v : live_nodes())
      if (kind(v) == k) ++n;
    return n;
  }

  std::vector<NodeId> nodes_of(PNKind k) const {
    std::vector<NodeId> out;
    for (NodeId v : live_nodes())
      if (kind(v) == k) out.push_back(v);
    return out;
  }

  /// Cuts that have a rewrite rule (weakening cuts are inert), by depth
  /// then by lowest node id.
  std::vector<Edge> find_cuts() const {
    std::vector<Edge> out;
    for (const auto& e : edges())
      if (is_cut(e) && kind(e.a.node) != PNKind::W && kind(e.b.node) != PNKind::W) out.push_back(e);
    std::stable_sort(out.begin(), out.end(), [&](const Edge& x, const Edge& y) {
      int dx = edge_depth(x), dy = edge_depth(y);
      if (dx != dy) return dx < dy;
      return x < y;
    });
    return out;
  }

  /// The box whose principal door sits on a contraction cut, if e is one.
  std::optional<int> contraction_box(const Edge& e) const {
    auto k = [&](PortRef x) { return kind(x.node); };
    if (k(e.a) == PNKind::X && k(e.b) == PNKind::RBang) return door_of(e.b.node);
    if (k(e.b) == PNKind::X && k(e.a) == PNKind::RBang) return door_of(e.a.node);
    return std::nullopt;
  }

  PNStep reduce(const Edge& cut) {
    if (!alive(cut.a.node) || !alive(cut.b.node) || peer(cut.a) != cut.b || !is_cut(cut))
      throw Error(ErrorKind::NotACut, "edge " + describe(cut) + " is not a cut");
    PortRef x = cut.a, y = cut.b;
    PNKind kx = kind(x.node), ky = kind(y.node);
    auto is_right = [](PNKind k) {
      return k == PNKind::RLolli || k == PNKind::RBang || k == PNKind::RPara || k == PNKind::RForall || k == PNKind::RMu;
    };
    if (!is_right(kx)) {
      std::swap(x, y);
      std::swap(kx, ky);
    }
    PNStep step{PNStepKind::Lolli, edge_depth(cut), {}};
    if (kx == PNKind::RLolli && ky == PNKind::LLolli) {
      annihilate(x.node, y.node, 2);
    } else if (kx == PNKind::RForall && ky == PNKind::LForall) {
      step.kind = PNStepKind::Forall;
      annihilate(x.node, y.node, 1);
    } else if (kx == PNKind::RMu && ky == PNKind::LMu) {
      step.kind = PNStepKind::Mu;
      annihilate(x.node, y.node, 1);
    } else if ((kx == PNKind::RBang && ky == PNKind::LBang) || (kx == PNKind::RPara && ky == PNKind::LPara)) {
      step.kind = PNStepKind::BoxBox;
      merge_boxes(x.node, y.node);
    } else if (kx == PNKind::RBang && ky == PNKind::X) {
      step.kind = PNStepKind::Contraction;
      step.origin = duplicate_box(y.node, x.node);
    } else {
      throw Error(ErrorKind::UnmatchedPair, std::string("no rule for ") + PNTraits::name(kx) + " against " + PNTraits::name(ky));
    }
    return step;
  }

  /// Follows the unique simple continuation of a direct path whose first
  /// edge leaves `start` through port `from`. Calls visit(edge) for each
  /// edge; returns false if the path can only go on non-simply, i.e. it
  /// entered a principal port of a node with further ports.
  template <class Visit>
  bool follow_simple(PortRef from, Visit&& visit) const {
    PortRef out = from;
    std::size_t guard = capacity() * 3 + 3;
    while (guard-- > 0) {
      PortRef in = peer(out);
      visit(Edge::of(out, in));
      NodeId w = in.node;
      if (kind(w) == PNKind::Conclusion || arity(w) == 1) return true;
      if (is_principal(in)) return false;
      out = PortRef{w, 0};
    }
    return false;
  }

  /// A box is special when every direct path from one of its premises is simple.
  bool is_special_box(int b) const {
    for (NodeId d : box(b).aux)
      if (!follow_simple(PortRef{d, 0}, [](const Edge&) {})) return false;
    return true;
  }

  /// Checks, for every node, that a direct path starting there which becomes
  /// non-simple contains a cut no deeper than its first edge. Returns the
  /// number of nodes for which this fails.
  std::size_t nonsimple_path_violations() const {
    std::size_t bad = 0;
    for (NodeId v : live_nodes()) {
      if (!has_principal(v)) continue;
      std::vector<Edge> path;
      bool simple = follow_simple(PortRef{v, 0}, [&](const Edge& e) { path.push_back(e); });
      if (simple || path.empty()) continue;
      int d1 = edge_depth(path.front());
      bool found = false;
      for (const auto& e : path) found = found || (is_cut(e) && edge_depth(e) <= d1);
      if (!found) ++bad;
    }
    return bad;
  }

  std::string describe(const Edge& e) const {
    std::ostringstream os;
    os << e.a.node << "." << int(e.a.port) << "-" << e.b.node << "." << int(e.b.port);
    return os.str();
  }

  /// Structural sanity: symmetric wiring, consistent edge depths, LAL door counts.
  void validate() const {
    PortGraph::validate();
    for (const auto& e : edges()) {
      if (port_region(e.a) != port_region(e.b))
        throw Error(ErrorKind::UnmatchedPair, "edge " + describe(e) + " crosses a box border");
    }
    if (mode_ == Mode::LAL) {
      for (int b : live_boxes()) {
        const Box& bx = box(b);
        if (bx.para) continue;
        if (bx.aux.size() > 1) throw Error(ErrorKind::UnmatchedPair, "!-box with more than one door");
        for (NodeId d : bx.aux)
          if (kind(d) != PNKind::LBang) throw Error(ErrorKind::UnmatchedPair, "!-box with a $ door");
      }
    }
  }

 private:
  NodeId wire_at(int region) { return add_node(PNKind::Wire, region); }

  // Kills u and v, joining their auxiliary ports pairwise (1 with 1, 2 with 2).
  void annihilate(NodeId u, NodeId v, int pairs) {
    std::map<PortRef, PortRef> map;
    for (int i = 1; i <= pairs; ++i) {
      NodeId w = wire_at(region(u));
      map[PortRef{u, static_cast<std::uint8_t>(i)}] = PortRef{w, 0};
      map[PortRef{v, static_cast<std::uint8_t>(i)}] = PortRef{w, 1};
    }
    rewire(map);
    kill(u);
    kill(v);
    splice_wires();
  }

  void merge_boxes(NodeId r, NodeId d) {
    int b1 = door_of(r), b2 = door_of(d);
    NodeId w = wire_at(b1);
    rewire({{PortRef{r, 1}, PortRef{w, 0}}, {PortRef{d, 1}, PortRef{w, 1}}});
    kill(r);
    kill(d);
    splice_wires();
    for (NodeId v : live_nodes())
      if (region_[v] == b1) region_[v] = b2;
    for (auto& bx : boxes_)
      if (bx.alive && bx.parent == b1) bx.parent = b2;
    auto& aux2 = boxes_[static_cast<std::size_t>(b2)].aux;
    auto pos = std::find(aux2.begin(), aux2.end(), d);
    std::vector<NodeId> moved = boxes_[static_cast<std::size_t>(b1)].aux;
    for (NodeId a : moved) door_of_[a] = b2;
    pos = aux2.erase(pos);
    aux2.insert(pos, moved.begin(), moved.end());
    boxes_[static_cast<std::size_t>(b1)].alive = false;
  }

  std::map<NodeId, NodeId> duplicate_box(NodeId x0, NodeId r) {
    std::map<NodeId, NodeId> origin;
    int b = door_of(r);
    const int outer = box(b).parent;
    std::vector<NodeId> aux = box(b).aux;

    std::map<int, int> box_map;
    for (int c : live_boxes())
      if (inside(c, b)) box_map[c] = -2;
    for (auto& [old_box, nb] : box_map) nb = new_box(box(old_box).para, box(old_box).parent);
    for (auto& [old_box, nb] : box_map) {
      int p = boxes_[static_cast<std::size_t>(old_box)].parent;
      boxes_[static_cast<std::size_t>(nb)].parent = box_map.count(p) ? box_map[p] : p;
    }
    auto map_region = [&](int reg) { return box_map.count(reg) ? box_map[reg] : reg; };

    std::vector<NodeId> group = contents(b);
    group.push_back(r);
    group.insert(group.end(), aux.begin(), aux.end());
    std::sort(group.begin(), group.end());
    std::map<NodeId, NodeId> copy;
    for (NodeId v : group) {
      NodeId c = add_node(kind(v), map_region(region(v)), node(v).name, label(v));
      door_of_[c] = door_of(v) == kTopRegion ? kTopRegion : map_region(door_of(v));
      copy[v] = c;
      origin[c] = v;
    }
    for (NodeId v : group) {
      for (int p = 0; p < arity(v); ++p) {
        PortRef y = peer(PortRef{v, static_cast<std::uint8_t>(p)});
        auto it = copy.find(y.node);
        if (it == copy.end()) continue;
        connect(PortRef{copy[v], static_cast<std::uint8_t>(p)}, PortRef{it->second, y.port});
      }
    }
    for (auto& [old_box, nb] : box_map) {
      Box& nbx = boxes_[static_cast<std::size_t>(nb)];
      const Box& obx = boxes_[static_cast<std::size_t>(old_box)];
      nbx.principal = copy.at(obx.principal);
      nbx.aux.clear();
      for (NodeId a : obx.aux) nbx.aux.push_back(copy.at(a));
    }

    PortRef first = peer(PortRef{x0, 1});
    PortRef second = peer(PortRef{x0, 2});
    connect(PortRef{r, 0}, first);
    connect(PortRef{copy[r], 0}, second);
    for (NodeId d : aux) {
      PortRef outside = peer(PortRef{d, 0});
      NodeId xj = add_node(PNKind::X, outer, node(x0).name, label(x0));
      origin[xj] = x0;
      connect(PortRef{xj, 0}, outside);
      connect(PortRef{xj, 1}, PortRef{d, 0});
      connect(PortRef{xj, 2}, PortRef{copy[d], 0});
    }
    kill(x0);
    return origin;
  }

  Mode mode_;
  std::vector<int> region_;
  std::vector<int> door_of_;
  std::vector<Box> boxes_;
  std::vector<NodeId> conclusions_;
};

inline const std::string kMainConclusion = "root";

namespace detail {

class NetBuilder {
 public:
  explicit NetBuilder(ProofNet& net) : net_(net) {}

  struct Sub {
    PortRef main;
    std::map<std::string, PortRef> hyps;
  };

  Sub build(const CheckedDerivation& d, int region) {
    const Derivation& src = *d.source;
    auto attr = [&](const char* k) { return src.attr(k); };
    auto take = [](Sub& s, const std::string& x) {
      PortRef p = s.hyps.at(x);
      s.hyps.erase(x);
      return p;
    };
    switch (d.rule) {
      case Rule::A: {
        NodeId w = net_.add_node(PNKind::Wire, region);
        return Sub{PortRef{w, 0}, {{attr("x"), PortRef{w, 1}}}};
      }
      case Rule::U: {
        Sub t = build(d.premises[0], region);
        Sub u = build(d.premises[1], region);
        net_.connect(t.main, take(u, attr("x")));
        u.hyps.insert(t.hyps.begin(), t.hyps.end());
        return u;
      }
      case Rule::W: {
        Sub s = build(d.premises[0], region);
        NodeId v = net_.add_node(PNKind::W, region, attr("x"));
        s.hyps[attr("x")] = PortRef{v, 0};
        return s;
      }
      case Rule::X: {
        Sub s = build(d.premises[0], region);
        NodeId v = net_.add_node(PNKind::X, region, attr("z"));
        net_.connect(PortRef{v, 1}, take(s, attr("x")));
        net_.connect(PortRef{v, 2}, take(s, attr("y")));
        s.hyps[attr("z")] = PortRef{v, 0};
        return s;
      }
      case Rule::RLolli: {
        Sub s = build(d.premises[0], region);
        NodeId v = net_.add_node(PNKind::RLolli, region, attr("x"));
        net_.connect(PortRef{v, 1}, take(s, attr("x")));
        net_.connect(PortRef{v, 2}, s.main);
        s.main = PortRef{v, 0};
        return s;
      }
      case Rule::LLolli: {
        Sub t = build(d.premises[0], region);
        Sub u = build(d.premises[1], region);
        NodeId v = net_.add_node(PNKind::LLolli, region, attr("y"));
        net_.connect(PortRef{v, 1}, t.main);
        net_.connect(PortRef{v, 2}, take(u, attr("x")));
        u.hyps.insert(t.hyps.begin(), t.hyps.end());
        u.hyps[attr("y")] = PortRef{v, 0};
        return u;
      }
      case Rule::PBang:
      case Rule::PBang1:
      case Rule::PBang2:
      case Rule::PPara: {
        bool para = d.rule == Rule::PPara;
        std::set<std::string> bang;
        if (para && src.has("bang")) {
          std::istringstream ss(src.attr("bang"));
          for (std::string v; ss >> v;) bang.insert(v);
        }
        int b = net_.new_box(para, region);
        Sub s = build(d.premises[0], b);
        NodeId r = net_.add_node(para ? PNKind::RPara : PNKind::RBang, region);
        net_.set_door(r, b);
        net_.connect(PortRef{r, 1}, s.main);
        s.main = PortRef{r, 0};
        std::vector<NodeId> aux;
        for (const auto& h : d.premises[0].conclusion.ctx) {
          PNKind k = (!para || bang.count(h.var)) ? PNKind::LBang : PNKind::LPara;
          NodeId a = net_.add_node(k, region, h.var);
          net_.set_door(a, b);
          net_.connect(PortRef{a, 1}, s.hyps.at(h.var));
          s.hyps[h.var] = PortRef{a, 0};
          aux.push_back(a);
        }
        net_.set_box_doors(b, r, aux);
        return s;
      }
      case Rule::RForall:
      case Rule::RMu: {
        Sub s = build(d.premises[0], region);
        NodeId v = net_.add_node(d.rule == Rule::RForall ? PNKind::RForall : PNKind::RMu, region);
        net_.connect(PortRef{v, 1}, s.main);
        s.main = PortRef{v, 0};
        return s;
      }
      case Rule::LForall:
      case Rule::LMu: {
        Sub s = build(d.premises[0], region);
        NodeId v = net_.add_node(d.rule == Rule::LForall ? PNKind::LForall : PNKind::LMu, region, attr("x"));
        net_.connect(PortRef{v, 1}, take(s, attr("x")));
        s.hyps[attr("x")] = PortRef{v, 0};
        return s;
      }
    }
    throw Error(ErrorKind::Input, "unknown rule");
  }

 private:
  ProofNet& net_;
};

}  // namespace detail

inline ProofNet build_proofnet(const CheckedDerivation& d, Mode mode) {
  for (const auto& h : d.conclusion.ctx)
    if (h.var == kMainConclusion) throw Error(ErrorKind::Input, "variable name '" + kMainConclusion + "' is reserved");
  ProofNet net(mode);
  detail::NetBuilder builder(net);
  auto sub = builder.build(d, kTopRegion);
  NodeId root = net.add_node(PNKind::Conclusion, kTopRegion, kMainConclusion, 1);
  net.connect(PortRef{root, 0}, sub.main);
  net.add_conclusion(root);
  for (const auto& h : d.conclusion.ctx) {
    NodeId c = net.add_node(PNKind::Conclusion, kTopRegion, h.var);
    net.connect(PortRef{c, 0}, sub.hyps.at(h.var));
    net.add_conclusion(c);
  }
  net.splice_wires();
  net.validate();
  return net;
}

inline ProofNet build_proofnet(const Derivation& d, Mode mode) { return build_proofnet(check_tree(d, mode), mode); }

inline int net_depth(const ProofNet& n) { return n.depth(); }
inline int edge_depth(const ProofNet& n, const Edge& e) { return n.edge_depth(e); }
inline std::vector<Edge> find_cuts(const ProofNet& n) { return n.find_cuts(); }
inline bool is_special_box(const ProofNet& n, int b) { return n.is_special_box(b); }

inline PNStep reduce_step_pn(ProofNet& n, const Edge& cut) { return n.reduce(cut); }

struct MLBLResult {
  std::uint64_t steps = 0;
  std::vector<PNStep> trace;
};

/// The cut MLBL would reduce next: minimal level, lowest id, and a
/// contraction cut only when its box is special.
inline std::optional<Edge> mlbl_next(const ProofNet& n) {
  auto cuts = n.find_cuts();
  if (cuts.empty()) return std::nullopt;
  int level = n.edge_depth(cuts.front());
  for (const auto& e : cuts) {
    if (n.edge_depth(e) != level) break;
    auto b = n.contraction_box(e);
    if (b && !n.is_special_box(*b)) continue;
    return e;
  }
  throw Error(ErrorKind::UnmatchedPair, "no cut at level " + std::to_string(level) + " is allowed by MLBL");
}

/// Reduces n in place to its cut-free form.
inline MLBLResult normalize_mlbl(ProofNet& n, std::uint64_t fuel = 100000, bool keep_trace = false) {
  MLBLResult res;
  while (auto cut = mlbl_next(n)) {
    if (res.steps >= fuel) throw Error(ErrorKind::FuelExhausted, "proof-net normalization exceeded " + std::to_string(fuel) + " steps");
    PNStep s = n.reduce(*cut);
    ++res.steps;
    if (keep_trace) res.trace.push_back(std::move(s));
  }
  return res;
}

}  // namespace lamping
