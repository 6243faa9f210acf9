#pragma once

// Abstract sharing graphs and the rewrite rules of Lamping's abstract
// algorithm (no brackets, no garbage collection).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lamping/error.hpp"
#include "lamping/port_graph.hpp"

namespace lamping {

enum class SGKind { Wire, Free, Lambda, App, Fan, Eraser };

// Port layout:
//   Lambda  0 principal, 1 bound variable, 2 body
//   App     0 function (principal), 1 argument, 2 result
//   Fan     0 principal, 1 p-branch, 2 q-branch; label = index
//   Eraser  0 principal
//   Free    0 (named dangling edge, no principal port)
struct SGTraits {
  static constexpr SGKind wire = SGKind::Wire;

  static int arity(SGKind k) {
    switch (k) {
      case SGKind::Free:
      case SGKind::Eraser: return 1;
      case SGKind::Wire: return 2;
      default: return 3;
    }
  }
  static bool has_principal(SGKind k) { return k != SGKind::Wire && k != SGKind::Free; }
  static const char* name(SGKind k) {
    switch (k) {
      case SGKind::Wire: return "wire";
      case SGKind::Free: return "free";
      case SGKind::Lambda: return "lambda";
      case SGKind::App: return "app";
      case SGKind::Fan: return "fan";
      case SGKind::Eraser: return "eraser";
    }
    return "?";
  }
};

enum class SGStepKind { Annihilation, Copy };

enum class CutOrder { LowestFirst, HighestFirst };

struct SGStats {
  std::uint64_t steps = 0;
  std::uint64_t annihilations = 0;
  std::uint64_t copies = 0;
  std::size_t peak_size = 0;
};

class SharingGraph : public PortGraph<SGKind, SGTraits> {
 public:
  /// Fan indices range over 0..width-1.
  int index_width() const { return width_; }
  void set_index_width(int k) { width_ = k; }

  NodeId add_free(const std::string& name) {
    NodeId f = add(SGKind::Free, 0, name);
    free_.push_back(f);
    return f;
  }

  /// Free ports in order: main conclusion first, then context variables.
  const std::vector<NodeId>& free_ports() const { return free_; }

  std::optional<NodeId> free_port(const std::string& name) const {
    for (NodeId f : free_)
      if (node(f).name == name) return f;
    return std::nullopt;
  }

  /// |G|: proper nodes (free ports excluded).
  std::size_t size() const {
    std::size_t n = 0;
    for (NodeId v : live_nodes())
      if (kind(v) != SGKind::Free && kind(v) != SGKind::Wire) ++n;
    return n;
  }

  std::size_t count(SGKind k) const {
    std::size_t n = 0;
    for (NodeId v : live_nodes())
      if (kind(v) == k) ++n;
    return n;
  }

  bool involves_eraser(const Edge& e) const { return kind(e.a.node) == SGKind::Eraser || kind(e.b.node) == SGKind::Eraser; }

  /// Edges incident to eraser nodes.
  std::vector<Edge> wpo() const {
    std::vector<Edge> out;
    for (const auto& e : edges())
      if (involves_eraser(e)) out.push_back(e);
    return out;
  }

  /// All principal-principal edges, ascending.
  std::vector<Edge> find_cuts() const {
    std::vector<Edge> out;
    for (const auto& e : edges())
      if (is_cut(e)) out.push_back(e);
    return out;
  }

  /// Cuts that have a rewrite rule.
  std::vector<Edge> active_cuts() const {
    std::vector<Edge> out;
    for (const auto& e : find_cuts())
      if (!involves_eraser(e)) out.push_back(e);
    return out;
  }

  bool is_normal() const { return active_cuts().empty(); }

  SGStepKind reduce(const Edge& cut) {
    if (!alive(cut.a.node) || !alive(cut.b.node) || peer(cut.a) != cut.b || !is_cut(cut))
      throw Error(ErrorKind::NotACut, "edge " + describe(cut) + " is not a cut");
    if (involves_eraser(cut)) throw Error(ErrorKind::EraserCut, "no rule for eraser cut " + describe(cut));
    NodeId u = cut.a.node, v = cut.b.node;
    SGKind ku = kind(u), kv = kind(v);
    if (ku != SGKind::Fan && kv == SGKind::Fan) {
      std::swap(u, v);
      std::swap(ku, kv);
    }
    if ((ku == SGKind::Lambda && kv == SGKind::App) || (ku == SGKind::App && kv == SGKind::Lambda) ||
        (ku == SGKind::Fan && kv == SGKind::Fan && label(u) == label(v))) {
      annihilate(u, v);
      return SGStepKind::Annihilation;
    }
    if (ku == SGKind::Fan) {
      duplicate(u, v);
      return SGStepKind::Copy;
    }
    throw Error(ErrorKind::UnmatchedPair, std::string("no rule for ") + SGTraits::name(ku) + " against " + SGTraits::name(kv));
  }

  std::string describe(const Edge& e) const {
    std::ostringstream os;
    os << e.a.node << "." << int(e.a.port) << "-" << e.b.node << "." << int(e.b.port);
    return os.str();
  }

 private:
  void annihilate(NodeId u, NodeId v) {
    std::map<PortRef, PortRef> map;
    for (std::uint8_t i = 1; i <= 2; ++i) {
      NodeId w = add(SGKind::Wire);
      map[PortRef{u, i}] = PortRef{w, 0};
      map[PortRef{v, i}] = PortRef{w, 1};
    }
    rewire(map);
    kill(u);
    kill(v);
    splice_wires();
  }

  // Fan u (index i) meets v: v is duplicated and two fans of index i are
  // pushed through v's auxiliary ports.
  void duplicate(NodeId u, NodeId v) {
    NodeId v1 = add(kind(v), label(v), node(v).name);
    NodeId v2 = add(kind(v), label(v), node(v).name);
    NodeId fa = add(SGKind::Fan, label(u), node(u).name);
    NodeId fb = add(SGKind::Fan, label(u), node(u).name);
    rewire({{PortRef{v, 1}, PortRef{fa, 0}},
            {PortRef{v, 2}, PortRef{fb, 0}},
            {PortRef{u, 1}, PortRef{v1, 0}},
            {PortRef{u, 2}, PortRef{v2, 0}}});
    connect(PortRef{fa, 1}, PortRef{v1, 1});
    connect(PortRef{fa, 2}, PortRef{v2, 1});
    connect(PortRef{fb, 1}, PortRef{v1, 2});
    connect(PortRef{fb, 2}, PortRef{v2, 2});
    kill(u);
    kill(v);
  }

  std::vector<NodeId> free_;
  int width_ = 0;
};

inline std::vector<Edge> find_cuts_sg(const SharingGraph& g) { return g.find_cuts(); }

inline SGStepKind reduce_step_sg(SharingGraph& g, const Edge& cut) { return g.reduce(cut); }

/// Reduces g in place until no rule applies; eraser cuts are left alone.
/// `on_step` (if set) is called after every step.
inline SGStats normalize_sg(SharingGraph& g, std::uint64_t fuel = 1000000, CutOrder order = CutOrder::LowestFirst,
                            const std::function<void(const SharingGraph&, SGStepKind)>& on_step = {}) {
  SGStats st;
  st.peak_size = g.size();
  while (true) {
    auto cuts = g.active_cuts();
    if (cuts.empty()) break;
    if (st.steps >= fuel) throw Error(ErrorKind::FuelExhausted, "sharing graph reduction exceeded " + std::to_string(fuel) + " steps");
    const Edge& e = order == CutOrder::LowestFirst ? cuts.front() : cuts.back();
    SGStepKind k = g.reduce(e);
    ++st.steps;
    (k == SGStepKind::Annihilation ? st.annihilations : st.copies)++;
    st.peak_size = std::max(st.peak_size, g.size());
    if (on_step) on_step(g, k);
  }
  return st;
}

/// Counts maximal direct paths leaving the named free port.
inline std::size_t count_maximal_paths(const SharingGraph& g, const std::string& free_port) {
  if (!g.is_normal()) throw Error(ErrorKind::HasCuts, "graph still has cuts");
  auto f = g.free_port(free_port);
  if (!f) throw Error(ErrorKind::Input, "no free port named " + free_port);
  const std::size_t limit = 4 * g.capacity() + 8;
  std::size_t count = 0;
  std::function<void(PortRef, std::size_t)> walk = [&](PortRef out, std::size_t len) {
    PortRef in = g.peer(out);
    NodeId w = in.node;
    if (len > limit) throw Error(ErrorKind::FuelExhausted, "direct path longer than " + std::to_string(limit));
    if (g.kind(w) == SGKind::Free || g.arity(w) == 1) {
      ++count;
      return;
    }
    if (g.is_principal(in)) {
      for (std::uint8_t p = 1; p < g.arity(w); ++p) walk(PortRef{w, p}, len + 1);
    } else {
      walk(PortRef{w, 0}, len + 1);
    }
  };
  walk(PortRef{*f, 0}, 1);
  return count;
}

// ---------------------------------------------------------------------------
// Isomorphism and canonical dumps

namespace detail {

// Extends a partial node bijection m (g -> h) from the seed pair by
// following wires. Fan indices must agree through `idx` when given.
inline bool grow_iso(const SharingGraph& g, const SharingGraph& h, NodeId sg, NodeId sh, std::map<NodeId, NodeId>& m,
                     std::map<NodeId, NodeId>& back, std::map<int, int>* idx, std::map<int, int>* idx_back) {
  std::vector<std::pair<NodeId, NodeId>> todo{{sg, sh}};
  while (!todo.empty()) {
    auto [a, b] = todo.back();
    todo.pop_back();
    auto ia = m.find(a);
    auto ib = back.find(b);
    if (ia != m.end() || ib != back.end()) {
      if (ia == m.end() || ib == back.end() || ia->second != b) return false;
      continue;
    }
    if (g.kind(a) != h.kind(b)) return false;
    if (g.kind(a) == SGKind::Free && g.node(a).name != h.node(b).name) return false;
    if (g.kind(a) == SGKind::Fan) {
      int la = g.label(a), lb = h.label(b);
      if (!idx) {
        if (la != lb) return false;
      } else {
        auto x = idx->find(la);
        auto y = idx_back->find(lb);
        if (x == idx->end() && y == idx_back->end()) {
          (*idx)[la] = lb;
          (*idx_back)[lb] = la;
        } else if (x == idx->end() || y == idx_back->end() || x->second != lb) {
          return false;
        }
      }
    }
    m[a] = b;
    back[b] = a;
    for (std::uint8_t p = 0; p < g.arity(a); ++p) {
      PortRef pa = g.peer(PortRef{a, p});
      PortRef pb = h.peer(PortRef{b, p});
      if (pa.port != pb.port) return false;
      todo.emplace_back(pa.node, pb.node);
    }
  }
  return true;
}

}  // namespace detail

/// Graph isomorphism respecting kinds, port numbers and free port names.
/// With `modulo_index` fan indices may be renamed by a bijection.
inline bool isomorphic(const SharingGraph& g, const SharingGraph& h, bool modulo_index = false) {
  if (g.size() != h.size() || g.free_ports().size() != h.free_ports().size()) return false;
  std::map<NodeId, NodeId> m, back;
  std::map<int, int> idx, idx_back;
  auto* pi = modulo_index ? &idx : nullptr;
  auto* pb = modulo_index ? &idx_back : nullptr;
  for (NodeId f : g.free_ports()) {
    auto o = h.free_port(g.node(f).name);
    if (!o || !detail::grow_iso(g, h, f, *o, m, back, pi, pb)) return false;
  }
  // closed components: match greedily with rollback per component
  for (NodeId a : g.live_nodes()) {
    if (m.count(a)) continue;
    bool matched = false;
    for (NodeId b : h.live_nodes()) {
      if (back.count(b) || h.kind(b) != g.kind(a)) continue;
      auto m2 = m, back2 = back;
      auto idx2 = idx, idx_back2 = idx_back;
      if (detail::grow_iso(g, h, a, b, m2, back2, modulo_index ? &idx2 : nullptr, modulo_index ? &idx_back2 : nullptr)) {
        m = std::move(m2);
        back = std::move(back2);
        idx = std::move(idx2);
        idx_back = std::move(idx_back2);
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return m.size() == g.live_nodes().size() && back.size() == h.live_nodes().size();
}

/// Canonical numbering: breadth-first from the free ports in order, then
/// remaining nodes by id.
inline std::vector<NodeId> canonical_order(const SharingGraph& g) {
  std::vector<NodeId> order;
  std::map<NodeId, std::size_t> seen;
  auto bfs = [&](NodeId s) {
    if (seen.count(s)) return;
    std::queue<NodeId> q;
    q.push(s);
    seen[s] = order.size();
    order.push_back(s);
    while (!q.empty()) {
      NodeId v = q.front();
      q.pop();
      for (std::uint8_t p = 0; p < g.arity(v); ++p) {
        NodeId w = g.peer(PortRef{v, p}).node;
        if (seen.count(w)) continue;
        seen[w] = order.size();
        order.push_back(w);
        q.push(w);
      }
    }
  };
  for (NodeId f : g.free_ports()) bfs(f);
  for (NodeId v : g.live_nodes()) bfs(v);
  return order;
}

/// One line per node: `id kind [index|name] port:peer ...` with canonical ids.
inline std::string dump(const SharingGraph& g) {
  auto order = canonical_order(g);
  std::map<NodeId, std::size_t> id;
  for (std::size_t i = 0; i < order.size(); ++i) id[order[i]] = i;
  static const char* port_names[4][3] = {{"0", "1", "2"}, {"P", "p", "q"}, {"P", "var", "body"}, {"P", "arg", "res"}};
  std::ostringstream os;
  for (NodeId v : order) {
    SGKind k = g.kind(v);
    os << id[v] << ' ' << SGTraits::name(k);
    if (k == SGKind::Fan) os << ' ' << g.label(v);
    if (k == SGKind::Free) os << ' ' << g.node(v).name;
    int style = k == SGKind::Fan ? 1 : k == SGKind::Lambda ? 2 : k == SGKind::App ? 3 : 0;
    for (std::uint8_t p = 0; p < g.arity(v); ++p) {
      PortRef y = g.peer(PortRef{v, p});
      os << ' ' << port_names[style][p] << ':' << id[y.node] << '.' << int(y.port);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace lamping
