#pragma once

// Reference implementations used only by the tests. They work directly on
// SharingGraph, without TokenView, symbolic exploration or prefixes.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lamping/lamping.hpp"

namespace oracle {

using lamping::NodeId;
using lamping::PortRef;
using lamping::SGKind;
using lamping::SharingGraph;

/// Stacks written top first; the last one is the multiplicative stack.
using Stacks = std::vector<std::string>;

struct Outcome {
  enum Kind { Reached, Weakening, Empty, Fuel } kind = Fuel;
  NodeId at = lamping::kNoNode;
  int stack = -1;
  Stacks out;
};

inline Outcome run(const SharingGraph& g, PortRef enter, Stacks st, std::uint64_t fuel = 100000) {
  const int k = g.index_width();
  for (std::uint64_t n = 0; n < fuel; ++n) {
    NodeId v = enter.node;
    SGKind kind = g.kind(v);
    if (kind == SGKind::Free) return {Outcome::Reached, v, -1, st};
    if (kind == SGKind::Eraser) return {Outcome::Weakening, v, -1, st};
    int s = kind == SGKind::Fan ? g.label(v) : k;
    std::string& stack = st.at(static_cast<std::size_t>(s));
    std::uint8_t out = 0;
    if (enter.port == 0) {
      if (stack.empty()) return {Outcome::Empty, v, s, st};
      out = stack.front() == 'p' ? 1 : 2;
      stack.erase(0, 1);
    } else {
      stack.insert(stack.begin(), enter.port == 1 ? 'p' : 'q');
    }
    enter = g.peer(PortRef{v, out});
  }
  return {Outcome::Fuel, lamping::kNoNode, -1, st};
}

/// Every {p,q} word of length at most n.
inline std::vector<std::string> words(std::size_t n) {
  std::vector<std::string> out{""};
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i].size() < n) {
      out.push_back(out[i] + 'p');
      out.push_back(out[i] + 'q');
    }
  return out;
}

/// Calls f on every stack tuple with stacks of length <= n, except that
/// stack `fixed` (if >= 0) stays empty.
template <class F>
void each_context(std::size_t nstacks, std::size_t n, int fixed, F&& f) {
  auto w = words(n);
  std::vector<std::size_t> pick(nstacks, 0);
  Stacks st(nstacks);
  while (true) {
    for (std::size_t i = 0; i < nstacks; ++i) st[i] = static_cast<int>(i) == fixed ? std::string() : w[pick[i]];
    f(st);
    std::size_t i = 0;
    while (i < nstacks) {
      if (static_cast<int>(i) == fixed) {
        ++i;
        continue;
      }
      if (++pick[i] < w.size()) break;
      pick[i++] = 0;
    }
    if (i == nstacks) return;
  }
}

inline std::string to_storage(const std::string& top_first) { return std::string(top_first.rbegin(), top_first.rend()); }

inline lamping::Context to_context(const Stacks& st) {
  lamping::Context c;
  for (std::size_t i = 0; i + 1 < st.size(); ++i) c.exp.push_back(to_storage(st[i]));
  c.mult = to_storage(st.back());
  return c;
}

struct MinimalSets {
  std::set<Stacks> B, P, E;
};

/// Minimal contexts of u by enumeration: all stack tuples up to length n
/// with u's own stack empty, kept when their outcome class is lost by
/// removing the bottom symbol of any single stack.
inline MinimalSets minimal_contexts(const SharingGraph& g, NodeId u, std::size_t n) {
  const int k = g.index_width();
  const int own = g.kind(u) == SGKind::Fan ? g.label(u) : k;
  const PortRef start = g.peer(PortRef{u, 0});
  auto cls = [&](const Stacks& st) -> int {
    Outcome o = run(g, start, st);
    if (o.kind == Outcome::Reached) return 1;
    if (o.kind == Outcome::Weakening) return 2;
    if (o.kind == Outcome::Empty && o.stack == own) return 0;
    return -1;
  };
  MinimalSets out;
  each_context(static_cast<std::size_t>(k) + 1, n, own, [&](const Stacks& st) {
    int c = cls(st);
    if (c < 0) return;
    for (std::size_t i = 0; i < st.size(); ++i) {
      if (st[i].empty()) continue;
      Stacks shorter = st;
      shorter[i].pop_back();
      if (cls(shorter) == c) return;
    }
    (c == 0 ? out.B : c == 1 ? out.P : out.E).insert(st);
  });
  return out;
}

using ConcreteSemantics = std::map<std::pair<std::string, lamping::Context>, std::pair<std::string, lamping::Context>>;

/// Terminal-to-terminal pairs for every context with stacks of length <= n.
inline ConcreteSemantics semantics(const SharingGraph& g, std::size_t n) {
  ConcreteSemantics out;
  const std::size_t ns = static_cast<std::size_t>(g.index_width()) + 1;
  for (NodeId t : g.free_ports()) {
    const PortRef start = g.peer(PortRef{t, 0});
    each_context(ns, n, -1, [&](const Stacks& st) {
      Outcome o = run(g, start, st);
      if (o.kind == Outcome::Reached) out[{g.node(t).name, to_context(st)}] = {g.node(o.at).name, to_context(o.out)};
    });
  }
  return out;
}

/// Maximal direct paths from a free port, by search over edges: the next
/// edge shares the far vertex, differs from the current one, and one of
/// the two is principal for that vertex.
inline std::size_t maximal_paths(const SharingGraph& g, NodeId free) {
  struct E {
    PortRef a, b;
  };
  std::vector<E> edges;
  for (const auto& e : g.edges()) edges.push_back({e.a, e.b});
  std::size_t count = 0;
  // (edge index, port where the path leaves it)
  std::vector<std::pair<std::size_t, PortRef>> todo;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].a.node == free) todo.push_back({i, edges[i].b});
    if (edges[i].b.node == free) todo.push_back({i, edges[i].a});
  }
  std::size_t guard = 0;
  while (!todo.empty()) {
    if (++guard > 1000000) throw lamping::Error(lamping::ErrorKind::FuelExhausted, "path search diverges");
    auto [ei, arrive] = todo.back();
    todo.pop_back();
    NodeId v = arrive.node;
    bool here_principal = g.is_principal(arrive);
    bool extended = false;
    for (std::size_t j = 0; j < edges.size(); ++j) {
      if (j == ei) continue;
      for (int side = 0; side < 2; ++side) {
        PortRef mine = side == 0 ? edges[j].a : edges[j].b;
        PortRef other = side == 0 ? edges[j].b : edges[j].a;
        if (mine.node != v) continue;
        if (!here_principal && !g.is_principal(mine)) continue;
        todo.push_back({j, other});
        extended = true;
      }
    }
    if (!extended) ++count;
  }
  return count;
}

/// The sharing graph of (\x.f x x)(\z.g z) drawn by hand, fan index 0.
inline SharingGraph running_example_graph() {
  SharingGraph G;
  G.set_index_width(1);
  NodeId root = G.add_free("root");
  NodeId g = G.add_free("g");
  NodeId f = G.add_free("f");
  NodeId a0 = G.add(SGKind::App), lx = G.add(SGKind::Lambda), lz = G.add(SGKind::Lambda);
  NodeId a1 = G.add(SGKind::App), a2 = G.add(SGKind::App), a3 = G.add(SGKind::App);
  NodeId fan = G.add(SGKind::Fan, 0);
  G.connect({a0, 0}, {lx, 0});
  G.connect({a0, 1}, {lz, 0});
  G.connect({a0, 2}, {root, 0});
  G.connect({lx, 2}, {a2, 2});
  G.connect({lx, 1}, {fan, 0});
  G.connect({fan, 1}, {a1, 1});
  G.connect({fan, 2}, {a2, 1});
  G.connect({a1, 0}, {f, 0});
  G.connect({a1, 2}, {a2, 0});
  G.connect({lz, 2}, {a3, 2});
  G.connect({lz, 1}, {a3, 1});
  G.connect({a3, 0}, {g, 0});
  G.validate();
  return G;
}

/// Its normal form: f applied to two abstractions shared by two fans.
inline SharingGraph running_example_normal_graph() {
  SharingGraph G;
  G.set_index_width(1);
  NodeId root = G.add_free("root");
  NodeId g = G.add_free("g");
  NodeId f = G.add_free("f");
  NodeId f1 = G.add(SGKind::App), f2 = G.add(SGKind::App), l1 = G.add(SGKind::Lambda), l2 = G.add(SGKind::Lambda);
  NodeId fb = G.add(SGKind::Fan, 0), fv = G.add(SGKind::Fan, 0), ag = G.add(SGKind::App);
  G.connect({f1, 0}, {f, 0});
  G.connect({f1, 1}, {l1, 0});
  G.connect({f1, 2}, {f2, 0});
  G.connect({f2, 1}, {l2, 0});
  G.connect({f2, 2}, {root, 0});
  G.connect({l1, 2}, {fb, 1});
  G.connect({l2, 2}, {fb, 2});
  G.connect({l1, 1}, {fv, 1});
  G.connect({l2, 1}, {fv, 2});
  G.connect({fb, 0}, {ag, 2});
  G.connect({fv, 0}, {ag, 1});
  G.connect({ag, 0}, {g, 0});
  G.validate();
  return G;
}

}  // namespace oracle
