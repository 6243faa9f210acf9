#include <gtest/gtest.h>

#include "corpus.hpp"
#include "oracles.hpp"

using namespace lamping;

namespace {

// Two fans facing each other, auxiliary ports on free ports a1 a2 / b1 b2.
SharingGraph fan_pair(int i, int j) {
  SharingGraph g;
  g.set_index_width(std::max(i, j) + 1);
  NodeId a1 = g.add_free("a1"), a2 = g.add_free("a2"), b1 = g.add_free("b1"), b2 = g.add_free("b2");
  NodeId u = g.add(SGKind::Fan, i), v = g.add(SGKind::Fan, j);
  g.connect({u, 0}, {v, 0});
  g.connect({u, 1}, {a1, 0});
  g.connect({u, 2}, {a2, 0});
  g.connect({v, 1}, {b1, 0});
  g.connect({v, 2}, {b2, 0});
  return g;
}

NodeId peer_node(const SharingGraph& g, const std::string& free) { return g.peer(PortRef{*g.free_port(free), 0}).node; }

}  // namespace

TEST(SharingGraph, BetaAnnihilation) {
  // (\x.x) y
  SharingGraph g;
  NodeId root = g.add_free("root"), y = g.add_free("y");
  NodeId lam = g.add(SGKind::Lambda), app = g.add(SGKind::App);
  g.connect({lam, 1}, {lam, 2});
  g.connect({app, 0}, {lam, 0});
  g.connect({app, 1}, {y, 0});
  g.connect({app, 2}, {root, 0});
  g.validate();
  ASSERT_EQ(g.active_cuts().size(), 1u);
  EXPECT_EQ(g.reduce(g.active_cuts()[0]), SGStepKind::Annihilation);
  EXPECT_EQ(g.size(), 0u);
  EXPECT_EQ(peer_node(g, "root"), y);
  g.validate();
}

TEST(SharingGraph, EqualFansAnnihilate) {
  SharingGraph g = fan_pair(0, 0);
  EXPECT_EQ(reduce_step_sg(g, find_cuts_sg(g)[0]), SGStepKind::Annihilation);
  EXPECT_EQ(g.size(), 0u);
  EXPECT_EQ(peer_node(g, "a1"), *g.free_port("b1"));
  EXPECT_EQ(peer_node(g, "a2"), *g.free_port("b2"));
}

TEST(SharingGraph, DistinctFansCopy) {
  SharingGraph g = fan_pair(0, 1);
  EXPECT_EQ(g.reduce(g.find_cuts()[0]), SGStepKind::Copy);
  g.validate();
  EXPECT_EQ(g.count(SGKind::Fan), 4u);
  EXPECT_TRUE(g.is_normal());
  // a1 now sits on a fan of index 1, b1 on a fan of index 0
  EXPECT_EQ(g.label(peer_node(g, "a1")), 1);
  EXPECT_EQ(g.label(peer_node(g, "b1")), 0);
}

TEST(SharingGraph, FanCopiesAbstraction) {
  SharingGraph g;
  g.set_index_width(1);
  NodeId p = g.add_free("p"), q = g.add_free("q"), v = g.add_free("v"), b = g.add_free("b");
  NodeId fan = g.add(SGKind::Fan, 0), lam = g.add(SGKind::Lambda);
  g.connect({fan, 0}, {lam, 0});
  g.connect({fan, 1}, {p, 0});
  g.connect({fan, 2}, {q, 0});
  g.connect({lam, 1}, {v, 0});
  g.connect({lam, 2}, {b, 0});
  EXPECT_EQ(g.reduce(g.find_cuts()[0]), SGStepKind::Copy);
  g.validate();
  EXPECT_EQ(g.count(SGKind::Lambda), 2u);
  EXPECT_EQ(g.count(SGKind::Fan), 2u);
  EXPECT_EQ(g.kind(peer_node(g, "p")), SGKind::Lambda);
  EXPECT_EQ(g.kind(peer_node(g, "v")), SGKind::Fan);
  EXPECT_EQ(g.peer(PortRef{*g.free_port("v"), 0}).port, 0);
}

TEST(SharingGraph, EraserCutsAreInert) {
  SharingGraph g;
  NodeId a = g.add_free("a"), b = g.add_free("b");
  NodeId e = g.add(SGKind::Eraser), lam = g.add(SGKind::Lambda);
  g.connect({e, 0}, {lam, 0});
  g.connect({lam, 1}, {a, 0});
  g.connect({lam, 2}, {b, 0});
  EXPECT_EQ(g.find_cuts().size(), 1u);
  EXPECT_TRUE(g.active_cuts().empty());
  EXPECT_TRUE(g.is_normal());
  EXPECT_EQ(g.wpo().size(), 1u);
  try {
    g.reduce(g.find_cuts()[0]);
    FAIL() << "eraser cut reduced";
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::EraserCut);
  }
  EXPECT_EQ(normalize_sg(g).steps, 0u);
}

TEST(SharingGraph, NonCutIsRejected) {
  SharingGraph g = oracle::running_example_graph();
  for (const auto& e : g.edges()) {
    if (g.is_cut(e)) continue;
    try {
      g.reduce(e);
      FAIL();
    } catch (const Error& err) {
      EXPECT_EQ(err.kind(), ErrorKind::NotACut);
    }
    break;
  }
}

TEST(SharingGraph, RunningExampleNormalizesInTwoSteps) {
  SharingGraph g = oracle::running_example_graph();
  std::vector<SGStepKind> kinds;
  SGStats st = normalize_sg(g, 100, CutOrder::LowestFirst, [&](const SharingGraph&, SGStepKind k) { kinds.push_back(k); });
  EXPECT_EQ(st.steps, 2u);
  EXPECT_EQ(kinds, (std::vector<SGStepKind>{SGStepKind::Annihilation, SGStepKind::Copy}));
  EXPECT_EQ(st.peak_size, 7u);
  EXPECT_EQ(g.size(), 7u);
  EXPECT_TRUE(isomorphic(g, oracle::running_example_normal_graph()));
  EXPECT_EQ(dump(g), dump(oracle::running_example_normal_graph()));
  EXPECT_FALSE(isomorphic(g, oracle::running_example_graph()));
}

TEST(SharingGraph, IsomorphismModuloIndices) {
  SharingGraph a = fan_pair(0, 1), b = fan_pair(1, 0);
  EXPECT_FALSE(isomorphic(a, b));
  EXPECT_TRUE(isomorphic(a, b, true));
  EXPECT_TRUE(isomorphic(a, fan_pair(0, 1)));
  EXPECT_FALSE(isomorphic(fan_pair(0, 0), fan_pair(0, 1), true));
}

TEST(SharingGraph, ReductionOrderDoesNotChangeTheNormalForm) {
  for (const auto& e : corpus::all()) {
    for (Translation t : {Translation::LT, Translation::DLT}) {
      SCOPED_TRACE(e.name + "/" + corpus::name(t));
      auto b = corpus::build(e, t);
      SharingGraph lo = b.graph, hi = b.graph;
      auto s1 = normalize_sg(lo, 100000, CutOrder::LowestFirst);
      auto s2 = normalize_sg(hi, 100000, CutOrder::HighestFirst);
      EXPECT_TRUE(isomorphic(lo, hi));
      EXPECT_EQ(s1.steps, s2.steps);
      EXPECT_EQ(s1.steps, s1.annihilations + s1.copies);
    }
  }
}

TEST(SharingGraph, MaximalPathsOfNormalForms) {
  for (const auto& e : corpus::all()) {
    SCOPED_TRACE(e.name);
    auto b = corpus::build(e, Translation::DLT);
    if (!b.graph.is_normal()) EXPECT_THROW(count_maximal_paths(b.graph, "root"), Error);
    normalize_sg(b.graph);
    for (NodeId f : b.graph.free_ports()) {
      std::size_t n = count_maximal_paths(b.graph, b.graph.node(f).name);
      EXPECT_EQ(n, oracle::maximal_paths(b.graph, f));
      EXPECT_LE(n, b.graph.size() + 1);
    }
  }
}
