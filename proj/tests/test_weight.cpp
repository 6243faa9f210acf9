#include <gtest/gtest.h>

#include "corpus.hpp"
#include "oracles.hpp"

using namespace lamping;

namespace {

std::set<Prefix> within(const std::vector<Prefix>& v, std::size_t n) {
  std::set<Prefix> out;
  for (const auto& p : v) {
    bool fits = true;
    for (const auto& s : p) fits = fits && s.size() <= n;
    if (fits) out.insert(p);
  }
  return out;
}

std::int64_t W(const SharingGraph& g) {
  WeightReport r = weight(TokenView::of(g));
  EXPECT_FALSE(r.infinite);
  return r.total;
}

}  // namespace

TEST(Weight, MinimalContextsMatchEnumeration) {
  int graphs = 0;
  for (const auto& e : corpus::all()) {
    for (Translation t : {Translation::LT, Translation::DLT}) {
      auto b = corpus::build(e, t);
      const int k = b.graph.index_width();
      if (b.graph.size() > 12 || k > 3) continue;
      const std::size_t n = k <= 2 ? 6 : 4;
      SCOPED_TRACE(e.name + "/" + corpus::name(t));
      ++graphs;
      TokenView v = TokenView::of(b.graph);
      for (NodeId u : b.graph.live_nodes()) {
        SGKind kind = b.graph.kind(u);
        if (kind == SGKind::Free || kind == SGKind::Eraser) continue;
        MinimalContexts m = minimal_contexts(v, u);
        ASSERT_FALSE(m.infinite);
        oracle::MinimalSets o = oracle::minimal_contexts(b.graph, u, n);
        EXPECT_EQ(within(m.B, n), o.B) << "node " << u;
        EXPECT_EQ(within(m.P, n), o.P) << "node " << u;
        EXPECT_EQ(within(m.E, n), o.E) << "node " << u;
      }
    }
  }
  EXPECT_GE(graphs, 10);
}

TEST(Weight, ErasersCountOnce) {
  auto b = corpus::build(corpus::get("k_erase"), Translation::DLT);
  TokenView v = TokenView::of(b.graph);
  for (NodeId u : b.graph.live_nodes()) {
    if (b.graph.kind(u) != SGKind::Eraser) continue;
    MinimalContexts m = minimal_contexts(v, u);
    EXPECT_EQ(m.B.size() + m.P.size() + m.E.size(), 1u);
  }
}

TEST(Weight, RunningExample) {
  EXPECT_EQ(W(oracle::running_example_graph()), 2);
  EXPECT_EQ(W(oracle::running_example_normal_graph()), 0);
  auto b = corpus::build(corpus::get("running_example"), Translation::DLT);
  EXPECT_EQ(W(b.graph), 2);
}

TEST(Weight, NormalGraphsWeighNothing) {
  for (const auto& e : corpus::all()) {
    SCOPED_TRACE(e.name);
    auto b = corpus::build(e, Translation::DLT);
    normalize_sg(b.graph);
    EXPECT_EQ(W(b.graph), 0);
  }
}

TEST(Weight, StepsChangeWeightAsExpected) {
  for (const auto& e : corpus::all()) {
    for (Translation t : {Translation::LT, Translation::DLT}) {
      SCOPED_TRACE(e.name + "/" + corpus::name(t));
      auto b = corpus::build(e, t);
      std::int64_t w = W(b.graph);
      std::int64_t size = static_cast<std::int64_t>(b.graph.size());
      normalize_sg(b.graph, 100000, CutOrder::LowestFirst, [&](const SharingGraph& g, SGStepKind k) {
        std::int64_t w2 = W(g), size2 = static_cast<std::int64_t>(g.size());
        if (k == SGStepKind::Annihilation) {
          EXPECT_EQ(w2, w);
          EXPECT_EQ(size2, size - 2);
        } else {
          EXPECT_EQ(w2, w - 2);
          EXPECT_EQ(size2, size + 2);
        }
        w = w2;
        size = size2;
      });
    }
  }
}

TEST(Weight, BoundsHold) {
  for (const auto& e : corpus::all()) {
    for (Translation t : {Translation::LT, Translation::DLT}) {
      SCOPED_TRACE(e.name + "/" + corpus::name(t));
      auto b = corpus::build(e, t);
      std::int64_t w = W(b.graph);
      std::int64_t size = static_cast<std::int64_t>(b.graph.size());
      SGStats st = normalize_sg(b.graph);
      EXPECT_LE(2 * static_cast<std::int64_t>(st.steps), 2 * w + size);
      EXPECT_LE(static_cast<std::int64_t>(b.graph.size()), w + size);
      EXPECT_LE(static_cast<std::int64_t>(st.peak_size), w + size);
    }
  }
}
