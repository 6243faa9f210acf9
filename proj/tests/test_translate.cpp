#include <gtest/gtest.h>

#include "corpus.hpp"
#include "oracles.hpp"

using namespace lamping;

TEST(Translate, RunningExampleMatchesHandDrawnGraph) {
  for (Translation t : {Translation::LT, Translation::DLT}) {
    auto b = corpus::build(corpus::get("running_example"), t);
    EXPECT_EQ(b.graph.size(), 7u);
    EXPECT_EQ(b.graph.index_width(), 1);
    EXPECT_TRUE(isomorphic(b.graph, oracle::running_example_graph())) << dump(b.graph);
  }
}

TEST(Translate, ProperNodesSurviveAndDoorsVanish) {
  for (const auto& e : corpus::all()) {
    SCOPED_TRACE(e.name);
    auto b = corpus::build(e, Translation::DLT);
    const auto& n = b.net;
    EXPECT_EQ(b.graph.count(SGKind::Lambda), n.count(PNKind::RLolli));
    EXPECT_EQ(b.graph.count(SGKind::App), n.count(PNKind::LLolli));
    EXPECT_EQ(b.graph.count(SGKind::Fan), n.count(PNKind::X));
    EXPECT_EQ(b.graph.count(SGKind::Eraser), n.count(PNKind::W));
    EXPECT_EQ(b.graph.count(SGKind::Wire), 0u);
    EXPECT_EQ(b.graph.free_ports().size(), n.conclusions().size());
    EXPECT_EQ(b.graph.node(b.graph.free_ports()[0]).name, "root");
    // a cut-free net has a normal graph
    if (n.find_cuts().empty()) EXPECT_TRUE(b.graph.is_normal());
  }
}

TEST(Translate, LabellingsAreCompatible) {
  for (const auto& e : corpus::all()) {
    SCOPED_TRACE(e.name);
    ProofNet n = build_proofnet(e.derivation, e.mode);
    Labelling lt = labelling_lt(n), dlt = labelling_dlt(n);
    EXPECT_TRUE(check_compatible(n, lt));
    EXPECT_TRUE(check_compatible(n, dlt));
    EXPECT_EQ(dlt.image_size(), n.count(PNKind::X));
    std::set<int> depths;
    for (NodeId v : n.nodes_of(PNKind::X)) depths.insert(n.node_depth(v));
    EXPECT_EQ(lt.image_size(), depths.size());
    EXPECT_EQ(lt.width, static_cast<int>(depths.size()));
  }
}

TEST(Translate, IncompatibleLabellingIsRejected) {
  bool tried = false;
  for (const auto& e : corpus::all()) {
    ProofNet n = build_proofnet(e.derivation, e.mode);
    auto xs = n.nodes_of(PNKind::X);
    for (NodeId a : xs)
      for (NodeId b : xs) {
        if (tried || n.node_depth(a) == n.node_depth(b)) continue;
        Labelling f = labelling_dlt(n);
        f.index[b] = f.index[a];
        EXPECT_FALSE(check_compatible(n, f));
        try {
          translate(n, f);
          ADD_FAILURE() << e.name;
        } catch (const Error& err) {
          EXPECT_EQ(err.kind(), ErrorKind::IncompatibleLabelling);
        }
        tried = true;
      }
  }
  EXPECT_TRUE(tried) << "no corpus net has contractions at two depths";

  ProofNet r = build_proofnet(corpus::get("running_example").derivation, Mode::EAL);
  Labelling empty;
  EXPECT_FALSE(check_compatible(r, empty));
}

TEST(Translate, InducedLabellingStaysCompatible) {
  for (const auto& e : corpus::all()) {
    for (Translation t : {Translation::LT, Translation::DLT}) {
      SCOPED_TRACE(e.name + "/" + corpus::name(t));
      ProofNet n = build_proofnet(e.derivation, e.mode);
      Labelling f = labelling(n, t);
      const int width = f.width;
      while (auto cut = mlbl_next(n)) {
        PNStep s = n.reduce(*cut);
        f = induced_labelling(n, f, s);
        ASSERT_TRUE(check_compatible(n, f));
        ASSERT_EQ(f.width, width);
        ASSERT_NO_THROW(translate(n, f));
      }
    }
  }
}

TEST(Translate, NodeMapPointsAtMatchingKinds) {
  ProofNet n = build_proofnet(corpus::get("church2_church2").derivation, Mode::EAL);
  std::map<NodeId, NodeId> m;
  SharingGraph g = translate(n, labelling_dlt(n), &m);
  for (const auto& [a, b] : m) {
    switch (n.kind(a)) {
      case PNKind::RLolli: EXPECT_EQ(g.kind(b), SGKind::Lambda); break;
      case PNKind::LLolli: EXPECT_EQ(g.kind(b), SGKind::App); break;
      case PNKind::X: EXPECT_EQ(g.kind(b), SGKind::Fan); break;
      case PNKind::Conclusion: EXPECT_EQ(g.kind(b), SGKind::Free); break;
      default: ADD_FAILURE() << "door or wire kept in the node map";
    }
  }
}
