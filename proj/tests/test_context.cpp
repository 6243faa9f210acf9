#include <gtest/gtest.h>

#include <random>

#include "corpus.hpp"
#include "oracles.hpp"

using namespace lamping;

namespace {

struct Run {
  std::string from, in, to, out;
};

// Token runs on the running example, contexts written exponential|multiplicative.
const std::vector<Run> kRunningExampleRuns = {
    {"f", "e|pq", "g", "p|q"},
    {"f", "e|qpq", "g", "q|q"},
    {"root", "e|e", "f", "e|qq"},
    {"g", "p|p", "f", "e|pp"},
    {"g", "q|p", "f", "e|qpp"},
};

oracle::Stacks stacks_of(const Context& c) {
  oracle::Stacks st;
  for (std::size_t i = 0; i <= c.length(); ++i) {
    const std::string& s = c.stack(i);
    st.push_back(std::string(s.rbegin(), s.rend()));
  }
  return st;
}

}  // namespace

TEST(Context, ParseAndPrint) {
  Context c = parse_context("e|pq", 1);
  ASSERT_EQ(c.length(), 1u);
  EXPECT_TRUE(c.exp[0].empty());
  EXPECT_EQ(c.mult, "qp");  // top at the back
  EXPECT_EQ(to_string(c), "e|pq");
  EXPECT_EQ(to_string(parse_context(" pp | q |e", 2)), "pp|q|e");
  EXPECT_EQ(to_string(Context::empty(2)), "e|e|e");
  EXPECT_EQ(to_string(parse_context("pq", 0)), "pq");
  try {
    parse_context("e|e", 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Input);
  }
}

TEST(Context, RunningExampleRuns) {
  auto b = corpus::build(corpus::get("running_example"), Translation::DLT);
  SharingGraph hand = oracle::running_example_graph();
  TokenView on_graph = TokenView::of(b.graph);
  TokenView on_net = TokenView::of(b.net, b.f);
  TokenView on_hand = TokenView::of(hand);
  for (const auto& r : kRunningExampleRuns) {
    SCOPED_TRACE(r.from + " " + r.in);
    for (const TokenView* v : {&on_graph, &on_net, &on_hand}) {
      RunResult res = run_from(*v, r.from, parse_context(r.in, 1));
      ASSERT_TRUE(res.reached());
      EXPECT_EQ(v->cell(res.at).name, r.to);
      EXPECT_EQ(to_string(res.ctx), r.out);
    }
    oracle::Outcome o = oracle::run(hand, hand.peer(PortRef{*hand.free_port(r.from), 0}), stacks_of(parse_context(r.in, 1)));
    ASSERT_EQ(o.kind, oracle::Outcome::Reached);
    EXPECT_EQ(hand.node(o.at).name, r.to);
    EXPECT_EQ(to_string(oracle::to_context(o.out)), r.out);
  }
}

TEST(Context, StuckRuns) {
  auto b = corpus::build(corpus::get("k_erase"), Translation::DLT);
  TokenView v = TokenView::of(b.graph);
  RunResult w = run_from(v, "b", Context::empty(v.k()));
  EXPECT_EQ(w.status, RunResult::Status::Stuck);
  EXPECT_EQ(w.reason, StuckReason::Weakening);

  TokenView r = TokenView::of(oracle::running_example_graph());
  RunResult e = run_from(r, "f", parse_context("e|e", 1));
  EXPECT_EQ(e.status, RunResult::Status::Stuck);
  EXPECT_EQ(e.reason, StuckReason::EmptyStack);
  EXPECT_EQ(e.stack, 1);

  EXPECT_THROW(run_from(r, "nope", Context::empty(1)), Error);
  EXPECT_THROW(run_from(r, "f", Context::empty(3)), Error);
  EXPECT_EQ(run_from(r, "f", parse_context("e|pq", 1), 2).status, RunResult::Status::FuelExhausted);
}

TEST(Context, MachineAgreesWithReferenceRunner) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> len(0, 5), bit(0, 1);
  for (const auto& e : corpus::all()) {
    for (Translation t : {Translation::LT, Translation::DLT}) {
      SCOPED_TRACE(e.name + "/" + corpus::name(t));
      auto b = corpus::build(e, t);
      TokenView v = TokenView::of(b.graph);
      TokenView vn = TokenView::of(b.net, b.f);
      for (int trial = 0; trial < 200; ++trial) {
        Context c = Context::empty(v.k());
        for (std::size_t i = 0; i <= c.length(); ++i)
          for (int n = len(rng); n > 0; --n) c.stack(i).push_back(bit(rng) ? 'p' : 'q');
        for (NodeId term : b.graph.free_ports()) {
          const std::string& name = b.graph.node(term).name;
          RunResult r = run_from(v, name, c);
          RunResult rn = run_from(vn, name, c);
          oracle::Outcome o = oracle::run(b.graph, b.graph.peer(PortRef{term, 0}), stacks_of(c));
          switch (o.kind) {
            case oracle::Outcome::Reached:
              ASSERT_TRUE(r.reached());
              ASSERT_EQ(r.at, o.at);
              ASSERT_EQ(r.ctx, oracle::to_context(o.out));
              ASSERT_TRUE(rn.reached());
              ASSERT_EQ(vn.cell(rn.at).name, b.graph.node(o.at).name);
              ASSERT_EQ(rn.ctx, r.ctx);
              break;
            case oracle::Outcome::Weakening:
              ASSERT_EQ(r.reason, StuckReason::Weakening);
              ASSERT_EQ(rn.reason, StuckReason::Weakening);
              break;
            case oracle::Outcome::Empty:
              ASSERT_EQ(r.status, RunResult::Status::Stuck);
              ASSERT_EQ(r.reason, StuckReason::EmptyStack);
              ASSERT_EQ(r.stack, o.stack);
              ASSERT_EQ(rn.status, RunResult::Status::Stuck);
              break;
            case oracle::Outcome::Fuel: ASSERT_EQ(r.status, RunResult::Status::FuelExhausted); break;
          }
        }
      }
    }
  }
}
