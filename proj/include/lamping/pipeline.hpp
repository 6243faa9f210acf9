#pragma once

// The whole chain: check, build, translate, normalize, read back, compare.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "lamping/context.hpp"
#include "lamping/derivation.hpp"
#include "lamping/derivation_io.hpp"
#include "lamping/dot.hpp"
#include "lamping/proofnet.hpp"
#include "lamping/readback.hpp"
#include "lamping/semantics.hpp"
#include "lamping/sharegraph.hpp"
#include "lamping/term.hpp"
#include "lamping/translate.hpp"
#include "lamping/weight.hpp"

namespace lamping {

enum class Strategy { SG, PNMLBL };

struct RunOptions {
  Translation translation = Translation::DLT;
  Mode mode = Mode::EAL;
  std::uint64_t max_steps = 1000000;
  std::string dot_dir;           // empty: no DOT output
  std::size_t probe_depth = 0;   // 0: skip the semantics comparison
  Strategy strategy = Strategy::SG;
};

struct RunStats {
  std::size_t net_nodes = 0, net_edges = 0, net_cuts = 0;
  int net_depth = 0;
  std::size_t graph_size = 0, graph_fans = 0;
  int index_width = 0;
  WeightReport weight;
  SGStats sg;
  std::size_t normal_size = 0;
  bool steps_bound = false;  // 2n <= 2 W + |G|
  bool size_bound = false;   // |H| <= W + |G|
  std::optional<bool> semantics_match;
  std::optional<std::uint64_t> pn_steps;
  std::optional<Term> pn_readback;
  Term readback, oracle;
  bool verdict = false;
};

inline const char* to_string(Translation t) { return t == Translation::LT ? "lt" : "dlt"; }
inline const char* to_string(Strategy s) { return s == Strategy::SG ? "sg" : "pn-mlbl"; }
inline const char* to_string(Mode m) { return m == Mode::EAL ? "eal" : "lal"; }

namespace detail {
inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  if (!out) throw Error(ErrorKind::Input, "cannot write " + p.string());
  out << text;
}
}  // namespace detail

inline RunStats run_pipeline(const Derivation& d, const RunOptions& opt) {
  RunStats st;
  CheckedDerivation checked = check_tree(d, opt.mode);
  ProofNet net = build_proofnet(checked, opt.mode);
  st.net_nodes = net.size();
  st.net_edges = net.edges().size();
  st.net_cuts = net.find_cuts().size();
  st.net_depth = net.depth();

  Labelling f = labelling(net, opt.translation);
  SharingGraph g = translate(net, f);
  st.graph_size = g.size();
  st.graph_fans = g.count(SGKind::Fan);
  st.index_width = g.index_width();
  st.weight = weight(TokenView::of(g));
  if (opt.probe_depth > 0)
    st.semantics_match = semantics_table(TokenView::of(net, f), opt.probe_depth) == semantics_table(TokenView::of(g), opt.probe_depth);

  std::filesystem::path dot;
  if (!opt.dot_dir.empty()) {
    dot = opt.dot_dir;
    std::filesystem::create_directories(dot);
    detail::write_file(dot / "net.dot", to_dot(net, "net"));
    detail::write_file(dot / "graph.dot", to_dot(g, "graph"));
  }

  st.sg = normalize_sg(g, opt.max_steps);
  st.normal_size = g.size();
  if (!dot.empty()) detail::write_file(dot / "normal.dot", to_dot(g, "normal"));
  if (!st.weight.infinite) {
    auto w = st.weight.total;
    auto size = static_cast<std::int64_t>(st.graph_size);
    st.steps_bound = 2 * static_cast<std::int64_t>(st.sg.steps) <= 2 * w + size;
    st.size_bound = static_cast<std::int64_t>(st.normal_size) <= w + size;
  }
  st.readback = readback_term(TokenView::of(g));
  st.oracle = beta_normalize(checked.conclusion.subject);
  st.verdict = alpha_eq(st.readback, st.oracle) && st.steps_bound && st.size_bound;

  if (opt.strategy == Strategy::PNMLBL) {
    MLBLResult r = normalize_mlbl(net, opt.max_steps);
    st.pn_steps = r.steps;
    net.validate();
    SharingGraph h = translate(net, labelling(net, opt.translation));
    if (!dot.empty()) detail::write_file(dot / "net_normal.dot", to_dot(net, "net_normal"));
    st.pn_readback = readback_term(TokenView::of(h));
    st.verdict = st.verdict && alpha_eq(*st.pn_readback, st.readback);
  }
  return st;
}

/// Flat key=value report, one datum per line.
inline std::string report(const RunStats& st, const RunOptions& opt, const std::string& file) {
  std::ostringstream os;
  auto yes = [](bool b) { return b ? "holds" : "violated"; };
  os << "file=" << file << '\n'
     << "mode=" << to_string(opt.mode) << '\n'
     << "translation=" << to_string(opt.translation) << '\n'
     << "strategy=" << to_string(opt.strategy) << '\n'
     << "net_nodes=" << st.net_nodes << '\n'
     << "net_edges=" << st.net_edges << '\n'
     << "net_depth=" << st.net_depth << '\n'
     << "net_cuts=" << st.net_cuts << '\n'
     << "graph_size=" << st.graph_size << '\n'
     << "graph_fans=" << st.graph_fans << '\n'
     << "index_width=" << st.index_width << '\n'
     << "weight=" << st.weight.str() << '\n'
     << "steps=" << st.sg.steps << '\n'
     << "annihilations=" << st.sg.annihilations << '\n'
     << "copies=" << st.sg.copies << '\n'
     << "peak_size=" << st.sg.peak_size << '\n'
     << "normal_size=" << st.normal_size << '\n'
     << "bound_steps=" << yes(st.steps_bound) << '\n'
     << "bound_size=" << yes(st.size_bound) << '\n';
  if (st.semantics_match) os << "semantics_match=" << (*st.semantics_match ? "yes" : "no") << '\n';
  if (st.pn_steps) os << "pn_steps=" << *st.pn_steps << '\n';
  if (st.pn_readback) os << "pn_readback=" << to_string(*st.pn_readback) << '\n';
  os << "readback=" << to_string(st.readback) << '\n'
     << "oracle=" << to_string(st.oracle) << '\n'
     << "verdict=" << (st.verdict ? "pass" : "fail") << '\n';
  return os.str();
}

}  // namespace lamping
