// Command-line driver: lamping run | trace | check | readback.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "lamping/lamping.hpp"

using namespace lamping;

namespace {

struct Common {
  std::string file;
  std::string translation = "dlt";
  std::string mode;  // empty: the file's "# mode:" line, else eal
};

struct Input {
  Derivation d;
  Mode mode;
};

Input load(const Common& c) {
  std::string text = read_file(c.file);
  Mode m = c.mode.empty() ? mode_hint(text).value_or(Mode::EAL) : c.mode == "lal" ? Mode::LAL : Mode::EAL;
  return Input{parse_derivation(text), m};
}

Translation parse_translation(const std::string& s) { return s == "lt" ? Translation::LT : Translation::DLT; }

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("file", c.file, "derivation file")->required();
  cmd->add_option("--translation", c.translation, "labelling used by the translation")
      ->check(CLI::IsMember({"lt", "dlt"}))
      ->capture_default_str();
  cmd->add_option("--mode", c.mode, "logic (default: the file's mode line, else eal)")->check(CLI::IsMember({"eal", "lal"}));
}

SharingGraph load_graph(const Common& c) {
  Input in = load(c);
  ProofNet n = build_proofnet(in.d, in.mode);
  return translate(n, labelling(n, parse_translation(c.translation)));
}

int cmd_run(const Common& c, const RunOptions& base) {
  Input in = load(c);
  RunOptions opt = base;
  opt.mode = in.mode;
  opt.translation = parse_translation(c.translation);
  RunStats st = run_pipeline(in.d, opt);
  std::cout << report(st, opt, c.file);
  return st.verdict ? 0 : 1;
}

int cmd_check(const Common& c) {
  Input in = load(c);
  Judgement j = check_derivation(in.d, in.mode);
  std::cout << to_string(j) << "\nok\n";
  return 0;
}

int cmd_readback(const Common& c, std::uint64_t max_steps) {
  SharingGraph g = load_graph(c);
  normalize_sg(g, max_steps);
  std::cout << to_string(readback_term(TokenView::of(g))) << '\n';
  return 0;
}

PortRef parse_edge(const TokenView& v, const std::string& e) {
  if (auto t = v.terminal(e)) return v.leave(*t);
  auto dot = e.find('.');
  if (dot == std::string::npos) throw Error(ErrorKind::Input, "edge must be a free-port name or node.port: " + e);
  unsigned long node = 0, port = 0;
  try {
    node = std::stoul(e.substr(0, dot));
    port = std::stoul(e.substr(dot + 1));
  } catch (const std::exception&) {
    throw Error(ErrorKind::Input, "bad edge " + e);
  }
  NodeId id = static_cast<NodeId>(node);
  if (!v.live(id) || port >= v.cell(id).arity) throw Error(ErrorKind::Input, "no port " + e);
  return PortRef{id, static_cast<std::uint8_t>(port)};
}

int cmd_trace(const Common& c, const std::string& edge, const std::string& ctx_text) {
  SharingGraph g = load_graph(c);
  TokenView v = TokenView::of(g);
  PortRef start = parse_edge(v, edge);
  Context ctx = parse_context(ctx_text, v.k());
  std::size_t i = 0;
  RunResult r = run_token(v, start, ctx, kDefaultPathFuel, [&](const TokenState& s) {
    std::cout << i++ << " >" << s.enter.node << '.' << int(s.enter.port) << ' ' << SGTraits::name(g.kind(s.enter.node)) << " ["
              << to_string(s.ctx) << "]\n";
  });
  switch (r.status) {
    case RunResult::Status::Reached: std::cout << "reached " << v.cell(r.at).name << " [" << to_string(r.ctx) << "]\n"; break;
    case RunResult::Status::Stuck:
      if (r.reason == StuckReason::Weakening)
        std::cout << "stuck: weakening\n";
      else
        std::cout << "stuck: empty stack " << (r.stack == v.k() ? std::string("T") : std::to_string(r.stack + 1)) << '\n';
      break;
    case RunResult::Status::FuelExhausted: std::cout << "stuck: fuel exhausted\n"; break;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sharing-graph normalizer for EAL/LAL derivations"};
  app.require_subcommand(1);

  Common run_c, trace_c, check_c, rb_c;
  RunOptions run_opt;
  std::string strategy = "sg";
  auto* run = app.add_subcommand("run", "full pipeline with report");
  add_common(run, run_c);
  run->add_option("--max-steps", run_opt.max_steps, "reduction fuel")->capture_default_str();
  run->add_option("--dot", run_opt.dot_dir, "write DOT files for each stage here");
  run->add_option("--probe-depth", run_opt.probe_depth, "compare net and graph semantics up to this stack length (0 = off)")
      ->capture_default_str();
  run->add_option("--strategy", strategy, "also check the proof-net route with pn-mlbl")
      ->check(CLI::IsMember({"sg", "pn-mlbl"}))
      ->capture_default_str();

  std::string edge, ctx;
  auto* trace = app.add_subcommand("trace", "print every transition of one token run");
  add_common(trace, trace_c);
  trace->add_option("--edge", edge, "free-port name or node.port to enter")->required();
  trace->add_option("--ctx", ctx, "context S1|...|Sk|T, stacks top first, e for empty")->required();

  auto* check = app.add_subcommand("check", "type-check a derivation");
  add_common(check, check_c);

  std::uint64_t rb_steps = 1000000;
  auto* rb = app.add_subcommand("readback", "normalize and print the normal form");
  add_common(rb, rb_c);
  rb->add_option("--max-steps", rb_steps, "reduction fuel")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) {
      run_opt.strategy = strategy == "pn-mlbl" ? Strategy::PNMLBL : Strategy::SG;
      return cmd_run(run_c, run_opt);
    }
    if (*trace) return cmd_trace(trace_c, edge, ctx);
    if (*check) return cmd_check(check_c);
    if (*rb) return cmd_readback(rb_c, rb_steps);
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::Syntax:
      case ErrorKind::Input: return 2;
      default: return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
