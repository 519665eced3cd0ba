#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tausynth/hitting_set.hpp"
#include "tausynth/net.hpp"
#include "tausynth/reductions.hpp"
#include "tausynth/region.hpp"
#include "tausynth/solver.hpp"
#include "tausynth/transition_system.hpp"
#include "tausynth/verify.hpp"

namespace {

using json = nlohmann::json;
using namespace tausynth;

// exit codes: 0 success/accept, 1 negative verdict, 2 input error, 3 seed limit
constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;
constexpr int kSeedLimit = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

NetType parse_type_arg(const std::string& text) {
  auto type = NetType::parse(text);
  if (!type) throw std::runtime_error("invalid net type '" + text + "'");
  return *type;
}

json atom_json(const TransitionSystem& ts, const SeparationAtom& atom) {
  if (atom.kind == SeparationAtom::Kind::ssp)
    return json{{"kind", "ssp"}, {"states", {ts.states[atom.first], ts.states[atom.second]}}};
  return json{{"kind", "essp"}, {"event", ts.events[atom.first]}, {"state", ts.states[atom.second]}};
}

struct SynthArgs {
  std::string ts_file, type_text, out_file;
  int d = 0;
  bool as_json = false;
  std::uint64_t seed_limit = 0;
  int threads = 1;
};

int run_synth(const SynthArgs& args) {
  TransitionSystem ts = parse_ts(read_file(args.ts_file));
  NetType type = parse_type_arg(args.type_text);
  SynthesisOptions options;
  options.seed_limit = args.seed_limit;
  options.threads = args.threads;
  SynthesisResult result = synthesize(ts, type, args.d, options);

  std::cerr << "stats: seeds=" << result.stats.seeds_tried
            << " regions=" << result.stats.valid_regions << " elapsed="
            << result.stats.elapsed_seconds << "s\n";

  std::string net_text;
  if (result.solvable)
    net_text = serialize_net(net_from_regions(ts, type, result.admissible));

  if (args.as_json) {
    json report;
    report["verdict"] = result.solvable ? "solvable" : "unsolvable";
    report["type"] = type.to_string();
    report["d"] = args.d;
    report["stats"] = {{"seeds_tried", result.stats.seeds_tried},
                       {"valid_regions", result.stats.valid_regions},
                       {"elapsed_seconds", result.stats.elapsed_seconds}};
    if (result.solvable) {
      report["places"] = result.admissible.size();
      report["net"] = net_text;
    } else {
      report["unsolved"] = json::array();
      for (const auto& atom : result.unsolved_atoms) report["unsolved"].push_back(atom_json(ts, atom));
    }
    std::cout << report.dump(2) << '\n';
    if (result.solvable && !args.out_file.empty()) write_output(args.out_file, net_text);
    return result.solvable ? kOk : kNegative;
  }

  if (!result.solvable) {
    for (const auto& atom : result.unsolved_atoms)
      std::cout << "unsolved " << atom_to_string(ts, atom) << '\n';
    return kNegative;
  }
  write_output(args.out_file, net_text);
  return kOk;
}

int run_rg(const std::string& net_file, const std::string& out_file) {
  BooleanNet net = parse_net(read_file(net_file));
  TransitionSystem rg = reachability_graph(net);
  write_output(out_file, serialize_ts(rg));
  return kOk;
}

int run_verify(const std::string& ts_file, const std::string& net_file) {
  TransitionSystem ts = parse_ts(read_file(ts_file));
  BooleanNet net = parse_net(read_file(net_file));
  IsoResult iso;
  try {
    TransitionSystem rg = reachability_graph(net, ts.state_count() + 1);
    iso = isomorphic(ts, rg);
  } catch (const std::length_error&) {
    iso = {std::nullopt, "reachability graph is larger than the transition system"};
  }
  if (iso.mapping) {
    std::cout << "isomorphic yes\n";
    const auto& map = *iso.mapping;
    for (int s = 0; s < ts.state_count(); ++s)
      std::cout << "map " << ts.states[s] << ' ' << s << " -> " << map[s] << '\n';
    return kOk;
  }
  std::cout << "isomorphic no " << iso.reason << '\n';
  return kNegative;
}

int run_reduce(const std::string& hs_file, const std::string& theorem_text,
               const std::string& out_file) {
  HittingSetInstance inst = parse_hs(read_file(hs_file));
  auto theorem = theorem_from_name(theorem_text);
  if (!theorem) throw std::runtime_error("unknown theorem '" + theorem_text + "' (use 2.1..2.4)");
  GadgetOutput gadget = build_gadget(inst, *theorem);
  std::cerr << "d = " << gadget.d << '\n';
  std::cerr << "alpha = ESSP " << gadget.ts.events[gadget.alpha.first] << ' '
            << gadget.ts.states[gadget.alpha.second] << '\n';
  std::cerr << "states = " << gadget.ts.state_count() << ", events = " << gadget.ts.event_count()
            << '\n';
  write_output(out_file, serialize_gadget(gadget));
  return kOk;
}

int run_hs(const std::string& hs_file) {
  HittingSetInstance inst = parse_hs(read_file(hs_file));
  auto hit = hs_brute_force(inst);
  if (!hit) {
    std::cout << "no hitting set of size <= " << inst.kappa << '\n';
    return kNegative;
  }
  std::cout << "hitting-set";
  for (const auto& name : *hit) std::cout << ' ' << name;
  std::cout << '\n';
  return kOk;
}

int run_roundtrip(const std::string& hs_file, const std::string& theorem_text, int threads) {
  HittingSetInstance inst = parse_hs(read_file(hs_file));
  auto theorem = theorem_from_name(theorem_text);
  if (!theorem) throw std::runtime_error("unknown theorem '" + theorem_text + "' (use 2.1..2.4)");
  GadgetOutput gadget = build_gadget(inst, *theorem);
  NetType type = designated_type(*theorem);

  bool hs_yes = hs_brute_force(inst).has_value();
  SynthesisOptions options;
  options.stop_at_first_unsolved = true;
  options.hint = gadget.alpha;
  options.threads = threads;
  SynthesisResult result = synthesize(gadget.ts, type, gadget.d, options);

  std::cout << "hitting set: " << (hs_yes ? "yes" : "no") << '\n';
  std::cout << "synthesis (" << type.to_string() << ", d=" << gadget.d
            << "): " << (result.solvable ? "solvable" : "unsolvable") << '\n';
  if (hs_yes != result.solvable) {
    std::cout << "roundtrip MISMATCH\n";
    return kNegative;
  }
  if (result.solvable) {
    auto region = solve_single_atom(gadget.ts, type, gadget.d, gadget.alpha);
    if (!region) {
      std::cout << "roundtrip MISMATCH (no region solves alpha)\n";
      return kNegative;
    }
    auto extracted = extract_hitting_set(inst, gadget.ts, *region);
    std::cout << "extracted:";
    for (const auto& name : extracted) std::cout << ' ' << name;
    std::cout << '\n';
    if (!is_hitting_set(inst, extracted)) {
      std::cout << "roundtrip MISMATCH (extraction is not a hitting set)\n";
      return kNegative;
    }
  }
  std::cout << "roundtrip OK\n";
  return kOk;
}

int run_atoms(const std::string& ts_file) {
  TransitionSystem ts = parse_ts(read_file(ts_file));
  for (const auto& atom : enumerate_atoms(ts)) {
    if (atom.kind == SeparationAtom::Kind::ssp)
      std::cout << "ssp " << ts.states[atom.first] << ' ' << ts.states[atom.second] << '\n';
    else
      std::cout << "essp " << ts.events[atom.first] << ' ' << ts.states[atom.second] << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boolean Petri net synthesis from transition systems with bounded place dependencies"};
  app.require_subcommand(1);

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "decide d-restricted synthesis and emit the net");
  synth->add_option("ts-file", synth_args.ts_file, "transition system file")->required();
  synth->add_option("--type", synth_args.type_text, "net type, e.g. nop,inp,swap")->required();
  synth->add_option("--d", synth_args.d, "dependency bound")->required();
  synth->add_option("--out", synth_args.out_file, "net output file (default: stdout)");
  synth->add_flag("--json", synth_args.as_json, "machine-readable report on stdout");
  synth->add_option("--seed-limit", synth_args.seed_limit, "abort after this many seeds (exit 3)");
  synth->add_option("--threads", synth_args.threads, "solver worker threads")
      ->check(CLI::PositiveNumber);

  std::string rg_net, rg_out;
  auto* rg = app.add_subcommand("rg", "compute the reachability graph of a net");
  rg->add_option("net-file", rg_net)->required();
  rg->add_option("--out", rg_out, "output file (default: stdout)");

  std::string verify_ts, verify_net;
  auto* verify = app.add_subcommand("verify", "check a net against a transition system");
  verify->add_option("ts-file", verify_ts)->required();
  verify->add_option("net-file", verify_net)->required();

  std::string reduce_hs, reduce_theorem, reduce_out;
  auto* reduce = app.add_subcommand("reduce", "generate a synthesis instance from a hitting set instance");
  reduce->add_option("hs-file", reduce_hs)->required();
  reduce->add_option("--theorem", reduce_theorem, "2.1, 2.2, 2.3 or 2.4")->required();
  reduce->add_option("--out", reduce_out, "output file (default: stdout)");

  std::string hs_file;
  auto* hs = app.add_subcommand("hs", "solve a hitting set instance by brute force");
  hs->add_option("hs-file", hs_file)->required();

  std::string rt_hs, rt_theorem;
  int rt_threads = 1;
  auto* roundtrip = app.add_subcommand("roundtrip", "check reduce/synthesize/extract agreement");
  roundtrip->add_option("hs-file", rt_hs)->required();
  roundtrip->add_option("--theorem", rt_theorem)->required();
  roundtrip->add_option("--threads", rt_threads)->check(CLI::PositiveNumber);

  std::string atoms_ts;
  auto* atoms = app.add_subcommand("atoms", "dump the separation atoms of a transition system");
  atoms->add_option("ts-file", atoms_ts)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;  // --help exits cleanly
  }

  try {
    if (synth->parsed()) return run_synth(synth_args);
    if (rg->parsed()) return run_rg(rg_net, rg_out);
    if (verify->parsed()) return run_verify(verify_ts, verify_net);
    if (reduce->parsed()) return run_reduce(reduce_hs, reduce_theorem, reduce_out);
    if (hs->parsed()) return run_hs(hs_file);
    if (roundtrip->parsed()) return run_roundtrip(rt_hs, rt_theorem, rt_threads);
    if (atoms->parsed()) return run_atoms(atoms_ts);
  } catch (const SeedLimitExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSeedLimit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
