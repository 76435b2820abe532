// stablecut: generate, solve, verify and benchmark Max-Cut instances.
//
// Exit codes: 0 success, 2 usage or validation error, 3 a requested
// guarantee was not met, 4 an instance exceeds the exact-oracle size limit.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stablecut/bench.hpp"
#include "stablecut/report.hpp"
#include "stablecut/stablecut.hpp"

namespace fs = std::filesystem;
using namespace stablecut;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitGuarantee = 3;
constexpr int kExitSizeLimit = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

OracleOptions oracle_options() {
  OracleOptions opts;
  if (const char* env = std::getenv("STABLECUT_ORACLE_LIMIT")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) {
      throw UsageError(std::string("STABLECUT_ORACLE_LIMIT must be a positive integer, got '") + env + "'");
    }
    opts.max_n = static_cast<Index>(v);
  }
  return opts;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json file_instance(const std::string& path) { return Json{{"source", "file"}, {"path", path}}; }

WeightedGraph load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  return read_graph(in);
}

// Writes <dir>/<name>.graph and <dir>/<name>.json and prints both paths.
void write_instance(const std::string& dir, const std::string& name, const WeightedGraph& g,
                    const Json& side) {
  const fs::path base = dir.empty() ? fs::path(".") : fs::path(dir);
  std::error_code ec;
  fs::create_directories(base, ec);
  const fs::path graph = base / (name + ".graph");
  const fs::path meta = base / (name + ".json");
  std::ofstream gout(graph);
  if (!gout) throw UsageError("cannot write " + graph.string());
  write_graph(gout, g, {side["model"].get<std::string>() + " seed " + std::to_string(side["seed"].get<std::uint64_t>())});
  std::ofstream mout(meta);
  if (!mout) throw UsageError("cannot write " + meta.string());
  mout << dump(side);
  std::cout << graph.string() << '\n' << meta.string() << '\n';
}

std::string tag(double x) { return detail::format_double(x); }

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

struct GenArgs {
  Index n = 0;
  double gamma = 1.0;
  double p = 0.5;
  double tau = 1.0;
  std::string dist = "uniform:0.5:1.5";
  std::optional<std::string> weighted;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> jitter_seed;
  std::string input;
  std::string out_dir = ".";
  std::string name;
};

struct SolveArgs {
  std::string input;
  std::string solver = "all";
  bool require_certified = false;
  std::string output;
  std::string iter_log;
  std::uint64_t seed = 0;
  double tol = 1e-6;
  int max_iter = 5000;
  int patience = 0;
  bool no_jitter = false;
  bool timing = false;
};

struct BenchArgs {
  std::vector<Index> sizes;
  std::vector<double> gammas;
  int trials = 10;
  std::uint64_t seed = 0;
  std::string dist = "uniform:0.5:1.5";
  std::vector<std::string> solvers{"dual"};
  int jobs = 1;
  int max_iter = 5000;
  int patience = 0;
  bool timing = false;
  std::string output;
};

int run_gen_planted(const GenArgs& a) {
  const WeightDistribution dist = WeightDistribution::parse(a.dist);
  const PlantedInstance inst = gen_planted(a.n, dist, a.gamma, a.seed);
  const std::string name =
      a.name.empty() ? "planted_n" + std::to_string(a.n) + "_g" + tag(a.gamma) + "_s" + std::to_string(a.seed) : a.name;
  const Json params{{"n", a.n}, {"gamma", a.gamma}, {"dist", dist.to_string()}};
  write_instance(a.out_dir, name, inst.graph, sidecar(a.seed, "planted", params, inst.planted));
  return kExitOk;
}

int run_gen_gnp(const GenArgs& a) {
  WeightedGraph g = a.weighted ? gen_gnp_weighted(a.n, a.p, WeightDistribution::parse(*a.weighted), a.seed)
                               : gen_gnp_simple(a.n, a.p, a.seed);
  const std::string name =
      a.name.empty() ? "gnp_n" + std::to_string(a.n) + "_p" + tag(a.p) + "_s" + std::to_string(a.seed) : a.name;
  Json params{{"n", a.n}, {"p", a.p}};
  params["dist"] = a.weighted ? Json(WeightDistribution::parse(*a.weighted).to_string()) : Json("constant:1");
  write_instance(a.out_dir, name, g, sidecar(a.seed, "gnp", params, std::nullopt));
  return kExitOk;
}

int run_gen_scale(const GenArgs& a) {
  const WeightedGraph g = load(a.input);
  const OracleOptions opts = oracle_options();
  const ScalingResult r = stabilize_by_scaling(g, a.gamma, opts, a.jitter_seed);
  const StabilityReport rep = analyze_stability(r.graph, opts);
  const std::string name = a.name.empty() ? stem_of(a.input) + "_scaled_g" + tag(a.gamma) : a.name;
  Json params{{"input", a.input},
              {"gamma_target", a.gamma},
              {"gamma_before", number(r.gamma_before)},
              {"gamma_after", number(r.gamma_after)},
              {"factor", r.factor},
              {"jittered", r.jittered},
              {"tie_tolerance", opts.tie_tol}};
  write_instance(a.out_dir, name, r.graph,
                 sidecar(a.jitter_seed.value_or(0), "scale", params, rep.max_cut));
  return kExitOk;
}

int run_gen_amplify(const GenArgs& a) {
  const WeightedGraph g = load(a.input);
  const WeightedGraph amp = cross_product_amplify(g, a.tau);
  const std::string name = a.name.empty() ? stem_of(a.input) + "_amp_t" + tag(a.tau) : a.name;
  const Json params{{"input", a.input}, {"tau", a.tau}};
  write_instance(a.out_dir, name, amp, sidecar(0, "amplify", params, std::nullopt));
  return kExitOk;
}

int run_solve(const SolveArgs& a) {
  const WeightedGraph g = load(a.input);
  SolveOptions opts;
  opts.solver = a.solver;
  opts.oracle = oracle_options();
  opts.dual.seed = a.seed;
  opts.dual.tol = a.tol;
  opts.dual.max_iter = a.max_iter;
  opts.dual.patience = a.patience;
  opts.dual.jitter = !a.no_jitter;
  opts.dual.record_log = !a.iter_log.empty();
  opts.tol.gap_relative = a.tol;
  opts.timing = a.timing;
  const SolveReport rep = solve_report(g, opts, file_instance(a.input));
  Json json = rep.json;
  json["command"] = Json{{"name", "solve"}, {"solver", a.solver}, {"seed", a.seed},
                         {"require_certified", a.require_certified}};
  emit(dump(json), a.output);
  if (!a.iter_log.empty()) {
    std::ofstream log(a.iter_log);
    if (!log) throw UsageError("cannot write " + a.iter_log);
    log << "iter,trace,lambda_min,gap\n";
    for (const DualIterate& it : rep.dual_log) {
      log << it.iteration << ',' << detail::format_double(it.trace) << ','
          << detail::format_double(it.lambda_min) << ',' << detail::format_double(it.gap) << '\n';
    }
  }
  if (a.require_certified && !rep.all_certified) {
    std::cerr << "stablecut: certification required but not obtained\n";
    return kExitGuarantee;
  }
  return kExitOk;
}

int run_verify(const std::string& input, const std::string& output) {
  const WeightedGraph g = load(input);
  emit(dump(verify_report(g, oracle_options(), file_instance(input))), output);
  return kExitOk;
}

int run_spectrum(const std::string& input, const std::string& output) {
  const WeightedGraph g = load(input);
  emit(dump(spectrum_report(g, oracle_options(), 16, Tolerances{}, file_instance(input))), output);
  return kExitOk;
}

int run_bench_cmd(const BenchArgs& a) {
  BenchOptions opts;
  opts.sizes = a.sizes;
  opts.gammas = a.gammas;
  opts.trials = a.trials;
  opts.seed = a.seed;
  opts.dist = WeightDistribution::parse(a.dist);
  opts.solvers = a.solvers;
  opts.oracle = oracle_options();
  opts.dual.max_iter = a.max_iter;
  opts.dual.patience = a.patience;
  opts.jobs = a.jobs;
  opts.timing = a.timing;
  std::ostringstream csv;
  write_bench_csv(csv, run_bench(opts));
  emit(csv.str(), a.output);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate, solve and certify stable Max-Cut instances"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "stablecut 1.0.0");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate instances (graph file plus JSON sidecar)");
  gen_cmd->require_subcommand(1);

  auto* planted = gen_cmd->add_subcommand("planted", "Planted model: random balanced cut with weights scaled by gamma");
  planted->add_option("--n", gen.n, "Vertex count (even)")->required();
  planted->add_option("--gamma", gen.gamma, "Cut-edge multiplier (>= 1)")->required();
  planted->add_option("--dist", gen.dist, "constant:c | uniform:a:b | two_point:p:lo:hi")->capture_default_str();
  planted->add_option("--seed", gen.seed, "RNG seed")->capture_default_str();

  auto* gnp = gen_cmd->add_subcommand("gnp", "Erdos-Renyi G(n, p), unit weights unless --weights is given");
  gnp->add_option("--n", gen.n, "Vertex count")->required()->check(CLI::NonNegativeNumber);
  gnp->add_option("--p", gen.p, "Edge probability in (0, 1)")->required();
  gnp->add_option("--weights", gen.weighted, "Weight distribution for present edges");
  gnp->add_option("--seed", gen.seed, "RNG seed")->capture_default_str();

  auto* scale = gen_cmd->add_subcommand("scale", "Scale max-cut edges so the stability becomes --gamma");
  scale->add_option("--input", gen.input, "Graph file")->required();
  scale->add_option("--gamma", gen.gamma, "Target stability")->required();
  scale->add_option("--jitter-seed", gen.jitter_seed, "Jitter weights first if the max cut is not unique");

  auto* amplify = gen_cmd->add_subcommand("amplify", "Two copies joined by tau-weighted matching");
  amplify->add_option("--input", gen.input, "Graph file")->required();
  amplify->add_option("--tau", gen.tau, "Matching weight factor (>= 1)")->required();

  for (auto* sub : {planted, gnp, scale, amplify}) {
    sub->add_option("-o,--out", gen.out_dir, "Output directory")->capture_default_str();
    sub->add_option("--name", gen.name, "Output file stem");
  }

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Run Max-Cut solvers and print a JSON report");
  solve_cmd->add_option("input", solve.input, "Graph file")->required();
  solve_cmd->add_option("--solver", solve.solver, "Solver")
      ->check(CLI::IsMember({"greedy", "contract", "spectral", "dual", "oracle", "all"}))
      ->capture_default_str();
  solve_cmd->add_flag("--require-certified", solve.require_certified,
                      "Exit 3 unless every solver's cut is certified maximum");
  solve_cmd->add_option("-o,--output", solve.output, "Write JSON here instead of stdout");
  solve_cmd->add_option("--iter-log", solve.iter_log, "Write the dual solver's iterations as CSV");
  solve_cmd->add_option("--seed", solve.seed, "Seed for randomized rounding and jitter")->capture_default_str();
  solve_cmd->add_option("--tol", solve.tol, "Relative duality-gap tolerance")->capture_default_str();
  solve_cmd->add_option("--max-iter", solve.max_iter, "Dual solver iteration limit")->capture_default_str();
  solve_cmd->add_option("--patience", solve.patience, "Stop the dual solver after this many stale iterations (0: never)");
  solve_cmd->add_flag("--no-jitter", solve.no_jitter, "Do not retry on jittered weights");
  solve_cmd->add_flag("--timing", solve.timing, "Include wall times (output is then not reproducible)");

  std::string verify_input;
  std::string verify_output;
  auto* verify_cmd = app.add_subcommand("verify", "Exact stability report (small graphs only)");
  verify_cmd->add_option("input", verify_input, "Graph file")->required();
  verify_cmd->add_option("-o,--output", verify_output, "Write JSON here instead of stdout");

  std::string spectrum_input;
  std::string spectrum_output;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Eigenvalues and spectral sufficient conditions");
  spectrum_cmd->add_option("input", spectrum_input, "Graph file")->required();
  spectrum_cmd->add_option("-o,--output", spectrum_output, "Write JSON here instead of stdout");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Planted-model recovery sweep, CSV output");
  bench_cmd->add_option("--n", bench.sizes, "Vertex counts")->required()->delimiter(',');
  bench_cmd->add_option("--gamma", bench.gammas, "Gamma values")->required()->delimiter(',');
  bench_cmd->add_option("--trials", bench.trials, "Instances per cell")->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "Sweep seed")->capture_default_str();
  bench_cmd->add_option("--dist", bench.dist, "Weight distribution")->capture_default_str();
  bench_cmd->add_option("--solver", bench.solvers, "Solvers: greedy, spectral, dual, oracle")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--jobs", bench.jobs, "Worker threads")->capture_default_str();
  bench_cmd->add_option("--max-iter", bench.max_iter, "Dual solver iteration limit")->capture_default_str();
  bench_cmd->add_option("--patience", bench.patience, "Dual solver stale-iteration limit (0: never)")
      ->capture_default_str();
  bench_cmd->add_flag("--timing", bench.timing, "Fill mean_ms (output is then not reproducible)");
  bench_cmd->add_option("-o,--output", bench.output, "Write CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (planted->parsed()) return run_gen_planted(gen);
    if (gnp->parsed()) return run_gen_gnp(gen);
    if (scale->parsed()) return run_gen_scale(gen);
    if (amplify->parsed()) return run_gen_amplify(gen);
    if (solve_cmd->parsed()) return run_solve(solve);
    if (verify_cmd->parsed()) return run_verify(verify_input, verify_output);
    if (spectrum_cmd->parsed()) return run_spectrum(spectrum_input, spectrum_output);
    if (bench_cmd->parsed()) return run_bench_cmd(bench);
  } catch (const SizeLimitError& e) {
    std::cerr << "stablecut: " << e.what() << '\n';
    return kExitSizeLimit;
  } catch (const UsageError& e) {
    std::cerr << "stablecut: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "stablecut: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "stablecut: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "stablecut: " << e.what() << '\n';
    return 1;
  }
  return kExitUsage;
}
