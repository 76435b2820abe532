#ifndef STABLECUT_BENCH_HPP
#define STABLECUT_BENCH_HPP

// Seeded recovery sweeps over the planted model. Every (n, gamma, trial)
// instance draws its own seed from the sweep seed, so rows are identical for
// any number of worker threads.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "stablecut/combinatorial.hpp"
#include "stablecut/dual_sdp.hpp"
#include "stablecut/generators.hpp"
#include "stablecut/graph_io.hpp"
#include "stablecut/oracle.hpp"
#include "stablecut/spectral.hpp"

namespace stablecut {

inline const std::vector<std::string>& bench_solver_names() {
  static const std::vector<std::string> names{"greedy", "spectral", "dual", "oracle"};
  return names;
}

struct BenchOptions {
  std::vector<Index> sizes;
  std::vector<double> gammas;
  int trials = 10;
  std::uint64_t seed = 0;
  WeightDistribution dist = WeightDistribution::uniform(0.5, 1.5);
  std::vector<std::string> solvers{"dual"};
  /// Instances up to this size also get an "oracle" row (ground truth for
  /// whether the planted cut is the maximum).
  Index oracle_attach = 16;
  OracleOptions oracle;
  DualOptions dual;
  int jobs = 1;
  bool timing = false;
};

struct BenchRow {
  Index n = 0;
  double gamma = 1.0;
  std::string dist;
  int trials = 0;
  std::string solver;
  double recovery_rate = 0.0;
  double certified_rate = 0.0;
  std::optional<double> mean_ms;
};

/// Seed of instance `trial` in cell (n, gamma_index).
inline std::uint64_t bench_instance_seed(std::uint64_t seed, Index n, std::size_t gamma_index, int trial) {
  const std::uint64_t key = (static_cast<std::uint64_t>(n) << 40) ^
                            (static_cast<std::uint64_t>(gamma_index) << 24) ^
                            static_cast<std::uint64_t>(trial);
  return make_stream(seed, StreamTag::kInstance, key)();
}

struct SolverOutcome {
  bool recovered = false;
  bool certified = false;
  double ms = 0.0;
};

/// Runs one named solver on a planted instance.
inline SolverOutcome run_bench_solver(const std::string& solver, const PlantedInstance& inst,
                                      const BenchOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  SolverOutcome out;
  const WeightedGraph& g = inst.graph;
  Cut cut;
  if (solver == "greedy") {
    cut = find_max_cut_greedy(g).cut.canonical();
    out.certified = certify_cut(g, cut, opts.dual.feasibility_tol).psd;
  } else if (solver == "spectral") {
    cut = improve_by_flips(g, spectral_partition(g)).canonical();
    out.certified = certify_cut(g, cut, opts.dual.feasibility_tol).psd;
  } else if (solver == "dual") {
    DualOptions d = opts.dual;
    d.seed = inst.seed;
    const ExtendedSpectralResult r = extended_spectral_solve(g, d);
    cut = r.cut;
    out.certified = r.certified;
  } else if (solver == "oracle") {
    cut = brute_force_max_cut(g, opts.oracle).cut;
    out.certified = true;
  } else {
    throw ValidationError("unknown bench solver '" + solver + "'");
  }
  out.recovered = cut == inst.planted;
  out.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

inline std::vector<BenchRow> run_bench(const BenchOptions& opts) {
  if (opts.trials <= 0) throw ValidationError("trials must be positive");
  if (opts.sizes.empty() || opts.gammas.empty()) throw ValidationError("empty sweep");
  for (const auto& s : opts.solvers) {
    const auto& known = bench_solver_names();
    if (std::find(known.begin(), known.end(), s) == known.end()) {
      throw ValidationError("unknown bench solver '" + s + "'");
    }
  }
  for (Index n : opts.sizes) {
    if (n < 2 || n % 2 != 0) throw ValidationError("bench sizes must be even and >= 2");
  }

  struct Cell {
    Index n;
    std::size_t gamma_index;
    std::vector<std::string> solvers;
  };
  std::vector<Cell> cells;
  for (Index n : opts.sizes) {
    std::vector<std::string> solvers = opts.solvers;
    const bool small = n <= std::min(opts.oracle_attach, opts.oracle.max_n);
    if (small && std::find(solvers.begin(), solvers.end(), "oracle") == solvers.end()) {
      solvers.push_back("oracle");
    }
    if (!small) {
      if (std::find(solvers.begin(), solvers.end(), "oracle") != solvers.end() && n > opts.oracle.max_n) {
        throw SizeLimitError("oracle requested for n = " + std::to_string(n) + " above the limit " +
                             std::to_string(opts.oracle.max_n));
      }
    }
    for (std::size_t gi = 0; gi < opts.gammas.size(); ++gi) cells.push_back({n, gi, solvers});
  }

  struct Task {
    std::size_t cell;
    int trial;
  };
  std::vector<Task> tasks;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (int t = 0; t < opts.trials; ++t) tasks.push_back({c, t});
  }
  std::vector<std::vector<SolverOutcome>> results(tasks.size());

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= tasks.size()) return;
      try {
        const Cell& cell = cells[tasks[k].cell];
        const std::uint64_t seed = bench_instance_seed(opts.seed, cell.n, cell.gamma_index, tasks[k].trial);
        const PlantedInstance inst = gen_planted(cell.n, opts.dist, opts.gammas[cell.gamma_index], seed);
        for (const auto& s : cell.solvers) results[k].push_back(run_bench_solver(s, inst, opts));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(tasks.size());
      }
    }
  };
  const int jobs = std::max(1, opts.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<BenchRow> rows;
  std::size_t k = 0;
  for (const Cell& cell : cells) {
    const std::size_t first = k;
    k += static_cast<std::size_t>(opts.trials);
    for (std::size_t s = 0; s < cell.solvers.size(); ++s) {
      BenchRow row;
      row.n = cell.n;
      row.gamma = opts.gammas[cell.gamma_index];
      row.dist = opts.dist.to_string();
      row.trials = opts.trials;
      row.solver = cell.solvers[s];
      double ms = 0.0;
      for (std::size_t t = first; t < k; ++t) {
        const SolverOutcome& o = results[t][s];
        row.recovery_rate += o.recovered ? 1.0 : 0.0;
        row.certified_rate += o.certified ? 1.0 : 0.0;
        ms += o.ms;
      }
      row.recovery_rate /= opts.trials;
      row.certified_rate /= opts.trials;
      if (opts.timing) row.mean_ms = ms / opts.trials;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

/// Fixed columns; mean_ms is "NA" unless timing was requested, which keeps
/// untimed output byte-identical across runs.
inline void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "n,gamma,dist,trials,solver,recovery_rate,certified_rate,mean_ms\n";
  for (const BenchRow& r : rows) {
    out << r.n << ',' << detail::format_double(r.gamma) << ',' << r.dist << ',' << r.trials << ','
        << r.solver << ',' << detail::format_double(r.recovery_rate) << ','
        << detail::format_double(r.certified_rate) << ','
        << (r.mean_ms ? detail::format_double(*r.mean_ms) : std::string("NA")) << '\n';
  }
}

}  // namespace stablecut

#endif  // STABLECUT_BENCH_HPP
