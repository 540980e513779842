#pragma once

// Multi-start experiments: run the power method from many random starts,
// group the converged runs by eigenpair, and report per-eigenpair statistics.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "teneig/dense.hpp"
#include "teneig/error.hpp"
#include "teneig/geap.hpp"
#include "teneig/random.hpp"

namespace teneig {

enum class Algorithm {
  Auto,  ///< zeap for Z problems, geap otherwise
  Geap,
  Zeap,
};

enum class OutputFormat { Table, Csv, Json };

struct ExperimentConfig {
  explicit ExperimentConfig(ProblemSpec p) : problem(std::move(p)) {}

  ProblemSpec problem;
  GeapConfig geap;
  int starts = 100;
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::Auto;
  /// Replaces the random starts with this single vector.
  std::optional<Vector> x0;
  /// Keep the full iteration trace of every start (needed for trace output).
  bool keep_traces = false;
  /// Worker threads; 0 uses the hardware concurrency.
  unsigned threads = 0;
  /// Grouping tolerances for distinct eigenpairs.
  double lambda_abs_tol = 1e-4;
  double lambda_rel_tol = 1e-4;
  double x_tol = 1e-3;
};

/// Result of one start.
struct StartOutcome {
  Vector x0;
  bool converged = false;
  std::optional<std::string> error;  ///< set when the run threw
  EigenRecord record;
  int iterations = 0;
  int violations = 0;
  double max_violation = 0.0;
  double wall_time = 0.0;
  int group = -1;  ///< index into RunSummary::rows, -1 when failed
  std::optional<IterationTrace> trace;
};

/// One distinct eigenpair found by the experiment.
struct SummaryRow {
  int occurrences = 0;
  double lambda = 0.0;
  Vector x;
  Classification classification = Classification::Degenerate;
  double median_iters = 0.0;
  int violating_runs = 0;  ///< runs with at least one monotonicity violation
  double max_violation = 0.0;
  double err_mean = 0.0;
  double err_std = 0.0;
  double time_mean = 0.0;
  double time_std = 0.0;
};

struct RunSummary {
  int beta = 1;
  std::size_t dim = 0;
  int starts = 0;
  int max_iters = 0;
  std::vector<SummaryRow> rows;  ///< sorted by beta * lambda, descending
  int failed = 0;                ///< not converged in max_iters, or threw
  double failed_time_mean = 0.0;
  double failed_time_std = 0.0;
  std::vector<StartOutcome> outcomes;  ///< per start, in start order
};

/// Sub-seed for start `index`; depends only on (seed, index).
inline std::uint64_t start_seed(std::uint64_t seed, std::size_t index) {
  return splitmix64(splitmix64(seed) + static_cast<std::uint64_t>(index));
}

/// Start vectors with entries uniform on [-1, 1]. The same (seed, dim)
/// always yields the same set, so experiments that differ only in the shift
/// see identical starts.
inline std::vector<Vector> start_vectors(std::size_t dim, int starts, std::uint64_t seed) {
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(std::max(starts, 0)));
  for (int s = 0; s < starts; ++s) {
    Rng rng(start_seed(seed, static_cast<std::size_t>(s)));
    Vector x(dim);
    for (auto& v : x) {
      v = rng.uniform(-1.0, 1.0);
    }
    out.push_back(std::move(x));
  }
  return out;
}

namespace detail {

inline double mean(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

/// Sample standard deviation (n - 1 denominator); zero for fewer than two values.
inline double stddev(const std::vector<double>& v) {
  if (v.size() < 2) {
    return 0.0;
  }
  const double mu = mean(v);
  double s = 0.0;
  for (double e : v) {
    s += (e - mu) * (e - mu);
  }
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

inline double median(std::vector<double> v) {
  if (v.empty()) {
    return 0.0;
  }
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 == 1 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

inline StartOutcome run_one(const ExperimentConfig& cfg, const Vector& x0, bool use_zeap) {
  StartOutcome out;
  out.x0 = x0;
  try {
    RunResult r = use_zeap ? zeap_iterate(cfg.problem.a(), x0, cfg.geap, cfg.problem.beta())
                           : geap_iterate(cfg.problem, x0, cfg.geap);
    out.converged = r.trace.converged;
    out.record = std::move(r.record);
    out.iterations = r.trace.iterations;
    out.violations = static_cast<int>(r.trace.violations.size());
    out.max_violation = r.trace.max_violation();
    out.wall_time = r.trace.wall_time;
    if (cfg.keep_traces) {
      out.trace = std::move(r.trace);
    }
  } catch (const Error& e) {
    out.error = e.what();
  }
  return out;
}

} // namespace detail

/// Runs every start, groups converged runs into distinct eigenpairs and
/// aggregates them. Failed starts (no convergence within max_iters, or a
/// numerical error) are counted, never fatal.
inline RunSummary run_experiment(const ExperimentConfig& cfg) {
  cfg.geap.validate();
  const ProblemSpec& p = cfg.problem;
  bool use_zeap = false;
  switch (cfg.algorithm) {
  case Algorithm::Auto: use_zeap = p.kind() == BKind::Z; break;
  case Algorithm::Zeap: use_zeap = true; break;
  case Algorithm::Geap: use_zeap = false; break;
  }
  if (use_zeap && p.kind() != BKind::Z) {
    throw ParameterError("the Z-specialized iteration needs a Z-eigenpair problem");
  }

  std::vector<Vector> starts;
  if (cfg.x0) {
    if (cfg.x0->size() != p.dim()) {
      throw DimensionError("x0 length does not match problem dimension");
    }
    starts.push_back(*cfg.x0);
  } else {
    if (cfg.starts < 1) {
      throw ParameterError("starts must be at least 1");
    }
    starts = start_vectors(p.dim(), cfg.starts, cfg.seed);
  }

  RunSummary summary;
  summary.beta = p.beta();
  summary.dim = p.dim();
  summary.starts = static_cast<int>(starts.size());
  summary.max_iters = cfg.geap.max_iters;
  summary.outcomes.resize(starts.size());

  unsigned threads = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(starts.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < starts.size(); i = next++) {
      summary.outcomes[i] = detail::run_one(cfg, starts[i], use_zeap);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
  }

  // Group in start order so the representative of each group is deterministic.
  struct Group {
    std::vector<std::size_t> members;
  };
  std::vector<Group> groups;
  std::vector<double> failed_times;
  for (std::size_t i = 0; i < summary.outcomes.size(); ++i) {
    StartOutcome& o = summary.outcomes[i];
    if (o.error || !o.converged) {
      failed_times.push_back(o.wall_time);
      continue;
    }
    int found = -1;
    for (std::size_t g = 0; g < groups.size() && found < 0; ++g) {
      const EigenRecord& rep = summary.outcomes[groups[g].members.front()].record;
      const double dl = std::abs(o.record.lambda - rep.lambda);
      const bool lambda_match =
          dl <= cfg.lambda_abs_tol || dl <= cfg.lambda_rel_tol * std::max(std::abs(rep.lambda), std::abs(o.record.lambda));
      double dx = 0.0;
      for (std::size_t k = 0; k < rep.x.size(); ++k) {
        dx += (o.record.x[k] - rep.x[k]) * (o.record.x[k] - rep.x[k]);
      }
      if (lambda_match && std::sqrt(dx) <= cfg.x_tol) {
        found = static_cast<int>(g);
      }
    }
    if (found < 0) {
      groups.push_back({});
      found = static_cast<int>(groups.size() - 1);
    }
    groups[static_cast<std::size_t>(found)].members.push_back(i);
  }

  std::vector<SummaryRow> rows;
  for (const Group& g : groups) {
    const EigenRecord& rep = summary.outcomes[g.members.front()].record;
    SummaryRow row;
    row.occurrences = static_cast<int>(g.members.size());
    row.lambda = rep.lambda;
    row.x = rep.x;
    row.classification = rep.classification;
    std::vector<double> its;
    std::vector<double> errs;
    std::vector<double> times;
    for (std::size_t i : g.members) {
      const StartOutcome& o = summary.outcomes[i];
      its.push_back(o.iterations);
      errs.push_back(o.record.residual);
      times.push_back(o.wall_time);
      if (o.violations > 0) {
        ++row.violating_runs;
        row.max_violation = std::max(row.max_violation, o.max_violation);
      }
    }
    row.median_iters = detail::median(its);
    row.err_mean = detail::mean(errs);
    row.err_std = detail::stddev(errs);
    row.time_mean = detail::mean(times);
    row.time_std = detail::stddev(times);
    rows.push_back(std::move(row));
  }

  // Sort rows, then remap each outcome's group index to its row.
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const int beta = p.beta();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return beta * rows[a].lambda > beta * rows[b].lambda; });
  std::vector<int> rank(rows.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    summary.rows.push_back(rows[order[r]]);
    rank[order[r]] = static_cast<int>(r);
  }
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (std::size_t i : groups[g].members) {
      summary.outcomes[i].group = rank[g];
    }
  }

  summary.failed = static_cast<int>(failed_times.size());
  summary.failed_time_mean = detail::mean(failed_times);
  summary.failed_time_std = detail::stddev(failed_times);
  return summary;
}

// ---------------------------------------------------------------------------
// Output

namespace detail {

inline std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

inline std::string num(double v) { return fmt("%.17g", v); }

} // namespace detail

/// Renders a summary. csv columns: occurrences, lambda, x1..xn, median_its,
/// n_violations, max_violation, err_mean, err_std, time_mean, time_std; a
/// trailing row with empty eigenpair fields carries the failed-run count.
/// With include_timing = false the time fields are left empty, which makes
/// the output a pure function of the configuration.
inline std::string emit_summary(const RunSummary& s, OutputFormat format, bool include_timing = true) {
  using detail::fmt;
  using detail::num;
  std::ostringstream out;
  const bool show_failed = s.failed > 0 || s.rows.empty();
  auto time_field = [&](double v) { return include_timing ? num(v) : std::string(); };

  switch (format) {
  case OutputFormat::Csv: {
    out << "occurrences,lambda";
    for (std::size_t i = 1; i <= s.dim; ++i) {
      out << ",x" << i;
    }
    out << ",median_its,n_violations,max_violation,err_mean,err_std,time_mean,time_std\n";
    for (const auto& r : s.rows) {
      out << r.occurrences << ',' << num(r.lambda);
      for (double v : r.x) {
        out << ',' << num(v);
      }
      out << ',' << num(r.median_iters) << ',' << r.violating_runs << ',' << num(r.max_violation) << ','
          << num(r.err_mean) << ',' << num(r.err_std) << ',' << time_field(r.time_mean) << ','
          << time_field(r.time_std) << '\n';
    }
    if (show_failed) {
      out << s.failed << ',';
      for (std::size_t i = 0; i < s.dim; ++i) {
        out << ',';
      }
      out << ",,,,," << time_field(s.failed_time_mean) << ',' << time_field(s.failed_time_std) << '\n';
    }
    break;
  }
  case OutputFormat::Json: {
    nlohmann::ordered_json j;
    j["beta"] = s.beta;
    j["starts"] = s.starts;
    j["max_iters"] = s.max_iters;
    j["eigenpairs"] = nlohmann::ordered_json::array();
    for (const auto& r : s.rows) {
      nlohmann::ordered_json e;
      e["occurrences"] = r.occurrences;
      e["lambda"] = r.lambda;
      e["x"] = r.x;
      e["classification"] = std::string(to_string(r.classification));
      e["median_its"] = r.median_iters;
      e["n_violations"] = r.violating_runs;
      e["max_violation"] = r.max_violation;
      e["err_mean"] = r.err_mean;
      e["err_std"] = r.err_std;
      if (include_timing) {
        e["time_mean"] = r.time_mean;
        e["time_std"] = r.time_std;
      }
      j["eigenpairs"].push_back(std::move(e));
    }
    j["failed"] = s.failed;
    if (include_timing) {
      j["failed_time_mean"] = s.failed_time_mean;
      j["failed_time_std"] = s.failed_time_std;
    }
    out << j.dump(2) << '\n';
    break;
  }
  case OutputFormat::Table: {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%6s %10s", "occ", "lambda");
    out << buf;
    for (std::size_t i = 1; i <= s.dim; ++i) {
      std::snprintf(buf, sizeof buf, " %8s", ("x" + std::to_string(i)).c_str());
      out << buf;
    }
    std::snprintf(buf, sizeof buf, " %6s %5s %8s %8s %8s %8s %8s  %s\n", "its", "viol", "max_viol", "err", "err_sd",
                  "time", "time_sd", "type");
    out << buf;
    for (const auto& r : s.rows) {
      std::snprintf(buf, sizeof buf, "%6d %10.4f", r.occurrences, r.lambda);
      out << buf;
      for (double v : r.x) {
        std::snprintf(buf, sizeof buf, " %8.4f", v);
        out << buf;
      }
      const std::string viol = r.violating_runs > 0 ? std::to_string(r.violating_runs) : "--";
      const std::string maxv = r.violating_runs > 0 ? fmt("%.0e", r.max_violation) : "--";
      std::snprintf(buf, sizeof buf, " %6g %5s %8s %8.0e %8.0e %8s %8s  %s\n", r.median_iters, viol.c_str(),
                    maxv.c_str(), r.err_mean, r.err_std, include_timing ? fmt("%.4f", r.time_mean).c_str() : "-",
                    include_timing ? fmt("%.4f", r.time_std).c_str() : "-",
                    std::string(to_string(r.classification)).c_str());
      out << buf;
    }
    if (show_failed) {
      std::snprintf(buf, sizeof buf, "%6d  failed to converge in %d iterations\n", s.failed, s.max_iters);
      out << buf;
    }
    break;
  }
  }
  return out.str();
}

/// csv with columns k, lambda_k, alpha_k: enough to plot the shift and the
/// eigenvalue estimate against the iteration count.
inline void write_trace(std::ostream& out, const IterationTrace& trace) {
  out << "k,lambda_k,alpha_k\n";
  for (const auto& r : trace.records) {
    out << r.k << ',' << detail::fmt("%.17g", r.lambda) << ',' << detail::fmt("%.17g", r.alpha) << '\n';
  }
}

inline void emit_trace(const IterationTrace& trace, const std::string& path) {
  if (trace.records.empty()) {
    throw InvalidInput("emit_trace: empty trace");
  }
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot open trace file '" + path + "' for writing");
  }
  write_trace(out, trace);
  if (!out) {
    throw Error("error while writing trace file '" + path + "'");
  }
}

} // namespace teneig
