// teneig: multi-start tensor eigenpair experiments from the command line.
//
//   teneig run      --dataset kore02 --beta 1 --shift adaptive --starts 100
//   teneig classify --dataset kore02 --lambda 0.8893 --x 0.6672,0.2471,-0.7027
//   teneig export   --dataset heig --out heig_a.txt
//
// Exit status: 0 success, 1 usage or input error, 2 every start failed.

#include <cctype>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "teneig/experiment.hpp"
#include "teneig/geap.hpp"
#include "teneig/problems.hpp"

namespace {

constexpr int kUsage = 1;
constexpr int kAllFailed = 2;

struct ProblemArgs {
  std::string dataset;
  std::string tensor_a;
  std::string tensor_b;
  std::string d_matrix;
  std::string b_kind;
  int beta = 1;

  void add_to(CLI::App& app, bool with_files) {
    auto* ds = app.add_option("--dataset", dataset, "built-in dataset: kore02, heig, deig, random");
    if (!with_files) {
      ds->required();
      return;
    }
    auto* ta = app.add_option("--tensor-a", tensor_a, "A in symtensor text format");
    ds->excludes(ta);
    app.add_option("--tensor-b", tensor_b, "B for --b-kind explicit")->needs(ta);
    app.add_option("--d-matrix", d_matrix, "D (order-2 symtensor file) for --b-kind d")->needs(ta);
    app.add_option("--b-kind", b_kind, "z, h, d or explicit")->needs(ta);
  }

  teneig::ProblemSpec build() const {
    if (!dataset.empty()) {
      return teneig::builtin(dataset).with_beta(beta);
    }
    if (tensor_a.empty()) {
      throw teneig::ParameterError("give either --dataset or --tensor-a");
    }
    if (b_kind.empty()) {
      throw teneig::ParameterError("--tensor-a needs --b-kind");
    }
    auto opt = [](const std::string& s) { return s.empty() ? std::nullopt : std::optional<std::string>(s); };
    return teneig::assemble_problem(tensor_a, teneig::parse_b_kind(b_kind), opt(tensor_b), opt(d_matrix), beta);
  }
};

teneig::Vector parse_vector(const std::string& text) {
  teneig::Vector v;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    double d = 0.0;
    try {
      d = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used]))) {
      ++used;
    }
    if (used == 0 || used != tok.size()) {
      throw teneig::ParameterError("not a number in vector: '" + tok + "'");
    }
    v.push_back(d);
  }
  if (v.empty()) {
    throw teneig::ParameterError("empty vector");
  }
  return v;
}

teneig::ShiftMode parse_shift(const std::string& s) {
  if (s == "adaptive") {
    return teneig::AdaptiveShift{};
  }
  std::size_t used = 0;
  double a = 0.0;
  try {
    a = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw teneig::ParameterError("--shift must be 'adaptive' or a number, got '" + s + "'");
  }
  return teneig::FixedShift{a};
}

int usage_error(const std::string& msg) {
  std::cerr << "teneig: " << msg << '\n';
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tensor eigenpairs by the adaptive shifted power method"};
  app.require_subcommand(1);

  // run
  ProblemArgs run_problem;
  std::string shift = "adaptive";
  int starts = 100;
  std::uint64_t seed = 0;
  teneig::GeapConfig geap;
  std::string format = "table";
  std::string trace_path;
  std::string x0_text;
  std::string algorithm = "auto";
  unsigned threads = 0;
  bool no_timing = false;

  auto* run = app.add_subcommand("run", "multi-start experiment");
  run_problem.add_to(*run, true);
  run->add_option("--beta", run_problem.beta, "1 for maxima, -1 for minima")
      ->check(CLI::IsMember({1, -1}))
      ->capture_default_str();
  run->add_option("--shift", shift, "'adaptive' or a fixed alpha")->capture_default_str();
  run->add_option("--starts", starts, "number of random starts")->check(CLI::PositiveNumber)->capture_default_str();
  run->add_option("--seed", seed, "random seed")->capture_default_str();
  run->add_option("--tau", geap.tau, "definiteness threshold")->capture_default_str();
  run->add_option("--tol", geap.lambda_tol, "stopping tolerance on lambda")->capture_default_str();
  run->add_option("--max-iters", geap.max_iters, "iteration limit per start")->capture_default_str();
  run->add_option("--format", format, "table, csv or json")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();
  run->add_option("--trace", trace_path, "write k,lambda_k,alpha_k of the first start to this csv");
  run->add_option("--x0", x0_text, "single start vector v1,v2,... instead of random starts");
  run->add_option("--algorithm", algorithm, "auto, geap or zeap")
      ->check(CLI::IsMember({"auto", "geap", "zeap"}))
      ->capture_default_str();
  run->add_option("--threads", threads, "worker threads (0: all cores)")->capture_default_str();
  run->add_flag("--no-timing", no_timing, "omit wall-time columns");

  // classify
  ProblemArgs cls_problem;
  double cls_lambda = 0.0;
  std::string cls_x;
  double tau_class = 1e-4;
  auto* cls = app.add_subcommand("classify", "classify a given eigenpair");
  cls_problem.add_to(*cls, true);
  cls->add_option("--lambda", cls_lambda, "eigenvalue")->required();
  cls->add_option("--x", cls_x, "eigenvector v1,v2,...")->required();
  cls->add_option("--tau-class", tau_class, "zero threshold for projected-Hessian eigenvalues")
      ->capture_default_str();

  // export
  ProblemArgs exp_problem;
  std::string out_a;
  std::string out_b;
  auto* exp = app.add_subcommand("export", "write a built-in dataset in symtensor format");
  exp_problem.add_to(*exp, false);
  exp->add_option("--out", out_a, "output path for A")->required();
  exp->add_option("--out-b", out_b, "output path for B");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  if (*run) {
    teneig::RunSummary summary;
    teneig::OutputFormat fmt = teneig::OutputFormat::Table;
    try {
      geap.shift = parse_shift(shift);
      teneig::ExperimentConfig cfg{run_problem.build()};
      cfg.geap = geap;
      cfg.starts = starts;
      cfg.seed = seed;
      cfg.threads = threads;
      cfg.keep_traces = !trace_path.empty();
      cfg.algorithm = algorithm == "geap"   ? teneig::Algorithm::Geap
                      : algorithm == "zeap" ? teneig::Algorithm::Zeap
                                            : teneig::Algorithm::Auto;
      if (!x0_text.empty()) {
        cfg.x0 = parse_vector(x0_text);
      }
      fmt = format == "csv" ? teneig::OutputFormat::Csv
            : format == "json" ? teneig::OutputFormat::Json
                               : teneig::OutputFormat::Table;
      summary = teneig::run_experiment(cfg);
    } catch (const teneig::Error& e) {
      return usage_error(e.what());
    }
    std::cout << teneig::emit_summary(summary, fmt, !no_timing);
    if (!trace_path.empty()) {
      const auto& first = summary.outcomes.front();
      if (!first.trace) {
        std::cerr << "teneig: no trace for the first start: " << first.error.value_or("run failed") << '\n';
      } else {
        try {
          teneig::emit_trace(*first.trace, trace_path);
        } catch (const teneig::Error& e) {
          return usage_error(e.what());
        }
      }
    }
    return summary.rows.empty() ? kAllFailed : 0;
  }

  if (*cls) {
    try {
      const teneig::ProblemSpec p = cls_problem.build();
      const teneig::Vector x = parse_vector(cls_x);
      if (x.size() != p.dim()) {
        return usage_error("--x has " + std::to_string(x.size()) + " entries, problem dimension is " +
                           std::to_string(p.dim()));
      }
      const teneig::ClassifyResult r = teneig::classify(p, cls_lambda, x, tau_class);
      std::cout << "classification: " << teneig::to_string(r.classification) << '\n';
      std::printf("residual: %.6e\n", r.residual);
      std::cout << "projected hessian eigenvalues:";
      for (double v : r.projected_eigenvalues) {
        std::printf(" %.6g", v);
      }
      std::cout << '\n';
      if (!r.is_eigenpair) {
        std::cout << "warning: residual is large; (lambda, x) is not an eigenpair to working accuracy\n";
      }
    } catch (const teneig::NumericalFailure& e) {
      std::cerr << "teneig: " << e.what() << '\n';
      return kAllFailed;
    } catch (const teneig::Error& e) {
      return usage_error(e.what());
    }
    return 0;
  }

  try {
    const teneig::Dataset d = teneig::builtin(exp_problem.dataset);
    teneig::save_tensor(out_a, d.problem.a());
    if (!out_b.empty()) {
      teneig::save_tensor(out_b, d.problem.b_tensor());
    }
  } catch (const teneig::Error& e) {
    return usage_error(e.what());
  }
  return 0;
}
