#pragma once

// Generalized tensor eigenpairs A x^(m-1) = lambda B x^(m-1) by the adaptive
// shifted power method.
//
// Eigenpairs are the KKT points of
//
//     max f(x) = (A x^m / B x^m) |x|^m   subject to |x| = 1,
//
// and the iteration ascends (beta = +1) or descends (beta = -1) the shifted
// function f(x) + alpha |x|^m, with alpha picked at every step so that the
// shifted Hessian is locally definite.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <span>
#include <variant>
#include <vector>

#include "teneig/dense.hpp"
#include "teneig/denselin.hpp"
#include "teneig/error.hpp"
#include "teneig/symtensor.hpp"

namespace teneig {

// ---------------------------------------------------------------------------
// Problem description

/// B = E, the identity tensor (Z-eigenpairs).
struct ZEigen {};
/// B = delta tensor (H-eigenpairs).
struct HEigen {};
/// B = symmetrized D o D (D-eigenpairs; higher even orders use m/2 factors).
struct DEigen {
  SymMatrix d;
  SymTensor b;
};
/// Any positive definite symmetric B.
struct ExplicitB {
  SymTensor b;
};

using BSpec = std::variant<ZEigen, HEigen, DEigen, ExplicitB>;

enum class BKind { Z, H, D, Explicit };

inline std::string_view to_string(BKind k) {
  switch (k) {
  case BKind::Z: return "z";
  case BKind::H: return "h";
  case BKind::D: return "d";
  case BKind::Explicit: return "explicit";
  }
  return "?";
}

/// A, the choice of B, and the orientation beta (+1 maxima, -1 minima).
class ProblemSpec {
public:
  static ProblemSpec z(SymTensor a, int beta = 1) { return ProblemSpec(std::move(a), ZEigen{}, beta); }
  static ProblemSpec h(SymTensor a, int beta = 1) { return ProblemSpec(std::move(a), HEigen{}, beta); }

  static ProblemSpec d(SymTensor a, SymMatrix d, int beta = 1) {
    if (d.dim() != a.dim()) {
      throw DimensionError("ProblemSpec: D dimension does not match A");
    }
    const std::size_t m = a.order();
    if (m % 2 != 0) {
      throw Unsupported("ProblemSpec: D-eigenpairs need an even order");
    }
    SymTensor b = sym_outer_matrix(d, m);
    return ProblemSpec(std::move(a), DEigen{std::move(d), std::move(b)}, beta);
  }

  static ProblemSpec explicit_b(SymTensor a, SymTensor b, int beta = 1) {
    if (b.order() != a.order() || b.dim() != a.dim()) {
      throw DimensionError("ProblemSpec: B shape does not match A");
    }
    return ProblemSpec(std::move(a), ExplicitB{std::move(b)}, beta);
  }

  const SymTensor& a() const noexcept { return a_; }
  const BSpec& b() const noexcept { return b_; }
  int beta() const noexcept { return beta_; }
  std::size_t order() const noexcept { return a_.order(); }
  std::size_t dim() const noexcept { return a_.dim(); }

  BKind kind() const noexcept { return static_cast<BKind>(b_.index()); }

  ProblemSpec with_beta(int beta) const {
    ProblemSpec p = *this;
    p.beta_ = check_beta(beta);
    return p;
  }

  /// B as an explicit tensor. Z and H are normally applied in closed form;
  /// this is for export and cross-checks.
  SymTensor b_tensor() const {
    return std::visit(
        [&](const auto& b) -> SymTensor {
          using T = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<T, ZEigen>) {
            return identity_tensor(order(), dim());
          } else if constexpr (std::is_same_v<T, HEigen>) {
            return delta_tensor(order(), dim());
          } else {
            return b.b;
          }
        },
        b_);
  }

private:
  ProblemSpec(SymTensor a, BSpec b, int beta) : a_(std::move(a)), b_(std::move(b)), beta_(check_beta(beta)) {
    if (a_.order() < 2) {
      throw Unsupported("ProblemSpec: order must be at least 2");
    }
    if (!std::holds_alternative<ZEigen>(b_) && a_.order() % 2 != 0) {
      throw Unsupported("ProblemSpec: odd order is only supported for Z-eigenpairs");
    }
  }

  static int check_beta(int beta) {
    if (beta != 1 && beta != -1) {
      throw ParameterError("beta must be +1 or -1");
    }
    return beta;
  }

  SymTensor a_;
  BSpec b_;
  int beta_ = 1;
};

/// The six products with A and B at one point.
struct Products {
  Contraction a;
  Contraction b;
};

namespace detail {

inline double int_pow(double v, std::size_t p) {
  double r = 1.0;
  for (std::size_t k = 0; k < p; ++k) {
    r *= v;
  }
  return r;
}

inline Contraction contract_b(const ProblemSpec& p, std::span<const double> x) {
  const std::size_t m = p.order();
  const std::size_t n = p.dim();
  return std::visit(
      [&](const auto& b) -> Contraction {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, ZEigen>) {
          // E x^(m-2) = |x|^(m-4) (|x|^2 I + (m-2) x x^T) / (m-1)
          const double s = dot(x, x);
          const double md = static_cast<double>(m);
          Contraction c;
          c.xm2 = SymMatrix(n);
          const double lead = std::pow(s, (md - 4.0) / 2.0) / (md - 1.0);
          for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
              c.xm2.set(i, j, lead * ((i == j ? s : 0.0) + (md - 2.0) * x[i] * x[j]));
            }
          }
          const double r = std::pow(s, (md - 2.0) / 2.0);
          c.xm1.assign(x.begin(), x.end());
          for (auto& v : c.xm1) {
            v *= r;
          }
          c.xm = r * s;
          return c;
        } else if constexpr (std::is_same_v<T, HEigen>) {
          Contraction c;
          c.xm2 = SymMatrix(n);
          c.xm1.resize(n);
          for (std::size_t i = 0; i < n; ++i) {
            const double pm2 = int_pow(x[i], m - 2);
            c.xm2.set(i, i, pm2);
            c.xm1[i] = pm2 * x[i];
            c.xm += c.xm1[i] * x[i];
          }
          return c;
        } else {
          return contract(b.b, x);
        }
      },
      p.b());
}

inline void require_unit(std::span<const double> x, const char* who) {
  if (std::abs(norm2(x) - 1.0) > 1e-10) {
    throw InvalidInput(std::string(who) + ": x must have unit norm");
  }
}

inline void require_positive_b(double bxm) {
  if (!(bxm > 0.0)) {
    throw IndefiniteB("B x^m = " + std::to_string(bxm) + " is not positive; B is not positive definite here");
  }
}

} // namespace detail

inline Products products(const ProblemSpec& p, std::span<const double> x) {
  if (x.size() != p.dim()) {
    throw DimensionError("vector length does not match problem dimension");
  }
  return Products{contract(p.a(), x), detail::contract_b(p, x)};
}

// ---------------------------------------------------------------------------
// Objective and derivatives

/// lambda = A x^m / B x^m; invariant under x -> c x.
inline double lambda_of(const ProblemSpec& p, std::span<const double> x) {
  const Products pr = products(p, x);
  detail::require_positive_b(pr.b.xm);
  return pr.a.xm / pr.b.xm;
}

/// f(x) = (A x^m / B x^m) |x|^m for unit x.
inline double objective(const ProblemSpec& p, std::span<const double> x) {
  detail::require_unit(x, "objective");
  return lambda_of(p, x) * std::pow(norm2(x), static_cast<double>(p.order()));
}

inline Vector gradient_from(const Products& pr, std::span<const double> x, std::size_t order) {
  detail::require_positive_b(pr.b.xm);
  const double m = static_cast<double>(order);
  const double lam = pr.a.xm / pr.b.xm;
  const double scale = m / pr.b.xm;
  Vector g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    g[i] = scale * (pr.a.xm * x[i] + pr.a.xm1[i] - lam * pr.b.xm1[i]);
  }
  return g;
}

/// Gradient of f on the unit sphere.
inline Vector gradient(const ProblemSpec& p, std::span<const double> x) {
  detail::require_unit(x, "gradient");
  return gradient_from(products(p, x), x, p.order());
}

inline SymMatrix hessian_from(const Products& pr, std::span<const double> x, std::size_t order) {
  detail::require_positive_b(pr.b.xm);
  const std::size_t n = x.size();
  const double m = static_cast<double>(order);
  const double a0 = pr.a.xm;
  const double b0 = pr.b.xm;
  const auto& a1 = pr.a.xm1;
  const auto& b1 = pr.b.xm1;

  const double c_bb = m * m * a0 / (b0 * b0 * b0);
  const double c_first = m / b0;
  const double c_second = m / (b0 * b0);

  SymMatrix h(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double sop_bb = 2.0 * b1[i] * b1[j];
      const double sop_ax = a1[i] * x[j] + x[i] * a1[j];
      const double sop_ab = a1[i] * b1[j] + b1[i] * a1[j];
      const double sop_xb = x[i] * b1[j] + b1[i] * x[j];
      const double ident = (i == j ? 1.0 : 0.0) + (m - 2.0) * x[i] * x[j];
      const double first = (m - 1.0) * pr.a.xm2(i, j) + a0 * ident + m * sop_ax;
      const double second = (m - 1.0) * a0 * pr.b.xm2(i, j) + m * sop_ab + m * a0 * sop_xb;
      h.set(i, j, c_bb * sop_bb + c_first * first - c_second * second);
    }
  }
  return h;
}

/// Hessian of f on the unit sphere.
inline SymMatrix hessian(const ProblemSpec& p, std::span<const double> x) {
  detail::require_unit(x, "hessian");
  return hessian_from(products(p, x), x, p.order());
}

/// H(x) + alpha m I + alpha m (m-2) x x^T
inline SymMatrix shift_hessian(SymMatrix h, std::span<const double> x, double alpha, std::size_t order) {
  const double m = static_cast<double>(order);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i; j < x.size(); ++j) {
      const double add = alpha * m * (i == j ? 1.0 : 0.0) + alpha * m * (m - 2.0) * x[i] * x[j];
      h.set(i, j, h(i, j) + add);
    }
  }
  return h;
}

/// Hessian of f(x) + alpha |x|^m on the unit sphere.
inline SymMatrix shifted_hessian(const ProblemSpec& p, std::span<const double> x, double alpha) {
  return shift_hessian(hessian(p, x), x, alpha, p.order());
}

/// beta * max(0, (tau - lambda_min(beta H)) / m): the smallest shift making
/// beta times the shifted Hessian have all eigenvalues >= tau.
inline double adaptive_alpha(const SymMatrix& h, std::size_t order, double tau, int beta) {
  const double lmin = beta > 0 ? lambda_min(h) : -lambda_max(h);
  return beta * std::max(0.0, (tau - lmin) / static_cast<double>(order));
}

// ---------------------------------------------------------------------------
// Configuration and results

struct AdaptiveShift {};
struct FixedShift {
  double alpha = 0.0;
};
using ShiftMode = std::variant<AdaptiveShift, FixedShift>;

struct GeapConfig {
  double tau = 1e-6;          ///< definiteness threshold for the shifted Hessian
  double lambda_tol = 1e-15;  ///< stop once |lambda_(k+1) - lambda_k| <= lambda_tol
  int max_iters = 500;
  ShiftMode shift = AdaptiveShift{};
  std::uint64_t seed = 0;
  double tau_class = 1e-4;    ///< zero threshold for projected-Hessian eigenvalues
  bool retain_iterates = false;

  void validate() const {
    if (!(tau > 0.0)) throw ParameterError("tau must be positive");
    if (!(lambda_tol > 0.0)) throw ParameterError("lambda_tol must be positive");
    if (max_iters < 1) throw ParameterError("max_iters must be at least 1");
    if (!(tau_class >= 0.0)) throw ParameterError("tau_class must be non-negative");
  }
};

struct IterationRecord {
  int k = 0;
  double lambda = 0.0;
  double alpha = 0.0;
  Vector x;  ///< empty unless GeapConfig::retain_iterates
};

/// An iteration where beta (lambda_k - lambda_(k-1)) went negative beyond
/// round-off; magnitude is |lambda_k - lambda_(k-1)|.
struct Violation {
  int k = 0;
  double magnitude = 0.0;
};

struct IterationTrace {
  std::vector<IterationRecord> records;
  std::vector<Violation> violations;
  bool converged = false;
  int iterations = 0;
  double wall_time = 0.0;  ///< seconds

  double max_violation() const {
    double worst = 0.0;
    for (const auto& v : violations) {
      worst = std::max(worst, v.magnitude);
    }
    return worst;
  }
};

enum class Classification { Maximum, Minimum, Saddle, Degenerate };

inline std::string_view to_string(Classification c) {
  switch (c) {
  case Classification::Maximum: return "maximum";
  case Classification::Minimum: return "minimum";
  case Classification::Saddle: return "saddle";
  case Classification::Degenerate: return "degenerate";
  }
  return "?";
}

struct EigenRecord {
  double lambda = 0.0;
  Vector x;
  double residual = 0.0;
  Classification classification = Classification::Degenerate;
  Vector projected_hessian_eigenvalues;  ///< of C / m, ascending, length n-1
};

struct ClassifyResult {
  Classification classification = Classification::Degenerate;
  Vector projected_eigenvalues;  ///< of C / m, ascending
  double residual = 0.0;         ///< at the normalized x
  bool is_eigenpair = false;     ///< residual <= 1e-4
};

struct RunResult {
  EigenRecord record;
  IterationTrace trace;
};

// ---------------------------------------------------------------------------
// Residual and classification

/// |A x^(m-1) - lambda B x^(m-1)|_2, at x as given (no normalization).
inline double residual(const ProblemSpec& p, double lambda, std::span<const double> x) {
  const Products pr = products(p, x);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = pr.a.xm1[i] - lambda * pr.b.xm1[i];
    s += r * r;
  }
  return std::sqrt(s);
}

/// Flips x so that its first largest-magnitude component is positive. Only
/// meaningful for even order, where x and -x share lambda.
inline Vector canonical_sign(Vector x) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (std::abs(x[i]) > std::abs(x[best])) {
      best = i;
    }
  }
  if (!x.empty() && x[best] < 0.0) {
    for (auto& v : x) {
      v = -v;
    }
  }
  return x;
}

/// Classifies (lambda, x) by the projected Hessian of the Lagrangian,
/// C = U^T (H(x) - lambda m I) U with U spanning x-perp: negative definite is
/// a local maximum, positive definite a local minimum, indefinite a saddle.
/// The reported eigenvalues are those of C / m, i.e. of the Hessian of
/// f / m, which is the scale reference eigenpair listings use. x is
/// normalized first. Eigenvalues within tau_class of zero give Degenerate.
inline ClassifyResult classify(const ProblemSpec& p, double lambda, std::span<const double> x,
                               double tau_class = 1e-4) {
  const Vector xu = normalized(x);
  const Products pr = products(p, xu);
  SymMatrix h = hessian_from(pr, xu, p.order());
  const double shift = lambda * static_cast<double>(p.order());
  for (std::size_t i = 0; i < xu.size(); ++i) {
    h.set(i, i, h(i, i) - shift);
  }
  ClassifyResult out;
  out.residual = residual(p, lambda, xu);
  out.is_eigenpair = out.residual <= 1e-4;
  if (xu.size() < 2) {
    return out;
  }
  SymMatrix c = project(h, orthonormal_complement(xu));
  c *= 1.0 / static_cast<double>(p.order());
  out.projected_eigenvalues = sym_eig(c).values;
  bool any_pos = false;
  bool any_neg = false;
  bool any_zero = false;
  for (double v : out.projected_eigenvalues) {
    if (std::abs(v) <= tau_class) {
      any_zero = true;
    } else if (v > 0.0) {
      any_pos = true;
    } else {
      any_neg = true;
    }
  }
  if (any_zero) {
    out.classification = Classification::Degenerate;
  } else if (any_pos && any_neg) {
    out.classification = Classification::Saddle;
  } else if (any_pos) {
    out.classification = Classification::Minimum;
  } else {
    out.classification = Classification::Maximum;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Iterations

/// One GEAP update from unit x: normalizes
/// beta (A x^(m-1) - lambda B x^(m-1) + (alpha + lambda) (B x^m) x),
/// which is parallel to beta times the shifted gradient.
inline Vector geap_step_from(const Products& pr, std::span<const double> x, double lambda, double alpha, int beta) {
  Vector next(x.size());
  const double w = (alpha + lambda) * pr.b.xm;
  for (std::size_t i = 0; i < x.size(); ++i) {
    next[i] = beta * (pr.a.xm1[i] - lambda * pr.b.xm1[i] + w * x[i]);
  }
  const double nrm = norm2(next);
  if (!(nrm > 1e-300)) {
    throw Breakdown("shifted gradient vanished; the iterate is a stationary point");
  }
  for (auto& v : next) {
    v /= nrm;
  }
  return next;
}

inline Vector geap_step(const ProblemSpec& p, std::span<const double> x, double lambda, double alpha) {
  detail::require_unit(x, "geap_step");
  return geap_step_from(products(p, x), x, lambda, alpha, p.beta());
}

namespace detail {

/// Per-iterate quantities a concrete method supplies to the shared loop. The
/// next iterate is beta (u + alpha w), normalized.
struct IterateState {
  double lambda = 0.0;
  SymMatrix hessian;
  Vector u;
  Vector w;
};

template <class Evaluate>
IterationTrace power_loop(std::span<const double> x0, const GeapConfig& cfg, int beta, std::size_t order,
                          Evaluate&& evaluate, Vector& x_out, double& lambda_out) {
  cfg.validate();
  if (const auto* fixed = std::get_if<FixedShift>(&cfg.shift)) {
    if (beta * fixed->alpha < 0.0) {
      throw ParameterError("fixed shift must have the same sign as beta");
    }
  }
  if (!all_finite(x0)) {
    throw InvalidInput("starting vector has non-finite entries");
  }
  const auto started = std::chrono::steady_clock::now();
  Vector x = normalized(x0);
  IterationTrace trace;
  double prev = 0.0;
  for (int k = 0;; ++k) {
    IterateState st = evaluate(x);
    if (!std::isfinite(st.lambda)) {
      throw NumericalFailure("eigenvalue estimate became non-finite at iteration " + std::to_string(k));
    }
    double alpha = 0.0;
    if (const auto* fixed = std::get_if<FixedShift>(&cfg.shift)) {
      alpha = fixed->alpha;
    } else {
      alpha = adaptive_alpha(st.hessian, order, cfg.tau, beta);
    }
    trace.records.push_back({k, st.lambda, alpha, cfg.retain_iterates ? x : Vector{}});

    if (k > 0) {
      const double diff = st.lambda - prev;
      if (beta * diff < -1e-14 * std::max(1.0, std::abs(prev))) {
        trace.violations.push_back({k, std::abs(diff)});
      }
      if (std::abs(diff) <= cfg.lambda_tol || st.lambda == prev) {
        trace.converged = true;
      }
    }
    if (trace.converged || k >= cfg.max_iters) {
      trace.iterations = k;
      lambda_out = st.lambda;
      break;
    }
    prev = st.lambda;

    Vector next(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      next[i] = beta * (st.u[i] + alpha * st.w[i]);
    }
    const double nrm = norm2(next);
    if (!(nrm > 1e-300) || !std::isfinite(nrm)) {
      throw Breakdown("shifted gradient vanished at iteration " + std::to_string(k));
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = next[i] / nrm;
    }
  }
  trace.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  x_out = std::move(x);
  return trace;
}

inline EigenRecord finish_record(const ProblemSpec& p, double lambda, Vector x, double tau_class) {
  EigenRecord rec;
  rec.lambda = lambda;
  rec.x = p.order() % 2 == 0 ? canonical_sign(std::move(x)) : std::move(x);
  const ClassifyResult c = classify(p, lambda, rec.x, tau_class);
  rec.residual = residual(p, lambda, rec.x);
  rec.classification = c.classification;
  rec.projected_hessian_eigenvalues = c.projected_eigenvalues;
  return rec;
}

} // namespace detail

/// Generalized eigenpair adaptive power method.
///
/// Each iteration evaluates the six products once, forms lambda_k and the
/// Hessian H_k, picks alpha_k (adaptive, or the fixed shift which gives
/// SS-HOPM), and steps along beta times the shifted gradient. Stops when
/// successive lambdas agree to lambda_tol (or exactly), or after max_iters
/// steps with trace.converged == false.
inline RunResult geap_iterate(const ProblemSpec& p, std::span<const double> x0, const GeapConfig& cfg = {}) {
  if (x0.size() != p.dim()) {
    throw DimensionError("starting vector length does not match problem dimension");
  }
  const std::size_t m = p.order();
  auto evaluate = [&](const Vector& x) {
    const Products pr = products(p, x);
    detail::require_positive_b(pr.b.xm);
    detail::IterateState st;
    st.lambda = pr.a.xm / pr.b.xm;
    st.hessian = hessian_from(pr, x, m);
    st.u.resize(x.size());
    st.w.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      st.w[i] = pr.b.xm * x[i];
      st.u[i] = pr.a.xm1[i] - st.lambda * pr.b.xm1[i] + st.lambda * st.w[i];
    }
    return st;
  };
  Vector x;
  double lambda = 0.0;
  RunResult out;
  out.trace = detail::power_loop(x0, cfg, p.beta(), m, evaluate, x, lambda);
  out.record = detail::finish_record(p, lambda, std::move(x), cfg.tau_class);
  return out;
}

/// Adaptive power method specialized to Z-eigenpairs (B = E): lambda = A x^m,
/// H = m (m-1) A x^(m-2), step beta (A x^(m-1) + alpha x). Works for odd m.
inline RunResult zeap_iterate(const SymTensor& a, std::span<const double> x0, const GeapConfig& cfg = {},
                              int beta = 1) {
  const ProblemSpec p = ProblemSpec::z(a, beta);
  if (x0.size() != p.dim()) {
    throw DimensionError("starting vector length does not match problem dimension");
  }
  const std::size_t m = p.order();
  const double md = static_cast<double>(m);
  auto evaluate = [&](const Vector& x) {
    Contraction c = contract(a, x);
    detail::IterateState st;
    st.lambda = c.xm;
    st.hessian = md * (md - 1.0) * std::move(c.xm2);
    st.u = std::move(c.xm1);
    st.w = x;
    return st;
  };
  Vector x;
  double lambda = 0.0;
  RunResult out;
  out.trace = detail::power_loop(x0, cfg, beta, m, evaluate, x, lambda);
  out.record = detail::finish_record(p, lambda, std::move(x), cfg.tau_class);
  return out;
}

} // namespace teneig
