#include "compactness/sequence_spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Dense>

#include "compactness/detail/parallel.hpp"
#include "compactness/linalg.hpp"

namespace compactness {

namespace {

const Field kQ = Field::rationals();

double sgn(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

// |x|^e with 0^e = 0 for e > 0.
double abs_pow(double x, double e) { return x == 0 ? 0.0 : std::pow(std::abs(x), e); }

Eigen::MatrixXd to_eigen(const std::vector<Vector>& rows, std::size_t cols) {
  Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j].to_double();
  return a;
}

Eigen::VectorXd to_eigen(const Vector& v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i].to_double();
  return out;
}

double eigen_norm(const Eigen::VectorXd& x, double e) {
  return compactness::lp_norm(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())), e);
}

}  // namespace

PQPair::PQPair(double p, double q) : p_(p), q_(q) {
  if (!(p > 1.0) || !(q > 1.0) || !std::isfinite(p) || !std::isfinite(q))
    throw InvalidInput("exponents must satisfy p, q > 1");
  if (std::abs(1.0 / p + 1.0 / q - 1.0) > 1e-12) throw InvalidInput("exponents are not conjugate: 1/p + 1/q != 1");
}

PQPair PQPair::from_p(double p) {
  if (!(p > 1.0)) throw InvalidInput("p must exceed 1");
  return PQPair(p, p / (p - 1.0));
}

PQPair PQPair::from_q(double q) {
  if (!(q > 1.0)) throw InvalidInput("q must exceed 1");
  return PQPair(q / (q - 1.0), q);
}

double lp_norm(std::span<const double> x, double e) {
  // Scale by the largest entry so large e does not overflow.
  double peak = 0;
  for (double v : x) peak = std::max(peak, std::abs(v));
  if (peak == 0) return 0;
  double sum = 0;
  for (double v : x) sum += std::pow(std::abs(v) / peak, e);
  return peak * std::pow(sum, 1.0 / e);
}

HolderPairing holder_pair(const FiniteSeq& a, const FiniteSeq& u, const PQPair& pq) {
  HolderPairing out;
  const std::size_t n = std::min(a.coords.size(), u.coords.size());
  for (std::size_t j = 0; j < n; ++j) {
    out.pairing += a.coords[j] * u.coords[j];
    out.l1 += std::abs(a.coords[j] * u.coords[j]);
  }
  out.bound = a.norm(pq.p()) * u.norm(pq.q());
  return out;
}

TruncatedSystem TruncatedSystem::leading(std::size_t k) const {
  if (k > rows.size()) throw InvalidInput("truncation of " + std::to_string(k) + " rows from " + std::to_string(rows.size()));
  TruncatedSystem out{{rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(k)},
                      {rhs.begin(), rhs.begin() + static_cast<std::ptrdiff_t>(k)},
                      pq,
                      bound};
  return out;
}

void TruncatedSystem::validate() const {
  if (rhs.size() != rows.size()) throw DimensionMismatch("rhs length differs from the number of rows");
  const std::size_t h = horizon();
  for (const auto& r : rows) {
    if (r.size() != h) throw DimensionMismatch("rows must share one coordinate horizon");
    for (const auto& s : r)
      if (!s.field().is_rational()) throw FieldMismatch("sequence coefficients must be rational");
  }
  for (const auto& s : rhs)
    if (!s.field().is_rational()) throw FieldMismatch("right-hand sides must be rational");
  if (bound && !(*bound > 0)) throw InvalidInput("norm bound M must be positive");
}

TruncatedSystem staircase_system(std::size_t i_max, const PQPair& pq) {
  if (i_max == 0) throw InvalidInput("staircase needs i_max >= 1");
  TruncatedSystem sys{{}, {}, pq, std::nullopt};
  for (std::size_t i = 1; i <= i_max; ++i) {
    Vector row(i_max, Scalar::zero(kQ));
    for (std::size_t j = 0; j < i; ++j) row[j] = Scalar::one(kQ);
    sys.rows.push_back(std::move(row));
    sys.rhs.emplace_back(kQ, static_cast<long long>(i));
  }
  return sys;
}

Vector truncation_solution(const TruncatedSystem& sys, std::size_t n) {
  sys.validate();
  if (n == 0 || n > sys.rows.size())
    throw InvalidInput("truncation size " + std::to_string(n) + " outside 1.." + std::to_string(sys.rows.size()));
  const TruncatedSystem t = sys.leading(n);
  const Matrix a(kQ, t.horizon(), t.rows);
  auto sol = solve_linear(a, t.rhs);
  if (!sol) throw InconsistentSystem("the first " + std::to_string(n) + " equations have no common solution");
  return sol->particular;
}

namespace {

double holder_bound(const TruncatedSystem& sys, double p) {
  double best = 0;
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    std::vector<double> row;
    for (const auto& s : sys.rows[i]) row.push_back(s.to_double());
    const double n = lp_norm(row, p);
    if (n > 0) best = std::max(best, std::abs(sys.rhs[i].to_double()) / n);
  }
  return best;
}

// b.y / ||A^T y||_p, clamped at zero.
double dual_bound(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& y, double p) {
  const Eigen::VectorXd z = a.transpose() * y;
  const double denom = eigen_norm(z, p);
  if (denom == 0) return 0;
  return std::max(0.0, b.dot(y) / denom);
}

// Indices of a maximal independent subset of rows, chosen exactly.
std::vector<std::size_t> independent_rows(const TruncatedSystem& sys) {
  if (sys.rows.empty()) return {};
  const Matrix at = Matrix(kQ, sys.horizon(), sys.rows).transposed();
  return pivot_columns(at);
}

MinNormResult exact_gram(const TruncatedSystem& sys) {
  const std::size_t m = sys.rows.size();
  const Matrix a(kQ, sys.horizon(), sys.rows);
  const Matrix gram = a * a.transposed();
  auto y = solve_linear(gram, sys.rhs);
  if (!y) throw InconsistentSystem("truncated system has no solution");
  // A A^T y = b and u = A^T y lies in the row space, so u is the minimizer.
  const Vector u = a.transposed() * y->particular;
  if (!(a * u == sys.rhs)) throw InconsistentSystem("truncated system has no solution");

  MinNormResult r;
  r.method = "exact-gram";
  Scalar sq = Scalar::zero(kQ);
  for (const auto& s : u) sq += s * s;
  for (const auto& s : u) r.solution.push_back(s.to_double());
  r.norm = std::sqrt(sq.to_double());
  r.exact_solution = u;
  r.exact_norm_squared = sq;
  r.holder_lower_bound = holder_bound(sys, 2.0);
  if (m > 0) r.dual_lower_bound = dual_bound(to_eigen(sys.rows, sys.horizon()), to_eigen(sys.rhs), to_eigen(y->particular), 2.0);
  return r;
}

// q >= 2: minimize sum |u_j|^q / q over u = u0 + N t.
void primal_newton(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double q, const MinNormOptions& opt,
                   MinNormResult& r) {
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
  Eigen::VectorXd u = cod.solve(b);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const Eigen::Index rank = svd.rank();
  const Eigen::MatrixXd basis = svd.matrixV().rightCols(a.cols() - rank);

  auto objective = [&](const Eigen::VectorXd& x) {
    double s = 0;
    for (Eigen::Index j = 0; j < x.size(); ++j) s += abs_pow(x(j), q);
    return s / q;
  };
  auto gradient_u = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd g(x.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) g(j) = sgn(x(j)) * abs_pow(x(j), q - 1);
    return g;
  };

  r.method = "primal-newton";
  std::size_t it = 0;
  Eigen::VectorXd grad = basis.transpose() * gradient_u(u);
  while (basis.cols() > 0 && grad.norm() >= opt.gradient_tolerance && it < opt.max_iterations) {
    Eigen::VectorXd curv(u.size());
    for (Eigen::Index j = 0; j < u.size(); ++j) curv(j) = (q - 1) * abs_pow(u(j), q - 2);
    Eigen::MatrixXd h = basis.transpose() * curv.asDiagonal() * basis;
    h.diagonal().array() += 1e-14 * std::max(1.0, h.diagonal().maxCoeff());
    Eigen::VectorXd step = -h.ldlt().solve(grad);
    if (!step.allFinite() || grad.dot(step) >= 0) step = -grad;

    const double f0 = objective(u);
    const double slope = grad.dot(step);
    double t = 1.0;
    Eigen::VectorXd trial = u + basis * step;
    Eigen::VectorXd trial_grad = basis.transpose() * gradient_u(trial);
    // Near the optimum f stops resolving the decrease; a shrinking gradient is accepted instead.
    while (objective(trial) > f0 + 1e-4 * t * slope && trial_grad.norm() >= (1 - 1e-4 * t) * grad.norm() && t > 1e-12) {
      t *= 0.5;
      trial = u + basis * (t * step);
      trial_grad = basis.transpose() * gradient_u(trial);
    }
    if (t <= 1e-12) break;
    u = trial;
    grad = trial_grad;
    ++it;
  }

  r.iterations = it;
  r.gradient_norm = basis.cols() > 0 ? grad.norm() : 0.0;
  r.solution.assign(u.data(), u.data() + u.size());
  // At the optimum gradient_u(u) = A^T y.
  const Eigen::VectorXd y = a.transpose().completeOrthogonalDecomposition().solve(gradient_u(u));
  r.dual_lower_bound = dual_bound(a, b, y, q / (q - 1));
}

// 1 < q < 2: the dual sum |A^T y|^p / p - b.y is smooth for p > 2, and the
// minimizer maps back through u = sign(z)|z|^(p-1).
void dual_newton(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double q, const MinNormOptions& opt,
                 MinNormResult& r) {
  const double p = q / (q - 1);
  auto primal = [&](const Eigen::VectorXd& y) {
    Eigen::VectorXd z = a.transpose() * y;
    for (Eigen::Index j = 0; j < z.size(); ++j) z(j) = sgn(z(j)) * abs_pow(z(j), p - 1);
    return z;
  };
  auto objective = [&](const Eigen::VectorXd& y) {
    const Eigen::VectorXd z = a.transpose() * y;
    double s = 0;
    for (Eigen::Index j = 0; j < z.size(); ++j) s += abs_pow(z(j), p);
    return s / p - b.dot(y);
  };

  r.method = "dual-newton";
  Eigen::VectorXd y = (a * a.transpose()).ldlt().solve(b);
  Eigen::VectorXd grad = a * primal(y) - b;
  std::size_t it = 0;
  while (grad.norm() >= opt.gradient_tolerance && it < opt.max_iterations) {
    const Eigen::VectorXd z = a.transpose() * y;
    Eigen::VectorXd curv(z.size());
    for (Eigen::Index j = 0; j < z.size(); ++j) curv(j) = (p - 1) * abs_pow(z(j), p - 2);
    Eigen::MatrixXd h = a * curv.asDiagonal() * a.transpose();
    h.diagonal().array() += 1e-14 * std::max(1.0, h.diagonal().maxCoeff());
    Eigen::VectorXd step = -h.ldlt().solve(grad);
    if (!step.allFinite() || grad.dot(step) >= 0) step = -grad;

    const double f0 = objective(y);
    const double slope = grad.dot(step);
    double t = 1.0;
    Eigen::VectorXd trial_grad = a * primal(y + step) - b;
    while (objective(y + t * step) > f0 + 1e-4 * t * slope && trial_grad.norm() >= (1 - 1e-4 * t) * grad.norm() &&
           t > 1e-12) {
      t *= 0.5;
      trial_grad = a * primal(y + t * step) - b;
    }
    if (t <= 1e-12) break;
    y += t * step;
    grad = trial_grad;
    ++it;
  }
  const Eigen::VectorXd u = primal(y);
  r.iterations = it;
  r.gradient_norm = grad.norm();
  r.solution.assign(u.data(), u.data() + u.size());
  r.dual_lower_bound = dual_bound(a, b, y, p);
}

}  // namespace

MinNormResult min_q_norm(const TruncatedSystem& sys, const MinNormOptions& options) {
  sys.validate();
  if (sys.pq.q_is_two()) return exact_gram(sys);

  // Consistency and a row basis are settled exactly before going numeric.
  const Matrix a_exact(kQ, sys.horizon(), sys.rows);
  if (!solve_linear(a_exact, sys.rhs)) throw InconsistentSystem("truncated system has no solution");
  const auto keep = independent_rows(sys);

  MinNormResult r;
  r.holder_lower_bound = holder_bound(sys, sys.pq.p());
  if (keep.empty()) {
    r.method = "zero";
    r.solution.assign(sys.horizon(), 0.0);
    return r;
  }
  std::vector<Vector> rows;
  Vector rhs;
  for (std::size_t i : keep) {
    rows.push_back(sys.rows[i]);
    rhs.push_back(sys.rhs[i]);
  }
  const Eigen::MatrixXd a = to_eigen(rows, sys.horizon());
  const Eigen::VectorXd b = to_eigen(rhs);
  if (sys.pq.q() >= 2.0) primal_newton(a, b, sys.pq.q(), options, r);
  else dual_newton(a, b, sys.pq.q(), options, r);

  r.norm = lp_norm(r.solution, sys.pq.q());
  const Eigen::MatrixXd full = to_eigen(sys.rows, sys.horizon());
  const Eigen::Map<const Eigen::VectorXd> u(r.solution.data(), static_cast<Eigen::Index>(r.solution.size()));
  r.residual = (full * u - to_eigen(sys.rhs)).lpNorm<Eigen::Infinity>();
  return r;
}

std::vector<BlowupRow> blowup_report(const PQPair& pq, std::size_t i_max) {
  const TruncatedSystem stairs = staircase_system(i_max, pq);
  std::vector<BlowupRow> out;
  for (std::size_t i = 1; i <= i_max; ++i) {
    const MinNormResult r = min_q_norm(stairs.leading(i));
    out.push_back({i, r.norm, std::pow(static_cast<double>(i), 1.0 / pq.q()), r.dual_lower_bound, r.exact_norm_squared});
  }
  return out;
}

BoundedScanReport bounded_scan(const TruncatedSystem& sys, double bound, std::size_t depth) {
  if (!(bound > 0)) throw InvalidInput("norm bound M must be positive");
  sys.validate();
  BoundedScanReport report;
  const std::size_t last = std::min(depth, sys.rows.size());
  for (std::size_t k = 1; k <= last; ++k) {
    double norm = std::numeric_limits<double>::infinity();
    try {
      norm = min_q_norm(sys.leading(k)).norm;
    } catch (const InconsistentSystem&) {
    }
    report.min_norms.push_back(norm);
    if (!(norm <= bound + kNormSlack)) {
      report.all_truncations_bounded = false;
      report.first_failure = k;
      break;
    }
  }
  return report;
}

void SeparablePolySystem::validate() const {
  if (degree == 0) throw InvalidInput("degree must be at least 1");
  if (rhs.size() != coeffs.size()) throw DimensionMismatch("rhs length differs from the number of equations");
  if (!(bound > 0)) throw InvalidInput("norm bound M must be positive");
  const std::size_t h = horizon();
  for (const auto& row : coeffs) {
    if (row.size() != h) throw DimensionMismatch("equations must share one coordinate horizon");
    for (const auto& a : row)
      if (a.size() != degree) throw DimensionMismatch("each f_ij needs exactly `degree` coefficients");
  }
}

double SeparablePolySystem::residual(std::size_t i, std::span<const double> u) const {
  double s = -rhs[i];
  for (std::size_t j = 0; j < horizon(); ++j) {
    double power = 1;
    for (std::size_t k = 0; k < degree; ++k) {
      power *= u[j];
      s += coeffs[i][j][k] * power;
    }
  }
  return s;
}

std::vector<std::vector<double>> decay_norms(const SeparablePolySystem& sys) {
  sys.validate();
  const double q = sys.pq.q();
  if (!(q > static_cast<double>(sys.degree))) throw InvalidInput("decay exponents need q > d");
  std::vector<std::vector<double>> out(sys.rows(), std::vector<double>(sys.degree));
  for (std::size_t i = 0; i < sys.rows(); ++i)
    for (std::size_t k = 1; k <= sys.degree; ++k) {
      std::vector<double> seq;
      for (std::size_t j = 0; j < sys.horizon(); ++j) seq.push_back(sys.coeffs[i][j][k - 1]);
      out[i][k - 1] = lp_norm(seq, q / (q - static_cast<double>(k)));
    }
  return out;
}

std::string to_string(SeparableStatus s) {
  switch (s) {
    case SeparableStatus::Found:
      return "found";
    case SeparableStatus::Unknown:
      return "unknown";
    case SeparableStatus::HypothesisViolated:
      return "hypothesis-violated";
  }
  return "unknown";
}

namespace {

struct SeparableProblem {
  const SeparablePolySystem& sys;
  std::size_t rows;
  double q;

  Eigen::VectorXd residuals(const Eigen::VectorXd& u) const {
    Eigen::VectorXd r(static_cast<Eigen::Index>(rows));
    for (std::size_t i = 0; i < rows; ++i)
      r(static_cast<Eigen::Index>(i)) = sys.residual(i, std::span<const double>(u.data(), static_cast<std::size_t>(u.size())));
    return r;
  }

  Eigen::MatrixXd jacobian(const Eigen::VectorXd& u) const {
    const std::size_t n = sys.horizon();
    Eigen::MatrixXd jac(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        // d/dx sum_k a_k x^k = sum_k k a_k x^(k-1)
        double d = 0;
        double power = 1;
        for (std::size_t k = 1; k <= sys.degree; ++k) {
          d += static_cast<double>(k) * sys.coeffs[i][j][k - 1] * power;
          power *= u(static_cast<Eigen::Index>(j));
        }
        jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = d;
      }
    return jac;
  }

  double penalty_objective(const Eigen::VectorXd& u, double rho) const {
    double s = 0;
    for (Eigen::Index j = 0; j < u.size(); ++j) s += abs_pow(u(j), q);
    return s / q + 0.5 * rho * residuals(u).squaredNorm();
  }

  // Minimizes ||u||_q^q / q + rho/2 ||r(u)||^2 with a damped Gauss-Newton model.
  void penalty_descent(Eigen::VectorXd& u, double rho, std::size_t max_iter) const {
    for (std::size_t it = 0; it < max_iter; ++it) {
      const Eigen::VectorXd r = residuals(u);
      const Eigen::MatrixXd jac = jacobian(u);
      Eigen::VectorXd grad = rho * jac.transpose() * r;
      Eigen::VectorXd curv(u.size());
      for (Eigen::Index j = 0; j < u.size(); ++j) {
        grad(j) += sgn(u(j)) * abs_pow(u(j), q - 1);
        curv(j) = (q - 1) * std::pow(std::max(std::abs(u(j)), 1e-6), q - 2);
      }
      if (grad.norm() < 1e-12) return;
      Eigen::MatrixXd h = rho * jac.transpose() * jac;
      h.diagonal() += curv;
      Eigen::VectorXd step = -h.ldlt().solve(grad);
      if (!step.allFinite() || grad.dot(step) >= 0) step = -grad;
      const double f0 = penalty_objective(u, rho);
      const double slope = grad.dot(step);
      double t = 1.0;
      while (penalty_objective(u + t * step, rho) > f0 + 1e-4 * t * slope && t > 1e-12) t *= 0.5;
      if (t <= 1e-12) return;
      u += t * step;
    }
  }

  // Minimum-norm Gauss-Newton steps toward r(u) = 0.
  void polish(Eigen::VectorXd& u, std::size_t max_iter) const {
    for (std::size_t it = 0; it < max_iter; ++it) {
      const Eigen::VectorXd r = residuals(u);
      if (r.lpNorm<Eigen::Infinity>() < 1e-13) return;
      const Eigen::MatrixXd jac = jacobian(u);
      Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(-r);
      if (!step.allFinite()) return;
      double t = 1.0;
      while (residuals(u + t * step).norm() >= r.norm() && t > 1e-6) t *= 0.5;
      if (t <= 1e-6) return;
      u += t * step;
    }
  }
};

}  // namespace

SeparableResult solve_separable_poly(const SeparablePolySystem& sys, std::size_t rows,
                                     const SeparableOptions& options) {
  sys.validate();
  if (rows > sys.rows()) throw InvalidInput("requested " + std::to_string(rows) + " equations of " + std::to_string(sys.rows()));
  SeparableResult best;
  if (!(sys.pq.q() > static_cast<double>(sys.degree))) {
    best.status = SeparableStatus::HypothesisViolated;
    return best;
  }
  const std::size_t n = sys.horizon();
  const double q = sys.pq.q();
  const SeparableProblem problem{sys, rows, q};

  // Seeded starts: the origin, then points drawn in the box [-M, M]^n.
  std::vector<Eigen::VectorXd> starts;
  starts.emplace_back(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n)));
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> coord(-sys.bound, sys.bound);
  for (std::size_t s = 1; s < std::max<std::size_t>(1, options.starts); ++s) {
    Eigen::VectorXd x(static_cast<Eigen::Index>(n));
    for (Eigen::Index j = 0; j < x.size(); ++j) x(j) = coord(rng);
    starts.push_back(std::move(x));
  }

  struct Outcome {
    Eigen::VectorXd u;
    double residual = std::numeric_limits<double>::infinity();
    double norm = std::numeric_limits<double>::infinity();
  };
  // Two paths per start. A full penalty continuation from rho = 1 pulls every
  // start toward the origin first, which loses isolated solutions of square
  // systems; the second path lands on the nearest solution and only then
  // trades norm against residual at large rho.
  std::vector<Outcome> outcomes(2 * starts.size());
  detail::parallel_for(outcomes.size(), options.threads, [&](std::size_t k) {
    Eigen::VectorXd u = starts[k / 2];
    if (k % 2 == 0) {
      problem.polish(u, 10);
      for (double rho = 1.0; rho <= 1e10; rho *= 10.0) problem.penalty_descent(u, rho, 100);
    } else {
      problem.polish(u, 50);
      for (double rho = 1e4; rho <= 1e10; rho *= 10.0) problem.penalty_descent(u, rho, 100);
    }
    problem.polish(u, 50);
    Outcome o;
    o.residual = rows == 0 ? 0.0 : problem.residuals(u).lpNorm<Eigen::Infinity>();
    o.norm = eigen_norm(u, q);
    o.u = std::move(u);
    outcomes[k] = std::move(o);
  });

  // Lowest residual among norm-feasible outcomes; ties go to the earlier start.
  const Outcome* chosen = nullptr;
  for (const auto& o : outcomes) {
    if (!std::isfinite(o.residual) || !(o.norm <= sys.bound + options.norm_slack)) continue;
    if (!chosen || o.residual < chosen->residual) chosen = &o;
  }
  if (chosen && chosen->residual < options.residual_tolerance) {
    best.status = SeparableStatus::Found;
    best.solution.assign(chosen->u.data(), chosen->u.data() + chosen->u.size());
    best.residual = chosen->residual;
    best.norm = chosen->norm;
  }
  return best;
}

}  // namespace compactness
