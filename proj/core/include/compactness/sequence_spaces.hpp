#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "compactness/matrix.hpp"

namespace compactness {

/// Conjugate exponents, 1/p + 1/q = 1 with p, q > 1.
class PQPair {
 public:
  /// Throws InvalidInput unless p, q > 1 and |1/p + 1/q - 1| <= 1e-12.
  PQPair(double p, double q);
  static PQPair from_p(double p);
  static PQPair from_q(double q);

  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  bool q_is_two() const noexcept { return q_ == 2.0; }

 private:
  double p_;
  double q_;
};

/// (sum |x_j|^e)^(1/e); finite sequences only, so always finite.
double lp_norm(std::span<const double> x, double e);

/// A finitely supported real sequence; coordinates past the end are zero.
struct FiniteSeq {
  std::vector<double> coords;

  double norm(double e) const { return lp_norm(coords, e); }
};

struct HolderPairing {
  double pairing = 0;  ///< sum a_j u_j
  double l1 = 0;       ///< sum |a_j u_j|
  double bound = 0;    ///< ||a||_p ||u||_q
};

/// Sequences of different lengths are compared with an implicit zero tail.
HolderPairing holder_pair(const FiniteSeq& a, const FiniteSeq& u, const PQPair& pq);

/// Equations (a_i, x) = b_i restricted to a finite coordinate horizon.
/// Coefficients are exact rationals so the q = 2 path can stay exact.
struct TruncatedSystem {
  std::vector<Vector> rows;
  Vector rhs;
  PQPair pq = PQPair::from_p(2.0);
  std::optional<double> bound;

  std::size_t horizon() const { return rows.empty() ? 0 : rows.front().size(); }
  /// The first k equations. Throws InvalidInput when k exceeds the row count.
  TruncatedSystem leading(std::size_t k) const;
  /// Throws DimensionMismatch for ragged rows or an rhs of the wrong length.
  void validate() const;
};

/// a_i = (1,...,1,0,...) with i ones over horizon i_max, b_i = i.
TruncatedSystem staircase_system(std::size_t i_max, const PQPair& pq);

/// Exact solution of the first n equations with free coordinates set to zero;
/// on the staircase this is (1,...,1,0,...) with n ones.
/// Throws InconsistentSystem when those equations have no solution.
Vector truncation_solution(const TruncatedSystem& sys, std::size_t n);

struct MinNormResult {
  std::vector<double> solution;
  double norm = 0;
  std::string method;  ///< "exact-gram", "primal-newton" or "dual-newton"
  /// q = 2 only: the exact minimizer and its squared norm.
  std::optional<Vector> exact_solution;
  std::optional<Scalar> exact_norm_squared;
  /// max_i |b_i| / ||a_i||_p
  double holder_lower_bound = 0;
  /// b.y / ||A^T y||_p for the optimizer's multiplier y; valid for any y.
  double dual_lower_bound = 0;
  double gradient_norm = 0;
  double residual = 0;
  std::size_t iterations = 0;
};

struct MinNormOptions {
  double gradient_tolerance = 1e-8;
  std::size_t max_iterations = 500;
};

/// Minimum l^q norm solution of every equation in `sys`. Exact Gram solve for
/// q = 2, Newton on a smooth convex reformulation otherwise. Throws
/// InconsistentSystem for an inconsistent system.
MinNormResult min_q_norm(const TruncatedSystem& sys, const MinNormOptions& options = {});

struct BlowupRow {
  std::size_t i = 0;
  double min_norm = 0;
  double lower_bound = 0;  ///< i^(1/q)
  double dual_lower_bound = 0;
  std::optional<Scalar> exact_norm_squared;
};

/// Minimum norms of the leading staircase truncations against i^(1/q).
std::vector<BlowupRow> blowup_report(const PQPair& pq, std::size_t i_max);

struct BoundedScanReport {
  bool all_truncations_bounded = true;
  /// 1-based size of the first truncation without a solution of norm <= M.
  std::optional<std::size_t> first_failure;
  std::vector<double> min_norms;
};

inline constexpr double kNormSlack = 1e-9;

/// For k = 1..min(depth, rows): does the first-k truncation have a solution
/// with ||u||_q <= M + 1e-9? Throws InvalidInput for M <= 0.
BoundedScanReport bounded_scan(const TruncatedSystem& sys, double bound, std::size_t depth);

/// sum_j f_ij(x_j) = b_i with f_ij(x) = sum_{k=1..d} a_ijk x^k.
struct SeparablePolySystem {
  std::size_t degree = 1;
  /// coeffs[i][j][k-1] = a_ijk
  std::vector<std::vector<std::vector<double>>> coeffs;
  std::vector<double> rhs;
  PQPair pq = PQPair::from_q(4.0);
  double bound = 1.0;

  std::size_t rows() const { return coeffs.size(); }
  std::size_t horizon() const { return coeffs.empty() ? 0 : coeffs.front().size(); }
  void validate() const;

  /// sum_j f_ij(u_j) - b_i
  double residual(std::size_t i, std::span<const double> u) const;
};

/// ||(a_ijk)_j||_{q/(q-k)} for every row i and degree k (requires q > d).
std::vector<std::vector<double>> decay_norms(const SeparablePolySystem& sys);

enum class SeparableStatus { Found, Unknown, HypothesisViolated };

std::string to_string(SeparableStatus s);

struct SeparableResult {
  SeparableStatus status = SeparableStatus::Unknown;
  std::vector<double> solution;
  double residual = 0;  ///< max_i |sum_j f_ij(u_j) - b_i|
  double norm = 0;
};

struct SeparableOptions {
  std::size_t starts = 8;
  std::uint64_t seed = 20240101;
  unsigned threads = 0;
  double residual_tolerance = 1e-6;
  double norm_slack = 1e-6;
};

/// Multi-start penalty search for u with residual < 1e-6 and ||u||_q <= M + 1e-6
/// over the first `rows` equations. Unknown means nothing was found; it is
/// not a proof of infeasibility.
SeparableResult solve_separable_poly(const SeparablePolySystem& sys, std::size_t rows,
                                     const SeparableOptions& options = {});

}  // namespace compactness
