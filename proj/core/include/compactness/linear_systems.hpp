#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "compactness/linalg.hpp"

namespace compactness {

/// Variable index -> value. Variables missing from the map are zero.
using Assignment = std::map<std::size_t, Scalar>;

/// sum_j a_j x_j + b = 0 with finitely many nonzero a_j.
class LinearEquation {
 public:
  /// Zero coefficients are dropped; every scalar must belong to `field`.
  LinearEquation(Field field, std::map<std::size_t, Scalar> coeffs, Scalar constant);

  Field field() const noexcept { return field_; }
  const std::map<std::size_t, Scalar>& coeffs() const noexcept { return coeffs_; }
  const Scalar& constant() const noexcept { return constant_; }

  /// Left-hand side sum_j a_j u_j + b.
  Scalar evaluate(const Assignment& u) const;

 private:
  Field field_;
  std::map<std::size_t, Scalar> coeffs_;
  Scalar constant_;
};

class LinearSystem {
 public:
  LinearSystem() = default;
  /// `extra_variables` declares variables that need not occur in any equation.
  LinearSystem(Field field, std::vector<LinearEquation> equations, std::set<std::size_t> extra_variables = {});

  Field field() const noexcept { return field_; }
  const std::vector<LinearEquation>& equations() const noexcept { return equations_; }
  std::size_t size() const noexcept { return equations_.size(); }

  /// Sorted union of the supports plus declared extra variables.
  const std::vector<std::size_t>& variables() const noexcept { return variables_; }

  LinearSystem subsystem(std::span<const std::size_t> indices) const;
  LinearSystem with_extra_variables(const std::set<std::size_t>& extra) const;

  /// One row per equation: coefficients over variables(), then the constant.
  Matrix homogenized() const;

 private:
  Field field_;
  std::vector<LinearEquation> equations_;
  std::set<std::size_t> extra_;
  std::vector<std::size_t> variables_;
};

/// The impossible equation 0 = 1 as a homogenized row of the given width.
Vector impossible_equation(Field field, std::size_t variable_count);

struct Solution {
  Assignment assignment;
};

/// Multipliers lambda_i with sum lambda_i (row_i) = 0 and sum lambda_i b_i != 0.
struct Inconsistency {
  std::vector<std::pair<std::size_t, Scalar>> multipliers;
};

using Certificate = std::variant<Solution, Inconsistency>;

inline bool is_solution(const Certificate& c) { return std::holds_alternative<Solution>(c); }

/// Exact re-check of either certificate branch against the system.
bool verify_certificate(const LinearSystem& s, const Certificate& c);

/// Solution iff the system is consistent, otherwise an inconsistency witness
/// obtained as a row-span certificate for the impossible equation.
Certificate check_consistency(const LinearSystem& s);

/// Rank test only; no certificate.
bool is_consistent(const LinearSystem& s);

struct ScanOptions {
  std::uint64_t guard = 1'000'000;
  unsigned threads = 0;  ///< 0 = all cores
};

struct HellyNumberReport {
  bool whole_consistent = false;
  bool all_small_subsets_consistent = false;
  /// Smallest inconsistent subset (lexicographically first among those).
  std::optional<std::vector<std::size_t>> violating_subset;
  std::uint64_t subsets_checked = 0;
};

/// Checks every subset of at most n+1 equations and the whole system.
/// Throws InvalidInput if the system mentions more than n variables and
/// GuardExceeded if the number of subsets exceeds options.guard.
HellyNumberReport verify_helly_number(const LinearSystem& s, std::size_t n, const ScanOptions& options = {});

/// Deletion-minimal inconsistent subset (greedy deletion in ascending index
/// order), or nullopt for a consistent system.
std::optional<std::vector<std::size_t>> minimal_inconsistent_subset(const LinearSystem& s);

}  // namespace compactness
