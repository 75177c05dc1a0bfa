#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "compactness/errors.hpp"

namespace compactness {

/// A finite commutative ring: GF(p) or Z/mZ. Elements are residues in [0, m).
class Ring {
 public:
  static Ring prime_field(std::uint64_t p);
  static Ring integers_mod(std::uint64_t m);
  /// Accepts "GF(p)" or "Z/m".
  static Ring parse(std::string_view text);

  std::uint32_t modulus() const noexcept { return m_; }
  std::uint32_t size() const noexcept { return m_; }
  bool is_field() const noexcept { return field_; }
  std::string name() const;

  std::uint32_t reduce(long long v) const;
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return static_cast<std::uint32_t>((std::uint64_t{a} + b) % m_); }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return static_cast<std::uint32_t>((std::uint64_t{a} + m_ - b) % m_); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return static_cast<std::uint32_t>(std::uint64_t{a} * b % m_); }
  /// Multiplicative inverse; throws std::domain_error for non-units.
  std::uint32_t inverse(std::uint32_t a) const;

  /// Z/p and GF(p) compare equal.
  friend bool operator==(const Ring& a, const Ring& b) { return a.m_ == b.m_; }

 private:
  Ring(std::uint32_t m, bool field, bool spelled_gf) : m_(m), field_(field), spelled_gf_(spelled_gf) {}
  std::uint32_t m_ = 2;
  bool field_ = true;
  bool spelled_gf_ = true;
};

/// variable index -> exponent (>= 1)
using Monomial = std::map<std::size_t, unsigned>;

struct Term {
  Monomial monomial;
  std::uint32_t coeff = 0;
};

/// variable index -> ring element
using RingAssignment = std::map<std::size_t, std::uint32_t>;

/// Polynomial over a finite commutative ring, read as the equation f = 0.
/// Like monomials are merged and zero coefficients dropped at construction.
class FinitePolynomial {
 public:
  FinitePolynomial(Ring ring, std::vector<Term> terms);

  const Ring& ring() const noexcept { return ring_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::set<std::size_t> variables() const;

  /// Missing variables evaluate as zero.
  std::uint32_t evaluate(const RingAssignment& u) const;

 private:
  Ring ring_;
  std::vector<Term> terms_;
};

struct BruteForceOptions {
  std::uint64_t limit = 100'000'000;  ///< maximum |R|^variables
  unsigned threads = 0;
};

struct BruteForceResult {
  std::optional<RingAssignment> solution;
  /// Assignments examined, in canonical order, up to and including the hit.
  std::uint64_t scanned = 0;
  std::vector<std::size_t> variables;
};

/// Exhaustive search over R^vars in lexicographic order (lowest variable
/// index most significant). The reported solution is the first in that order.
/// Throws GuardExceeded when the space exceeds options.limit and InvalidInput
/// for polynomials over different rings.
BruteForceResult brute_force_solve(std::span<const FinitePolynomial> polys, const BruteForceOptions& options = {});

/// The quadratic family (a - x_*) x_a - 1 = 0, a in GF(p). Variable a is x_a
/// and variable p is x_*; equation a sits at index a.
struct AbianFamily {
  Ring field;
  std::vector<FinitePolynomial> equations;

  std::uint32_t p() const noexcept { return field.modulus(); }
  std::size_t star_variable() const noexcept { return field.modulus(); }
  static std::size_t element_variable(std::uint32_t a) noexcept { return a; }
};

inline constexpr std::uint32_t kMaxAbianPrime = 97;

/// Throws InvalidInput for composite p or p > kMaxAbianPrime.
AbianFamily abian_family(std::uint64_t p);

/// x_* = b, x_a = (a - b)^-1 for every a != b.
RingAssignment abian_closed_form(std::uint32_t p, std::uint32_t b);

struct AbianOptions {
  std::uint64_t guard = 100'000'000;
  /// Skip brute force even when it fits the guard.
  bool structured_only = false;
  unsigned threads = 0;
};

struct AbianReport {
  std::uint32_t p = 0;
  std::string method;  ///< "brute-force" or "structured"
  bool whole_unsolvable = false;
  bool each_deletion_solvable = false;
  /// Every deletion solution equals the closed form.
  bool closed_form_matches = false;
  std::map<std::uint32_t, RingAssignment> deletion_solutions;
  std::uint64_t assignments_scanned = 0;
};

/// Brute force when p^(p+1) fits the guard. Otherwise the structured check:
/// for each value of x_* the equations decouple into one-variable equations
/// that are decided exhaustively, and each deletion is certified by
/// evaluating the closed form.
AbianReport verify_abian_counterexample(std::uint64_t p, const AbianOptions& options = {});

struct SatisfiabilityOptions {
  std::uint64_t subset_guard = 1'000'000;
  BruteForceOptions solver;
};

struct SatisfiabilityReport {
  bool whole = false;
  /// Largest k such that every k-subset is solvable.
  std::size_t largest_solvable_size = 0;
  std::optional<std::vector<std::size_t>> first_unsolvable_subset;
  std::uint64_t subsets_checked = 0;
};

/// Exhaustive subset scan by increasing size, stopping at the first size with
/// an unsolvable subset.
SatisfiabilityReport satisfiability_scan(std::span<const FinitePolynomial> statements,
                                         const SatisfiabilityOptions& options = {});

}  // namespace compactness
