#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "compactness/linear_systems.hpp"
#include "compactness/lp.hpp"

namespace compactness {

/// Rational points of a common dimension.
struct PointSet {
  std::size_t dim = 0;
  std::vector<Vector> points;
};

struct RadonPartition {
  std::vector<std::size_t> part1;  ///< indices with positive dependency coefficient
  std::vector<std::size_t> part2;  ///< the rest, zero-coefficient points included
  Vector witness;
  /// Convex coefficients aligned with part1 / part2.
  Vector weights1;
  Vector weights2;
  /// Affine dependency sum u_j a_j = 0, sum u_j = 0 with integer entries.
  Vector dependency;
};

/// Splits n+2 distinct points in dimension n by the sign pattern of an affine
/// dependency. Throws InvalidInput on a wrong count, duplicate points or a
/// coordinate of the wrong length.
RadonPartition radon_partition(const PointSet& ps);

/// Checks partition, weights and both convex combinations exactly.
bool verify_radon_partition(const PointSet& ps, const RadonPartition& r);

/// Exact LP: is `x` a convex combination of the selected points?
bool in_convex_hull(const PointSet& ps, std::span<const std::size_t> indices, std::span<const Scalar> x);

struct Halfspace {
  Vector normal;
  Scalar offset;  ///< normal . x <= offset
};

struct HPolytope {
  std::size_t dim = 0;
  std::vector<Halfspace> inequalities;

  bool contains(std::span<const Scalar> x) const;
};

/// Axis-aligned box [lo, hi]^dim (convenience for generators and tests).
HPolytope box(std::size_t dim, std::span<const Scalar> lo, std::span<const Scalar> hi);

/// A point in every polytope, or nullopt iff the intersection is empty.
/// Throws DimensionMismatch when the polytopes do not share a dimension.
std::optional<Vector> intersect_family(std::span<const HPolytope> ks);

struct HellyReport {
  bool all_small_intersect = false;
  bool whole_intersects = false;
  std::optional<Vector> witness;
  /// Smallest non-intersecting subfamily of at most n+1 members.
  std::optional<std::vector<std::size_t>> violating_subfamily;
  std::uint64_t subfamilies_checked = 0;
};

/// Both sides of Helly's theorem for a finite family in dimension n.
HellyReport helly_check(std::span<const HPolytope> ks, std::size_t n, const ScanOptions& options = {});

}  // namespace compactness
