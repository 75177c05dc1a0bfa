#include "compactness/convex_geometry.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "compactness/detail/parallel.hpp"
#include "compactness/detail/subsets.hpp"

namespace compactness {

namespace {

const Field kQ = Field::rationals();

// Integer multiple of v with coprime entries and a positive first nonzero entry.
Vector primitive_integer(const Vector& v) {
  BigInt lcm = 1;
  for (const auto& s : v) {
    const BigInt d = boost::multiprecision::denominator(s.rational());
    lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
  }
  BigInt g = 0;
  for (const auto& s : v) {
    const BigInt n = boost::multiprecision::numerator(s.rational()) * (lcm / boost::multiprecision::denominator(s.rational()));
    g = boost::multiprecision::gcd(g, boost::multiprecision::abs(n));
  }
  int sign = 1;
  for (const auto& s : v) {
    if (!s.is_zero()) {
      sign = s.sign();
      break;
    }
  }
  Vector out;
  out.reserve(v.size());
  for (const auto& s : v) out.emplace_back(kQ, s.rational() * Rational(lcm) / Rational(g) * sign);
  return out;
}

void check_rational(std::span<const Scalar> v, const char* what) {
  for (const auto& s : v)
    if (!s.field().is_rational()) throw FieldMismatch(std::string(what) + " must be rational");
}

}  // namespace

RadonPartition radon_partition(const PointSet& ps) {
  const std::size_t n = ps.dim;
  if (ps.points.size() != n + 2)
    throw InvalidInput("Radon partition needs n+2 = " + std::to_string(n + 2) + " points, got " +
                       std::to_string(ps.points.size()));
  for (const auto& p : ps.points) {
    if (p.size() != n) throw InvalidInput("point of dimension " + std::to_string(p.size()) + " in R^" + std::to_string(n));
    check_rational(p, "point coordinates");
  }
  for (std::size_t i = 0; i < ps.points.size(); ++i)
    for (std::size_t j = i + 1; j < ps.points.size(); ++j)
      if (ps.points[i] == ps.points[j])
        throw InvalidInput("points " + std::to_string(i) + " and " + std::to_string(j) + " coincide");

  // Columns are points; rows are coordinates followed by a row of ones.
  Matrix m(kQ, n + 1, n + 2);
  for (std::size_t j = 0; j < n + 2; ++j) {
    for (std::size_t i = 0; i < n; ++i) m(i, j) = ps.points[j][i];
    m(n, j) = Scalar::one(kQ);
  }
  const auto basis = nullspace(m);
  // n+1 equations in n+2 unknowns always leave a free column.
  RadonPartition r;
  r.dependency = primitive_integer(basis.front());

  Scalar s = Scalar::zero(kQ);
  for (std::size_t j = 0; j < n + 2; ++j) {
    if (r.dependency[j].sign() > 0) {
      r.part1.push_back(j);
      s += r.dependency[j];
    } else {
      r.part2.push_back(j);
    }
  }
  r.witness.assign(n, Scalar::zero(kQ));
  for (std::size_t j : r.part1) {
    Scalar w = r.dependency[j] / s;
    for (std::size_t i = 0; i < n; ++i) r.witness[i] += w * ps.points[j][i];
    r.weights1.push_back(std::move(w));
  }
  for (std::size_t j : r.part2) r.weights2.push_back(-r.dependency[j] / s);

  if (!verify_radon_partition(ps, r)) throw std::logic_error("Radon construction failed its own check");
  return r;
}

bool verify_radon_partition(const PointSet& ps, const RadonPartition& r) {
  const std::size_t total = ps.points.size();
  if (r.part1.empty() || r.part2.empty()) return false;
  if (r.part1.size() + r.part2.size() != total) return false;
  if (r.weights1.size() != r.part1.size() || r.weights2.size() != r.part2.size()) return false;
  std::set<std::size_t> seen(r.part1.begin(), r.part1.end());
  seen.insert(r.part2.begin(), r.part2.end());
  if (seen.size() != total || *seen.rbegin() >= total) return false;
  if (r.witness.size() != ps.dim) return false;

  auto combination_ok = [&](const std::vector<std::size_t>& part, const Vector& weights) {
    Scalar sum = Scalar::zero(kQ);
    Vector point(ps.dim, Scalar::zero(kQ));
    for (std::size_t k = 0; k < part.size(); ++k) {
      if (weights[k].sign() < 0) return false;
      sum += weights[k];
      for (std::size_t i = 0; i < ps.dim; ++i) point[i] += weights[k] * ps.points[part[k]][i];
    }
    return sum.is_one() && point == r.witness;
  };
  return combination_ok(r.part1, r.weights1) && combination_ok(r.part2, r.weights2);
}

bool in_convex_hull(const PointSet& ps, std::span<const std::size_t> indices, std::span<const Scalar> x) {
  if (x.size() != ps.dim) throw DimensionMismatch("query point dimension differs from the point set");
  const std::size_t k = indices.size();
  std::vector<LinearConstraint> cons;
  for (std::size_t j = 0; j < k; ++j) {
    Vector e(k, Scalar::zero(kQ));
    e[j] = Scalar::one(kQ);
    cons.push_back(greater_equal(std::move(e), Scalar::zero(kQ)));
  }
  cons.push_back(equal_to(Vector(k, Scalar::one(kQ)), Scalar::one(kQ)));
  for (std::size_t i = 0; i < ps.dim; ++i) {
    Vector row;
    row.reserve(k);
    for (std::size_t j : indices) row.push_back(ps.points.at(j)[i]);
    cons.push_back(equal_to(std::move(row), x[i]));
  }
  return lp_feasible(cons, k).has_value();
}

bool HPolytope::contains(std::span<const Scalar> x) const {
  return std::all_of(inequalities.begin(), inequalities.end(), [&](const Halfspace& h) {
    return satisfies(less_equal(h.normal, h.offset), x);
  });
}

HPolytope box(std::size_t dim, std::span<const Scalar> lo, std::span<const Scalar> hi) {
  if (lo.size() != dim || hi.size() != dim) throw DimensionMismatch("box bounds must have length dim");
  HPolytope out{dim, {}};
  for (std::size_t i = 0; i < dim; ++i) {
    Vector up(dim, Scalar::zero(kQ));
    up[i] = Scalar::one(kQ);
    Vector down(dim, Scalar::zero(kQ));
    down[i] = -Scalar::one(kQ);
    out.inequalities.push_back({std::move(up), hi[i]});
    out.inequalities.push_back({std::move(down), -lo[i]});
  }
  return out;
}

namespace {

std::vector<LinearConstraint> stack(std::span<const HPolytope> ks, std::span<const std::size_t> which) {
  std::vector<LinearConstraint> cons;
  for (std::size_t i : which)
    for (const auto& h : ks[i].inequalities) cons.push_back(less_equal(h.normal, h.offset));
  return cons;
}

std::size_t common_dimension(std::span<const HPolytope> ks) {
  if (ks.empty()) return 0;
  const std::size_t dim = ks.front().dim;
  for (const auto& k : ks) {
    if (k.dim != dim) throw DimensionMismatch("polytopes of dimension " + std::to_string(dim) + " and " + std::to_string(k.dim));
    for (const auto& h : k.inequalities)
      if (h.normal.size() != dim) throw DimensionMismatch("normal of length " + std::to_string(h.normal.size()) + " in R^" + std::to_string(dim));
  }
  return dim;
}

}  // namespace

std::optional<Vector> intersect_family(std::span<const HPolytope> ks) {
  const std::size_t dim = common_dimension(ks);
  std::vector<std::size_t> all(ks.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return lp_feasible(stack(ks, all), dim);
}

HellyReport helly_check(std::span<const HPolytope> ks, std::size_t n, const ScanOptions& options) {
  const std::size_t dim = common_dimension(ks);
  if (!ks.empty() && dim != n)
    throw DimensionMismatch("family lives in R^" + std::to_string(dim) + ", not R^" + std::to_string(n));
  const std::size_t m = ks.size();
  const std::size_t max_size = std::min(m, n + 1);
  const std::uint64_t total = detail::count_small_subsets(m, max_size);
  if (total > options.guard)
    throw GuardExceeded(std::to_string(total) + " subfamilies exceed the guard of " + std::to_string(options.guard));

  HellyReport report;
  report.witness = intersect_family(ks);
  report.whole_intersects = report.witness.has_value();
  report.all_small_intersect = true;
  for (std::size_t k = 1; k <= max_size; ++k) {
    const std::uint64_t count = detail::binomial(m, k);
    auto hit = detail::first_match(count, options.threads, [&](std::uint64_t rank) {
      const auto which = detail::unrank_combination(m, k, rank);
      return !lp_feasible(stack(ks, which), n).has_value();
    });
    if (hit) {
      report.subfamilies_checked += *hit + 1;
      report.all_small_intersect = false;
      report.violating_subfamily = detail::unrank_combination(m, k, *hit);
      break;
    }
    report.subfamilies_checked += count;
  }
  return report;
}

}  // namespace compactness
