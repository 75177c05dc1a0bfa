#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "compactness/linalg.hpp"
#include "compactness/sequence_spaces.hpp"
#include "generators.hpp"
#include "projection.hpp"

using namespace compactness;

namespace {

const Field Q = Field::rationals();

Scalar q(long long n, long long d = 1) { return Scalar(Q, Rational(n) / Rational(d)); }

TruncatedSystem system_of(std::vector<Vector> rows, Vector rhs, double qexp) {
  return TruncatedSystem{std::move(rows), std::move(rhs), PQPair::from_q(qexp), std::nullopt};
}

std::vector<oracle::Q> raw(const Vector& v) {
  std::vector<oracle::Q> out;
  for (const auto& s : v) out.push_back(s.rational());
  return out;
}

double max_residual(const TruncatedSystem& s, const std::vector<double>& u) {
  double worst = 0;
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    double v = -s.rhs[i].to_double();
    for (std::size_t j = 0; j < u.size(); ++j) v += s.rows[i][j].to_double() * u[j];
    worst = std::max(worst, std::abs(v));
  }
  return worst;
}

}  // namespace

TEST(PQPair, Conjugates) {
  EXPECT_DOUBLE_EQ(PQPair::from_q(4).p(), 4.0 / 3.0);
  EXPECT_DOUBLE_EQ(PQPair::from_p(2).q(), 2.0);
  EXPECT_THROW(PQPair(2, 3), InvalidInput);
  EXPECT_THROW(PQPair::from_q(1), InvalidInput);
  EXPECT_THROW(PQPair::from_p(0.5), InvalidInput);
}

TEST(Holder, Examples) {
  const PQPair two = PQPair::from_p(2);
  const auto z = holder_pair({{1, 1}}, {{0, 0}}, PQPair::from_p(3));
  EXPECT_EQ(z.pairing, 0);
  EXPECT_EQ(z.l1, 0);
  EXPECT_EQ(z.bound, 0);
  const auto eq = holder_pair({{3, 4}}, {{3, 4}}, two);
  EXPECT_DOUBLE_EQ(eq.pairing, 25);
  EXPECT_DOUBLE_EQ(eq.l1, 25);
  EXPECT_NEAR(eq.bound, 25, 1e-12);
  const auto orth = holder_pair({{1, 0}}, {{0, 1}}, two);
  EXPECT_EQ(orth.pairing, 0);
  EXPECT_EQ(orth.l1, 0);
  EXPECT_DOUBLE_EQ(orth.bound, 1);
}

TEST(Holder, ImplicitZeroTail) {
  const auto r = holder_pair({{1, 2, 3}}, {{1}}, PQPair::from_p(2));
  EXPECT_EQ(r.pairing, 1);
  EXPECT_NEAR(r.bound, std::sqrt(14.0), 1e-12);
}

TEST(Holder, RandomPairs) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> pdist(1.01, 10), x(-5, 5);
  for (int t = 0; t < 2000; ++t) {
    const PQPair pq = PQPair::from_p(pdist(rng));
    FiniteSeq a, u;
    const auto n = gen::uniform(rng, 1, 12);
    for (long long j = 0; j < n; ++j) {
      a.coords.push_back(x(rng));
      u.coords.push_back(x(rng));
    }
    const auto h = holder_pair(a, u, pq);
    EXPECT_LE(h.l1, h.bound + 1e-10);
    EXPECT_LE(std::abs(h.pairing), h.l1 + 1e-12);
  }
}

TEST(LpNorm, LargeExponentDoesNotOverflow) {
  const std::vector<double> x{1e200, 1e200};
  EXPECT_NEAR(lp_norm(x, 50) / 1e200, std::pow(2.0, 1.0 / 50), 1e-12);
  EXPECT_EQ(lp_norm(std::vector<double>{}, 3), 0);
}

TEST(Staircase, Shape) {
  const auto s = staircase_system(3, PQPair::from_p(2));
  ASSERT_EQ(s.rows.size(), 3u);
  EXPECT_EQ(s.rows[0], make_vector(Q, {1, 0, 0}));
  EXPECT_EQ(s.rows[1], make_vector(Q, {1, 1, 0}));
  EXPECT_EQ(s.rows[2], make_vector(Q, {1, 1, 1}));
  EXPECT_EQ(s.rhs, make_vector(Q, {1, 2, 3}));
  const auto one = staircase_system(1, PQPair::from_p(2));
  EXPECT_EQ(one.rows[0], make_vector(Q, {1}));
  EXPECT_EQ(one.rhs, make_vector(Q, {1}));
  EXPECT_THROW(staircase_system(0, PQPair::from_p(2)), InvalidInput);
}

TEST(Staircase, RowNormsArePowersOfI) {
  for (double p : {1.5, 2.0, 4.0 / 3.0, 3.0}) {
    const auto s = staircase_system(30, PQPair::from_p(p));
    for (std::size_t i = 1; i <= 30; ++i) {
      std::vector<double> row;
      for (const auto& x : s.rows[i - 1]) row.push_back(x.to_double());
      EXPECT_NEAR(lp_norm(row, p), std::pow(static_cast<double>(i), 1.0 / p), 1e-12);
    }
  }
  std::vector<double> a4(4, 1.0);
  EXPECT_DOUBLE_EQ(lp_norm(a4, 2), 2);
}

TEST(TruncationSolution, StaircaseOnes) {
  const auto s = staircase_system(50, PQPair::from_p(2));
  for (std::size_t n = 1; n <= 50; ++n) {
    const Vector u = truncation_solution(s, n);
    for (std::size_t j = 0; j < u.size(); ++j) EXPECT_EQ(u[j], q(j < n ? 1 : 0));
    for (std::size_t i = 0; i < n; ++i) {
      Scalar lhs = q(0);
      for (std::size_t j = 0; j < u.size(); ++j) lhs += s.rows[i][j] * u[j];
      EXPECT_EQ(lhs, s.rhs[i]);
    }
  }
}

TEST(TruncationSolution, GeneralAndErrors) {
  const auto s = system_of({make_vector(Q, {1, 1})}, make_vector(Q, {2}), 2);
  EXPECT_EQ(truncation_solution(s, 1), make_vector(Q, {2, 0}));
  const auto bad = system_of({make_vector(Q, {1}), make_vector(Q, {1})}, make_vector(Q, {0, 1}), 2);
  EXPECT_THROW(truncation_solution(bad, 2), InconsistentSystem);
  EXPECT_THROW(truncation_solution(bad, 3), InvalidInput);
}

TEST(MinNorm, Examples) {
  const auto stairs = staircase_system(6, PQPair::from_q(2));
  const auto r = min_q_norm(stairs);
  EXPECT_EQ(r.method, "exact-gram");
  EXPECT_EQ(*r.exact_solution, make_vector(Q, {1, 1, 1, 1, 1, 1}));
  EXPECT_EQ(*r.exact_norm_squared, q(6));

  for (double qe : {2.0, 1.5, 4.0}) {
    const auto single = min_q_norm(system_of({make_vector(Q, {1})}, make_vector(Q, {5}), qe));
    EXPECT_NEAR(single.norm, 5, 1e-9) << qe;
  }
  const auto two = min_q_norm(system_of({make_vector(Q, {1, 1})}, make_vector(Q, {2}), 2));
  EXPECT_EQ(*two.exact_solution, make_vector(Q, {1, 1}));
  EXPECT_EQ(*two.exact_norm_squared, q(2));
}

TEST(MinNorm, InconsistentAndZero) {
  EXPECT_THROW(min_q_norm(system_of({make_vector(Q, {1}), make_vector(Q, {1})}, make_vector(Q, {0, 1}), 3)),
               InconsistentSystem);
  EXPECT_THROW(min_q_norm(system_of({make_vector(Q, {1}), make_vector(Q, {1})}, make_vector(Q, {0, 1}), 2)),
               InconsistentSystem);
  const auto z = min_q_norm(system_of({make_vector(Q, {0, 0})}, make_vector(Q, {0}), 3));
  EXPECT_EQ(z.norm, 0);
}

TEST(MinNorm, ExactGramMatchesProjectionOracle) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 150; ++t) {
    const auto m = static_cast<std::size_t>(gen::uniform(rng, 1, 6));
    const auto n = static_cast<std::size_t>(gen::uniform(rng, 1, 8));
    std::vector<Vector> rows;
    Vector x0;
    for (std::size_t j = 0; j < n; ++j) x0.push_back(q(gen::uniform(rng, -4, 4), gen::uniform(rng, 1, 3)));
    Vector rhs;
    for (std::size_t i = 0; i < m; ++i) {
      Vector r;
      for (std::size_t j = 0; j < n; ++j) r.push_back(q(gen::uniform(rng, -3, 3)));
      Scalar b = q(0);
      for (std::size_t j = 0; j < n; ++j) b += r[j] * x0[j];
      rows.push_back(r);
      rhs.push_back(b);
    }
    const auto sys = system_of(rows, rhs, 2);
    const auto r = min_q_norm(sys);
    std::vector<std::vector<oracle::Q>> raw_rows;
    for (const auto& row : rows) raw_rows.push_back(raw(row));
    EXPECT_EQ(r.exact_norm_squared->rational(), oracle::projected_norm_squared(raw_rows, raw(x0)));
    EXPECT_GE(r.norm, r.holder_lower_bound - 1e-9);
  }
}

TEST(MinNorm, NumericPathsRespectLowerBounds) {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 120; ++t) {
    const double qe = t % 2 ? 1.5 : 4.0;
    const auto m = static_cast<std::size_t>(gen::uniform(rng, 1, 4));
    const auto n = static_cast<std::size_t>(gen::uniform(rng, static_cast<long long>(m), 7));
    std::vector<Vector> rows;
    Vector rhs;
    for (std::size_t i = 0; i < m; ++i) {
      Vector r;
      for (std::size_t j = 0; j < n; ++j) r.push_back(q(gen::uniform(rng, -3, 3)));
      rows.push_back(r);
      rhs.push_back(q(gen::uniform(rng, -5, 5)));
    }
    const auto sys = system_of(rows, rhs, qe);
    MinNormResult r;
    try {
      r = min_q_norm(sys);
    } catch (const InconsistentSystem&) {
      continue;
    }
    EXPECT_LT(r.residual, 1e-8);
    EXPECT_LT(r.gradient_norm, 1e-8);
    EXPECT_GE(r.norm, r.holder_lower_bound - 1e-9);
    // Any multiplier gives a valid lower bound, so it can never exceed the optimum.
    EXPECT_LE(r.dual_lower_bound, r.norm + 1e-7);
    EXPECT_NEAR(r.dual_lower_bound, r.norm, 1e-6 * std::max(1.0, r.norm));
    EXPECT_LT(max_residual(sys, r.solution), 1e-8);
  }
}

TEST(Blowup, QTwoIsExactlySqrtI) {
  const auto rows = blowup_report(PQPair::from_q(2), 25);
  for (const auto& r : rows) {
    EXPECT_EQ(*r.exact_norm_squared, q(static_cast<long long>(r.i)));
    EXPECT_NEAR(r.min_norm / r.lower_bound, 1.0, 1e-12);
  }
  EXPECT_DOUBLE_EQ(rows[3].min_norm, 2);
  EXPECT_DOUBLE_EQ(rows[0].min_norm, 1);
}

TEST(Blowup, QFourAndOneAndAHalf) {
  for (double qe : {4.0, 1.5}) {
    const auto rows = blowup_report(PQPair::from_q(qe), 16);
    for (const auto& r : rows) EXPECT_GE(r.min_norm, r.lower_bound - 1e-9) << "q=" << qe << " i=" << r.i;
    EXPECT_GE(rows[15].min_norm, 2 - 1e-9 * (qe == 4.0));
  }
}

TEST(BoundedScan, Examples) {
  const auto stairs = staircase_system(10, PQPair::from_q(2));
  const auto r = bounded_scan(stairs, 2, 10);
  EXPECT_FALSE(r.all_truncations_bounded);
  EXPECT_EQ(r.first_failure, 5u);
  EXPECT_TRUE(bounded_scan(stairs, 10, 10).all_truncations_bounded);
  const auto zero = system_of({make_vector(Q, {1, 2}), make_vector(Q, {3, 1})}, make_vector(Q, {0, 0}), 3);
  EXPECT_TRUE(bounded_scan(zero, 1e-3, 2).all_truncations_bounded);
  EXPECT_THROW(bounded_scan(stairs, 0, 3), InvalidInput);
}

TEST(BoundedScan, InconsistentTruncationFails) {
  const auto s = system_of({make_vector(Q, {1}), make_vector(Q, {1})}, make_vector(Q, {0, 1}), 2);
  const auto r = bounded_scan(s, 100, 2);
  EXPECT_EQ(r.first_failure, 2u);
}

TEST(Separable, SingleQuadratic) {
  SeparablePolySystem s{2, {{{1, 1}}}, {2}, PQPair::from_q(4), 2};
  const auto r = solve_separable_poly(s, 1);
  ASSERT_EQ(r.status, SeparableStatus::Found);
  EXPECT_NEAR(r.solution[0], 1, 1e-7);
  EXPECT_LT(r.residual, 1e-6);
}

TEST(Separable, TwoEquations) {
  SeparablePolySystem s{2, {{{1, 1}, {0, 0}}, {{0, 0}, {0, 1}}}, {2, 4}, PQPair::from_q(4), 4};
  const auto r = solve_separable_poly(s, 2);
  ASSERT_EQ(r.status, SeparableStatus::Found);
  // u_0 + u_0^2 = 2 has roots 1 and -2; both fit inside M = 4.
  EXPECT_TRUE(std::abs(r.solution[0] - 1) < 1e-7 || std::abs(r.solution[0] + 2) < 1e-7) << r.solution[0];
  EXPECT_NEAR(std::abs(r.solution[1]), 2, 1e-7);
  EXPECT_LE(r.norm, 4 + 1e-6);
}

TEST(Separable, LinearStaircaseAtExactBound) {
  for (std::size_t i = 1; i <= 6; ++i) {
    SeparablePolySystem s{1, {}, {}, PQPair::from_q(2), std::sqrt(static_cast<double>(i))};
    for (std::size_t r = 1; r <= i; ++r) {
      std::vector<std::vector<double>> row;
      for (std::size_t j = 1; j <= i; ++j) row.push_back({j <= r ? 1.0 : 0.0});
      s.coeffs.push_back(row);
      s.rhs.push_back(static_cast<double>(r));
    }
    const auto res = solve_separable_poly(s, i);
    EXPECT_EQ(res.status, SeparableStatus::Found) << i;
  }
}

TEST(Separable, HypothesisAndShapeChecks) {
  SeparablePolySystem s{2, {{{1, 1}}}, {2}, PQPair::from_q(2), 2};
  EXPECT_EQ(solve_separable_poly(s, 1).status, SeparableStatus::HypothesisViolated);
  EXPECT_THROW(decay_norms(s), InvalidInput);
  SeparablePolySystem ragged{2, {{{1}}}, {2}, PQPair::from_q(4), 2};
  EXPECT_THROW(solve_separable_poly(ragged, 1), DimensionMismatch);
  SeparablePolySystem ok{2, {{{1, 1}}}, {2}, PQPair::from_q(4), 2};
  EXPECT_THROW(solve_separable_poly(ok, 2), InvalidInput);
}

TEST(Separable, DecayNorms) {
  SeparablePolySystem s{2, {{{1, 2}, {1, 2}}}, {0}, PQPair::from_q(4), 1};
  const auto d = decay_norms(s);
  EXPECT_NEAR(d[0][0], std::pow(2.0, 3.0 / 4.0), 1e-12);  // l^{4/3}
  EXPECT_NEAR(d[0][1], 2 * std::sqrt(2.0), 1e-12);        // l^2
}

TEST(Separable, UnreachableBoundIsUnknown) {
  // x^2 + x = 2 needs |x| >= 1; a bound of 1/2 cannot be met.
  SeparablePolySystem s{2, {{{1, 1}}}, {2}, PQPair::from_q(4), 0.5};
  EXPECT_EQ(solve_separable_poly(s, 1).status, SeparableStatus::Unknown);
}

TEST(Separable, DeterministicAcrossThreadCounts) {
  SeparablePolySystem s{2, {{{1, 0.5}, {0.25, 1}, {1, 0}}, {{0, 1}, {1, 1}, {0.5, 0.5}}}, {1, 2}, PQPair::from_q(4), 3};
  SeparableOptions one, many;
  one.threads = 1;
  many.threads = 4;
  const auto a = solve_separable_poly(s, 2, one);
  const auto b = solve_separable_poly(s, 2, many);
  EXPECT_EQ(a.status, b.status);
  EXPECT_EQ(a.solution, b.solution);
}
