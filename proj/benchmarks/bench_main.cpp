#include <benchmark/benchmark.h>

#include <random>

#include "compactness/convex_geometry.hpp"
#include "compactness/linalg.hpp"
#include "compactness/linear_systems.hpp"
#include "compactness/lp.hpp"
#include "compactness/polynomial_finite.hpp"
#include "compactness/sequence_spaces.hpp"

using namespace compactness;

namespace {

Matrix random_matrix(Field f, std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long long> d(-9, 9);
  Matrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Scalar(f, d(rng));
  return m;
}

void BM_RrefRational(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix m = random_matrix(Field::rationals(), n, n + 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(rref(m));
}
BENCHMARK(BM_RrefRational)->Arg(4)->Arg(8)->Arg(16);

void BM_RrefPrime(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix m = random_matrix(Field::prime(101), n, n + 1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(rref(m));
}
BENCHMARK(BM_RrefPrime)->Arg(4)->Arg(8)->Arg(16);

void BM_LpFeasible(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Field q = Field::rationals();
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<long long> d(-5, 5);
  std::vector<LinearConstraint> cs;
  for (std::size_t i = 0; i < 3 * n; ++i) {
    Vector a;
    for (std::size_t j = 0; j < n; ++j) a.emplace_back(q, d(rng));
    cs.push_back(less_equal(std::move(a), Scalar(q, 5 + d(rng))));
  }
  for (auto _ : state) benchmark::DoNotOptimize(lp_feasible(cs, n));
}
BENCHMARK(BM_LpFeasible)->Arg(2)->Arg(4)->Arg(8);

void BM_HellyNumberScan(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const Field q = Field::rationals();
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long long> d(-5, 5);
  std::vector<LinearEquation> eqs;
  for (std::size_t i = 0; i < m; ++i) {
    std::map<std::size_t, Scalar> c;
    for (std::size_t j = 0; j < 4; ++j) c.emplace(j, Scalar(q, d(rng)));
    eqs.emplace_back(q, std::move(c), Scalar(q, d(rng)));
  }
  const LinearSystem s(q, std::move(eqs));
  for (auto _ : state) benchmark::DoNotOptimize(verify_helly_number(s, 4, {.guard = 10'000'000, .threads = 1}));
}
BENCHMARK(BM_HellyNumberScan)->Arg(6)->Arg(9)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_HellyFamily(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const Field q = Field::rationals();
  std::vector<HPolytope> ks;
  for (std::size_t i = 0; i < m; ++i) {
    const Vector lo{Scalar(q, -static_cast<long long>(i)), Scalar(q, 0)}, hi{Scalar(q, 1), Scalar(q, static_cast<long long>(i) + 1)};
    ks.push_back(box(2, lo, hi));
  }
  for (auto _ : state) benchmark::DoNotOptimize(helly_check(ks, 2, {.guard = 10'000'000, .threads = 1}));
}
BENCHMARK(BM_HellyFamily)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Abian(benchmark::State& state) {
  const auto p = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_abian_counterexample(p, {.threads = 1}));
}
BENCHMARK(BM_Abian)->Arg(5)->Arg(7)->Arg(11)->Unit(benchmark::kMillisecond);

void BM_MinNormStaircase(benchmark::State& state) {
  const auto i = static_cast<std::size_t>(state.range(0));
  const double q = static_cast<double>(state.range(1));
  const TruncatedSystem s = staircase_system(i, PQPair::from_q(q));
  for (auto _ : state) benchmark::DoNotOptimize(min_q_norm(s));
}
BENCHMARK(BM_MinNormStaircase)->Args({10, 2})->Args({25, 2})->Args({10, 4})->Args({25, 4});

}  // namespace

BENCHMARK_MAIN();
