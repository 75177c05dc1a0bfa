#include "compactness/linear_systems.hpp"

#include <algorithm>
#include <string>

#include "compactness/detail/parallel.hpp"
#include "compactness/detail/subsets.hpp"

namespace compactness {

LinearEquation::LinearEquation(Field field, std::map<std::size_t, Scalar> coeffs, Scalar constant)
    : field_(field), constant_(std::move(constant)) {
  if (constant_.field() != field) throw FieldMismatch("equation constant outside " + field.name());
  for (auto& [j, a] : coeffs) {
    if (a.field() != field) throw FieldMismatch("coefficient of x" + std::to_string(j) + " outside " + field.name());
    if (!a.is_zero()) coeffs_.emplace(j, std::move(a));
  }
}

Scalar LinearEquation::evaluate(const Assignment& u) const {
  Scalar sum = constant_;
  for (const auto& [j, a] : coeffs_) {
    auto it = u.find(j);
    if (it != u.end()) sum += a * it->second;
  }
  return sum;
}

LinearSystem::LinearSystem(Field field, std::vector<LinearEquation> equations, std::set<std::size_t> extra_variables)
    : field_(field), equations_(std::move(equations)), extra_(std::move(extra_variables)) {
  std::set<std::size_t> universe = extra_;
  for (const auto& e : equations_) {
    if (e.field() != field) throw FieldMismatch("equation over " + e.field().name() + " in a system over " + field.name());
    for (const auto& [j, a] : e.coeffs()) universe.insert(j);
  }
  variables_.assign(universe.begin(), universe.end());
}

LinearSystem LinearSystem::subsystem(std::span<const std::size_t> indices) const {
  std::vector<LinearEquation> eqs;
  eqs.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= equations_.size()) throw DimensionMismatch("equation index " + std::to_string(i) + " out of range");
    eqs.push_back(equations_[i]);
  }
  return LinearSystem(field_, std::move(eqs), extra_);
}

LinearSystem LinearSystem::with_extra_variables(const std::set<std::size_t>& extra) const {
  std::set<std::size_t> all = extra_;
  all.insert(extra.begin(), extra.end());
  return LinearSystem(field_, equations_, std::move(all));
}

Matrix LinearSystem::homogenized() const {
  const std::size_t n = variables_.size();
  Matrix m(field_, equations_.size(), n + 1);
  for (std::size_t i = 0; i < equations_.size(); ++i) {
    for (const auto& [j, a] : equations_[i].coeffs()) {
      auto col = std::lower_bound(variables_.begin(), variables_.end(), j) - variables_.begin();
      m(i, static_cast<std::size_t>(col)) = a;
    }
    m(i, n) = equations_[i].constant();
  }
  return m;
}

Vector impossible_equation(Field field, std::size_t variable_count) {
  Vector e0(variable_count + 1, Scalar::zero(field));
  e0.back() = Scalar::one(field);
  return e0;
}

bool verify_certificate(const LinearSystem& s, const Certificate& c) {
  const Field f = s.field();
  if (const auto* sol = std::get_if<Solution>(&c)) {
    for (const auto& [j, v] : sol->assignment)
      if (v.field() != f) return false;
    return std::all_of(s.equations().begin(), s.equations().end(),
                       [&](const LinearEquation& e) { return e.evaluate(sol->assignment).is_zero(); });
  }
  const auto& inc = std::get<Inconsistency>(c);
  std::map<std::size_t, Scalar> combined;
  Scalar constant = Scalar::zero(f);
  for (const auto& [i, lambda] : inc.multipliers) {
    if (i >= s.size() || lambda.field() != f) return false;
    const auto& eq = s.equations()[i];
    for (const auto& [j, a] : eq.coeffs()) {
      auto [it, inserted] = combined.try_emplace(j, Scalar::zero(f));
      it->second += lambda * a;
    }
    constant += lambda * eq.constant();
  }
  return std::all_of(combined.begin(), combined.end(), [](const auto& kv) { return kv.second.is_zero(); }) &&
         !constant.is_zero();
}

Certificate check_consistency(const LinearSystem& s) {
  const Field f = s.field();
  const std::size_t n = s.variables().size();
  const Matrix h = s.homogenized();
  if (auto w = in_row_span(h, impossible_equation(f, n))) return Inconsistency{std::move(w->coefficients)};

  Matrix a(f, s.size(), n);
  Vector rhs(s.size(), Scalar::zero(f));
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t c = 0; c < n; ++c) a(i, c) = h(i, c);
    rhs[i] = -h(i, n);
  }
  auto sol = solve_linear(a, rhs);
  if (!sol) throw std::logic_error("row-span test and elimination disagree on consistency");
  Solution out;
  for (std::size_t c = 0; c < n; ++c) out.assignment.emplace(s.variables()[c], sol->particular[c]);
  return out;
}

namespace {

// Inconsistent iff elimination puts a pivot in the constant column.
bool rows_consistent(const Matrix& homogenized) {
  const auto pivots = pivot_columns(homogenized);
  return pivots.empty() || pivots.back() != homogenized.cols() - 1;
}

}  // namespace

bool is_consistent(const LinearSystem& s) { return rows_consistent(s.homogenized()); }

HellyNumberReport verify_helly_number(const LinearSystem& s, std::size_t n, const ScanOptions& options) {
  if (s.variables().size() > n)
    throw InvalidInput("system mentions " + std::to_string(s.variables().size()) + " variables, more than n = " +
                       std::to_string(n));
  const std::size_t m = s.size();
  const std::size_t max_size = std::min(m, n + 1);
  const std::uint64_t total = detail::count_small_subsets(m, max_size);
  if (total > options.guard)
    throw GuardExceeded(std::to_string(total) + " subsets exceed the guard of " + std::to_string(options.guard));

  const Matrix h = s.homogenized();
  HellyNumberReport report;
  report.whole_consistent = rows_consistent(h);
  report.all_small_subsets_consistent = true;

  for (std::size_t k = 1; k <= max_size; ++k) {
    const std::uint64_t count = detail::binomial(m, k);
    auto hit = detail::first_match(count, options.threads, [&](std::uint64_t rank) {
      const auto subset = detail::unrank_combination(m, k, rank);
      return !rows_consistent(h.select_rows(subset));
    });
    if (hit) {
      report.subsets_checked += *hit + 1;
      report.all_small_subsets_consistent = false;
      report.violating_subset = detail::unrank_combination(m, k, *hit);
      break;
    }
    report.subsets_checked += count;
  }
  return report;
}

std::optional<std::vector<std::size_t>> minimal_inconsistent_subset(const LinearSystem& s) {
  const Matrix h = s.homogenized();
  if (rows_consistent(h)) return std::nullopt;
  std::vector<std::size_t> keep(s.size());
  for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::vector<std::size_t> trial;
    trial.reserve(keep.size());
    for (std::size_t r : keep)
      if (r != i) trial.push_back(r);
    if (trial.size() == keep.size()) continue;
    if (!rows_consistent(h.select_rows(trial))) keep = std::move(trial);
  }
  return keep;
}

}  // namespace compactness
