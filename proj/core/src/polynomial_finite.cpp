#include "compactness/polynomial_finite.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <stdexcept>

#include "compactness/detail/parallel.hpp"
#include "compactness/detail/subsets.hpp"
#include "compactness/scalar.hpp"

namespace compactness {

Ring Ring::prime_field(std::uint64_t p) {
  if (!is_prime(p) || p > std::numeric_limits<std::int32_t>::max())
    throw InvalidInput("GF(" + std::to_string(p) + "): modulus is not a supported prime");
  return Ring(static_cast<std::uint32_t>(p), true, true);
}

Ring Ring::integers_mod(std::uint64_t m) {
  if (m < 2 || m > std::numeric_limits<std::int32_t>::max())
    throw InvalidInput("Z/" + std::to_string(m) + ": modulus out of range");
  return Ring(static_cast<std::uint32_t>(m), is_prime(m), false);
}

Ring Ring::parse(std::string_view text) {
  auto number = [&](std::string_view digits) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc{} || ptr != digits.data() + digits.size())
      throw InvalidInput("malformed ring '" + std::string(text) + "'");
    return v;
  };
  if (text.size() > 4 && text.substr(0, 3) == "GF(" && text.back() == ')')
    return prime_field(number(text.substr(3, text.size() - 4)));
  if (text.size() > 2 && text.substr(0, 2) == "Z/") return integers_mod(number(text.substr(2)));
  throw InvalidInput("unknown ring '" + std::string(text) + "'");
}

std::string Ring::name() const {
  return spelled_gf_ ? "GF(" + std::to_string(m_) + ")" : "Z/" + std::to_string(m_);
}

std::uint32_t Ring::reduce(long long v) const {
  long long r = v % static_cast<long long>(m_);
  if (r < 0) r += m_;
  return static_cast<std::uint32_t>(r);
}

std::uint32_t Ring::inverse(std::uint32_t a) const {
  long long t = 0, new_t = 1;
  long long r = m_, new_r = a % m_;
  while (new_r != 0) {
    const long long q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw std::domain_error(std::to_string(a) + " is not a unit in " + name());
  return reduce(t);
}

FinitePolynomial::FinitePolynomial(Ring ring, std::vector<Term> terms) : ring_(ring) {
  std::map<Monomial, std::uint32_t> merged;
  for (auto& t : terms) {
    for (const auto& [v, e] : t.monomial)
      if (e == 0) throw InvalidInput("monomial exponent of x" + std::to_string(v) + " must be at least 1");
    auto& c = merged[t.monomial];
    c = ring_.add(c, t.coeff % ring_.modulus());
  }
  for (auto& [mono, c] : merged)
    if (c != 0) terms_.push_back({mono, c});
}

std::set<std::size_t> FinitePolynomial::variables() const {
  std::set<std::size_t> out;
  for (const auto& t : terms_)
    for (const auto& [v, e] : t.monomial) out.insert(v);
  return out;
}

std::uint32_t FinitePolynomial::evaluate(const RingAssignment& u) const {
  std::uint32_t sum = 0;
  for (const auto& t : terms_) {
    std::uint32_t prod = t.coeff;
    for (const auto& [v, e] : t.monomial) {
      auto it = u.find(v);
      const std::uint32_t x = it == u.end() ? 0 : it->second % ring_.modulus();
      for (unsigned k = 0; k < e; ++k) prod = ring_.mul(prod, x);
    }
    sum = ring_.add(sum, prod);
  }
  return sum;
}

namespace {

// Polynomials flattened onto variable slots for the inner scan loop.
class CompiledSystem {
 public:
  CompiledSystem(std::span<const FinitePolynomial> polys, const std::vector<std::size_t>& vars, Ring ring)
      : ring_(ring) {
    for (const auto& p : polys) {
      Poly cp;
      for (const auto& t : p.terms()) {
        CTerm ct{t.coeff, {}};
        for (const auto& [v, e] : t.monomial) {
          const auto slot = static_cast<std::size_t>(std::lower_bound(vars.begin(), vars.end(), v) - vars.begin());
          ct.factors.emplace_back(slot, e);
        }
        cp.push_back(std::move(ct));
      }
      polys_.push_back(std::move(cp));
    }
  }

  bool all_vanish(std::span<const std::uint32_t> x) const {
    for (const auto& p : polys_) {
      std::uint32_t sum = 0;
      for (const auto& t : p) {
        std::uint32_t prod = t.coeff;
        for (const auto& [slot, e] : t.factors)
          for (unsigned k = 0; k < e; ++k) prod = ring_.mul(prod, x[slot]);
        sum = ring_.add(sum, prod);
      }
      if (sum != 0) return false;
    }
    return true;
  }

 private:
  struct CTerm {
    std::uint32_t coeff;
    std::vector<std::pair<std::size_t, unsigned>> factors;
  };
  using Poly = std::vector<CTerm>;
  Ring ring_;
  std::vector<Poly> polys_;
};

void decode(std::uint64_t index, std::uint32_t base, std::span<std::uint32_t> digits) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    digits[i] = static_cast<std::uint32_t>(index % base);
    index /= base;
  }
}

}  // namespace

BruteForceResult brute_force_solve(std::span<const FinitePolynomial> polys, const BruteForceOptions& options) {
  BruteForceResult result;
  if (polys.empty()) {
    result.solution = RingAssignment{};
    result.scanned = 1;
    return result;
  }
  const Ring ring = polys.front().ring();
  std::set<std::size_t> vars;
  for (const auto& p : polys) {
    if (!(p.ring() == ring)) throw InvalidInput("polynomials over " + ring.name() + " and " + p.ring().name());
    const auto v = p.variables();
    vars.insert(v.begin(), v.end());
  }
  result.variables.assign(vars.begin(), vars.end());

  std::uint64_t space = 1;
  for (std::size_t i = 0; i < result.variables.size(); ++i) {
    if (space > options.limit / ring.size())
      throw GuardExceeded("search space " + std::to_string(ring.size()) + "^" +
                          std::to_string(result.variables.size()) + " exceeds the limit of " +
                          std::to_string(options.limit));
    space *= ring.size();
  }

  const CompiledSystem compiled(polys, result.variables, ring);
  const std::size_t nvars = result.variables.size();
  auto hit = detail::first_match(space, options.threads, [&](std::uint64_t index) {
    thread_local std::vector<std::uint32_t> digits;
    digits.resize(nvars);
    decode(index, ring.size(), digits);
    return compiled.all_vanish(digits);
  });

  if (!hit) {
    result.scanned = space;
    return result;
  }
  result.scanned = *hit + 1;
  std::vector<std::uint32_t> digits(nvars);
  decode(*hit, ring.size(), digits);
  RingAssignment sol;
  for (std::size_t i = 0; i < nvars; ++i) sol.emplace(result.variables[i], digits[i]);
  result.solution = std::move(sol);
  return result;
}

AbianFamily abian_family(std::uint64_t p) {
  if (p > kMaxAbianPrime) throw InvalidInput("p = " + std::to_string(p) + " exceeds " + std::to_string(kMaxAbianPrime));
  const Ring f = Ring::prime_field(p);
  const std::uint32_t minus_one = f.reduce(-1);
  const std::size_t star = f.modulus();
  AbianFamily family{f, {}};
  for (std::uint32_t a = 0; a < f.modulus(); ++a) {
    // (a - x_*) x_a - 1 = a x_a - x_* x_a - 1
    std::vector<Term> terms;
    terms.push_back({{{AbianFamily::element_variable(a), 1}}, a});
    terms.push_back({{{AbianFamily::element_variable(a), 1}, {star, 1}}, minus_one});
    terms.push_back({{}, minus_one});
    family.equations.emplace_back(f, std::move(terms));
  }
  return family;
}

RingAssignment abian_closed_form(std::uint32_t p, std::uint32_t b) {
  const Ring f = Ring::prime_field(p);
  RingAssignment u;
  u.emplace(f.modulus(), b);
  for (std::uint32_t a = 0; a < p; ++a)
    if (a != b) u.emplace(AbianFamily::element_variable(a), f.inverse(f.sub(a, b)));
  return u;
}

namespace {

std::vector<FinitePolynomial> without(const std::vector<FinitePolynomial>& eqs, std::size_t skip) {
  std::vector<FinitePolynomial> out;
  for (std::size_t i = 0; i < eqs.size(); ++i)
    if (i != skip) out.push_back(eqs[i]);
  return out;
}

// With x_* fixed, equation a only involves x_a, so solvability of the whole
// family reduces to p one-variable searches per value of x_*.
bool decoupled_solvable(const AbianFamily& family, std::uint64_t& evaluations) {
  const std::uint32_t p = family.p();
  for (std::uint32_t star = 0; star < p; ++star) {
    bool all = true;
    for (std::uint32_t a = 0; a < p && all; ++a) {
      bool found = false;
      for (std::uint32_t v = 0; v < p && !found; ++v) {
        ++evaluations;
        RingAssignment u{{family.star_variable(), star}, {AbianFamily::element_variable(a), v}};
        found = family.equations[a].evaluate(u) == 0;
      }
      all = found;
    }
    if (all) return true;
  }
  return false;
}

bool pow_fits(std::uint64_t base, std::uint64_t exp, std::uint64_t limit) {
  std::uint64_t v = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (v > limit / base) return false;
    v *= base;
  }
  return true;
}

}  // namespace

AbianReport verify_abian_counterexample(std::uint64_t p, const AbianOptions& options) {
  const AbianFamily family = abian_family(p);
  AbianReport report;
  report.p = family.p();
  const bool brute = !options.structured_only && pow_fits(p, p + 1, options.guard);
  report.method = brute ? "brute-force" : "structured";
  report.each_deletion_solvable = true;
  report.closed_form_matches = true;

  if (brute) {
    const BruteForceOptions bf{options.guard, options.threads};
    const auto whole = brute_force_solve(family.equations, bf);
    report.whole_unsolvable = !whole.solution.has_value();
    report.assignments_scanned += whole.scanned;
    for (std::uint32_t b = 0; b < family.p(); ++b) {
      const auto reduced = without(family.equations, b);
      const auto r = brute_force_solve(reduced, bf);
      report.assignments_scanned += r.scanned;
      if (!r.solution) {
        report.each_deletion_solvable = false;
        report.closed_form_matches = false;
        continue;
      }
      if (*r.solution != abian_closed_form(family.p(), b)) report.closed_form_matches = false;
      report.deletion_solutions.emplace(b, *r.solution);
    }
    return report;
  }

  report.whole_unsolvable = !decoupled_solvable(family, report.assignments_scanned);
  for (std::uint32_t b = 0; b < family.p(); ++b) {
    RingAssignment u = abian_closed_form(family.p(), b);
    bool ok = true;
    for (std::uint32_t a = 0; a < family.p() && ok; ++a)
      if (a != b) ok = family.equations[a].evaluate(u) == 0;
    ++report.assignments_scanned;
    if (!ok) {
      report.each_deletion_solvable = false;
      report.closed_form_matches = false;
      continue;
    }
    report.deletion_solutions.emplace(b, std::move(u));
  }
  return report;
}

SatisfiabilityReport satisfiability_scan(std::span<const FinitePolynomial> statements,
                                         const SatisfiabilityOptions& options) {
  const std::size_t m = statements.size();
  const std::uint64_t total = detail::count_small_subsets(m, m);
  if (total > options.subset_guard)
    throw GuardExceeded(std::to_string(total) + " subsets exceed the guard of " + std::to_string(options.subset_guard));

  SatisfiabilityReport report;
  report.whole = brute_force_solve(statements, options.solver).solution.has_value();
  report.largest_solvable_size = m;

  BruteForceOptions inner = options.solver;
  inner.threads = 1;
  for (std::size_t k = 1; k <= m; ++k) {
    const std::uint64_t count = detail::binomial(m, k);
    auto hit = detail::first_match(count, options.solver.threads, [&](std::uint64_t rank) {
      std::vector<FinitePolynomial> chosen;
      for (std::size_t i : detail::unrank_combination(m, k, rank)) chosen.push_back(statements[i]);
      return !brute_force_solve(chosen, inner).solution.has_value();
    });
    if (hit) {
      report.subsets_checked += *hit + 1;
      report.largest_solvable_size = k - 1;
      report.first_unsolvable_subset = detail::unrank_combination(m, k, *hit);
      break;
    }
    report.subsets_checked += count;
  }
  return report;
}

}  // namespace compactness
