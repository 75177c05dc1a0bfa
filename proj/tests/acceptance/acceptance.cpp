// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "combinatorial.hpp"
#include "compactness/combinatorics.hpp"
#include "compactness/convex_geometry.hpp"
#include "compactness/json_io.hpp"
#include "compactness/linear_systems.hpp"
#include "compactness/polynomial_finite.hpp"
#include "compactness/sequence_spaces.hpp"
#include "exact_rank.hpp"
#include "minimal_face.hpp"
#include "generators.hpp"

using namespace compactness;
using json_io::json;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
  double limit_seconds = 0;  // 0 = no runtime criterion
};

struct Failures {
  std::size_t count = 0;
  std::string first;
  void note(bool ok, const std::string& what) {
    if (ok) return;
    if (count++ == 0) first = what;
  }
  std::string summary() const { return count ? std::to_string(count) + " violations, first: " + first : "0 violations"; }
};

int failed = 0;

void criterion(int id, const std::string& name, const std::function<Verdict()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v.pass = false;
    v.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (v.limit_seconds > 0 && secs >= v.limit_seconds) {
    v.pass = false;
    v.detail += " (runtime limit " + std::to_string(static_cast<int>(v.limit_seconds)) + " s exceeded)";
  }
  std::printf("%s  %d. %s: %s [%.2f s]\n", v.pass ? "PASS" : "FAIL", id, name.c_str(), v.detail.c_str(), secs);
  std::fflush(stdout);
  if (!v.pass) ++failed;
}

std::pair<int, json> cli_json(const std::vector<std::string>& args) {
  std::istringstream in;
  std::ostringstream out;
  const int code = cli::run(args, out, in);
  return {code, json::parse(out.str())};
}

// Shared by criteria 2 and 3.
struct RandomSystem {
  Field field;
  std::size_t n;
  std::vector<std::vector<long long>> rows;
  LinearSystem system;
};

std::vector<RandomSystem> random_systems() {
  std::mt19937_64 rng(20240101);
  std::vector<RandomSystem> out;
  for (int t = 0; t < 1000; ++t) {
    const Field f = t % 2 ? Field::rationals() : Field::prime(5);
    const auto n = static_cast<std::size_t>(gen::uniform(rng, 1, 4));
    const auto m = static_cast<std::size_t>(gen::uniform(rng, 1, 12));
    auto rows = gen::random_rows(rng, n, m);
    auto s = gen::to_system(f, rows, n);
    out.push_back({f, n, std::move(rows), std::move(s)});
  }
  return out;
}

std::vector<std::vector<std::int64_t>> as_int64(const std::vector<std::vector<long long>>& rows) {
  std::vector<std::vector<std::int64_t>> out;
  for (const auto& r : rows) out.emplace_back(r.begin(), r.end());
  return out;
}

Verdict abian() {
  Failures f;
  for (std::int64_t p : {2, 3, 5, 7, 11, 13}) {
    const auto [code, j] = cli_json({"abian", "--p", std::to_string(p)});
    const std::string tag = "p=" + std::to_string(p);
    f.note(code == cli::kOk, tag + " exit code " + std::to_string(code));
    f.note(j.value("whole_unsolvable", false), tag + " whole_unsolvable");
    f.note(j.value("each_deletion_solvable", false), tag + " each_deletion_solvable");
    const json& del = j["deletion_solutions"];
    f.note(del.is_object() && del.size() == static_cast<std::size_t>(p), tag + " deletion count");
    if (!del.is_object()) continue;
    const std::string star = std::to_string(p);
    for (std::int64_t b = 0; b < p; ++b) {
      const json& sol = del[std::to_string(b)];
      f.note(sol.value(star, -1) == b, tag + " x_* != b at b=" + std::to_string(b));
      for (std::int64_t a = 0; a < p; ++a) {
        if (a == b) continue;
        const std::int64_t inv = oracle::pow_mod(((a - b) % p + p) % p, p - 2, p);
        f.note(sol.value(std::to_string(a), -1) == inv,
               tag + " x_a != (a-b)^-1 at a=" + std::to_string(a) + ", b=" + std::to_string(b));
      }
    }
    if (p <= 5) {
      const auto bf = verify_abian_counterexample(static_cast<std::uint64_t>(p));
      const auto st = verify_abian_counterexample(static_cast<std::uint64_t>(p), {.structured_only = true});
      f.note(bf.method == "brute-force" && st.method == "structured", tag + " method labels");
      f.note(bf.whole_unsolvable == st.whole_unsolvable && bf.each_deletion_solvable == st.each_deletion_solvable &&
                 bf.deletion_solutions == st.deletion_solutions,
             tag + " brute force and closed form disagree");
    }
  }
  return {f.count == 0, f.summary(), 10};
}

Verdict helly_number_suite(const std::vector<RandomSystem>& systems) {
  Failures f;
  std::size_t inconsistent = 0;
  for (std::size_t t = 0; t < systems.size(); ++t) {
    const auto& s = systems[t];
    const auto r = verify_helly_number(s.system, s.n);
    const bool truth = oracle::consistent(as_int64(s.rows), s.field.characteristic());
    inconsistent += !truth;
    const std::string tag = "system " + std::to_string(t);
    f.note(r.whole_consistent == truth, tag + ": whole consistency disagrees with the rank oracle");
    f.note(r.whole_consistent == r.all_small_subsets_consistent, tag + ": equivalence violated");
    if (r.violating_subset) {
      std::vector<std::vector<long long>> sub;
      for (auto i : *r.violating_subset) sub.push_back(s.rows[i]);
      f.note(r.violating_subset->size() <= s.n + 1, tag + ": violator too large");
      f.note(!oracle::consistent(as_int64(sub), s.field.characteristic()), tag + ": violator is consistent");
    }
  }
  return {f.count == 0, f.summary() + " over " + std::to_string(systems.size()) + " systems (" +
                            std::to_string(inconsistent) + " inconsistent)",
          60};
}

Verdict duality(const std::vector<RandomSystem>& systems) {
  Failures f;
  for (std::size_t t = 0; t < systems.size(); ++t) {
    const auto& s = systems[t];
    const auto cert = check_consistency(s.system);
    const auto w = in_row_span(s.system.homogenized(), impossible_equation(s.field, s.system.variables().size()));
    const std::string tag = "system " + std::to_string(t);
    f.note(w.has_value() == !is_solution(cert), tag + ": certificate kind disagrees with row-span witness");
    f.note(verify_certificate(s.system, cert), tag + ": certificate does not re-verify");
  }
  return {f.count == 0, f.summary()};
}

Verdict radon() {
  std::mt19937_64 rng(20240102);
  Failures f;
  const Field q = Field::rationals();
  for (std::size_t n = 1; n <= 5; ++n) {
    for (int t = 0; t < 500; ++t) {
      const auto ps = gen::random_points(rng, n);
      const auto r = radon_partition(ps);
      const std::string tag = "n=" + std::to_string(n) + " #" + std::to_string(t);
      f.note(!r.part1.empty() && !r.part2.empty(), tag + ": empty part");
      f.note(r.part1.size() + r.part2.size() == ps.points.size(), tag + ": parts do not cover the points");
      auto convex_ok = [&](const std::vector<std::size_t>& part, const Vector& w) {
        if (part.size() != w.size()) return false;
        Scalar total = Scalar::zero(q);
        Vector combo(n, Scalar::zero(q));
        for (std::size_t k = 0; k < part.size(); ++k) {
          if (w[k] < Scalar::zero(q)) return false;
          total += w[k];
          for (std::size_t c = 0; c < n; ++c) combo[c] += w[k] * ps.points[part[k]][c];
        }
        return total == Scalar::one(q) && combo == r.witness;
      };
      f.note(convex_ok(r.part1, r.weights1), tag + ": weights1 are not convex coefficients of the witness");
      f.note(convex_ok(r.part2, r.weights2), tag + ": weights2 are not convex coefficients of the witness");
      f.note(in_convex_hull(ps, r.part1, r.witness), tag + ": witness outside hull of part1");
      f.note(in_convex_hull(ps, r.part2, r.witness), tag + ": witness outside hull of part2");
    }
  }
  return {f.count == 0, f.summary() + " over 2500 point sets", 60};
}

bool oracle_intersects(const std::vector<HPolytope>& ks, std::size_t n) {
  std::vector<oracle::Ineq> rows;
  for (const auto& k : ks)
    for (const auto& h : k.inequalities) {
      oracle::Ineq r;
      for (const auto& a : h.normal) r.a.push_back(a.rational());
      r.b = h.offset.rational();
      rows.push_back(std::move(r));
    }
  return oracle::minimal_face_feasible(rows, n);
}

HPolytope slab(long long a0, long long a1, long long c) {
  const Field q = Field::rationals();
  const Vector n{Scalar(q, a0), Scalar(q, a1)}, m{Scalar(q, -a0), Scalar(q, -a1)};
  return HPolytope{2, {{n, Scalar(q, c + 1)}, {m, Scalar(q, 1 - c)}}};
}

Verdict helly() {
  std::mt19937_64 rng(20240103);
  Failures f;
  std::size_t negatives = 0;
  for (int t = 0; t < 500; ++t) {
    const auto n = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
    const auto m = gen::uniform(rng, 1, 8);
    std::vector<HPolytope> ks;
    for (long long i = 0; i < m; ++i) ks.push_back(gen::random_polytope(rng, n));
    const auto r = helly_check(ks, n);
    const std::string tag = "family " + std::to_string(t);
    f.note(!(r.all_small_intersect && !r.whole_intersects), tag + ": small subfamilies meet but the whole does not");
    f.note(r.whole_intersects == oracle_intersects(ks, n), tag + ": whole intersection disagrees with minimal-face oracle");
    if (r.witness)
      for (const auto& k : ks) f.note(k.contains(*r.witness), tag + ": witness outside a member");
    negatives += !r.whole_intersects;
  }
  const auto slabs = helly_check(std::vector{slab(1, 0, 0), slab(0, 1, 0), slab(1, 1, 10)}, 2);
  f.note(!slabs.all_small_intersect, "three slabs: all_small_intersect should be false");
  f.note(slabs.violating_subfamily && slabs.violating_subfamily->size() == 3, "three slabs: violator size is not 3");
  return {f.count == 0, f.summary() + " over 500 families (" + std::to_string(negatives) + " empty), three-slab violator " +
                            (slabs.violating_subfamily ? std::to_string(slabs.violating_subfamily->size()) : "none")};
}

Verdict staircase() {
  Failures f;
  const Field q = Field::rationals();
  const auto two = blowup_report(PQPair::from_q(2), 25);
  for (const auto& row : two) {
    const std::string tag = "q=2 i=" + std::to_string(row.i);
    f.note(row.exact_norm_squared && *row.exact_norm_squared == Scalar(q, static_cast<long long>(row.i)),
           tag + ": exact squared norm is not i");
  }
  // Same quantity through min_q_norm directly.
  for (std::size_t i = 1; i <= 25; ++i) {
    const auto r = min_q_norm(staircase_system(i, PQPair::from_q(2)));
    f.note(r.method == "exact-gram" && r.exact_norm_squared == Scalar(q, static_cast<long long>(i)),
           "q=2 i=" + std::to_string(i) + ": exact Gram path");
  }
  const auto four = blowup_report(PQPair::from_q(4), 16);
  double worst = INFINITY;
  for (const auto& row : four) {
    const double gap = row.min_norm - std::pow(static_cast<double>(row.i), 0.25);
    worst = std::min(worst, gap);
    f.note(gap >= -1e-9, "q=4 i=" + std::to_string(row.i) + ": min-norm below i^(1/4)");
  }
  const auto [code, j] = cli_json({"staircase", "--q", "2", "--M", "2", "--json"});
  const json first = j["bounded_scan"].is_object() ? j["bounded_scan"]["first_failure"] : json(nullptr);
  f.note(code == cli::kNegative && first == 5, "staircase --q 2 --M 2 first failure is " + first.dump());
  std::ostringstream d;
  d << f.summary() << "; q=4 smallest margin over i^(1/4) = " << worst << "; CLI first failure i = " << first.dump();
  return {f.count == 0, d.str()};
}

Verdict holder() {
  std::mt19937_64 rng(20240104);
  std::uniform_real_distribution<double> coord(-1.0, 1.0), expo(1.05, 8.0);
  Failures f;
  double worst = -INFINITY;
  for (int t = 0; t < 10000; ++t) {
    const double p = expo(rng);
    const PQPair pq = PQPair::from_p(p);
    const auto len = static_cast<std::size_t>(gen::uniform(rng, 1, 20));
    FiniteSeq a, u;
    for (std::size_t j = 0; j < len; ++j) {
      a.coords.push_back(coord(rng));
      u.coords.push_back(coord(rng));
    }
    const auto h = holder_pair(a, u, pq);
    double l1 = 0, na = 0, nu = 0;
    for (std::size_t j = 0; j < len; ++j) {
      l1 += std::abs(a.coords[j] * u.coords[j]);
      na += std::pow(std::abs(a.coords[j]), pq.p());
      nu += std::pow(std::abs(u.coords[j]), pq.q());
    }
    const double bound = std::pow(na, 1 / pq.p()) * std::pow(nu, 1 / pq.q());
    worst = std::max(worst, l1 - bound);
    f.note(l1 <= bound + 1e-10, "pair " + std::to_string(t) + ": independent inequality fails");
    f.note(h.l1 <= h.bound + 1e-10, "pair " + std::to_string(t) + ": reported inequality fails");
    f.note(std::abs(h.l1 - l1) <= 1e-12 * std::max(1.0, l1) && std::abs(h.bound - bound) <= 1e-12 * std::max(1.0, bound),
           "pair " + std::to_string(t) + ": reported values disagree with recomputation");
  }
  // Cauchy-Schwarz equality: u parallel to a.
  const FiniteSeq a{{3, -4, 12}}, u{{1.5, -2, 6}};
  const auto eq = holder_pair(a, u, PQPair(2, 2));
  const bool equal = std::abs(eq.pairing - 84.5) <= 1e-12 && std::abs(eq.bound - 84.5) <= 1e-12;
  f.note(equal, "equality case: pairing " + std::to_string(eq.pairing) + " vs bound " + std::to_string(eq.bound));
  std::ostringstream d;
  d << f.summary() << " over 10^4 pairs; largest l1 - bound = " << worst << "; equality case "
    << (equal ? "attained" : "missed");
  return {f.count == 0, d.str()};
}

double q_norm(const std::vector<double>& u, double q) {
  double s = 0;
  for (double x : u) s += std::pow(std::abs(x), q);
  return std::pow(s, 1 / q);
}

Verdict separable() {
  std::mt19937_64 rng(20240105);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Failures f;
  double worst_residual = 0;
  for (int t = 0; t < 50; ++t) {
    const auto rows = static_cast<std::size_t>(gen::uniform(rng, 1, 4));
    const auto h = static_cast<std::size_t>(gen::uniform(rng, static_cast<long long>(rows), 6));
    SeparablePolySystem s;
    s.degree = 2;
    s.pq = PQPair::from_q(4);
    std::vector<double> u0(h);
    for (auto& x : u0) x = unit(rng);
    s.coeffs.assign(rows, std::vector<std::vector<double>>(h, std::vector<double>(2)));
    for (auto& row : s.coeffs)
      for (auto& c : row)
        for (auto& x : c) x = unit(rng);
    for (std::size_t i = 0; i < rows; ++i) {
      double b = 0;
      for (std::size_t j = 0; j < h; ++j) b += s.coeffs[i][j][0] * u0[j] + s.coeffs[i][j][1] * u0[j] * u0[j];
      s.rhs.push_back(b);
    }
    s.bound = q_norm(u0, 4);
    const auto r = solve_separable_poly(s, rows);
    const std::string tag = "instance " + std::to_string(t);
    f.note(r.status == SeparableStatus::Found, tag + ": status " + to_string(r.status));
    if (r.status != SeparableStatus::Found) continue;
    double res = 0;
    for (std::size_t i = 0; i < rows; ++i) res = std::max(res, std::abs(s.residual(i, r.solution)));
    worst_residual = std::max(worst_residual, res);
    f.note(res < 1e-6, tag + ": residual " + std::to_string(res));
    f.note(q_norm(r.solution, 4) <= s.bound + 1e-6, tag + ": norm exceeds M");
  }

  // d = 1: Found exactly when M is at least the minimum norm.
  std::size_t agreements = 0;
  for (int t = 0; t < 100; ++t) {
    const auto rows = static_cast<std::size_t>(gen::uniform(rng, 1, 4));
    const auto h = static_cast<std::size_t>(gen::uniform(rng, static_cast<long long>(rows) + 1, 6));
    TruncatedSystem lin;
    lin.pq = PQPair::from_q(4);
    SeparablePolySystem s;
    s.degree = 1;
    s.pq = lin.pq;
    const Field q = Field::rationals();
    for (std::size_t i = 0; i < rows; ++i) {
      Vector row;
      std::vector<std::vector<double>> srow;
      for (std::size_t j = 0; j < h; ++j) {
        const long long a = gen::uniform(rng, -3, 3);
        row.emplace_back(q, a);
        srow.push_back({static_cast<double>(a)});
      }
      const long long b = gen::uniform(rng, -4, 4);
      lin.rows.push_back(std::move(row));
      lin.rhs.emplace_back(q, b);
      s.coeffs.push_back(std::move(srow));
      s.rhs.push_back(static_cast<double>(b));
    }
    double mu = 0;
    try {
      mu = min_q_norm(lin).norm;
    } catch (const InconsistentSystem&) {
      // Rank-deficient draw; the separable solver must not claim a solution at any radius.
      s.bound = 100;
      const bool ok = solve_separable_poly(s, rows).status != SeparableStatus::Found;
      f.note(ok, "d=1 instance " + std::to_string(t) + ": found a solution of an inconsistent system");
      agreements += ok;
      continue;
    }
    if (mu == 0) {
      s.bound = 1;
      const bool ok = solve_separable_poly(s, rows).status == SeparableStatus::Found;
      f.note(ok, "d=1 instance " + std::to_string(t) + ": zero solution not found");
      agreements += ok;
      continue;
    }
    s.bound = 1.25 * mu;
    const bool above = solve_separable_poly(s, rows).status == SeparableStatus::Found;
    s.bound = 0.8 * mu;
    const bool below = solve_separable_poly(s, rows).status != SeparableStatus::Found;
    f.note(above, "d=1 instance " + std::to_string(t) + ": not found at 1.25 mu");
    f.note(below, "d=1 instance " + std::to_string(t) + ": found below mu");
    agreements += above && below;
  }
  std::ostringstream d;
  d << f.summary() << "; worst d=2 residual " << worst_residual << "; d=1 agreement " << agreements << "/100";
  return {f.count == 0, d.str()};
}

Verdict combinatorics() {
  std::mt19937_64 rng(20240106);
  Failures f;
  for (int t = 0; t < 200; ++t) {
    const auto m = static_cast<std::size_t>(gen::uniform(rng, 1, 4));
    std::vector<std::vector<int>> domains(m);
    for (auto& d : domains) {
      const auto size = gen::uniform(rng, 1, 3);
      for (int v = 0; v < size; ++v) d.push_back(v);
    }
    const auto inst = ChoiceInstance::random(domains, rng);
    const auto phi = rado_select(inst);
    f.note(oracle::rado_holds(m, inst.local_choices, phi), "rado instance " + std::to_string(t));
  }

  // Every family of up to 3 domains over 3 labels, then random ones up to 8 indices.
  const std::vector<std::string> labels{"a", "b", "c", "d", "e", "f", "g", "h"};
  auto check_matching = [&](const std::vector<std::vector<std::string>>& domains, const std::string& tag) {
    const auto r = injective_choice(domains);
    f.note(r.choice.has_value() == oracle::has_sdr(domains), tag + ": matching existence disagrees");
    if (r.choice) {
      const std::set<std::string> distinct(r.choice->begin(), r.choice->end());
      bool members = distinct.size() == domains.size();
      for (std::size_t i = 0; i < domains.size() && members; ++i)
        members = std::find(domains[i].begin(), domains[i].end(), (*r.choice)[i]) != domains[i].end();
      f.note(members, tag + ": choice is not a system of distinct representatives");
    } else if (r.hall_violator) {
      std::set<std::string> nb;
      for (auto i : *r.hall_violator) nb.insert(domains[i].begin(), domains[i].end());
      f.note(nb.size() < r.hall_violator->size(), tag + ": reported Hall violator is not one");
    } else {
      f.note(false, tag + ": neither choice nor violator");
    }
  };
  std::size_t exhaustive = 0;
  for (std::size_t m = 1; m <= 3; ++m) {
    std::uint32_t total = 1;
    for (std::size_t i = 0; i < m; ++i) total *= 8;
    for (std::uint32_t code = 0; code < total; ++code) {
      std::vector<std::vector<std::string>> domains(m);
      std::uint32_t c = code;
      for (auto& d : domains) {
        for (std::size_t x = 0; x < 3; ++x)
          if (c >> x & 1U) d.push_back(labels[x]);
        c >>= 3;
      }
      check_matching(domains, "exhaustive " + std::to_string(m) + "/" + std::to_string(code));
      ++exhaustive;
    }
  }
  for (int t = 0; t < 2000; ++t) {
    const auto m = static_cast<std::size_t>(gen::uniform(rng, 1, 8));
    const auto universe = static_cast<std::size_t>(gen::uniform(rng, 1, 8));
    std::vector<std::vector<std::string>> domains(m);
    for (auto& d : domains)
      for (std::size_t x = 0; x < universe; ++x)
        if (gen::uniform(rng, 0, 2) == 0) d.push_back(labels[x]);
    check_matching(domains, "random " + std::to_string(t));
  }

  const std::size_t horizon = 9;
  const GraphChain chain("odd-cycles", horizon);
  for (std::size_t m = 1; m < horizon; ++m) {
    const auto& small = chain.level(m);
    const auto& big = chain.level(m + 1);
    bool nested = small.vertex_count() <= big.vertex_count();
    for (const auto& [u, v] : small.edges()) nested = nested && big.has_edge(u, v);
    const FiniteGraph head = big.prefix(small.vertex_count());
    for (const auto& [u, v] : head.edges()) nested = nested && small.has_edge(u, v);
    f.note(nested, "odd-cycle level " + std::to_string(m) + " is not an induced prefix of the next");
  }
  std::optional<Coloring> previous;
  for (std::size_t m = 1; m <= horizon; ++m) {
    const auto c = chain_persistent_coloring(chain, 3, m);
    const std::string tag = "odd-cycle chain m=" + std::to_string(m);
    f.note(c.has_value(), tag + ": no persistent coloring");
    if (!c) continue;
    f.note(is_proper_coloring(chain.level(m), *c, 3), tag + ": not proper");
    if (previous) {
      const Coloring restricted(c->begin(), c->begin() + static_cast<std::ptrdiff_t>(previous->size()));
      f.note(restricted == *previous, tag + ": restriction differs from level m-1");
    }
    previous = c;
  }
  return {f.count == 0, f.summary() + "; " + std::to_string(exhaustive) + " exhaustive + 2000 random matching instances", 30};
}

}  // namespace

int main() {
  criterion(1, "abian counterexample, p <= 13", abian);
  const auto systems = random_systems();
  criterion(2, "linear systems: whole consistent iff all (n+1)-subsets consistent", [&] { return helly_number_suite(systems); });
  criterion(3, "certificate duality with row span", [&] { return duality(systems); });
  criterion(4, "Radon partitions, n = 1..5", radon);
  criterion(5, "Helly finite form on random families", helly);
  criterion(6, "staircase blow-up", staircase);
  criterion(7, "Holder inequality", holder);
  criterion(8, "separable polynomial systems at desk scale", separable);
  criterion(9, "choice principles and chain colorings", combinatorics);
  std::printf("%d of 9 criteria failed\n", failed);
  return failed ? 1 : 0;
}
