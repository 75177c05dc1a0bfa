#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "compactness/json_io.hpp"

namespace compactness::cli {

namespace {

using json_io::json;

enum class Format { Json, Table };

struct Common {
  std::string input;
  bool json_flag = false;
  std::string format;
  std::uint64_t seed = 20240101;
  unsigned threads = 0;
  std::optional<std::uint64_t> guard;
};

// A finished command: report plus exit status. The table renderer is optional.
struct Outcome {
  json report;
  int status = kOk;
  std::function<void(std::ostream&)> table;
};

json read_input(const Common& c, std::istream& in) {
  if (c.input.empty()) throw InvalidInput("--input is required (use '-' for stdin)");
  try {
    if (c.input == "-") return json::parse(in);
    std::ifstream file(c.input);
    if (!file) throw InvalidInput("cannot open " + c.input);
    return json::parse(file);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("input is not valid JSON: ") + e.what());
  }
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  if (v.is_number_float()) {
    std::ostringstream s;
    s << std::setprecision(12) << v.get<double>();
    return s.str();
  }
  return v.dump();
}

// Key/value rendering of a flat report; nested values are printed compactly.
void generic_table(std::ostream& out, const json& report) {
  std::size_t width = 0;
  for (const auto& [k, v] : report.items()) width = std::max(width, k.size());
  for (const auto& [k, v] : report.items()) {
    out << std::left << std::setw(static_cast<int>(width) + 2) << k;
    if (v.is_array() && std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_primitive(); })) {
      for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << scalar_text(v[i]);
    } else if (v.is_primitive()) {
      out << scalar_text(v);
    } else {
      out << v.dump();
    }
    out << '\n';
  }
}

Outcome cmd_certify(const Common& c, std::istream& in) {
  const LinearSystem s = json_io::system_from_json(read_input(c, in));
  const Certificate cert = check_consistency(s);
  if (!verify_certificate(s, cert)) throw std::logic_error("certificate failed re-verification");
  json report{{"consistent", is_solution(cert)}, {"certificate", json_io::to_json(cert)}, {"verified", true}};
  if (!is_solution(cert)) {
    const auto core = minimal_inconsistent_subset(s);
    report["minimal_inconsistent_subset"] = core ? json(*core) : json(nullptr);
  }
  return {report, is_solution(cert) ? kOk : kNegative, {}};
}

Outcome cmd_helly_number(const Common& c, std::istream& in, std::optional<std::size_t> n) {
  const LinearSystem s = json_io::system_from_json(read_input(c, in));
  ScanOptions opts;
  opts.threads = c.threads;
  if (c.guard) opts.guard = *c.guard;
  const std::size_t dim = n.value_or(s.variables().size());
  const HellyNumberReport r = verify_helly_number(s, dim, opts);
  json report = json_io::to_json(r);
  report["n"] = dim;
  return {report, r.whole_consistent ? kOk : kNegative, {}};
}

Outcome cmd_abian(const Common& c, std::uint64_t p, bool structured) {
  AbianOptions opts;
  opts.threads = c.threads;
  opts.structured_only = structured;
  if (c.guard) opts.guard = *c.guard;
  const AbianReport r = verify_abian_counterexample(p, opts);
  const bool ok = r.whole_unsolvable && r.each_deletion_solvable && r.closed_form_matches;
  return {json_io::to_json(r), ok ? kOk : kNegative, {}};
}

Outcome cmd_radon(const Common& c, std::istream& in) {
  const PointSet ps = json_io::point_set_from_json(read_input(c, in));
  const RadonPartition r = radon_partition(ps);
  json report = json_io::to_json(r);
  report["verified"] = verify_radon_partition(ps, r) && in_convex_hull(ps, r.part1, r.witness) &&
                       in_convex_hull(ps, r.part2, r.witness);
  return {report, report["verified"].get<bool>() ? kOk : kNegative, {}};
}

Outcome cmd_helly(const Common& c, std::istream& in) {
  std::size_t dim = 0;
  const auto family = json_io::family_from_json(read_input(c, in), dim);
  ScanOptions opts;
  opts.threads = c.threads;
  if (c.guard) opts.guard = *c.guard;
  const HellyReport r = helly_check(family, dim, opts);
  json report = json_io::to_json(r);
  report["n"] = dim;
  return {report, r.whole_intersects ? kOk : kNegative, {}};
}

Outcome cmd_staircase(std::optional<double> p, std::optional<double> q, std::size_t imax, std::optional<double> bound) {
  if (imax == 0) throw InvalidInput("--imax must be at least 1");
  const PQPair pq = p && q ? PQPair(*p, *q) : q ? PQPair::from_q(*q) : p ? PQPair::from_p(*p) : PQPair::from_q(2.0);
  const auto rows = blowup_report(pq, imax);
  json report{{"p", pq.p()}, {"q", pq.q()}, {"imax", imax}};
  json jrows = json::array();
  for (const auto& r : rows) jrows.push_back(json_io::to_json(r));
  report["rows"] = jrows;
  int status = kOk;
  std::optional<BoundedScanReport> scan;
  if (bound) {
    scan = bounded_scan(staircase_system(imax, pq), *bound, imax);
    report["M"] = *bound;
    report["bounded_scan"] = json_io::to_json(*scan);
    if (!scan->all_truncations_bounded) status = kNegative;
  } else {
    report["M"] = nullptr;
    report["bounded_scan"] = nullptr;
  }
  auto table = [rows, pq, bound, scan](std::ostream& out) {
    out << "staircase q=" << std::setprecision(12) << pq.q() << " p=" << pq.p() << '\n';
    out << std::right << std::setw(4) << "i" << std::setw(18) << "min_norm" << std::setw(18) << "i^(1/q)"
        << std::setw(14) << "||u||^2";
    if (bound) out << std::setw(8) << "<= M";
    out << '\n';
    for (const auto& r : rows) {
      out << std::setw(4) << r.i << std::setw(18) << std::setprecision(12) << r.min_norm << std::setw(18)
          << r.lower_bound << std::setw(14) << (r.exact_norm_squared ? r.exact_norm_squared->to_string() : "-");
      if (bound) out << std::setw(8) << (r.min_norm <= *bound + kNormSlack ? "yes" : "no");
      out << '\n';
    }
    if (scan) {
      if (scan->first_failure)
        out << "first failure at i = " << *scan->first_failure << " (M = " << *bound << ")\n";
      else
        out << "all truncations bounded by M = " << *bound << '\n';
    }
  };
  return {report, status, table};
}

Outcome cmd_min_norm(const Common& c, std::istream& in) {
  const TruncatedSystem s = json_io::truncated_system_from_json(read_input(c, in));
  try {
    const MinNormResult r = min_q_norm(s);
    json report = json_io::to_json(r);
    report["consistent"] = true;
    return {report, kOk, {}};
  } catch (const InconsistentSystem& e) {
    return {json{{"consistent", false}, {"message", e.what()}}, kNegative, {}};
  }
}

Outcome cmd_bounded_scan(const Common& c, std::istream& in, std::optional<double> bound, std::optional<std::size_t> depth) {
  const TruncatedSystem s = json_io::truncated_system_from_json(read_input(c, in));
  const auto m = bound ? bound : s.bound;
  if (!m) throw InvalidInput("a bound is required: pass --M or include \"M\" in the input");
  const BoundedScanReport r = bounded_scan(s, *m, depth.value_or(s.rows.size()));
  json report = json_io::to_json(r);
  report["M"] = *m;
  return {report, r.all_truncations_bounded ? kOk : kNegative, {}};
}

Outcome cmd_poly_trunc(const Common& c, std::istream& in, std::optional<std::size_t> rows, std::size_t starts) {
  const SeparablePolySystem s = json_io::separable_from_json(read_input(c, in));
  SeparableOptions opts;
  opts.seed = c.seed;
  opts.threads = c.threads;
  opts.starts = starts;
  const SeparableResult r = solve_separable_poly(s, rows.value_or(s.rows()), opts);
  json report = json_io::to_json(r);
  report["M"] = s.bound;
  report["seed"] = c.seed;
  if (r.status == SeparableStatus::HypothesisViolated)
    return {json_io::error_to_json("hypothesis_violated", "q must exceed the degree d"), kError, {}};
  return {report, r.status == SeparableStatus::Found ? kOk : kNegative, {}};
}

Outcome cmd_color(const Common& c, std::istream& in, unsigned k) {
  const FiniteGraph g = json_io::graph_from_json(read_input(c, in));
  const auto col = c.guard ? k_color(g, k, *c.guard) : k_color(g, k);
  json report{{"k", k}, {"colorable", col.has_value()}};
  report["coloring"] = col ? json_io::coloring_to_json(g, *col) : json(nullptr);
  return {report, col ? kOk : kNegative, {}};
}

Outcome cmd_rado(const Common& c, std::istream& in) {
  const ChoiceInstance inst = json_io::choice_instance_from_json(read_input(c, in));
  const auto phi = c.guard ? rado_select(inst, *c.guard, c.threads) : rado_select(inst, 1'000'000, c.threads);
  json report{{"selection", phi}, {"verified", satisfies_rado_conclusion(inst, phi)}};
  return {report, kOk, {}};
}

Outcome cmd_chain(const Common& c, const std::string& name, unsigned k, std::size_t m, std::optional<std::size_t> horizon) {
  const std::size_t h = horizon.value_or(m);
  if (m == 0 || m > h) throw InvalidInput("need 1 <= m <= horizon");
  const GraphChain chain(name, h);
  const auto col = c.guard ? chain_persistent_coloring(chain, k, m, *c.guard) : chain_persistent_coloring(chain, k, m);
  json report{{"chain", name}, {"k", k}, {"m", m}, {"horizon", h}, {"vertices", chain.level(m).vertex_count()}};
  report["coloring"] = col ? json(*col) : json(nullptr);
  report["persistent"] = col.has_value();
  return {report, col ? kOk : kNegative, {}};
}

Outcome cmd_injective(const Common& c, std::istream& in) {
  const auto domains = json_io::string_domains_from_json(read_input(c, in));
  const InjectiveChoiceResult r = injective_choice(domains);
  return {json_io::to_json(r), r.choice ? kOk : kNegative, {}};
}

void emit(std::ostream& out, const Outcome& o, Format f) {
  if (f == Format::Table && !o.report.contains("error")) {
    if (o.table)
      o.table(out);
    else
      generic_table(out, o.report);
    return;
  }
  out << o.report.dump(2) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::istream& in) {
  CLI::App app{"Finite certificates for compactness principles", "compactness"};
  app.require_subcommand(1);
  app.fallthrough();

  Common c;
  app.add_option("--input,--points,--family", c.input, "input JSON file, '-' for stdin");
  app.add_flag("--json", c.json_flag, "print JSON (shorthand for --format json)");
  app.add_option("--format", c.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--seed", c.seed, "seed for randomized searches");
  app.add_option("--threads", c.threads, "worker threads, 0 = all cores");
  app.add_option("--guard", c.guard, "enumeration guard");

  auto* certify = app.add_subcommand("certify", "solution or inconsistency witness for a linear system");
  auto* helly_number = app.add_subcommand("helly-number", "subset scan of size <= n+1 against the whole system");
  std::optional<std::size_t> n;
  helly_number->add_option("--n", n, "number of variables (default: those mentioned)");

  auto* abian = app.add_subcommand("abian", "the quadratic family over GF(p)");
  std::uint64_t p_prime = 0;
  bool structured = false;
  abian->add_option("--p", p_prime, "prime")->required();
  abian->add_flag("--structured", structured, "skip brute force");

  auto* radon = app.add_subcommand("radon", "Radon partition of n+2 points");
  auto* helly = app.add_subcommand("helly", "Helly check for a family of H-polytopes");

  auto* staircase = app.add_subcommand("staircase", "minimum norms of the staircase truncations");
  std::optional<double> sp, sq, sm;
  std::size_t imax = 20;
  staircase->add_option("--p", sp);
  staircase->add_option("--q", sq);
  staircase->add_option("--imax", imax)->capture_default_str();
  staircase->add_option("--M", sm, "norm bound to scan against");

  auto* min_norm = app.add_subcommand("min-norm", "minimum l^q norm solution");
  auto* bscan = app.add_subcommand("bounded-scan", "bounded solvability of leading truncations");
  std::optional<double> bm;
  std::optional<std::size_t> depth;
  bscan->add_option("--M", bm);
  bscan->add_option("--depth", depth);

  auto* poly = app.add_subcommand("poly-trunc", "bounded solution search for a separable polynomial system");
  std::optional<std::size_t> rows;
  std::size_t starts = SeparableOptions{}.starts;
  poly->add_option("--rows", rows);
  poly->add_option("--starts", starts)->capture_default_str();

  auto* color = app.add_subcommand("color", "k-coloring by backtracking");
  unsigned k_color_arg = 3;
  color->add_option("--k", k_color_arg)->capture_default_str();

  auto* rado = app.add_subcommand("rado", "global selection from coherent local choices");

  auto* chain = app.add_subcommand("chain", "persistent coloring along a nested graph chain");
  std::string chain_name;
  unsigned chain_k = 3;
  std::size_t chain_m = 1;
  std::optional<std::size_t> horizon;
  chain->add_option("--chain", chain_name)->required();
  chain->add_option("--k", chain_k)->capture_default_str();
  chain->add_option("--m", chain_m)->capture_default_str();
  chain->add_option("--horizon", horizon, "largest explored level (default m)");

  auto* injective = app.add_subcommand("injective", "system of distinct representatives or Hall violator");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::Success&) {
    return kOk;
  } catch (const CLI::ParseError& e) {
    out << json_io::error_to_json("usage", e.what()).dump(2) << '\n';
    return kError;
  }

  const bool table_default = staircase->parsed();
  Format f = table_default ? Format::Table : Format::Json;
  if (c.format == "json" || c.json_flag) f = Format::Json;
  if (c.format == "table") f = Format::Table;

  Outcome o;
  try {
    if (certify->parsed()) o = cmd_certify(c, in);
    else if (helly_number->parsed()) o = cmd_helly_number(c, in, n);
    else if (abian->parsed()) o = cmd_abian(c, p_prime, structured);
    else if (radon->parsed()) o = cmd_radon(c, in);
    else if (helly->parsed()) o = cmd_helly(c, in);
    else if (staircase->parsed()) o = cmd_staircase(sp, sq, imax, sm);
    else if (min_norm->parsed()) o = cmd_min_norm(c, in);
    else if (bscan->parsed()) o = cmd_bounded_scan(c, in, bm, depth);
    else if (poly->parsed()) o = cmd_poly_trunc(c, in, rows, starts);
    else if (color->parsed()) o = cmd_color(c, in, k_color_arg);
    else if (rado->parsed()) o = cmd_rado(c, in);
    else if (chain->parsed()) o = cmd_chain(c, chain_name, chain_k, chain_m, horizon);
    else if (injective->parsed()) o = cmd_injective(c, in);
  } catch (const Error& e) {
    o = {json_io::error_to_json(e.kind(), e.what()), kError, {}};
  } catch (const std::exception& e) {
    o = {json_io::error_to_json("internal", e.what()), kError, {}};
  }
  emit(out, o, f);
  return o.status;
}

}  // namespace compactness::cli
