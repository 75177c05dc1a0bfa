#include "compactness/json_io.hpp"

#include <bit>
#include <cmath>
#include <sstream>

namespace compactness::json_io {

namespace {

const json& require(const json& j, const char* key) {
  if (!j.is_object()) throw InvalidInput(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw InvalidInput(std::string("missing key '") + key + "'");
  return *it;
}

const json& require_array(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_array()) throw InvalidInput(std::string("'") + key + "' must be an array");
  return v;
}

std::size_t to_index(const json& j, const char* what) {
  if (!j.is_number_unsigned()) throw InvalidInput(std::string(what) + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

std::size_t parse_index(const std::string& text) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != text.size() || text.front() == '-')
    throw InvalidInput("variable key '" + text + "' is not a nonnegative integer");
  return static_cast<std::size_t>(v);
}

double to_double(const json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return Scalar::parse(j.get<std::string>(), Field::rationals()).to_double();
  throw InvalidInput(std::string(what) + " must be a number");
}

std::vector<double> doubles(const json& j, const char* what) {
  if (!j.is_array()) throw InvalidInput(std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& x : j) out.push_back(to_double(x, what));
  return out;
}

PQPair exponents(const json& j) {
  const bool has_p = j.contains("p") && !j["p"].is_null();
  const bool has_q = j.contains("q") && !j["q"].is_null();
  if (has_p && has_q) return PQPair(to_double(j["p"], "p"), to_double(j["q"], "q"));
  if (has_q) return PQPair::from_q(to_double(j["q"], "q"));
  if (has_p) return PQPair::from_p(to_double(j["p"], "p"));
  throw InvalidInput("one of 'p' or 'q' is required");
}

json indices(const std::vector<std::size_t>& v) { return json(v); }

std::string label_of(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return j.dump();
  throw InvalidInput("labels must be strings or integers");
}

}  // namespace

Scalar scalar_from_json(const json& j, Field field) {
  if (j.is_string()) return Scalar::parse(j.get<std::string>(), field);
  if (j.is_number_integer()) return Scalar(field, j.get<long long>());
  if (j.is_number_float()) {
    // Decimal literals are read exactly from their shortest printed form.
    return Scalar::parse(j.dump(), field);
  }
  throw InvalidInput("scalar must be a string or a number, got " + j.dump());
}

json to_json(const Scalar& s) { return s.to_string(); }

json to_json(std::span<const Scalar> v) {
  json out = json::array();
  for (const auto& s : v) out.push_back(to_json(s));
  return out;
}

LinearSystem system_from_json(const json& j) {
  try {
    const Field field = Field::parse(require(j, "field").get<std::string>());
    std::vector<LinearEquation> eqs;
    for (const auto& e : require_array(j, "equations")) {
      std::map<std::size_t, Scalar> coeffs;
      const json& c = require(e, "coeffs");
      if (!c.is_object()) throw InvalidInput("'coeffs' must be an object");
      for (const auto& [key, value] : c.items()) coeffs.emplace(parse_index(key), scalar_from_json(value, field));
      const Scalar constant = e.contains("constant") ? scalar_from_json(e["constant"], field) : Scalar::zero(field);
      eqs.emplace_back(field, std::move(coeffs), constant);
    }
    std::set<std::size_t> extra;
    if (j.contains("variables"))
      for (const auto& v : j["variables"]) extra.insert(to_index(v, "variable"));
    return LinearSystem(field, std::move(eqs), std::move(extra));
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed system: ") + e.what());
  }
}

json to_json(const LinearSystem& s) {
  json eqs = json::array();
  for (const auto& e : s.equations()) {
    json coeffs = json::object();
    for (const auto& [v, a] : e.coeffs()) coeffs[std::to_string(v)] = to_json(a);
    eqs.push_back({{"coeffs", coeffs}, {"constant", to_json(e.constant())}});
  }
  return {{"field", s.field().name()}, {"equations", eqs}, {"variables", s.variables()}};
}

json to_json(const Certificate& c) {
  if (const auto* sol = std::get_if<Solution>(&c)) {
    json a = json::object();
    for (const auto& [v, x] : sol->assignment) a[std::to_string(v)] = to_json(x);
    return {{"kind", "solution"}, {"assignment", a}};
  }
  const auto& inc = std::get<Inconsistency>(c);
  json m = json::array();
  for (const auto& [i, lambda] : inc.multipliers) m.push_back({{"equation", i}, {"multiplier", to_json(lambda)}});
  return {{"kind", "inconsistency"}, {"multipliers", m}};
}

json to_json(const HellyNumberReport& r) {
  json out{{"whole_consistent", r.whole_consistent},
           {"all_small_subsets_consistent", r.all_small_subsets_consistent},
           {"subsets_checked", r.subsets_checked}};
  out["violating_subset"] = r.violating_subset ? indices(*r.violating_subset) : json(nullptr);
  return out;
}

std::vector<FinitePolynomial> polynomials_from_json(const json& j) {
  try {
    const Ring ring = Ring::parse(require(j, "ring").get<std::string>());
    auto one = [&](const json& p) {
      std::vector<Term> terms;
      for (const auto& t : require_array(p, "terms")) {
        Term term;
        const json& m = require(t, "monomial");
        if (!m.is_object()) throw InvalidInput("'monomial' must be an object");
        for (const auto& [key, e] : m.items()) {
          if (!e.is_number_unsigned()) throw InvalidInput("exponents must be positive integers");
          term.monomial.emplace(parse_index(key), e.get<unsigned>());
        }
        const json& c = require(t, "coeff");
        if (c.is_number_integer()) {
          term.coeff = ring.reduce(c.get<long long>());
        } else if (c.is_string()) {
          const std::string text = c.get<std::string>();
          std::size_t pos = 0;
          long long v = 0;
          try {
            v = std::stoll(text, &pos);
          } catch (const std::exception&) {
            pos = 0;
          }
          if (pos == 0 || pos != text.size()) throw InvalidInput("coefficient '" + text + "' is not an integer");
          term.coeff = ring.reduce(v);
        } else {
          throw InvalidInput("coefficient must be an integer or a string");
        }
        terms.push_back(std::move(term));
      }
      return FinitePolynomial(ring, std::move(terms));
    };
    std::vector<FinitePolynomial> out;
    if (j.contains("polynomials")) {
      for (const auto& p : require_array(j, "polynomials")) out.push_back(one(p));
    } else {
      out.push_back(one(j));
    }
    return out;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed polynomial: ") + e.what());
  }
}

json to_json(const FinitePolynomial& f) {
  json terms = json::array();
  for (const auto& t : f.terms()) {
    json m = json::object();
    for (const auto& [v, e] : t.monomial) m[std::to_string(v)] = e;
    terms.push_back({{"monomial", m}, {"coeff", std::to_string(t.coeff)}});
  }
  return {{"ring", f.ring().name()}, {"terms", terms}};
}

json to_json(const RingAssignment& a) {
  json out = json::object();
  for (const auto& [v, x] : a) out[std::to_string(v)] = x;
  return out;
}

json to_json(const AbianReport& r) {
  json deletions = json::object();
  for (const auto& [b, sol] : r.deletion_solutions) deletions[std::to_string(b)] = to_json(sol);
  return {{"p", r.p},
          {"method", r.method},
          {"whole_unsolvable", r.whole_unsolvable},
          {"each_deletion_solvable", r.each_deletion_solvable},
          {"closed_form_matches", r.closed_form_matches},
          {"star_variable", r.p},
          {"deletion_solutions", deletions},
          {"assignments_scanned", r.assignments_scanned}};
}

json to_json(const SatisfiabilityReport& r) {
  json out{{"whole", r.whole}, {"largest_solvable_size", r.largest_solvable_size}, {"subsets_checked", r.subsets_checked}};
  out["first_unsolvable_subset"] = r.first_unsolvable_subset ? indices(*r.first_unsolvable_subset) : json(nullptr);
  return out;
}

PointSet point_set_from_json(const json& j) {
  try {
    const Field q = Field::rationals();
    PointSet ps{to_index(require(j, "dim"), "dim"), {}};
    for (const auto& p : require_array(j, "points")) {
      if (!p.is_array()) throw InvalidInput("each point must be an array");
      Vector v;
      for (const auto& x : p) v.push_back(scalar_from_json(x, q));
      if (v.size() != ps.dim)
        throw DimensionMismatch("point of length " + std::to_string(v.size()) + " in dimension " + std::to_string(ps.dim));
      ps.points.push_back(std::move(v));
    }
    return ps;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed point set: ") + e.what());
  }
}

json to_json(const RadonPartition& r) {
  return {{"part1", indices(r.part1)},       {"part2", indices(r.part2)},       {"witness", to_json(r.witness)},
          {"weights1", to_json(r.weights1)}, {"weights2", to_json(r.weights2)}, {"dependency", to_json(r.dependency)}};
}

HPolytope polytope_from_json(const json& j) {
  try {
    const Field q = Field::rationals();
    HPolytope k{to_index(require(j, "dim"), "dim"), {}};
    for (const auto& h : require_array(j, "ineqs")) {
      Halfspace hs;
      for (const auto& x : require_array(h, "normal")) hs.normal.push_back(scalar_from_json(x, q));
      hs.offset = scalar_from_json(require(h, "offset"), q);
      if (hs.normal.size() != k.dim)
        throw DimensionMismatch("normal of length " + std::to_string(hs.normal.size()) + " in dimension " +
                                std::to_string(k.dim));
      k.inequalities.push_back(std::move(hs));
    }
    return k;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed polytope: ") + e.what());
  }
}

json to_json(const HPolytope& k) {
  json ineqs = json::array();
  for (const auto& h : k.inequalities) ineqs.push_back({{"normal", to_json(h.normal)}, {"offset", to_json(h.offset)}});
  return {{"dim", k.dim}, {"ineqs", ineqs}};
}

std::vector<HPolytope> family_from_json(const json& j, std::size_t& dim) {
  try {
    dim = to_index(require(j, "dim"), "dim");
    std::vector<HPolytope> out;
    for (const auto& k : require_array(j, "family")) {
      json withdim = k;
      if (!withdim.contains("dim")) withdim["dim"] = dim;
      out.push_back(polytope_from_json(withdim));
      if (out.back().dim != dim) throw DimensionMismatch("family member of a different dimension");
    }
    return out;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed family: ") + e.what());
  }
}

json to_json(const HellyReport& r) {
  json out{{"all_small_intersect", r.all_small_intersect},
           {"whole_intersects", r.whole_intersects},
           {"subfamilies_checked", r.subfamilies_checked}};
  out["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
  out["violating_subfamily"] = r.violating_subfamily ? indices(*r.violating_subfamily) : json(nullptr);
  return out;
}

TruncatedSystem truncated_system_from_json(const json& j) {
  try {
    const Field q = Field::rationals();
    TruncatedSystem s;
    s.pq = exponents(j);
    for (const auto& row : require_array(j, "rows")) {
      if (!row.is_array()) throw InvalidInput("each row must be an array");
      Vector v;
      for (const auto& x : row) v.push_back(scalar_from_json(x, q));
      s.rows.push_back(std::move(v));
    }
    for (const auto& x : require_array(j, "rhs")) s.rhs.push_back(scalar_from_json(x, q));
    if (j.contains("M") && !j["M"].is_null()) s.bound = to_double(j["M"], "M");
    s.validate();
    return s;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed sequence system: ") + e.what());
  }
}

json to_json(const MinNormResult& r) {
  json out{{"solution", r.solution},
           {"norm", r.norm},
           {"method", r.method},
           {"holder_lower_bound", r.holder_lower_bound},
           {"dual_lower_bound", r.dual_lower_bound},
           {"gradient_norm", r.gradient_norm},
           {"residual", r.residual},
           {"iterations", r.iterations}};
  out["exact_solution"] = r.exact_solution ? to_json(*r.exact_solution) : json(nullptr);
  out["exact_norm_squared"] = r.exact_norm_squared ? to_json(*r.exact_norm_squared) : json(nullptr);
  return out;
}

json to_json(const BlowupRow& r) {
  json out{{"i", r.i}, {"min_norm", r.min_norm}, {"lower_bound", r.lower_bound}, {"dual_lower_bound", r.dual_lower_bound}};
  out["exact_norm_squared"] = r.exact_norm_squared ? to_json(*r.exact_norm_squared) : json(nullptr);
  return out;
}

json to_json(const BoundedScanReport& r) {
  json out{{"all_truncations_bounded", r.all_truncations_bounded}, {"min_norms", r.min_norms}};
  out["first_failure"] = r.first_failure ? json(*r.first_failure) : json(nullptr);
  return out;
}

SeparablePolySystem separable_from_json(const json& j) {
  try {
    SeparablePolySystem s;
    s.degree = to_index(require(j, "degree"), "degree");
    s.pq = exponents(j);
    s.bound = to_double(require(j, "M"), "M");
    for (const auto& row : require_array(j, "coeffs")) {
      if (!row.is_array()) throw InvalidInput("each coefficient row must be an array");
      std::vector<std::vector<double>> r;
      for (const auto& cell : row) r.push_back(doubles(cell, "coefficient"));
      s.coeffs.push_back(std::move(r));
    }
    s.rhs = doubles(require(j, "rhs"), "rhs");
    s.validate();
    return s;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed separable system: ") + e.what());
  }
}

json to_json(const SeparableResult& r) {
  return {{"status", to_string(r.status)}, {"solution", r.solution}, {"residual", r.residual}, {"norm", r.norm}};
}

FiniteGraph graph_from_json(const json& j) {
  try {
    const json& vs = require(j, "vertices");
    std::vector<std::string> labels;
    std::map<std::string, std::size_t> by_label;
    std::size_t n = 0;
    if (vs.is_number_unsigned()) {
      n = vs.get<std::size_t>();
    } else if (vs.is_array()) {
      for (const auto& v : vs) {
        std::string l = label_of(v);
        if (!by_label.emplace(l, labels.size()).second) throw InvalidInput("duplicate vertex label " + l);
        labels.push_back(std::move(l));
      }
      n = labels.size();
    } else {
      throw InvalidInput("'vertices' must be a count or a label array");
    }
    auto vertex = [&](const json& x) -> std::size_t {
      if (labels.empty()) return to_index(x, "edge endpoint");
      auto it = by_label.find(label_of(x));
      if (it == by_label.end()) throw InvalidInput("edge names unknown vertex " + x.dump());
      return it->second;
    };
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& e : require_array(j, "edges")) {
      if (!e.is_array() || e.size() != 2) throw InvalidInput("each edge must be a pair");
      edges.emplace_back(vertex(e[0]), vertex(e[1]));
    }
    return FiniteGraph(n, edges, labels);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed graph: ") + e.what());
  }
}

json coloring_to_json(const FiniteGraph& g, const Coloring& c) {
  json out = json::object();
  for (std::size_t v = 0; v < c.size(); ++v) out[g.labels()[v]] = c[v];
  return out;
}

ChoiceInstance choice_instance_from_json(const json& j) {
  try {
    ChoiceInstance inst;
    for (const auto& d : require_array(j, "domains")) {
      if (!d.is_array()) throw InvalidInput("each domain must be an array");
      inst.domains.push_back(d.get<std::vector<int>>());
    }
    if (inst.domains.size() > kMaxChoiceIndices) throw InvalidInput("too many indices");
    for (const auto& c : require_array(j, "choices")) {
      std::uint32_t mask = 0;
      for (const auto& i : require_array(c, "subset")) {
        const std::size_t idx = to_index(i, "subset index");
        if (idx >= inst.domains.size()) throw InvalidInput("subset index out of range");
        mask |= 1U << idx;
      }
      auto values = require_array(c, "values").get<std::vector<int>>();
      if (!inst.local_choices.emplace(mask, std::move(values)).second)
        throw InvalidInput("subset listed twice in 'choices'");
    }
    inst.validate();
    return inst;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed choice instance: ") + e.what());
  }
}

std::vector<std::vector<std::string>> string_domains_from_json(const json& j) {
  try {
    std::vector<std::vector<std::string>> out;
    for (const auto& d : require_array(j, "domains")) {
      if (!d.is_array()) throw InvalidInput("each domain must be an array");
      std::vector<std::string> labels;
      for (const auto& x : d) labels.push_back(label_of(x));
      out.push_back(std::move(labels));
    }
    return out;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed domains: ") + e.what());
  }
}

json to_json(const InjectiveChoiceResult& r) {
  json out = json::object();
  out["choice"] = r.choice ? json(*r.choice) : json(nullptr);
  out["hall_violator"] = r.hall_violator ? indices(*r.hall_violator) : json(nullptr);
  return out;
}

json error_to_json(std::string_view kind, std::string_view message) {
  return {{"error", {{"kind", std::string(kind)}, {"message", std::string(message)}}}};
}

}  // namespace compactness::json_io
