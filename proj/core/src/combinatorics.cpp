#include "compactness/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

#include "compactness/detail/parallel.hpp"

namespace compactness {

FiniteGraph::FiniteGraph(std::size_t vertex_count, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                         std::vector<std::string> labels)
    : adjacency_(vertex_count), labels_(std::move(labels)) {
  if (labels_.empty()) {
    for (std::size_t v = 0; v < vertex_count; ++v) labels_.push_back(std::to_string(v));
  }
  if (labels_.size() != vertex_count) throw InvalidInput("label count differs from vertex count");
  std::set<std::pair<std::size_t, std::size_t>> unique;
  for (auto [u, v] : edges) {
    if (u >= vertex_count || v >= vertex_count) throw InvalidInput("edge references a missing vertex");
    if (u == v) throw InvalidInput("self-loop at vertex " + labels_[u]);
    unique.emplace(std::min(u, v), std::max(u, v));
  }
  edges_.assign(unique.begin(), unique.end());
  for (auto [u, v] : edges_) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
}

bool FiniteGraph::has_edge(std::size_t u, std::size_t v) const {
  const auto& adj = adjacency_.at(u);
  return std::binary_search(adj.begin(), adj.end(), v);
}

FiniteGraph FiniteGraph::prefix(std::size_t k) const {
  if (k > vertex_count()) throw InvalidInput("prefix longer than the vertex set");
  std::vector<std::pair<std::size_t, std::size_t>> kept;
  for (auto [u, v] : edges_)
    if (u < k && v < k) kept.emplace_back(u, v);
  return FiniteGraph(k, kept, {labels_.begin(), labels_.begin() + static_cast<std::ptrdiff_t>(k)});
}

bool is_proper_coloring(const FiniteGraph& g, const Coloring& c, unsigned k) {
  if (c.size() != g.vertex_count()) return false;
  if (std::any_of(c.begin(), c.end(), [k](unsigned x) { return x >= k; })) return false;
  return std::all_of(g.edges().begin(), g.edges().end(), [&](const auto& e) { return c[e.first] != c[e.second]; });
}

std::optional<Coloring> k_color(const FiniteGraph& g, unsigned k, std::uint64_t node_guard) {
  if (k == 0) throw InvalidInput("k must be at least 1");
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return g.neighbours(a).size() > g.neighbours(b).size(); });

  constexpr unsigned kUnset = ~0U;
  Coloring color(n, kUnset);
  std::uint64_t nodes = 0;

  // Iterative depth-first search; `next[d]` is the next color to try at depth d.
  std::vector<unsigned> next(n + 1, 0);
  std::size_t depth = 0;
  while (depth < n) {
    const std::size_t v = order[depth];
    bool placed = false;
    for (unsigned c = next[depth]; c < k; ++c) {
      if (++nodes > node_guard) throw GuardExceeded("coloring search exceeded " + std::to_string(node_guard) + " nodes");
      const auto& adj = g.neighbours(v);
      if (std::none_of(adj.begin(), adj.end(), [&](std::size_t w) { return color[w] == c; })) {
        color[v] = c;
        next[depth] = c + 1;
        placed = true;
        break;
      }
    }
    if (placed) {
      ++depth;
      next[depth] = 0;
      continue;
    }
    color[v] = kUnset;
    if (depth == 0) return std::nullopt;
    --depth;
    color[order[depth]] = kUnset;
  }
  return color;
}

void ChoiceInstance::validate() const {
  const std::size_t m = domains.size();
  if (m == 0) throw InvalidInput("choice instance needs at least one index");
  if (m > kMaxChoiceIndices) throw InvalidInput("too many indices for an explicit choice family");
  for (const auto& d : domains)
    if (d.empty()) throw InvalidInput("every domain must be nonempty");
  const std::uint32_t full = (1U << m) - 1;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    auto it = local_choices.find(mask);
    if (it == local_choices.end()) throw InvalidInput("missing local choice for subset mask " + std::to_string(mask));
    if (it->second.size() != static_cast<std::size_t>(std::popcount(mask)))
      throw InvalidInput("local choice for mask " + std::to_string(mask) + " has the wrong size");
    std::size_t slot = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (!(mask >> i & 1U)) continue;
      const int value = it->second[slot++];
      if (std::find(domains[i].begin(), domains[i].end(), value) == domains[i].end())
        throw InvalidInput("local choice leaves the domain of index " + std::to_string(i));
    }
  }
  for (const auto& [mask, values] : local_choices)
    if (mask == 0 || mask > full) throw InvalidInput("local choice for a subset outside the index set");
}

ChoiceInstance ChoiceInstance::coherent(std::vector<std::vector<int>> domains, const std::vector<int>& psi) {
  ChoiceInstance inst{std::move(domains), {}};
  const std::size_t m = inst.domains.size();
  for (std::uint32_t mask = 1; mask < (1U << m); ++mask) {
    std::vector<int> values;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1U) values.push_back(psi.at(i));
    inst.local_choices.emplace(mask, std::move(values));
  }
  inst.validate();
  return inst;
}

ChoiceInstance ChoiceInstance::random(std::vector<std::vector<int>> domains, std::mt19937_64& rng) {
  ChoiceInstance inst{std::move(domains), {}};
  const std::size_t m = inst.domains.size();
  for (std::uint32_t mask = 1; mask < (1U << m); ++mask) {
    std::vector<int> values;
    for (std::size_t i = 0; i < m; ++i) {
      if (!(mask >> i & 1U)) continue;
      const auto& d = inst.domains[i];
      values.push_back(d[std::uniform_int_distribution<std::size_t>(0, d.size() - 1)(rng)]);
    }
    inst.local_choices.emplace(mask, std::move(values));
  }
  inst.validate();
  return inst;
}

namespace {

// phi_B(a) for a in B, looked up by index.
int choice_at(const ChoiceInstance& inst, std::uint32_t mask_b, std::size_t a) {
  const auto& values = inst.local_choices.at(mask_b);
  const auto slot = static_cast<std::size_t>(std::popcount(mask_b & ((1U << a) - 1)));
  return values[slot];
}

}  // namespace

bool satisfies_rado_conclusion(const ChoiceInstance& inst, const std::vector<int>& phi) {
  const std::size_t m = inst.index_count();
  if (phi.size() != m) return false;
  for (std::size_t i = 0; i < m; ++i)
    if (std::find(inst.domains[i].begin(), inst.domains[i].end(), phi[i]) == inst.domains[i].end()) return false;
  const std::uint32_t full = (1U << m) - 1;
  for (std::uint32_t a = 1; a <= full; ++a) {
    bool witnessed = false;
    // Supersets of a: iterate over subsets of the complement.
    const std::uint32_t rest = full & ~a;
    for (std::uint32_t extra = rest;; extra = (extra - 1) & rest) {
      const std::uint32_t b = a | extra;
      bool agree = true;
      for (std::size_t i = 0; i < m && agree; ++i)
        if (a >> i & 1U) agree = choice_at(inst, b, i) == phi[i];
      if (agree) {
        witnessed = true;
        break;
      }
      if (extra == 0) break;
    }
    if (!witnessed) return false;
  }
  return true;
}

std::vector<int> rado_select(const ChoiceInstance& inst, std::uint64_t guard, unsigned threads) {
  inst.validate();
  std::uint64_t space = 1;
  for (const auto& d : inst.domains) {
    if (space > guard / d.size()) throw GuardExceeded("choice space exceeds the guard of " + std::to_string(guard));
    space *= d.size();
  }
  const std::size_t m = inst.index_count();
  auto decode = [&](std::uint64_t index) {
    std::vector<int> phi(m);
    for (std::size_t i = m; i-- > 0;) {
      const auto& d = inst.domains[i];
      phi[i] = d[index % d.size()];
      index /= d.size();
    }
    return phi;
  };
  auto hit = detail::first_match(space, threads,
                                 [&](std::uint64_t index) { return satisfies_rado_conclusion(inst, decode(index)); });
  // phi_I itself always qualifies, so a finite instance never comes back empty.
  if (!hit) throw std::logic_error("no choice function satisfies the selection conclusion");
  return decode(*hit);
}

InjectiveChoiceResult injective_choice(const std::vector<std::vector<std::string>>& domains) {
  const std::size_t m = domains.size();
  std::map<std::string, std::size_t> ids;
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> adj(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto& x : domains[i]) {
      auto [it, inserted] = ids.emplace(x, names.size());
      if (inserted) names.push_back(x);
      adj[i].push_back(it->second);
    }
  }
  constexpr std::size_t kFree = static_cast<std::size_t>(-1);
  std::vector<std::size_t> owner(names.size(), kFree);
  std::vector<std::size_t> match(m, kFree);

  std::vector<char> visited;
  auto augment = [&](auto&& self, std::size_t i) -> bool {
    for (std::size_t x : adj[i]) {
      if (visited[x]) continue;
      visited[x] = 1;
      if (owner[x] == kFree || self(self, owner[x])) {
        owner[x] = i;
        match[i] = x;
        return true;
      }
    }
    return false;
  };

  InjectiveChoiceResult result;
  for (std::size_t i = 0; i < m; ++i) {
    visited.assign(names.size(), 0);
    if (augment(augment, i)) continue;

    // Indices reachable from i along alternating paths have too few elements.
    std::set<std::size_t> s{i};
    std::vector<std::size_t> frontier{i};
    std::vector<char> seen(names.size(), 0);
    while (!frontier.empty()) {
      const std::size_t j = frontier.back();
      frontier.pop_back();
      for (std::size_t x : adj[j]) {
        if (seen[x]) continue;
        seen[x] = 1;
        if (owner[x] != kFree && s.insert(owner[x]).second) frontier.push_back(owner[x]);
      }
    }
    result.hall_violator = std::vector<std::size_t>(s.begin(), s.end());
    return result;
  }
  std::vector<std::string> choice(m);
  for (std::size_t i = 0; i < m; ++i) choice[i] = names[match[i]];
  result.choice = std::move(choice);
  return result;
}

FiniteGraph GraphChain::build(const std::string& name, std::size_t m) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  if (name == "paths") {
    for (std::size_t v = 1; v < m; ++v) edges.emplace_back(v - 1, v);
    return FiniteGraph(m, edges);
  }
  if (name == "cliques") {
    for (std::size_t u = 0; u < m; ++u)
      for (std::size_t v = u + 1; v < m; ++v) edges.emplace_back(u, v);
    return FiniteGraph(m, edges);
  }
  if (name == "odd-cycles") {
    std::size_t base = 0;
    for (std::size_t c = 1; c <= m; ++c) {
      const std::size_t len = 2 * c + 1;
      for (std::size_t t = 0; t < len; ++t) edges.emplace_back(base + t, base + (t + 1) % len);
      base += len;
    }
    return FiniteGraph(base, edges);
  }
  throw InvalidInput("unknown chain '" + name + "' (expected paths, cliques or odd-cycles)");
}

GraphChain::GraphChain(std::string name, std::size_t horizon) : name_(std::move(name)) {
  if (horizon == 0) throw InvalidInput("chain horizon must be at least 1");
  for (std::size_t m = 1; m <= horizon; ++m) {
    FiniteGraph g = build(name_, m);
    if (!levels_.empty()) {
      const FiniteGraph& prev = levels_.back();
      if (g.vertex_count() < prev.vertex_count() || g.prefix(prev.vertex_count()).edges() != prev.edges())
        throw std::logic_error("chain level " + std::to_string(m - 1) + " is not an induced subgraph of level " +
                               std::to_string(m));
    }
    levels_.push_back(std::move(g));
  }
}

const FiniteGraph& GraphChain::level(std::size_t m) const {
  if (m == 0 || m > levels_.size())
    throw InvalidInput("chain level " + std::to_string(m) + " outside 1.." + std::to_string(levels_.size()));
  return levels_[m - 1];
}

std::optional<Coloring> chain_persistent_coloring(const GraphChain& chain, unsigned k, std::size_t m,
                                                  std::uint64_t node_guard) {
  const FiniteGraph& target = chain.level(m);
  auto top = k_color(chain.level(chain.horizon()), k, node_guard);
  if (!top) return std::nullopt;
  top->resize(target.vertex_count());
  return top;
}

}  // namespace compactness
