#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "compactness/errors.hpp"

namespace compactness {

/// Simple undirected graph on vertices 0..n-1 with optional labels.
class FiniteGraph {
 public:
  FiniteGraph() = default;
  /// Throws InvalidInput for self-loops or out-of-range endpoints. Duplicate
  /// edges collapse.
  FiniteGraph(std::size_t vertex_count, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
              std::vector<std::string> labels = {});

  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const noexcept { return edges_; }
  const std::vector<std::size_t>& neighbours(std::size_t v) const { return adjacency_.at(v); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  bool has_edge(std::size_t u, std::size_t v) const;

  /// Subgraph induced by vertices 0..k-1.
  FiniteGraph prefix(std::size_t k) const;

 private:
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;  ///< u < v, sorted
  std::vector<std::string> labels_;
};

using Coloring = std::vector<unsigned>;  ///< colors in [0, k)

bool is_proper_coloring(const FiniteGraph& g, const Coloring& c, unsigned k);

/// Exact backtracking, vertices by descending degree. Throws GuardExceeded
/// after `node_guard` search nodes; InvalidInput for k = 0.
std::optional<Coloring> k_color(const FiniteGraph& g, unsigned k, std::uint64_t node_guard = 10'000'000);

/// Domains X_i over index set {0..m-1} and a local choice phi_A for every
/// nonempty A (keyed by bitmask, values listed in ascending index order).
struct ChoiceInstance {
  std::vector<std::vector<int>> domains;
  std::map<std::uint32_t, std::vector<int>> local_choices;

  std::size_t index_count() const noexcept { return domains.size(); }
  /// Throws InvalidInput when a subset is missing or a choice leaves its domain.
  void validate() const;

  /// phi_A = psi restricted to A for every A.
  static ChoiceInstance coherent(std::vector<std::vector<int>> domains, const std::vector<int>& psi);
  /// Every phi_A drawn independently at random.
  static ChoiceInstance random(std::vector<std::vector<int>> domains, std::mt19937_64& rng);
};

inline constexpr std::size_t kMaxChoiceIndices = 20;

/// Does phi agree, on every nonempty A, with some phi_B for B containing A?
bool satisfies_rado_conclusion(const ChoiceInstance& inst, const std::vector<int>& phi);

/// First Phi in canonical order (domains in listed order, index 0 most
/// significant) satisfying the selection-lemma conclusion. Throws
/// GuardExceeded when prod |X_i| exceeds `guard`.
std::vector<int> rado_select(const ChoiceInstance& inst, std::uint64_t guard = 1'000'000, unsigned threads = 0);

struct InjectiveChoiceResult {
  std::optional<std::vector<std::string>> choice;
  /// Indices whose domains have fewer than |S| elements in their union.
  std::optional<std::vector<std::size_t>> hall_violator;
};

/// System of distinct representatives by augmenting paths, or a Hall
/// violator when none exists.
InjectiveChoiceResult injective_choice(const std::vector<std::vector<std::string>>& domains);

/// Nested graphs G_1 ⊆ G_2 ⊆ ... with G_m induced on the first vertices of
/// G_{m+1}. Families: "paths" (P_m), "cliques" (K_m) and "odd-cycles" (the
/// disjoint union C_3 + C_5 + ... + C_{2m+1}).
class GraphChain {
 public:
  /// Builds levels 1..horizon and checks the nesting. Throws InvalidInput for
  /// unknown names or horizon 0.
  GraphChain(std::string name, std::size_t horizon);

  const std::string& name() const noexcept { return name_; }
  std::size_t horizon() const noexcept { return levels_.size(); }
  /// Level m in 1..horizon.
  const FiniteGraph& level(std::size_t m) const;

  static FiniteGraph build(const std::string& name, std::size_t m);

 private:
  std::string name_;
  std::vector<FiniteGraph> levels_;
};

/// k-coloring of G_m obtained by restricting a coloring of G_horizon, or
/// nullopt iff G_horizon is not k-colorable.
std::optional<Coloring> chain_persistent_coloring(const GraphChain& chain, unsigned k, std::size_t m,
                                                  std::uint64_t node_guard = 10'000'000);

}  // namespace compactness
