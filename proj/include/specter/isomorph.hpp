#ifndef SPECTER_ISOMORPH_HPP
#define SPECTER_ISOMORPH_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "specter/graph.hpp"

namespace specter {

// Bumped whenever refinement invariants or the byte layout change; persisted
// dedup archives keyed by forms of another version must be rebuilt.
inline constexpr std::uint8_t kCanonicalFormVersion = 1;

struct CanonicalForm {
  std::string bytes;

  auto operator<=>(const CanonicalForm&) const = default;
  bool operator==(const CanonicalForm&) const = default;

  std::uint64_t hash() const noexcept;
};

struct OrbitPartition {
  // Classes ordered by their smallest vertex; members ascending.
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::size_t> class_of;

  std::size_t size() const noexcept { return classes.size(); }
  static OrbitPartition from_labels(std::span<const std::size_t> label);
  bool operator==(const OrbitPartition&) const = default;
};

// Everything one individualisation-refinement search produces.
struct SymmetryInfo {
  CanonicalForm form;
  // canonical_labeling[i] is the vertex placed at canonical position i.
  std::vector<std::size_t> canonical_labeling;
  std::vector<std::vector<std::size_t>> generators;
  OrbitPartition orbits;
  long double group_order = 1;
};

// `colors`, when non-empty, gives an initial vertex colouring that
// isomorphisms must preserve (colour values are compared, not just classes).
SymmetryInfo analyze_symmetry(const Graph& g, std::span<const std::size_t> colors = {});

CanonicalForm canonical_form(const Graph& g);
CanonicalForm canonical_form(const Graph& g, std::span<const std::size_t> colors);
Graph canonical_graph(const Graph& g);
bool isomorphic(const Graph& a, const Graph& b);

OrbitPartition automorphism_orbits(const Graph& g);
long double automorphism_group_order(const Graph& g);

// u, v share a class iff G[N(u)] and G[N(v)] are isomorphic.
OrbitPartition extended_orbits(const Graph& g);

// Thread-safe set of isomorphism classes; drains in ascending form order.
class CanonicalDeduplicator {
 public:
  // Returns true if g was the first member of its class.
  bool insert(const Graph& g);
  bool insert(const Graph& g, const CanonicalForm& form);
  std::size_t size() const;
  std::vector<Graph> take_sorted();

 private:
  mutable std::mutex mutex_;
  std::map<CanonicalForm, Graph> classes_;
};

// One representative per isomorphism class, ascending by canonical form.
std::vector<Graph> dedup_canonical(std::span<const Graph> graphs);

}  // namespace specter

#endif  // SPECTER_ISOMORPH_HPP
