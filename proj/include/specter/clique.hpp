#ifndef SPECTER_CLIQUE_HPP
#define SPECTER_CLIQUE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "specter/graph.hpp"

namespace specter {

struct CliqueResult {
  enum class Verdict { kReached, kExact };

  Verdict verdict = Verdict::kExact;
  // kReached: the cutoff that was reached. kExact: the clique number.
  std::size_t size = 0;
  std::vector<std::size_t> witness;

  bool reached() const noexcept { return verdict == Verdict::kReached; }
  std::string to_string() const;
};

// Colours of a greedy proper colouring in descending-degree order (ties by
// index). Always an upper bound on the clique number.
std::size_t greedy_coloring_bound(const Graph& g);

// Exact branch-and-bound with colouring bounds. Stops as soon as a clique of
// `cutoff` vertices is found; otherwise reports the exact clique number.
CliqueResult max_clique_bnb(const Graph& g, std::size_t cutoff);

// Symmetry-peeling recursion over extended orbits, falling back to
// max_clique_bnb once every class is a singleton. Same verdict semantics as
// max_clique_bnb.
CliqueResult clique_number_symmetric(const Graph& g, std::size_t cutoff);

bool is_clique(const Graph& g, const std::vector<std::size_t>& vertices);

}  // namespace specter

#endif  // SPECTER_CLIQUE_HPP
