#ifndef SPECTER_STARCOMP_HPP
#define SPECTER_STARCOMP_HPP

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "specter/graph.hpp"
#include "specter/spectra.hpp"

namespace specter {

// 0/1 vector of length |H|: bit i set iff the outside vertex is adjacent to
// vertex i of the star complement. Lengths up to 63.
struct CompVertex {
  std::uint64_t mask = 0;
  std::size_t length = 0;

  bool has(std::size_t i) const noexcept { return ((mask >> i) & 1U) != 0; }
  static CompVertex from_set(const VertexSet& s);
  static CompVertex all_ones(std::size_t length);
  bool operator==(const CompVertex&) const = default;
};

// u (rI - A_H)^{-1} v^T, exactly. Throws DomainError on a length mismatch.
mpq_class inner_product(const RationalResolvent& res, const CompVertex& u, const CompVertex& v);

struct ComparabilityGraph {
  Graph graph;
  std::vector<CompVertex> labels;  // ascending by mask
  Graph source;
  std::int64_t r = 0;
};

struct TooSmall {
  std::size_t order = 0;
};

struct ComparabilityOptions {
  std::size_t min_order = 0;
  // The <u, 1> = -1 condition only holds for regular hosts.
  bool regular_host = true;
};

// Vertices: all u with <u,u> = r (and <u,1> = -1 for regular hosts);
// u ~ v iff <u,v> is -1 or 0. Throws SingularMatrixError if r is an
// eigenvalue of h, UnsupportedSizeError if |h| > 63.
std::variant<ComparabilityGraph, TooSmall> comparability_graph(const Graph& h, std::int64_t r,
                                                               const ComparabilityOptions& options = {});

// Whether the comparability graph has a clique on f vertices.
bool has_f_clique(const ComparabilityGraph& c, std::size_t f);

// A vertex set S with |S| = n - mult(r) such that r is not an eigenvalue of
// G[S]. Throws DomainError if r is not an eigenvalue of g.
VertexSet find_star_complement(const Graph& g, std::int64_t r);

}  // namespace specter

#endif  // SPECTER_STARCOMP_HPP
