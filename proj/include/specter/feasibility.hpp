#ifndef SPECTER_FEASIBILITY_HPP
#define SPECTER_FEASIBILITY_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "specter/graph.hpp"

namespace specter {

struct SrgParams {
  std::int64_t v = 0;
  std::int64_t k = 0;
  std::int64_t lambda = 0;
  std::int64_t mu = 0;

  // Throws ParameterError unless 0 < k < v, lambda < k and mu >= 1.
  void validate() const;
  std::string to_string() const;
  bool operator==(const SrgParams&) const = default;
};

// Spectrum of a hypothetical SRG: k once, r with multiplicity f, s with g.
struct SpectrumDescriptor {
  double k = 0;
  double r = 0;
  double s = 0;
  double f = 0;
  double g = 0;
  bool conference = false;        // f == g, irrational r and s allowed
  bool multiplicities_integral = false;
  std::optional<std::int64_t> r_int;
  std::optional<std::int64_t> s_int;
  std::optional<std::int64_t> f_int;
  std::optional<std::int64_t> g_int;

  // Order of a star complement for r (v - f); only meaningful when f is integral.
  std::optional<std::int64_t> star_complement_order(const SrgParams& p) const {
    if (!f_int) return std::nullopt;
    return p.v - *f_int;
  }
};

bool check_edge_equation(const SrgParams& p);

// Throws ParameterError on a negative discriminant.
SpectrumDescriptor srg_spectrum(const SrgParams& p);

// k once, r f times, s g times, descending. Requires integral multiplicities.
std::vector<double> srg_eigenvalues(const SrgParams& p);

struct DegreeHistogram {
  std::size_t m = 0;
  std::vector<std::int64_t> d;  // d[i] = vertices of degree i, size m

  static DegreeHistogram of(const Graph& h);
  bool valid() const;
};

using BVector = std::vector<std::int64_t>;

// All nonnegative b_0..b_m solving the three counting equations for an induced
// subgraph with degree histogram `d`; caps[i] bounds b_i from above.
// Lexicographically ascending.
std::vector<BVector> enumerate_b_vectors(const SrgParams& p, const DegreeHistogram& d,
                                         const std::map<std::size_t, std::int64_t>& caps = {});

// Right-hand sides (sum b, sum i b, sum C(i,2) b) of the counting equations.
struct BVectorTargets {
  std::int64_t count = 0;
  std::int64_t incidences = 0;
  std::int64_t pairs = 0;
};
BVectorTargets b_vector_targets(const SrgParams& p, const DegreeHistogram& d);
bool satisfies_b_equations(const SrgParams& p, const DegreeHistogram& d, const BVector& b);

// b-vector observed for the subgraph induced by `inside` in a host graph.
BVector observed_b_vector(const Graph& host, const VertexSet& inside);

}  // namespace specter

#endif  // SPECTER_FEASIBILITY_HPP
