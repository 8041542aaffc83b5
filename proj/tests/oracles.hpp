// Independent reference implementations used to cross-check the library.
// Everything here is deliberately naive: brute force over permutations and
// subsets, dense floating-point linear algebra, textbook encodings.
#ifndef SPECTER_TESTS_ORACLES_HPP
#define SPECTER_TESTS_ORACLES_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "specter/graph.hpp"

namespace oracle {

using specter::Graph;

inline Graph random_graph(std::size_t n, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(density);
  Graph g(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (coin(rng)) g.add_edge(u, v);
    }
  }
  return g;
}

inline std::vector<std::size_t> random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// Graph on n vertices whose edges are the set bits of `mask` in the order
// (0,1), (0,2), ..., (n-2,n-1).
inline Graph graph_from_mask(std::size_t n, std::uint64_t mask) {
  Graph g(n);
  std::size_t bit = 0;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v, ++bit) {
      if ((mask >> bit) & 1U) g.add_edge(u, v);
    }
  }
  return g;
}

// graph6 written straight from the format description.
inline std::string graph6(const Graph& g) {
  const std::size_t n = g.order();
  std::vector<int> bits;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) bits.push_back(g.adjacent(i, j) ? 1 : 0);
  }
  while (bits.size() % 6 != 0) bits.push_back(0);
  std::string s(1, static_cast<char>(63 + n));
  for (std::size_t k = 0; k < bits.size(); k += 6) {
    int value = 0;
    for (std::size_t b = 0; b < 6; ++b) value = value * 2 + bits[k + b];
    s.push_back(static_cast<char>(63 + value));
  }
  return s;
}

// Rook's graph K_m x K_m; for m = 3 this is the Paley graph of order 9.
inline Graph rook_graph(std::size_t m) {
  Graph g(m * m);
  for (std::size_t a = 0; a < m * m; ++a) {
    for (std::size_t b = a + 1; b < m * m; ++b) {
      if (a / m == b / m || a % m == b % m) g.add_edge(a, b);
    }
  }
  return g;
}

// Every vertex subset of {0..n-1} with at most `max_order` members.
inline std::vector<std::vector<std::size_t>> small_subsets(std::size_t n, std::size_t max_order) {
  std::vector<std::vector<std::size_t>> out;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    if (static_cast<std::size_t>(std::popcount(s)) > max_order) continue;
    std::vector<std::size_t> members;
    for (std::size_t v = 0; v < n; ++v) {
      if ((s >> v) & 1U) members.push_back(v);
    }
    out.push_back(std::move(members));
  }
  return out;
}

inline bool is_automorphism_map(const Graph& a, const Graph& b, const std::vector<std::size_t>& p) {
  for (std::size_t u = 0; u < a.order(); ++u) {
    for (std::size_t v = u + 1; v < a.order(); ++v) {
      if (a.adjacent(u, v) != b.adjacent(p[u], p[v])) return false;
    }
  }
  return true;
}

inline bool isomorphic(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.edge_count() != b.edge_count()) return false;
  std::vector<std::size_t> p(a.order());
  std::iota(p.begin(), p.end(), 0);
  do {
    if (is_automorphism_map(a, b, p)) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

inline std::vector<std::vector<std::size_t>> automorphisms(const Graph& g) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> p(g.order());
  std::iota(p.begin(), p.end(), 0);
  do {
    if (is_automorphism_map(g, g, p)) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Orbit label per vertex: the smallest vertex in its orbit.
inline std::vector<std::size_t> orbit_labels(const Graph& g) {
  std::vector<std::size_t> label(g.order());
  std::iota(label.begin(), label.end(), 0);
  for (const auto& p : automorphisms(g)) {
    for (std::size_t v = 0; v < g.order(); ++v) label[p[v]] = std::min(label[p[v]], label[v]);
  }
  // One pass per automorphism already closes orbits because the list is a group.
  return label;
}

// Label per vertex: the smallest vertex with an isomorphic neighbourhood graph.
inline std::vector<std::size_t> neighbourhood_labels(const Graph& g) {
  std::vector<Graph> nb;
  for (std::size_t v = 0; v < g.order(); ++v) nb.push_back(specter::induced_subgraph(g, g.neighbors(v)));
  std::vector<std::size_t> label(g.order());
  for (std::size_t v = 0; v < g.order(); ++v) {
    label[v] = v;
    for (std::size_t u = 0; u < v; ++u) {
      if (label[u] == u && isomorphic(nb[u], nb[v])) {
        label[v] = u;
        break;
      }
    }
  }
  return label;
}

inline std::size_t clique_number(const Graph& g) {
  const std::size_t n = g.order();
  std::size_t best = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    const auto size = static_cast<std::size_t>(std::popcount(s));
    if (size <= best) continue;
    bool ok = true;
    for (std::size_t u = 0; u < n && ok; ++u) {
      if (!((s >> u) & 1U)) continue;
      for (std::size_t v = u + 1; v < n && ok; ++v) {
        if (((s >> v) & 1U) && !g.adjacent(u, v)) ok = false;
      }
    }
    if (ok) best = size;
  }
  return best;
}

inline Eigen::MatrixXd adjacency(const Graph& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.order(), g.order());
  for (std::size_t u = 0; u < g.order(); ++u) {
    for (std::size_t v = 0; v < g.order(); ++v) a(u, v) = g.adjacent(u, v) ? 1 : 0;
  }
  return a;
}

// Multiplicity of t by counting eigenvalues within 1e-6 (dense QR).
inline std::size_t float_multiplicity(const Graph& g, double t) {
  if (g.order() == 0) return 0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(adjacency(g), Eigen::EigenvaluesOnly);
  std::size_t m = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (std::abs(es.eigenvalues()[i] - t) < 1e-6) ++m;
  }
  return m;
}

inline std::size_t float_rank(const std::vector<std::vector<std::int64_t>>& rows) {
  if (rows.empty()) return 0;
  Eigen::MatrixXd m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = static_cast<double>(rows[i][j]);
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(1e-9);
  return static_cast<std::size_t>(lu.rank());
}

// Whether g is strongly regular with the given parameters.
inline bool is_srg(const Graph& g, long v, long k, long lambda, long mu) {
  if (static_cast<long>(g.order()) != v) return false;
  for (std::size_t u = 0; u < g.order(); ++u) {
    if (static_cast<long>(g.degree(u)) != k) return false;
    for (std::size_t w = u + 1; w < g.order(); ++w) {
      const long c = static_cast<long>(specter::common_neighbor_count(g, u, w));
      if (c != (g.adjacent(u, w) ? lambda : mu)) return false;
    }
  }
  return true;
}

// One graph per isomorphism class on exactly n vertices, grown one vertex at
// a time: every graph on n vertices is a one-vertex extension of one on n-1.
// Classes are told apart by `key`, so the caller chooses the invariant.
template <typename Key>
std::vector<Graph> all_graphs(std::size_t n, Key&& key) {
  std::vector<Graph> level{Graph(0)};
  for (std::size_t m = 0; m < n; ++m) {
    std::map<decltype(key(Graph(0))), Graph> next;
    for (const Graph& g : level) {
      for (std::uint64_t s = 0; s < (std::uint64_t{1} << m); ++s) {
        Graph h(m + 1);
        for (std::size_t u = 0; u < m; ++u) {
          for (std::size_t v = u + 1; v < m; ++v) {
            if (g.adjacent(u, v)) h.add_edge(u, v);
          }
          if ((s >> u) & 1U) h.add_edge(u, m);
        }
        next.emplace(key(h), h);
      }
    }
    level.clear();
    for (auto& [k, g] : next) level.push_back(std::move(g));
  }
  return level;
}

}  // namespace oracle

#endif  // SPECTER_TESTS_ORACLES_HPP
