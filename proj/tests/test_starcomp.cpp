#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "specter/clique.hpp"
#include "specter/errors.hpp"
#include "specter/spectra.hpp"
#include "specter/starcomp.hpp"

using namespace specter;

namespace {

using Matrix = std::vector<std::vector<mpq_class>>;

// (rI - A)^{-1} by plain Gauss-Jordan over the rationals.
Matrix gauss_jordan_inverse(const Graph& h, long r) {
  const std::size_t n = h.order();
  Matrix a(n, std::vector<mpq_class>(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = (i == j ? r : 0) - (h.adjacent(i, j) ? 1 : 0);
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    REQUIRE(p < n);
    std::swap(a[p], a[c]);
    const mpq_class pivot = a[c][c];
    for (auto& x : a[c]) x /= pivot;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      const mpq_class f = a[i][c];
      for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  Matrix inv(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
  }
  return inv;
}

mpq_class form(const Matrix& inv, std::uint64_t u, std::uint64_t v) {
  mpq_class total = 0;
  for (std::size_t i = 0; i < inv.size(); ++i) {
    for (std::size_t j = 0; j < inv.size(); ++j) {
      if (((u >> i) & 1U) && ((v >> j) & 1U)) total += inv[i][j];
    }
  }
  return total;
}

// Brute-force comparability graph from the Gauss-Jordan inverse.
void check_against_brute_force(const Graph& h, long r, bool regular_host) {
  const Matrix inv = gauss_jordan_inverse(h, r);
  const std::size_t n = h.order();
  const std::uint64_t ones = (std::uint64_t{1} << n) - 1;
  std::vector<std::uint64_t> expected;
  for (std::uint64_t u = 0; u <= ones; ++u) {
    if (form(inv, u, u) == r && (!regular_host || form(inv, u, ones) == -1)) expected.push_back(u);
  }
  ComparabilityOptions options;
  options.regular_host = regular_host;
  const auto built = std::get<ComparabilityGraph>(comparability_graph(h, r, options));
  REQUIRE(built.labels.size() == expected.size());
  REQUIRE(built.graph.order() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(built.labels[i].mask == expected[i]);
    CHECK(built.labels[i].length == n);
    for (std::size_t j = i + 1; j < expected.size(); ++j) {
      const mpq_class ip = form(inv, expected[i], expected[j]);
      CHECK(built.graph.adjacent(i, j) == (ip == -1 || ip == 0));
    }
  }
}

// Star complement S of g, its comparability graph, and the positive control:
// the true outside neighbourhoods are labels and pairwise adjacent.
void positive_control(const Graph& g, std::int64_t r, std::size_t f) {
  const VertexSet s = find_star_complement(g, r);
  REQUIRE(s.count() == g.order() - f);
  const Graph h = induced_subgraph(g, s);
  CHECK(eigenvalue_multiplicity_exact(h, r) == 0);
  const auto built = std::get<ComparabilityGraph>(comparability_graph(h, r));
  CHECK(has_f_clique(built, f));

  const auto inside = s.members();
  std::vector<std::size_t> clique;
  for (std::size_t v = 0; v < g.order(); ++v) {
    if (s.contains(v)) continue;
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < inside.size(); ++i) {
      if (g.adjacent(v, inside[i])) mask |= std::uint64_t{1} << i;
    }
    const auto it = std::find_if(built.labels.begin(), built.labels.end(),
                                 [&](const CompVertex& c) { return c.mask == mask; });
    REQUIRE(it != built.labels.end());
    clique.push_back(static_cast<std::size_t>(it - built.labels.begin()));
  }
  CHECK(clique.size() == f);
  CHECK(is_clique(built.graph, clique));
}

}  // namespace

TEST_CASE("inner products on small resolvents") {
  const auto k1 = resolvent(Graph(1), 2);
  CHECK(inner_product(k1, CompVertex{1, 1}, CompVertex{1, 1}) == mpq_class(1, 2));
  const auto k2 = resolvent(complete_graph(2), 2);
  CHECK(inner_product(k2, CompVertex{3, 2}, CompVertex{3, 2}) == 2);
  CHECK(inner_product(k2, CompVertex{1, 2}, CompVertex{2, 2}) == mpq_class(1, 3));
  CHECK_THROWS_AS(inner_product(k2, CompVertex{1, 1}, CompVertex{1, 2}), DomainError);
}

TEST_CASE("inner product is symmetric and matches the oracle") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph h = oracle::random_graph(3 + trial % 8, 0.4, rng);
    if (eigenvalue_multiplicity_exact(h, 2) != 0) continue;
    const auto res = resolvent(h, 2);
    const Matrix inv = gauss_jordan_inverse(h, 2);
    std::uniform_int_distribution<std::uint64_t> pick(0, (std::uint64_t{1} << h.order()) - 1);
    for (int k = 0; k < 20; ++k) {
      const CompVertex u{pick(rng), h.order()}, v{pick(rng), h.order()};
      CHECK(inner_product(res, u, v) == inner_product(res, v, u));
      CHECK(inner_product(res, u, v) == form(inv, u.mask, v.mask));
    }
  }
}

TEST_CASE("comparability graph construction") {
  const auto k1 = std::get<ComparabilityGraph>(comparability_graph(Graph(1), 2));
  CHECK(k1.graph.order() == 0);
  check_against_brute_force(cycle_graph(5), 1, true);
  check_against_brute_force(cycle_graph(5), 1, false);
  check_against_brute_force(path_graph(4), 1, false);
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph h = oracle::random_graph(4 + trial % 7, 0.5, rng);
    if (eigenvalue_multiplicity_exact(h, 1) == 0) check_against_brute_force(h, 1, trial % 2 == 0);
  }
  CHECK_THROWS_AS(comparability_graph(cycle_graph(4), 2), SingularMatrixError);
  ComparabilityOptions options;
  options.min_order = 1000;
  const auto small = comparability_graph(cycle_graph(5), 1, options);
  REQUIRE(std::holds_alternative<TooSmall>(small));
  CHECK(std::get<TooSmall>(small).order == std::get<ComparabilityGraph>(comparability_graph(cycle_graph(5), 1)).graph.order());
}

TEST_CASE("labels of an order-19 candidate satisfy the defining identities exactly") {
  std::mt19937_64 rng(33);
  Graph h;
  do {
    h = oracle::random_graph(19, 0.4, rng);
  } while (eigenvalue_multiplicity_exact(h, 2) != 0);
  const auto built = std::get<ComparabilityGraph>(comparability_graph(h, 2));
  const auto res = resolvent(h, 2);
  const CompVertex ones = CompVertex::all_ones(19);
  for (std::size_t i = 0; i < built.labels.size(); ++i) {
    CHECK(inner_product(res, built.labels[i], built.labels[i]) == 2);
    CHECK(inner_product(res, built.labels[i], ones) == -1);
  }
  for (std::size_t i = 0; i + 1 < built.labels.size(); i += 7) {
    const auto ip = inner_product(res, built.labels[i], built.labels[i + 1]);
    CHECK(built.graph.adjacent(i, i + 1) == (ip == -1 || ip == 0));
  }
}

TEST_CASE("f-clique criterion") {
  ComparabilityGraph c;
  c.graph = complete_graph(4);
  CHECK(has_f_clique(c, 4));
  CHECK_FALSE(has_f_clique(c, 5));
  CHECK(has_f_clique(c, 0));
  c.graph = Graph(3);
  CHECK_FALSE(has_f_clique(c, 2));
}

TEST_CASE("star complements of real srgs") {
  const VertexSet s = find_star_complement(petersen_graph(), -2);
  CHECK(s.count() == 6);
  CHECK(eigenvalue_multiplicity_exact(induced_subgraph(petersen_graph(), s), -2) == 0);
  CHECK(find_star_complement(complete_graph(3), -1).count() == 1);
  CHECK_THROWS_AS(find_star_complement(petersen_graph(), 2), DomainError);

  positive_control(petersen_graph(), 1, 5);
  positive_control(oracle::rook_graph(3), 1, 4);
  // Relabelled copies exercise different deletion orders.
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 5; ++trial) {
    positive_control(relabel(petersen_graph(), oracle::random_permutation(10, rng)), 1, 5);
  }
}

TEST_CASE("size limits") {
  CHECK_THROWS_AS(CompVertex::from_set(VertexSet(64)), UnsupportedSizeError);
  CHECK(CompVertex::from_set(VertexSet(5, {0, 3})) == CompVertex{9, 5});
  CHECK(CompVertex::all_ones(3) == CompVertex{7, 3});
}
