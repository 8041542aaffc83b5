#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "specter/errors.hpp"
#include "specter/spectra.hpp"

using namespace specter;

namespace {

void check_spectrum(const Graph& g, const std::vector<double>& expected) {
  const auto got = symmetric_eigenvalues(adjacency_matrix(g)).values;
  REQUIRE(got.size() == expected.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(expected[i]).epsilon(1e-9));
}

std::vector<std::vector<std::int64_t>> shifted(const Graph& g, std::int64_t t) {
  std::vector<std::vector<std::int64_t>> m(g.order(), std::vector<std::int64_t>(g.order(), 0));
  for (std::size_t i = 0; i < g.order(); ++i) {
    for (std::size_t j = 0; j < g.order(); ++j) m[i][j] = (i == j ? t : 0) - (g.adjacent(i, j) ? 1 : 0);
  }
  return m;
}

}  // namespace

TEST_CASE("symmetric eigenvalues of fixtures") {
  check_spectrum(complete_graph(3), {2, -1, -1});
  check_spectrum(petersen_graph(), {3, 1, 1, 1, 1, 1, -2, -2, -2, -2});
  check_spectrum(Graph(4), {0, 0, 0, 0});
  Eigen::MatrixXd m(2, 2);
  m << 0, 1, 0.5, 0;
  CHECK_THROWS_AS(symmetric_eigenvalues(m), DomainError);
}

TEST_CASE("exact eigenvalue multiplicity") {
  CHECK(eigenvalue_multiplicity_exact(cycle_graph(4), 2) == 1);
  CHECK(eigenvalue_multiplicity_exact(complete_graph(3), 2) == 1);
  CHECK(eigenvalue_multiplicity_exact(path_graph(3), 2) == 0);
  CHECK(eigenvalue_multiplicity_exact(petersen_graph(), 1) == 5);
  CHECK(eigenvalue_multiplicity_exact(petersen_graph(), -2) == 4);
  CHECK(eigenvalue_multiplicity_exact(Graph(0), 2) == 0);
}

TEST_CASE("exact multiplicity agrees with floating point on random graphs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 12;
    const Graph g = oracle::random_graph(n, 0.2 + 0.1 * (trial % 7), rng);
    const auto spectrum = symmetric_eigenvalues(adjacency_matrix(g)).values;
    double trace = 0;
    for (double x : spectrum) trace += x;
    CHECK(std::abs(trace) < 1e-9);
    CHECK(std::is_sorted(spectrum.rbegin(), spectrum.rend()));
    for (std::int64_t t = -3; t <= 3; ++t) {
      const std::size_t exact = eigenvalue_multiplicity_exact(g, t);
      CHECK(exact == n - oracle::float_rank(shifted(g, t)));
      std::size_t close = 0;
      for (double x : spectrum) close += std::abs(x - static_cast<double>(t)) < 1e-6 ? 1 : 0;
      CHECK(exact == close);
    }
  }
}

TEST_CASE("exact rank survives entries that overflow 64-bit elimination") {
  const std::int64_t big = std::int64_t{1} << 40;
  std::vector<std::vector<std::int64_t>> rows{
      {big, 3, big - 1, 7}, {5, big, 11, big + 3}, {big + 5, big + 3, big + 10, big + 10}, {1, 2, 3, 4}};
  CHECK(exact_rank(rows) == 3);
  rows[3] = {2 * big + 5, big + 6, 2 * big + 10, big + 10};
  CHECK(exact_rank(rows) == 3);
  CHECK(exact_rank({}) == 0);
  CHECK(exact_rank({{0, 0}, {0, 0}}) == 0);
}

TEST_CASE("resolvent fixtures") {
  const auto k1 = resolvent(Graph(1), 2);
  CHECK(k1.entry(0, 0) == mpq_class(1, 2));
  const auto k2 = resolvent(complete_graph(2), 2);
  CHECK(k2.entry(0, 0) == mpq_class(2, 3));
  CHECK(k2.entry(0, 1) == mpq_class(1, 3));
  CHECK(k2.entry(1, 1) == mpq_class(2, 3));
  CHECK_THROWS_AS(resolvent(cycle_graph(4), 2), SingularMatrixError);
}

TEST_CASE("resolvent is an exact symmetric inverse") {
  std::mt19937_64 rng(12);
  int tested = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 14;
    const Graph g = oracle::random_graph(n, 0.45, rng);
    const std::int64_t r = trial % 2 == 0 ? 2 : 1;
    if (eigenvalue_multiplicity_exact(g, r) != 0) {
      CHECK_THROWS_AS(resolvent(g, r), SingularMatrixError);
      continue;
    }
    ++tested;
    const auto res = resolvent(g, r);
    REQUIRE(res.order() == n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(res.entry(i, j) == res.entry(j, i));
        mpq_class sum = 0;
        for (std::size_t l = 0; l < n; ++l) {
          const long a = (i == l ? r : 0) - (g.adjacent(i, l) ? 1 : 0);
          sum += mpq_class(a) * res.entry(l, j);
        }
        CHECK(sum == mpq_class(i == j ? 1 : 0));
      }
    }
    if (res.small_numerators()) {
      const auto& small = *res.small_numerators();
      for (std::size_t i = 0; i < n * n; ++i) {
        mpq_class q(small[i], res.small_denominator());
        q.canonicalize();
        CHECK(q == res.entry(i / n, i % n));
      }
    }
  }
  CHECK(tested > 50);
}
