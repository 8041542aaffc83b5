#include "doctest.h"

#include <Eigen/Eigenvalues>

#include <random>

#include "oracles.hpp"
#include "specter/errors.hpp"
#include "specter/feasibility.hpp"
#include "specter/interlacing.hpp"

using namespace specter;

namespace {

const SrgParams kTarget{75, 32, 10, 16};
const SrgParams kPetersen{10, 3, 0, 1};

// Eigenvalues of a general real matrix, descending; imaginary parts must vanish.
std::vector<double> general_eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    REQUIRE(std::abs(es.eigenvalues()[i].imag()) < 1e-7);
    out.push_back(es.eigenvalues()[i].real());
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

void check_all_subgraphs_interlace(const Graph& g, const SrgParams& p, std::size_t max_order) {
  const InterlacingFilter filter(p);
  std::size_t failures = 0;
  for (const auto& subset : oracle::small_subsets(g.order(), max_order)) {
    if (!filter(induced_subgraph(g, subset))) ++failures;
  }
  CHECK(failures == 0);
}

}  // namespace

TEST_CASE("partitioned matrix of a single vertex in Petersen") {
  const Eigen::MatrixXd raw = raw_partitioned_matrix(Graph(1), kPetersen);
  REQUIRE(raw.rows() == 2);
  CHECK(raw(0, 0) == doctest::Approx(0.0));
  CHECK(raw(0, 1) == doctest::Approx(3.0));
  CHECK(raw(1, 0) == doctest::Approx(1.0 / 3));
  CHECK(raw(1, 1) == doctest::Approx(8.0 / 3));
  const auto sym = partitioned_matrix(Graph(1), kPetersen);
  const auto values = symmetric_eigenvalues(sym.entries).values;
  REQUIRE(values.size() == 2);
  CHECK(values[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(values[1] == doctest::Approx(-1.0 / 3).epsilon(1e-12));
}

TEST_CASE("partitioned matrix edge cases") {
  CHECK_THROWS_AS(partitioned_matrix(star_graph(4), kPetersen), InfeasibleDegreeError);
  CHECK_FALSE(interlaces(star_graph(4), kPetersen));
  const auto empty = partitioned_matrix(Graph(0), kPetersen);
  REQUIRE(empty.entries.rows() == 1);
  CHECK(empty.entries(0, 0) == doctest::Approx(3.0));
  CHECK_THROWS_AS(partitioned_matrix(Graph(10), kPetersen), DomainError);
  // Nine isolated vertices need 27 edges to a single outside vertex.
  CHECK_THROWS_AS(partitioned_matrix(Graph(9), kPetersen), InfeasibleCountError);
  CHECK_FALSE(interlaces(Graph(9), kPetersen));
}

TEST_CASE("sequence interlacing") {
  const SpectrumSeq petersen{{3, 1, 1, 1, 1, 1, -2, -2, -2, -2}};
  CHECK(sequence_interlaces(SpectrumSeq{{3, -1.0 / 3}}, petersen));
  CHECK_FALSE(sequence_interlaces(SpectrumSeq{{4}}, petersen));
  CHECK(sequence_interlaces(petersen, petersen));
  CHECK(sequence_interlaces(SpectrumSeq{{3 + 1e-10}}, petersen));
  CHECK_FALSE(sequence_interlaces(SpectrumSeq{{3 + 1e-8}}, petersen));
  CHECK_THROWS_AS(sequence_interlaces(SpectrumSeq{{-1, 1}}, petersen), DomainError);
  CHECK_THROWS_AS(sequence_interlaces(petersen, SpectrumSeq{{1}}), DomainError);
}

TEST_CASE("symmetrisation preserves the quotient spectrum") {
  std::mt19937_64 rng(21);
  const std::vector<SrgParams> params{kPetersen, kTarget, SrgParams{13, 6, 2, 3}};
  for (int trial = 0; trial < 150; ++trial) {
    const SrgParams& p = params[trial % params.size()];
    const Graph h = oracle::random_graph(1 + trial % 9, 0.3, rng);
    try {
      const auto sym = symmetric_eigenvalues(partitioned_matrix(h, p).entries).values;
      const auto raw = general_eigenvalues(raw_partitioned_matrix(h, p));
      REQUIRE(sym.size() == raw.size());
      for (std::size_t i = 0; i < sym.size(); ++i) CHECK(std::abs(sym[i] - raw[i]) < 1e-9);
    } catch (const InfeasibleDegreeError&) {
      CHECK_FALSE(interlaces(h, p));
    } catch (const InfeasibleCountError&) {
      CHECK_FALSE(interlaces(h, p));
    }
  }
}

TEST_CASE("soundness on strongly regular graphs that exist") {
  check_all_subgraphs_interlace(petersen_graph(), kPetersen, 8);
  check_all_subgraphs_interlace(oracle::rook_graph(3), SrgParams{9, 4, 1, 2}, 8);
  check_all_subgraphs_interlace(paley_graph(13), SrgParams{13, 6, 2, 3}, 8);
}

TEST_CASE("verdict is invariant under relabelling") {
  std::mt19937_64 rng(22);
  const InterlacingFilter filter(kTarget);
  std::size_t passing = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Graph h = oracle::random_graph(4 + trial % 12, 0.35, rng);
    const bool verdict = filter(h);
    passing += verdict ? 1 : 0;
    const auto perm = oracle::random_permutation(h.order(), rng);
    CHECK(filter(relabel(h, perm)) == verdict);
    CHECK(interlaces(h, kTarget) == verdict);
  }
  CHECK(passing > 0);
}

TEST_CASE("three vertices on three clique vertices each never interlace with an inner edge") {
  // K4 plus x0, x1, x2 each adjacent to exactly three clique vertices.
  const InterlacingFilter filter(kTarget);
  for (std::size_t a = 0; a < 64; ++a) {
    for (std::size_t edges = 1; edges < 8; ++edges) {
      Graph g = complete_graph(4);
      for (std::size_t x = 0; x < 3; ++x) {
        const std::size_t missing = (a >> (2 * x)) & 3U;
        VertexSet nbrs(g.order());
        for (std::size_t c = 0; c < 4; ++c) {
          if (c != missing) nbrs.insert(c);
        }
        g = add_vertex(g, nbrs);
      }
      if (edges & 1U) g.add_edge(4, 5);
      if (edges & 2U) g.add_edge(4, 6);
      if (edges & 4U) g.add_edge(5, 6);
      CHECK_FALSE(filter(g));
    }
  }
}
