#ifndef SPECTER_INTERLACING_HPP
#define SPECTER_INTERLACING_HPP

#include <Eigen/Dense>
#include <cstddef>

#include "specter/feasibility.hpp"
#include "specter/graph.hpp"
#include "specter/spectra.hpp"

namespace specter {

// Strict-violation slack for interlacing comparisons. Pruning happens only
// when an inequality fails by more than this.
inline constexpr double kInterlaceTolerance = 1e-9;

// Quotient matrix over the partition ({v_1}, ..., {v_m}, rest) of a
// hypothetical SRG containing H, in the diagonally similar symmetric form
// B_ij = e(V_i, V_j) / sqrt(|V_i| |V_j|).
struct PartitionedMatrix {
  std::size_t order = 0;
  Eigen::MatrixXd entries;
};

// Throws InfeasibleDegreeError if some deg_H(u) > k, InfeasibleCountError if
// the edge count left for the rest block is negative, DomainError if |H| >= v.
PartitionedMatrix partitioned_matrix(const Graph& h, const SrgParams& p);

// The same quotient matrix in its original, non-symmetric form
// a_ij = e(V_i, V_j) / |V_i|.
Eigen::MatrixXd raw_partitioned_matrix(const Graph& h, const SrgParams& p);

// lambda_i >= mu_i >= lambda_{n-m+i} for all i (1-based), within tolerance.
// Throws DomainError on unsorted input or when mu is longer than lambda.
bool sequence_interlaces(const SpectrumSeq& mu, const SpectrumSeq& lambda);

// Reusable interlacing test against one parameter set; the host spectrum is
// computed once.
class InterlacingFilter {
 public:
  explicit InterlacingFilter(const SrgParams& p);

  bool operator()(const Graph& h) const;
  const SrgParams& params() const noexcept { return params_; }
  const SpectrumSeq& host_spectrum() const noexcept { return host_; }

 private:
  SrgParams params_;
  SpectrumSeq host_;
};

// Partitioned matrix spectrum interlaces the SRG spectrum. Infeasible degree
// or edge counts count as "does not interlace".
bool interlaces(const Graph& h, const SrgParams& p);

}  // namespace specter

#endif  // SPECTER_INTERLACING_HPP
