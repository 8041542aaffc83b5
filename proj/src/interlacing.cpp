#include "specter/interlacing.hpp"

#include <cmath>

#include "specter/errors.hpp"

namespace specter {

namespace {

struct BlockCounts {
  std::vector<double> outgoing;  // k - deg_H(u)
  double rest_size = 0;
  double rest_edges = 0;
};

BlockCounts block_counts(const Graph& h, const SrgParams& p) {
  const auto m = static_cast<std::int64_t>(h.order());
  if (m >= p.v) throw DomainError("partitioned_matrix: H must be smaller than the host");
  BlockCounts c;
  c.outgoing.resize(h.order());
  std::int64_t leaving = 0;
  for (std::size_t u = 0; u < h.order(); ++u) {
    const auto deg = static_cast<std::int64_t>(h.degree(u));
    if (deg > p.k) {
      throw InfeasibleDegreeError("vertex " + std::to_string(u) + " has degree " +
                                  std::to_string(deg) + " > k = " + std::to_string(p.k));
    }
    c.outgoing[u] = static_cast<double>(p.k - deg);
    leaving += p.k - deg;
  }
  // Twice the edge count keeps v*k/2 integral.
  const std::int64_t twice_rest =
      p.v * p.k - 2 * static_cast<std::int64_t>(h.edge_count()) - 2 * leaving;
  if (twice_rest < 0) {
    throw InfeasibleCountError("implied edge count outside H is negative");
  }
  c.rest_size = static_cast<double>(p.v - m);
  c.rest_edges = static_cast<double>(twice_rest) / 2.0;
  return c;
}

}  // namespace

PartitionedMatrix partitioned_matrix(const Graph& h, const SrgParams& p) {
  const auto c = block_counts(h, p);
  const auto m = static_cast<Eigen::Index>(h.order());
  PartitionedMatrix out;
  out.order = h.order() + 1;
  out.entries = Eigen::MatrixXd::Zero(m + 1, m + 1);
  const double scale = std::sqrt(c.rest_size);
  for (Eigen::Index i = 0; i < m; ++i) {
    for_each_bit(h.row(static_cast<std::size_t>(i)),
                 [&](std::size_t j) { out.entries(i, static_cast<Eigen::Index>(j)) = 1.0; });
    const double x = c.outgoing[static_cast<std::size_t>(i)] / scale;
    out.entries(i, m) = x;
    out.entries(m, i) = x;
  }
  out.entries(m, m) = 2.0 * c.rest_edges / c.rest_size;
  return out;
}

Eigen::MatrixXd raw_partitioned_matrix(const Graph& h, const SrgParams& p) {
  const auto c = block_counts(h, p);
  const auto m = static_cast<Eigen::Index>(h.order());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m + 1, m + 1);
  for (Eigen::Index i = 0; i < m; ++i) {
    for_each_bit(h.row(static_cast<std::size_t>(i)),
                 [&](std::size_t j) { a(i, static_cast<Eigen::Index>(j)) = 1.0; });
    a(i, m) = c.outgoing[static_cast<std::size_t>(i)];
    a(m, i) = c.outgoing[static_cast<std::size_t>(i)] / c.rest_size;
  }
  a(m, m) = 2.0 * c.rest_edges / c.rest_size;
  return a;
}

bool sequence_interlaces(const SpectrumSeq& mu, const SpectrumSeq& lambda) {
  const auto& a = mu.values;
  const auto& b = lambda.values;
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (a[i] > a[i - 1]) throw DomainError("sequence_interlaces: mu is not sorted descending");
  }
  for (std::size_t i = 1; i < b.size(); ++i) {
    if (b[i] > b[i - 1]) throw DomainError("sequence_interlaces: lambda is not sorted descending");
  }
  if (a.size() > b.size()) throw DomainError("sequence_interlaces: mu longer than lambda");
  const std::size_t shift = b.size() - a.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i] + kInterlaceTolerance) return false;
    if (a[i] < b[shift + i] - kInterlaceTolerance) return false;
  }
  return true;
}

InterlacingFilter::InterlacingFilter(const SrgParams& p) : params_(p) {
  params_.validate();
  host_.values = srg_eigenvalues(p);
}

bool InterlacingFilter::operator()(const Graph& h) const {
  if (static_cast<std::int64_t>(h.order()) >= params_.v) return false;
  PartitionedMatrix pm;
  try {
    pm = partitioned_matrix(h, params_);
  } catch (const InfeasibleDegreeError&) {
    return false;
  } catch (const InfeasibleCountError&) {
    return false;
  }
  return sequence_interlaces(symmetric_eigenvalues(pm.entries), host_);
}

bool interlaces(const Graph& h, const SrgParams& p) { return InterlacingFilter(p)(h); }

}  // namespace specter
