#ifndef SPECTER_SPECTRA_HPP
#define SPECTER_SPECTRA_HPP

#include <gmpxx.h>

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "specter/graph.hpp"

namespace specter {

// Real spectrum, sorted descending, multiplicities expanded.
struct SpectrumSeq {
  std::vector<double> values;
};

Eigen::MatrixXd adjacency_matrix(const Graph& g);

// Eigenvalues of a real symmetric matrix (Householder tridiagonalisation
// followed by implicit QR). Throws DomainError if |m - m^T| > 1e-12.
SpectrumSeq symmetric_eigenvalues(const Eigen::MatrixXd& m);

// Exact rank of an integer matrix by fraction-free elimination.
std::size_t exact_rank(std::vector<std::vector<std::int64_t>> rows);

// Nullity of (tI - A_G) in exact arithmetic; 0 iff t is not an eigenvalue.
std::size_t eigenvalue_multiplicity_exact(const Graph& g, std::int64_t t);

// Exact (rI - A_H)^{-1}, stored as an integer numerator matrix over one
// positive common denominator: entry(i,j) = numerator(i,j) / denominator().
class RationalResolvent {
 public:
  std::size_t order() const noexcept { return order_; }
  std::int64_t r() const noexcept { return r_; }
  const mpz_class& denominator() const noexcept { return denominator_; }
  const mpz_class& numerator(std::size_t i, std::size_t j) const {
    return numerators_[i * order_ + j];
  }
  mpq_class entry(std::size_t i, std::size_t j) const;

  // Set when every numerator and n^2 * max|numerator| fit in int64, which
  // bounds any 0/1 bilinear form u N v^T.
  const std::optional<std::vector<std::int64_t>>& small_numerators() const noexcept {
    return small_;
  }
  std::int64_t small_denominator() const noexcept { return small_denominator_; }

 private:
  friend RationalResolvent resolvent(const Graph& h, std::int64_t r);

  std::size_t order_ = 0;
  std::int64_t r_ = 0;
  mpz_class denominator_{1};
  std::vector<mpz_class> numerators_;
  std::optional<std::vector<std::int64_t>> small_;
  std::int64_t small_denominator_ = 1;
};

// Throws SingularMatrixError when r is an eigenvalue of h.
RationalResolvent resolvent(const Graph& h, std::int64_t r);

}  // namespace specter

#endif  // SPECTER_SPECTRA_HPP
