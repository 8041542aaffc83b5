#include "specter/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "specter/errors.hpp"

namespace specter {

namespace {

using i128 = __int128;

struct Overflow {};

std::int64_t narrow(i128 x) {
  if (x > std::numeric_limits<std::int64_t>::max() ||
      x < std::numeric_limits<std::int64_t>::min()) {
    throw Overflow{};
  }
  return static_cast<std::int64_t>(x);
}

// Fraction-free row echelon reduction. Every intermediate entry is a minor of
// the input, so the division by the previous pivot is exact.
std::size_t bareiss_rank_i64(std::vector<std::vector<std::int64_t>>& a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::size_t rank = 0;
  std::int64_t prev = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    const std::int64_t pivot = a[rank][c];
    for (std::size_t i = rank + 1; i < rows; ++i) {
      const std::int64_t lead = a[i][c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        const i128 num = static_cast<i128>(pivot) * a[i][j] - static_cast<i128>(lead) * a[rank][j];
        a[i][j] = narrow(num / prev);
      }
      a[i][c] = 0;
    }
    prev = pivot;
    ++rank;
  }
  return rank;
}

std::size_t bareiss_rank_mpz(std::vector<std::vector<mpz_class>>& a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::size_t rank = 0;
  mpz_class prev = 1;
  mpz_class tmp;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        tmp = a[rank][c] * a[i][j] - a[i][c] * a[rank][j];
        mpz_divexact(a[i][j].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

std::vector<std::vector<std::int64_t>> shifted_adjacency(const Graph& g, std::int64_t t) {
  const std::size_t n = g.order();
  std::vector<std::vector<std::int64_t>> m(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    m[i][i] = t;
    for (std::size_t j = 0; j < n; ++j) {
      if (g.adjacent(i, j)) m[i][j] = -1;
    }
  }
  return m;
}

}  // namespace

Eigen::MatrixXd adjacency_matrix(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.order());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for_each_bit(g.row(static_cast<std::size_t>(i)),
                 [&](std::size_t j) { m(i, static_cast<Eigen::Index>(j)) = 1.0; });
  }
  return m;
}

SpectrumSeq symmetric_eigenvalues(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw DomainError("symmetric_eigenvalues: matrix is not square");
  if (m.rows() > 0 && (m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw DomainError("symmetric_eigenvalues: matrix is not symmetric");
  }
  SpectrumSeq out;
  if (m.rows() == 0) return out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw InternalError("eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  out.values.assign(ev.data(), ev.data() + ev.size());
  std::sort(out.values.begin(), out.values.end(), std::greater<>());
  return out;
}

std::size_t exact_rank(std::vector<std::vector<std::int64_t>> rows) {
  try {
    auto copy = rows;
    return bareiss_rank_i64(copy);
  } catch (const Overflow&) {
    std::vector<std::vector<mpz_class>> big(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      big[i].reserve(rows[i].size());
      for (std::int64_t x : rows[i]) big[i].emplace_back(static_cast<long>(x));
    }
    return bareiss_rank_mpz(big);
  }
}

std::size_t eigenvalue_multiplicity_exact(const Graph& g, std::int64_t t) {
  return g.order() - exact_rank(shifted_adjacency(g, t));
}

mpq_class RationalResolvent::entry(std::size_t i, std::size_t j) const {
  mpq_class q(numerator(i, j), denominator_);
  q.canonicalize();
  return q;
}

RationalResolvent resolvent(const Graph& h, std::int64_t r) {
  const std::size_t n = h.order();
  const std::size_t width = 2 * n;
  std::vector<mpz_class> a(n * width);
  const auto shifted = shifted_adjacency(h, r);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i * width + j] = static_cast<long>(shifted[i][j]);
    a[i * width + n + i] = 1;
  }

  // Fraction-free Gauss-Jordan on [rI - A | I]: ends at [d I | adj] with d = +-det.
  mpz_class prev = 1;
  mpz_class tmp;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p * width + k] == 0) ++p;
    if (p == n) {
      throw SingularMatrixError("resolvent: " + std::to_string(r) +
                                " is an eigenvalue of the graph");
    }
    if (p != k) {
      for (std::size_t j = 0; j < width; ++j) std::swap(a[p * width + j], a[k * width + j]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      for (std::size_t j = 0; j < width; ++j) {
        if (j == k) continue;
        tmp = a[k * width + k] * a[i * width + j] - a[i * width + k] * a[k * width + j];
        mpz_divexact(a[i * width + j].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
      a[i * width + k] = 0;
    }
    prev = a[k * width + k];
  }

  RationalResolvent res;
  res.order_ = n;
  res.r_ = r;
  res.numerators_.resize(n * n);
  if (n == 0) {
    res.denominator_ = 1;
  } else {
    // Row k was left untouched at its own step, so every diagonal entry is
    // brought to the final pivot only by later steps; normalise row by row.
    const mpz_class d = a[(n - 1) * width + (n - 1)];
    res.denominator_ = abs(d);
    for (std::size_t i = 0; i < n; ++i) {
      const mpz_class& diag = a[i * width + i];
      for (std::size_t j = 0; j < n; ++j) {
        // entry = a[i][n+j] / diag, rescaled onto the common denominator |d|.
        mpz_class num = a[i * width + n + j] * res.denominator_;
        mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), diag.get_mpz_t());
        res.numerators_[i * n + j] = num;
      }
    }
  }

  // int64 view for fast bilinear forms over 0/1 vectors.
  mpz_class bound = res.denominator_;
  for (const auto& x : res.numerators_) {
    if (abs(x) > bound) bound = abs(x);
  }
  const mpz_class limit = mpz_class(1) << 62;
  if (bound * mpz_class(static_cast<unsigned long>(n * n + 1)) < limit) {
    std::vector<std::int64_t> small(n * n);
    for (std::size_t i = 0; i < n * n; ++i) small[i] = res.numerators_[i].get_si();
    res.small_ = std::move(small);
    res.small_denominator_ = res.denominator_.get_si();
  }
  return res;
}

}  // namespace specter
