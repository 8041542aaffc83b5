#include "specter/starcomp.hpp"

#include <algorithm>
#include <bit>
#include <functional>

#include "specter/clique.hpp"
#include "specter/errors.hpp"

namespace specter {

namespace {

constexpr std::size_t kMaxStarComplementOrder = 63;

// Walks all 2^n masks in Gray-code order, keeping u N, u N u^T and u N 1
// current with one row update per step. Numerator type T is int64 when the
// bound allows it, mpz otherwise.
template <typename T>
std::vector<std::uint64_t> enumerate_vertices(const std::vector<T>& numer, const T& denom,
                                              std::size_t n, std::int64_t r, bool regular_host) {
  std::vector<T> w(n, T(0));
  std::vector<T> row_sum(n, T(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) row_sum[i] += numer[i * n + j];
  }
  T quad(0);
  T lin(0);
  const T target_quad = T(r) * denom;
  const T target_lin = T(0) - denom;
  std::vector<std::uint64_t> found;
  std::uint64_t mask = 0;
  const auto check = [&] {
    if (quad == target_quad && (!regular_host || lin == target_lin)) found.push_back(mask);
  };
  check();
  const std::uint64_t total = n == 0 ? 1 : (std::uint64_t{1} << n);
  for (std::uint64_t step = 1; step < total; ++step) {
    const auto j = static_cast<std::size_t>(std::countr_zero(step));
    const T& njj = numer[j * n + j];
    if ((mask >> j) & 1U) {
      quad += njj;
      quad -= T(2) * w[j];
      for (std::size_t x = 0; x < n; ++x) w[x] -= numer[j * n + x];
      lin -= row_sum[j];
    } else {
      quad += T(2) * w[j];
      quad += njj;
      for (std::size_t x = 0; x < n; ++x) w[x] += numer[j * n + x];
      lin += row_sum[j];
    }
    mask ^= std::uint64_t{1} << j;
    check();
  }
  std::sort(found.begin(), found.end());
  return found;
}

template <typename T>
Graph build_adjacency(const std::vector<T>& numer, const T& denom, std::size_t n,
                      const std::vector<std::uint64_t>& masks) {
  Graph g(masks.size());
  std::vector<T> w(n);
  const T minus_d = T(0) - denom;
  T ip;
  for (std::size_t a = 0; a < masks.size(); ++a) {
    for (std::size_t x = 0; x < n; ++x) {
      w[x] = T(0);
      for (std::size_t i = 0; i < n; ++i) {
        if ((masks[a] >> i) & 1U) w[x] += numer[i * n + x];
      }
    }
    for (std::size_t b = a + 1; b < masks.size(); ++b) {
      ip = T(0);
      std::uint64_t m = masks[b];
      while (m != 0) {
        ip += w[static_cast<std::size_t>(std::countr_zero(m))];
        m &= m - 1;
      }
      if (ip == minus_d || ip == T(0)) g.add_edge(a, b);
    }
  }
  return g;
}

}  // namespace

CompVertex CompVertex::from_set(const VertexSet& s) {
  if (s.universe() > kMaxStarComplementOrder) {
    throw UnsupportedSizeError("CompVertex supports at most 63 coordinates");
  }
  CompVertex c;
  c.length = s.universe();
  for (std::size_t v : s.members()) c.mask |= std::uint64_t{1} << v;
  return c;
}

CompVertex CompVertex::all_ones(std::size_t length) {
  if (length > kMaxStarComplementOrder) {
    throw UnsupportedSizeError("CompVertex supports at most 63 coordinates");
  }
  return CompVertex{length == 0 ? 0 : (~std::uint64_t{0} >> (64 - length)), length};
}

mpq_class inner_product(const RationalResolvent& res, const CompVertex& u, const CompVertex& v) {
  if (u.length != res.order() || v.length != res.order()) {
    throw DomainError("inner_product: vector length does not match resolvent order");
  }
  mpz_class total = 0;
  for (std::size_t i = 0; i < res.order(); ++i) {
    if (!u.has(i)) continue;
    for (std::size_t j = 0; j < res.order(); ++j) {
      if (v.has(j)) total += res.numerator(i, j);
    }
  }
  mpq_class q(total, res.denominator());
  q.canonicalize();
  return q;
}

std::variant<ComparabilityGraph, TooSmall> comparability_graph(const Graph& h, std::int64_t r,
                                                               const ComparabilityOptions& options) {
  const std::size_t n = h.order();
  if (n > kMaxStarComplementOrder) {
    throw UnsupportedSizeError("comparability_graph: star complement order above 63");
  }
  const auto res = resolvent(h, r);

  std::vector<std::uint64_t> masks;
  Graph adjacency;
  if (const auto& small = res.small_numerators()) {
    masks = enumerate_vertices<std::int64_t>(*small, res.small_denominator(), n, r, options.regular_host);
    if (masks.size() < options.min_order) return TooSmall{masks.size()};
    adjacency = build_adjacency<std::int64_t>(*small, res.small_denominator(), n, masks);
  } else {
    std::vector<mpz_class> numer(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) numer[i * n + j] = res.numerator(i, j);
    }
    masks = enumerate_vertices<mpz_class>(numer, res.denominator(), n, r, options.regular_host);
    if (masks.size() < options.min_order) return TooSmall{masks.size()};
    adjacency = build_adjacency<mpz_class>(numer, res.denominator(), n, masks);
  }

  ComparabilityGraph out;
  out.graph = std::move(adjacency);
  out.labels.reserve(masks.size());
  for (std::uint64_t m : masks) out.labels.push_back(CompVertex{m, n});
  out.source = h;
  out.r = r;
  return out;
}

bool has_f_clique(const ComparabilityGraph& c, std::size_t f) {
  if (f == 0) return true;
  if (c.graph.order() < f) return false;
  return clique_number_symmetric(c.graph, f).reached();
}

VertexSet find_star_complement(const Graph& g, std::int64_t r) {
  const std::size_t f = eigenvalue_multiplicity_exact(g, r);
  if (f == 0) throw DomainError("find_star_complement: r is not an eigenvalue of the graph");

  // Deleting one vertex changes the multiplicity by at most one; delete
  // vertices that lower it until it reaches zero.
  std::vector<std::size_t> kept(g.order());
  for (std::size_t v = 0; v < g.order(); ++v) kept[v] = v;
  std::function<bool(std::size_t)> shrink = [&](std::size_t mult) -> bool {
    if (mult == 0) return true;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      std::vector<std::size_t> trial = kept;
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
      if (eigenvalue_multiplicity_exact(induced_subgraph(g, trial), r) + 1 != mult) continue;
      const auto saved = kept;
      kept = std::move(trial);
      if (shrink(mult - 1)) return true;
      kept = saved;
    }
    return false;
  };
  if (!shrink(f)) throw InternalError("find_star_complement: search exhausted");
  return VertexSet(g.order(), kept);
}

}  // namespace specter
