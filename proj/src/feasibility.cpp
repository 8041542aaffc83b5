#include "specter/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "specter/errors.hpp"

namespace specter {

namespace {

std::int64_t choose2(std::int64_t x) { return x * (x - 1) / 2; }

std::optional<std::int64_t> exact_sqrt(std::int64_t x) {
  if (x < 0) return std::nullopt;
  auto s = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(x))));
  while (s * s > x) --s;
  while ((s + 1) * (s + 1) <= x) ++s;
  if (s * s != x) return std::nullopt;
  return s;
}

}  // namespace

void SrgParams::validate() const {
  if (!(0 < k && k < v)) throw ParameterError("SRG parameters need 0 < k < v: " + to_string());
  if (!(lambda >= 0 && lambda < k)) {
    throw ParameterError("SRG parameters need 0 <= lambda < k: " + to_string());
  }
  if (mu < 1) throw ParameterError("SRG parameters need mu >= 1: " + to_string());
}

std::string SrgParams::to_string() const {
  std::ostringstream os;
  os << '(' << v << ',' << k << ',' << lambda << ',' << mu << ')';
  return os.str();
}

bool check_edge_equation(const SrgParams& p) {
  return (p.v - p.k - 1) * p.mu == p.k * (p.k - p.lambda - 1);
}

SpectrumDescriptor srg_spectrum(const SrgParams& p) {
  const std::int64_t diff = p.lambda - p.mu;
  const std::int64_t disc = diff * diff + 4 * (p.k - p.mu);
  if (disc < 0) throw ParameterError("negative discriminant for " + p.to_string());

  SpectrumDescriptor s;
  s.k = static_cast<double>(p.k);
  const double root = std::sqrt(static_cast<double>(disc));
  s.r = (static_cast<double>(diff) + root) / 2.0;
  s.s = (static_cast<double>(diff) - root) / 2.0;
  const std::int64_t twist = 2 * p.k + (p.v - 1) * diff;
  if (root > 0) {
    s.f = (static_cast<double>(p.v - 1) - static_cast<double>(twist) / root) / 2.0;
    s.g = (static_cast<double>(p.v - 1) + static_cast<double>(twist) / root) / 2.0;
  }

  if (const auto sq = exact_sqrt(disc)) {
    if ((diff + *sq) % 2 == 0) {
      s.r_int = (diff + *sq) / 2;
      s.s_int = (diff - *sq) / 2;
    }
    // f = ((v-1) sq - twist) / (2 sq)
    if (*sq > 0) {
      const std::int64_t fnum = (p.v - 1) * *sq - twist;
      const std::int64_t gnum = (p.v - 1) * *sq + twist;
      if (fnum % (2 * *sq) == 0 && gnum % (2 * *sq) == 0) {
        s.f_int = fnum / (2 * *sq);
        s.g_int = gnum / (2 * *sq);
      }
    }
  } else if (twist == 0 && (p.v - 1) % 2 == 0) {
    // Conference graph: irrational r, s with f = g = (v-1)/2.
    s.f_int = (p.v - 1) / 2;
    s.g_int = (p.v - 1) / 2;
  }
  s.conference = twist == 0;
  s.multiplicities_integral = s.f_int.has_value() && s.g_int.has_value();
  return s;
}

std::vector<double> srg_eigenvalues(const SrgParams& p) {
  const auto s = srg_spectrum(p);
  if (!s.multiplicities_integral) {
    throw ParameterError("non-integral eigenvalue multiplicities for " + p.to_string());
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(p.v));
  out.push_back(s.k);
  const double r = s.r_int ? static_cast<double>(*s.r_int) : s.r;
  const double sv = s.s_int ? static_cast<double>(*s.s_int) : s.s;
  out.insert(out.end(), static_cast<std::size_t>(*s.f_int), r);
  out.insert(out.end(), static_cast<std::size_t>(*s.g_int), sv);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

DegreeHistogram DegreeHistogram::of(const Graph& h) {
  DegreeHistogram hist;
  hist.m = h.order();
  hist.d.assign(hist.m, 0);
  for (std::size_t u = 0; u < h.order(); ++u) ++hist.d[h.degree(u)];
  return hist;
}

bool DegreeHistogram::valid() const {
  if (d.size() != m) return false;
  std::int64_t total = 0;
  std::int64_t degree_sum = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] < 0) return false;
    total += d[i];
    degree_sum += static_cast<std::int64_t>(i) * d[i];
  }
  return total == static_cast<std::int64_t>(m) && degree_sum % 2 == 0;
}

BVectorTargets b_vector_targets(const SrgParams& p, const DegreeHistogram& d) {
  const auto m = static_cast<std::int64_t>(d.m);
  std::int64_t degree_sum = 0;
  std::int64_t degree_pairs = 0;
  for (std::size_t j = 0; j < d.d.size(); ++j) {
    const auto deg = static_cast<std::int64_t>(j);
    degree_sum += deg * d.d[j];
    degree_pairs += choose2(deg) * d.d[j];
  }
  BVectorTargets t;
  t.count = p.v - m;
  t.incidences = m * p.k - degree_sum;
  t.pairs = choose2(m) * p.mu - degree_pairs + (p.lambda - p.mu) * degree_sum / 2;
  return t;
}

bool satisfies_b_equations(const SrgParams& p, const DegreeHistogram& d, const BVector& b) {
  const auto t = b_vector_targets(p, d);
  std::int64_t c = 0, inc = 0, pairs = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto ii = static_cast<std::int64_t>(i);
    if (b[i] < 0) return false;
    c += b[i];
    inc += ii * b[i];
    pairs += choose2(ii) * b[i];
  }
  return c == t.count && inc == t.incidences && pairs == t.pairs;
}

std::vector<BVector> enumerate_b_vectors(const SrgParams& p, const DegreeHistogram& d,
                                         const std::map<std::size_t, std::int64_t>& caps) {
  if (!d.valid()) throw DomainError("enumerate_b_vectors: invalid degree histogram");
  const std::size_t m = d.m;
  const auto t = b_vector_targets(p, d);
  const auto cap_of = [&](std::size_t i) -> std::int64_t {
    const auto it = caps.find(i);
    return it == caps.end() ? std::numeric_limits<std::int64_t>::max() : it->second;
  };

  std::vector<BVector> out;
  if (t.count < 0 || t.incidences < 0 || t.pairs < 0) return out;

  BVector b(m + 1, 0);
  // b_3..b_m are free; b_2, b_1, b_0 are then forced by the three equations.
  std::function<void(std::size_t, std::int64_t, std::int64_t, std::int64_t)> rec =
      [&](std::size_t i, std::int64_t rest_count, std::int64_t rest_inc, std::int64_t rest_pairs) {
        if (i < 3) {
          std::int64_t b2 = 0, b1 = 0, b0 = 0;
          if (m >= 2) {
            b2 = rest_pairs;
          } else if (rest_pairs != 0) {
            return;
          }
          rest_inc -= 2 * b2;
          if (m >= 1) {
            b1 = rest_inc;
          } else if (rest_inc != 0) {
            return;
          }
          b0 = rest_count - b1 - b2;
          if (b0 < 0 || b1 < 0 || b2 < 0) return;
          if (b0 > cap_of(0) || b1 > cap_of(1) || b2 > cap_of(2)) return;
          b[0] = b0;
          if (m >= 1) b[1] = b1;
          if (m >= 2) b[2] = b2;
          out.push_back(b);
          return;
        }
        const auto ii = static_cast<std::int64_t>(i);
        std::int64_t hi = std::min({rest_count, rest_inc / ii, rest_pairs / choose2(ii), cap_of(i)});
        for (std::int64_t x = 0; x <= hi; ++x) {
          b[i] = x;
          rec(i - 1, rest_count - x, rest_inc - ii * x, rest_pairs - choose2(ii) * x);
        }
        b[i] = 0;
      };
  rec(m, t.count, t.incidences, t.pairs);

  std::sort(out.begin(), out.end());
  return out;
}

BVector observed_b_vector(const Graph& host, const VertexSet& inside) {
  if (inside.universe() != host.order()) throw DomainError("observed_b_vector: universe mismatch");
  const std::size_t m = inside.count();
  BVector b(m + 1, 0);
  for (std::size_t u = 0; u < host.order(); ++u) {
    if (inside.contains(u)) continue;
    ++b[popcount_and(host.row(u), inside.words())];
  }
  return b;
}

}  // namespace specter
