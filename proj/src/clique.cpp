#include "specter/clique.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "specter/errors.hpp"
#include "specter/isomorph.hpp"

namespace specter {

namespace {

// MCQ-style search over a copy of the graph relabelled by descending degree.
class BranchAndBound {
 public:
  BranchAndBound(const Graph& g, std::size_t cutoff) : cutoff_(cutoff) {
    const std::size_t n = g.order();
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    const auto deg = g.degrees();
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return deg[a] > deg[b]; });
    std::vector<std::size_t> to_new(n);
    for (std::size_t i = 0; i < n; ++i) to_new[order_[i]] = i;
    g_ = relabel(g, to_new);
    stride_ = g_.words_per_row();
  }

  CliqueResult run() {
    CliqueResult res;
    if (cutoff_ == 0) {
      res.verdict = CliqueResult::Verdict::kReached;
      return res;
    }
    std::vector<Word> all(stride_, 0);
    for (std::size_t v = 0; v < g_.order(); ++v) all[v / kWordBits] |= Word{1} << (v % kWordBits);
    if (g_.order() > 0) expand(all);
    if (done_) {
      res.verdict = CliqueResult::Verdict::kReached;
      res.size = cutoff_;
    } else {
      res.verdict = CliqueResult::Verdict::kExact;
      res.size = best_.size();
    }
    for (std::size_t v : best_) res.witness.push_back(order_[v]);
    std::sort(res.witness.begin(), res.witness.end());
    return res;
  }

 private:
  static bool empty(const std::vector<Word>& s) {
    return std::all_of(s.begin(), s.end(), [](Word w) { return w == 0; });
  }

  void record() {
    if (current_.size() > best_.size()) best_ = current_;
    if (best_.size() >= cutoff_) done_ = true;
  }

  void expand(std::vector<Word> candidates) {
    // Greedy colour classes over the candidates in index order.
    std::vector<std::size_t> order;
    std::vector<std::size_t> color;
    std::vector<Word> uncolored = candidates;
    std::vector<Word> klass(stride_);
    std::size_t k = 0;
    while (!empty(uncolored)) {
      ++k;
      klass = uncolored;
      for (std::size_t w = 0; w < stride_; ++w) {
        while (klass[w] != 0) {
          const std::size_t v = w * kWordBits + static_cast<std::size_t>(std::countr_zero(klass[w]));
          const Word bit = Word{1} << (v % kWordBits);
          uncolored[w] &= ~bit;
          klass[w] &= ~bit;
          const auto row = g_.row(v);
          for (std::size_t x = w; x < stride_; ++x) klass[x] &= ~row[x];
          order.push_back(v);
          color.push_back(k);
        }
      }
    }

    std::vector<Word> next(stride_);
    for (std::size_t i = order.size(); i-- > 0;) {
      if (current_.size() + color[i] <= best_.size()) return;
      const std::size_t v = order[i];
      current_.push_back(v);
      if (current_.size() >= cutoff_) {
        record();
        return;
      }
      const auto row = g_.row(v);
      bool any = false;
      for (std::size_t w = 0; w < stride_; ++w) {
        next[w] = candidates[w] & row[w];
        any = any || next[w] != 0;
      }
      if (any) {
        expand(next);
      } else {
        record();
      }
      current_.pop_back();
      if (done_) return;
      candidates[v / kWordBits] &= ~(Word{1} << (v % kWordBits));
    }
  }

  Graph g_;
  std::size_t stride_ = 0;
  std::size_t cutoff_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> best_;
  bool done_ = false;
};

void check_witness(const Graph& g, const CliqueResult& r) {
  if (!is_clique(g, r.witness)) throw InternalError("clique witness is not a clique");
  if (r.witness.size() != r.size) throw InternalError("clique witness size mismatch");
}

// Each level recurses into a neighbourhood, which is strictly smaller, so
// depth never exceeds the top-level order `limit`.
CliqueResult symmetric(const Graph& g, std::size_t cutoff, std::size_t depth, std::size_t limit) {
  if (depth > limit) throw InternalError("clique_number_symmetric: recursion too deep");
  CliqueResult out;
  if (cutoff == 0) {
    out.verdict = CliqueResult::Verdict::kReached;
    return out;
  }
  Graph h = g;
  std::vector<std::size_t> ids(g.order());
  std::iota(ids.begin(), ids.end(), 0);

  const auto lift = [](const std::vector<std::size_t>& local, const std::vector<std::size_t>& map) {
    std::vector<std::size_t> w;
    w.reserve(local.size());
    for (std::size_t x : local) w.push_back(map[x]);
    return w;
  };
  const auto reached = [&](std::vector<std::size_t> witness) {
    CliqueResult r;
    r.verdict = CliqueResult::Verdict::kReached;
    r.size = cutoff;
    std::sort(witness.begin(), witness.end());
    r.witness = std::move(witness);
    return r;
  };

  while (h.order() > cutoff) {
    const auto classes = extended_orbits(h);
    if (classes.size() == h.order()) break;
    std::size_t pick = 0;
    for (std::size_t c = 1; c < classes.size(); ++c) {
      if (classes.classes[c].size() > classes.classes[pick].size()) pick = c;
    }
    const auto& orbit = classes.classes[pick];
    const std::size_t v = orbit.front();
    const auto nbhd = h.neighbors(v);
    const auto sub = symmetric(induced_subgraph(h, nbhd), cutoff - 1, depth + 1, limit);
    std::vector<std::size_t> witness = lift(lift(sub.witness, nbhd), ids);
    witness.push_back(ids[v]);
    if (sub.reached()) return reached(std::move(witness));
    if (sub.size + 1 > out.size) {
      out.size = sub.size + 1;
      std::sort(witness.begin(), witness.end());
      out.witness = std::move(witness);
    }

    VertexSet keep = VertexSet::full(h.order());
    for (std::size_t x : orbit) keep.erase(x);
    const auto rest = keep.members();
    h = induced_subgraph(h, rest);
    ids = lift(rest, ids);
  }

  const auto tail = max_clique_bnb(h, cutoff);
  if (tail.reached()) return reached(lift(tail.witness, ids));
  if (tail.size > out.size) {
    out.size = tail.size;
    out.witness = lift(tail.witness, ids);
    std::sort(out.witness.begin(), out.witness.end());
  }
  out.verdict = CliqueResult::Verdict::kExact;
  return out;
}

}  // namespace

std::string CliqueResult::to_string() const {
  std::ostringstream os;
  os << (reached() ? "reached " : "exact ") << size;
  if (!witness.empty()) {
    os << " witness ";
    for (std::size_t i = 0; i < witness.size(); ++i) os << (i ? "," : "") << witness[i];
  }
  return os.str();
}

bool is_clique(const Graph& g, const std::vector<std::size_t>& vertices) {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] >= g.order()) return false;
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (!g.adjacent(vertices[i], vertices[j])) return false;
    }
  }
  return true;
}

std::size_t greedy_coloring_bound(const Graph& g) {
  const std::size_t n = g.order();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  const auto deg = g.degrees();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return deg[a] > deg[b]; });
  std::vector<std::size_t> color(n, 0);  // 0 = uncoloured
  std::size_t used = 0;
  std::vector<char> taken;
  for (std::size_t v : order) {
    taken.assign(used + 2, 0);
    for_each_bit(g.row(v), [&](std::size_t u) {
      if (color[u] != 0) taken[color[u]] = 1;
    });
    std::size_t c = 1;
    while (taken[c]) ++c;
    color[v] = c;
    used = std::max(used, c);
  }
  return used;
}

CliqueResult max_clique_bnb(const Graph& g, std::size_t cutoff) {
  auto r = BranchAndBound(g, cutoff).run();
  check_witness(g, r);
  return r;
}

CliqueResult clique_number_symmetric(const Graph& g, std::size_t cutoff) {
  auto r = symmetric(g, cutoff, 0, g.order());
  check_witness(g, r);
  return r;
}

}  // namespace specter
