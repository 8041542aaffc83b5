#include "specter/isomorph.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <numeric>
#include <optional>

#include "specter/errors.hpp"

namespace specter {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  // splitmix64 finaliser over the running value.
  h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= h >> 30;
  h *= 0xbf58476d1ce4e5b9ULL;
  h ^= h >> 27;
  h *= 0x94d049bb133111ebULL;
  h ^= h >> 31;
  return h;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Ordered partition of the vertex set. Cells are contiguous ranges of `lab`.
struct Partition {
  std::vector<int> lab;    // position -> vertex
  std::vector<int> pos;    // vertex -> position
  std::vector<int> start;  // position -> start of its cell
  std::vector<int> len;    // cell start -> cell length
  int cells = 0;
};

class Refiner {
 public:
  explicit Refiner(const Graph& g)
      : g_(g), n_(static_cast<int>(g.order())), count_(g.order(), 0), touched_(g.order(), 0),
        queued_(g.order(), 0) {}

  Partition initial(std::span<const std::size_t> colors) const {
    Partition p;
    p.lab.resize(n_);
    p.pos.resize(n_);
    p.start.resize(n_);
    p.len.assign(n_, 0);
    std::iota(p.lab.begin(), p.lab.end(), 0);
    if (!colors.empty()) {
      std::stable_sort(p.lab.begin(), p.lab.end(), [&](int a, int b) {
        return colors[static_cast<std::size_t>(a)] < colors[static_cast<std::size_t>(b)];
      });
    }
    int s = 0;
    for (int i = 0; i < n_; ++i) {
      p.pos[p.lab[i]] = i;
      if (i > 0 && !colors.empty() &&
          colors[static_cast<std::size_t>(p.lab[i])] != colors[static_cast<std::size_t>(p.lab[i - 1])]) {
        s = i;
      }
      p.start[i] = s;
      ++p.len[s];
    }
    for (int i = 0; i < n_; i += p.len[i]) ++p.cells;
    return p;
  }

  std::vector<int> all_cells(const Partition& p) const {
    std::vector<int> out;
    for (int i = 0; i < n_; i += p.len[i]) out.push_back(i);
    return out;
  }

  // Splits v off the front of its cell; returns the new singleton's start.
  int individualize(Partition& p, int v) const {
    const int s = p.start[p.pos[v]];
    const int length = p.len[s];
    const int other = p.lab[s];
    const int vp = p.pos[v];
    std::swap(p.lab[s], p.lab[vp]);
    p.pos[other] = vp;
    p.pos[v] = s;
    p.len[s] = 1;
    p.len[s + 1] = length - 1;
    for (int i = s + 1; i < s + length; ++i) p.start[i] = s + 1;
    ++p.cells;
    return s;
  }

  // Equitable refinement. The returned trace depends only on the ordered
  // partition structure, never on vertex names.
  std::uint64_t refine(Partition& p, const std::vector<int>& splitters) {
    std::uint64_t h = 0x51ed270b27b1a3c5ULL;
    std::deque<int> queue;
    for (int s : splitters) {
      if (!queued_[s]) {
        queued_[s] = 1;
        queue.push_back(s);
      }
    }
    std::vector<int> hit_vertices;
    std::vector<int> hit_cells;
    std::vector<std::pair<int, int>> keyed;
    while (!queue.empty() && p.cells < n_) {
      const int w_start = queue.front();
      queue.pop_front();
      queued_[w_start] = 0;
      const int w_len = p.len[w_start];
      hit_vertices.clear();
      hit_cells.clear();
      for (int i = w_start; i < w_start + w_len; ++i) {
        for_each_bit(g_.row(static_cast<std::size_t>(p.lab[i])), [&](std::size_t uu) {
          const int u = static_cast<int>(uu);
          if (count_[u]++ == 0) hit_vertices.push_back(u);
          const int cs = p.start[p.pos[u]];
          if (!touched_[cs]) {
            touched_[cs] = 1;
            hit_cells.push_back(cs);
          }
        });
      }
      std::sort(hit_cells.begin(), hit_cells.end());
      for (int cs : hit_cells) {
        touched_[cs] = 0;
        const int length = p.len[cs];
        if (length == 1) continue;
        keyed.clear();
        bool uniform = true;
        const int c0 = count_[p.lab[cs]];
        for (int i = cs; i < cs + length; ++i) {
          const int c = count_[p.lab[i]];
          uniform = uniform && c == c0;
          keyed.emplace_back(c, p.lab[i]);
        }
        if (uniform) continue;
        std::sort(keyed.begin(), keyed.end());
        std::vector<int> frag_starts;
        for (int i = 0; i < length; ++i) {
          const int at = cs + i;
          p.lab[at] = keyed[i].second;
          p.pos[keyed[i].second] = at;
          if (i == 0 || keyed[i].first != keyed[i - 1].first) frag_starts.push_back(at);
        }
        frag_starts.push_back(cs + length);
        const int frags = static_cast<int>(frag_starts.size()) - 1;
        int largest = 0;
        h = mix(h, static_cast<std::uint64_t>(cs));
        h = mix(h, static_cast<std::uint64_t>(frags));
        for (int f = 0; f < frags; ++f) {
          const int fs = frag_starts[f];
          const int fl = frag_starts[f + 1] - fs;
          p.len[fs] = fl;
          for (int i = fs; i < fs + fl; ++i) p.start[i] = fs;
          if (fl > frag_starts[largest + 1] - frag_starts[largest]) largest = f;
          h = mix(h, static_cast<std::uint64_t>(fl));
          h = mix(h, static_cast<std::uint64_t>(keyed[fs - cs].first));
        }
        p.cells += frags - 1;
        const bool was_queued = queued_[cs] != 0;
        for (int f = 0; f < frags; ++f) {
          const int fs = frag_starts[f];
          if (was_queued) {
            if (!queued_[fs]) {
              queued_[fs] = 1;
              queue.push_back(fs);
            }
          } else if (f != largest) {
            queued_[fs] = 1;
            queue.push_back(fs);
          }
        }
      }
      for (int u : hit_vertices) count_[u] = 0;
    }
    for (int s : queue) queued_[s] = 0;
    h = mix(h, static_cast<std::uint64_t>(p.cells));
    return h;
  }

 private:
  const Graph& g_;
  int n_;
  std::vector<int> count_;
  std::vector<char> touched_;
  std::vector<char> queued_;
};

struct Leaf {
  std::vector<std::uint64_t> trace;
  std::vector<int> lab;
  std::vector<int> path;
  std::vector<Word> cert;
};

int compare_prefix(const std::vector<std::uint64_t>& t, const std::vector<std::uint64_t>& x) {
  const std::size_t l = std::min(t.size(), x.size());
  for (std::size_t i = 0; i < l; ++i) {
    if (t[i] != x[i]) return t[i] < x[i] ? -1 : 1;
  }
  return t.size() > x.size() ? 1 : 0;
}

int compare_full(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  const std::size_t l = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < l; ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

int common_prefix(const std::vector<int>& a, const std::vector<int>& b) {
  int d = 0;
  while (d < static_cast<int>(std::min(a.size(), b.size())) && a[d] == b[d]) ++d;
  return d;
}

class CanonSearch {
 public:
  CanonSearch(const Graph& g, std::span<const std::size_t> colors)
      : g_(g), n_(static_cast<int>(g.order())), colors_(colors), refiner_(g) {}

  SymmetryInfo run() {
    Partition p = refiner_.initial(colors_);
    const std::uint64_t t0 = refiner_.refine(p, refiner_.all_cells(p));
    std::vector<std::uint64_t> trace{t0};
    std::vector<int> path;
    if (n_ > 0) descend(0, p, trace, path, true);
    return finish();
  }

 private:
  static constexpr int kNoJump = INT_MAX;

  std::vector<Word> certificate(const std::vector<int>& lab) const {
    const std::size_t stride = words_for(static_cast<std::size_t>(n_));
    std::vector<Word> cert(static_cast<std::size_t>(n_) * stride, 0);
    std::vector<int> inv(n_);
    for (int i = 0; i < n_; ++i) inv[lab[i]] = i;
    for (int i = 0; i < n_; ++i) {
      Word* out = cert.data() + static_cast<std::size_t>(i) * stride;
      for_each_bit(g_.row(static_cast<std::size_t>(lab[i])), [&](std::size_t v) {
        const auto j = static_cast<std::size_t>(inv[v]);
        out[j / kWordBits] |= Word{1} << (j % kWordBits);
      });
    }
    return cert;
  }

  bool fixes(const std::vector<int>& gen, const std::vector<int>& path) const {
    return std::all_of(path.begin(), path.end(), [&](int v) { return gen[v] == v; });
  }

  void add_generator(const Leaf& ref, const std::vector<int>& lab) {
    std::vector<int> gen(n_);
    bool identity = true;
    for (int i = 0; i < n_; ++i) {
      gen[ref.lab[i]] = lab[i];
      identity = identity && ref.lab[i] == lab[i];
    }
    if (!identity) generators_.push_back(std::move(gen));
  }

  void leaf(const std::vector<std::uint64_t>& trace, const Partition& p, const std::vector<int>& path) {
    Leaf here{trace, p.lab, path, certificate(p.lab)};
    if (!zeta_) {
      zeta_ = here;
      best_ = std::move(here);
      return;
    }
    if (here.trace == zeta_->trace && here.cert == zeta_->cert) {
      add_generator(*zeta_, here.lab);
      jump_ = common_prefix(path, zeta_->path);
      return;
    }
    int c = compare_full(here.trace, best_->trace);
    if (c == 0) c = here.cert < best_->cert ? -1 : (here.cert == best_->cert ? 0 : 1);
    if (c == 0) {
      add_generator(*best_, here.lab);
      jump_ = common_prefix(path, best_->path);
    } else if (c < 0) {
      best_ = std::move(here);
    }
  }

  void descend(int level, const Partition& p, std::vector<std::uint64_t>& trace,
               std::vector<int>& path, bool first_path) {
    if (p.cells == n_) {
      leaf(trace, p, path);
      return;
    }
    int cs = 0;
    while (p.len[cs] == 1) cs += 1;
    std::vector<int> members(p.lab.begin() + cs, p.lab.begin() + cs + p.len[cs]);
    std::sort(members.begin(), members.end());

    UnionFind uf(static_cast<std::size_t>(n_));
    std::size_t gens_applied = 0;
    std::vector<int> explored;
    const auto sync_orbits = [&] {
      for (; gens_applied < generators_.size(); ++gens_applied) {
        const auto& gen = generators_[gens_applied];
        if (!fixes(gen, path)) continue;
        for (int v = 0; v < n_; ++v) uf.unite(static_cast<std::size_t>(v), static_cast<std::size_t>(gen[v]));
      }
    };

    for (int w : members) {
      if (!explored.empty()) {
        sync_orbits();
        const std::size_t root = uf.find(static_cast<std::size_t>(w));
        if (std::any_of(explored.begin(), explored.end(),
                        [&](int e) { return uf.find(static_cast<std::size_t>(e)) == root; })) {
          continue;
        }
      }
      Partition child = p;
      const int single = refiner_.individualize(child, w);
      trace.push_back(refiner_.refine(child, {single}));
      bool keep = true;
      if (zeta_) {
        const bool zeta_equivalent = compare_prefix(trace, zeta_->trace) == 0;
        keep = zeta_equivalent || compare_prefix(trace, best_->trace) <= 0;
      }
      if (keep) {
        path.push_back(w);
        descend(level + 1, child, trace, path, first_path && explored.empty());
        path.pop_back();
      }
      trace.pop_back();
      explored.push_back(w);
      if (jump_ != kNoJump) {
        if (jump_ < level) return;
        jump_ = kNoJump;
      }
    }

    if (first_path) {
      sync_orbits();
      const int child = zeta_->path[static_cast<std::size_t>(level)];
      const std::size_t root = uf.find(static_cast<std::size_t>(child));
      long double orbit = 0;
      for (int v : members) {
        if (uf.find(static_cast<std::size_t>(v)) == root) orbit += 1;
      }
      group_order_ *= orbit;
    }
  }

  SymmetryInfo finish() {
    SymmetryInfo info;
    info.group_order = group_order_;
    const std::size_t n = static_cast<std::size_t>(n_);
    UnionFind uf(n);
    for (const auto& gen : generators_) {
      for (std::size_t v = 0; v < n; ++v) uf.unite(v, static_cast<std::size_t>(gen[v]));
      info.generators.emplace_back(gen.begin(), gen.end());
    }
    std::vector<std::size_t> label(n);
    for (std::size_t v = 0; v < n; ++v) label[v] = uf.find(v);
    info.orbits = OrbitPartition::from_labels(label);

    std::string bytes;
    bytes.push_back(static_cast<char>(kCanonicalFormVersion));
    for (int shift = 0; shift < 32; shift += 8) bytes.push_back(static_cast<char>((n >> shift) & 0xFF));
    if (n > 0) {
      info.canonical_labeling.assign(best_->lab.begin(), best_->lab.end());
      if (!colors_.empty()) {
        bytes.push_back('c');
        for (std::size_t i = 0; i < n; ++i) {
          const std::size_t c = colors_[info.canonical_labeling[i]];
          for (int shift = 0; shift < 32; shift += 8) bytes.push_back(static_cast<char>((c >> shift) & 0xFF));
        }
      }
      // Upper triangle of the canonically relabelled adjacency, row-major.
      const std::size_t stride = words_for(n);
      unsigned char acc = 0;
      int fill = 0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          const bool bit = (best_->cert[i * stride + j / kWordBits] >> (j % kWordBits)) & 1U;
          acc = static_cast<unsigned char>((acc << 1) | (bit ? 1 : 0));
          if (++fill == 8) {
            bytes.push_back(static_cast<char>(acc));
            acc = 0;
            fill = 0;
          }
        }
      }
      if (fill > 0) bytes.push_back(static_cast<char>(acc << (8 - fill)));
    }
    info.form.bytes = std::move(bytes);
    return info;
  }

  const Graph& g_;
  int n_;
  std::span<const std::size_t> colors_;
  Refiner refiner_;
  std::optional<Leaf> zeta_;
  std::optional<Leaf> best_;
  std::vector<std::vector<int>> generators_;
  int jump_ = kNoJump;
  long double group_order_ = 1;
};

}  // namespace

std::uint64_t CanonicalForm::hash() const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

OrbitPartition OrbitPartition::from_labels(std::span<const std::size_t> label) {
  OrbitPartition out;
  out.class_of.assign(label.size(), 0);
  std::map<std::size_t, std::size_t> index;
  for (std::size_t v = 0; v < label.size(); ++v) {
    auto [it, inserted] = index.try_emplace(label[v], out.classes.size());
    if (inserted) out.classes.emplace_back();
    out.classes[it->second].push_back(v);
    out.class_of[v] = it->second;
  }
  return out;
}

SymmetryInfo analyze_symmetry(const Graph& g, std::span<const std::size_t> colors) {
  if (!colors.empty() && colors.size() != g.order()) {
    throw DomainError("analyze_symmetry: colour vector size mismatch");
  }
  return CanonSearch(g, colors).run();
}

CanonicalForm canonical_form(const Graph& g) { return analyze_symmetry(g).form; }

CanonicalForm canonical_form(const Graph& g, std::span<const std::size_t> colors) {
  return analyze_symmetry(g, colors).form;
}

Graph canonical_graph(const Graph& g) {
  const auto info = analyze_symmetry(g);
  std::vector<std::size_t> to_position(g.order());
  for (std::size_t i = 0; i < g.order(); ++i) to_position[info.canonical_labeling[i]] = i;
  return relabel(g, to_position);
}

bool isomorphic(const Graph& a, const Graph& b) {
  return a.order() == b.order() && a.edge_count() == b.edge_count() &&
         canonical_form(a) == canonical_form(b);
}

OrbitPartition automorphism_orbits(const Graph& g) { return analyze_symmetry(g).orbits; }

long double automorphism_group_order(const Graph& g) { return analyze_symmetry(g).group_order; }

OrbitPartition extended_orbits(const Graph& g) {
  const auto orbits = automorphism_orbits(g);
  // Orbit representatives are the smallest members; equal neighbourhood
  // forms merge orbits.
  std::map<CanonicalForm, std::size_t> by_form;
  std::vector<std::size_t> label(g.order());
  for (const auto& orbit : orbits.classes) {
    const std::size_t rep = orbit.front();
    const auto nbhd = g.neighbors(rep);
    auto form = canonical_form(induced_subgraph(g, nbhd));
    auto [it, inserted] = by_form.try_emplace(std::move(form), rep);
    for (std::size_t v : orbit) label[v] = it->second;
  }
  return OrbitPartition::from_labels(label);
}

bool CanonicalDeduplicator::insert(const Graph& g) {
  const auto info = analyze_symmetry(g);
  std::vector<std::size_t> to_position(g.order());
  for (std::size_t i = 0; i < g.order(); ++i) to_position[info.canonical_labeling[i]] = i;
  std::lock_guard lock(mutex_);
  if (classes_.contains(info.form)) return false;
  classes_.emplace(info.form, relabel(g, to_position));
  return true;
}

bool CanonicalDeduplicator::insert(const Graph& g, const CanonicalForm& form) {
  std::lock_guard lock(mutex_);
  return classes_.try_emplace(form, g).second;
}

std::size_t CanonicalDeduplicator::size() const {
  std::lock_guard lock(mutex_);
  return classes_.size();
}

std::vector<Graph> CanonicalDeduplicator::take_sorted() {
  std::lock_guard lock(mutex_);
  std::vector<Graph> out;
  out.reserve(classes_.size());
  for (auto& [form, graph] : classes_) out.push_back(std::move(graph));
  classes_.clear();
  return out;
}

std::vector<Graph> dedup_canonical(std::span<const Graph> graphs) {
  CanonicalDeduplicator dedup;
  for (const auto& g : graphs) dedup.insert(g);
  return dedup.take_sorted();
}

}  // namespace specter
