#include "specter/scenario.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "specter/errors.hpp"
#include "specter/feasibility.hpp"
#include "specter/interlacing.hpp"
#include "specter/isomorph.hpp"
#include "specter/parallel.hpp"
#include "specter/search.hpp"

namespace specter {

namespace {

constexpr std::size_t kCliqueRole = 0;

using Emit = std::function<void(Config)>;
using Extender = std::function<void(const Config&, const Emit&)>;

// Representative relabelled by its role-coloured canonical labelling.
std::pair<CanonicalForm, Config> canonical_config(const Config& c) {
  auto info = analyze_symmetry(c.graph, c.role);
  Config out;
  std::vector<std::size_t> to_position(c.graph.order());
  out.role.resize(c.role.size());
  for (std::size_t p = 0; p < c.graph.order(); ++p) {
    to_position[info.canonical_labeling[p]] = p;
    out.role[p] = c.role[info.canonical_labeling[p]];
  }
  out.graph = relabel(c.graph, to_position);
  return {std::move(info.form), std::move(out)};
}

// One generation step: every extension of every configuration, reduced to
// one representative per role-preserving isomorphism class.
std::vector<Config> grow(const std::vector<Config>& level, const Extender& extend, std::size_t jobs) {
  std::mutex mutex;
  std::map<CanonicalForm, Config> next;
  parallel_for(level.size(), jobs, [&](std::size_t i) {
    std::map<CanonicalForm, Config> local;
    extend(level[i], [&](Config c) { local.insert(canonical_config(c)); });
    std::lock_guard lock(mutex);
    next.merge(local);
  });
  std::vector<Config> out;
  out.reserve(next.size());
  for (auto& [form, c] : next) out.push_back(std::move(c));
  return out;
}

// Counting constraints every induced subgraph of an srg(v,k,l,m) satisfies:
// degrees at most k, common neighbours at most l or m, no clique above the
// Hoffman bound, and for clique sizes whose b-vector is unique with a single
// nonzero entry b_i, every outside vertex has exactly i neighbours on the
// clique. All of them are hereditary, so they may prune partial graphs.
class LocalRules {
 public:
  explicit LocalRules(const SrgParams& p) : p_(p) {
    const auto eig = srg_eigenvalues(p);
    const double s = *std::min_element(eig.begin(), eig.end());
    max_clique_ = static_cast<std::size_t>(std::floor(1.0 - static_cast<double>(p.k) / s + 1e-9));
    forced_.assign(max_clique_ + 1, -1);
    for (std::size_t m = 2; m <= max_clique_; ++m) {
      const auto found = enumerate_b_vectors(p, DegreeHistogram::of(complete_graph(m)));
      if (found.size() != 1) continue;
      const auto& b = found.front();
      if (std::count_if(b.begin(), b.end(), [](std::int64_t x) { return x != 0; }) != 1) continue;
      forced_[m] = std::find_if(b.begin(), b.end(), [](std::int64_t x) { return x != 0; }) - b.begin();
    }
  }

  bool operator()(const Graph& g) const {
    const std::size_t n = g.order();
    if (n > 64) throw UnsupportedSizeError("LocalRules: more than 64 vertices");
    std::vector<std::uint64_t> adj(n, 0);
    for (std::size_t u = 0; u < n; ++u) {
      if (static_cast<std::int64_t>(g.degree(u)) > p_.k) return false;
      for (std::size_t v = 0; v < n; ++v) {
        if (g.adjacent(u, v)) adj[u] |= std::uint64_t{1} << v;
      }
    }
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        const auto common = static_cast<std::int64_t>(std::popcount(adj[u] & adj[v]));
        if (common > (g.adjacent(u, v) ? p_.lambda : p_.mu)) return false;
      }
    }
    const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    bool ok = true;
    // Cliques grown in increasing vertex order; `cand` holds the common
    // neighbours above the last vertex.
    std::function<void(std::uint64_t, std::uint64_t, std::size_t)> rec =
        [&](std::uint64_t clique, std::uint64_t cand, std::size_t size) {
          if (!ok) return;
          if (size > max_clique_) {
            ok = false;
            return;
          }
          if (size >= 2 && forced_[size] >= 0) {
            std::uint64_t outside = all & ~clique;
            while (outside != 0) {
              const auto x = static_cast<std::size_t>(std::countr_zero(outside));
              outside &= outside - 1;
              if (std::popcount(adj[x] & clique) != forced_[size]) {
                ok = false;
                return;
              }
            }
          }
          while (cand != 0) {
            const auto v = static_cast<std::size_t>(std::countr_zero(cand));
            cand &= cand - 1;
            rec(clique | (std::uint64_t{1} << v), cand & adj[v], size + 1);
          }
        };
    rec(0, all, 0);
    return ok;
  }

 private:
  SrgParams p_;
  std::size_t max_clique_ = 0;
  std::vector<std::int64_t> forced_;
};

// All subsets of `items` with size in [lo, hi], ascending by construction.
void subsets(const std::vector<std::size_t>& items, std::size_t lo, std::size_t hi,
             std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() >= lo) out.push_back(cur);
    if (cur.size() == hi) return;
    for (std::size_t i = start; i < items.size(); ++i) {
      cur.push_back(items[i]);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

Config with_vertex(const Config& c, std::size_t role, const std::vector<std::size_t>& nbrs) {
  Config out;
  out.graph = add_vertex(c.graph, VertexSet(c.graph.order(), nbrs));
  out.role = c.role;
  out.role.push_back(role);
  return out;
}

bool has_edge_within(const Config& c, std::size_t role) {
  const auto m = c.members(role);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      if (c.graph.adjacent(m[i], m[j])) return true;
    }
  }
  return false;
}

bool triangle_free(const Graph& g, const std::vector<std::size_t>& vs) {
  for (std::size_t a = 0; a < vs.size(); ++a) {
    for (std::size_t b = a + 1; b < vs.size(); ++b) {
      if (!g.adjacent(vs[a], vs[b])) continue;
      for (std::size_t c = b + 1; c < vs.size(); ++c) {
        if (g.adjacent(vs[a], vs[c]) && g.adjacent(vs[b], vs[c])) return false;
      }
    }
  }
  return true;
}

std::size_t common_clique_neighbors(const Config& c, std::size_t u, std::size_t v) {
  std::size_t n = 0;
  for (std::size_t k : c.members(kCliqueRole)) {
    if (c.graph.adjacent(u, k) && c.graph.adjacent(v, k)) ++n;
  }
  return n;
}

Extender family_step(const FamilySpec& spec, std::size_t role, const InterlacingFilter& filter) {
  return [&spec, role, &filter](const Config& c, const Emit& emit) {
    const Role& info = spec.roles[role - 1];
    std::vector<std::vector<std::vector<std::size_t>>> blocks;
    {
      std::vector<std::vector<std::size_t>> choice;
      subsets(c.members(kCliqueRole), info.attach, info.attach, choice);
      blocks.push_back(std::move(choice));
    }
    for (std::size_t other = 1; other <= spec.roles.size(); ++other) {
      const auto members = c.members(other);
      if (members.empty()) continue;
      const auto& ps = spec.pair(role, other);
      std::vector<std::vector<std::size_t>> choice;
      switch (ps.rule) {
        case PairRule::kNonEdge:
          choice.emplace_back();
          break;
        case PairRule::kEdge:
          choice.push_back(members);
          break;
        case PairRule::kFree:
          subsets(members, 0, std::min(members.size(), ps.max_neighbors.value_or(members.size())), choice);
          break;
      }
      blocks.push_back(std::move(choice));
    }
    std::vector<std::size_t> pick(blocks.size(), 0);
    for (;;) {
      std::vector<std::size_t> nbrs;
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        const auto& s = blocks[b][pick[b]];
        nbrs.insert(nbrs.end(), s.begin(), s.end());
      }
      std::sort(nbrs.begin(), nbrs.end());
      Config next = with_vertex(c, role, nbrs);
      if ((!spec.partial || spec.partial(next)) && (!spec.prune_partial_interlacing || filter(next.graph))) {
        emit(std::move(next));
      }
      std::size_t b = 0;
      while (b < blocks.size() && ++pick[b] == blocks[b].size()) pick[b++] = 0;
      if (b == blocks.size()) break;
    }
  };
}

std::string tuple_string(const BVector& b) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < b.size(); ++i) os << (i ? "," : "") << b[i];
  os << ')';
  return os.str();
}

// ---- built-in families ----

constexpr const char* kX1X2Adjacent =
    "name=x1x2-adjacent\n"
    "params=75,32,10,16\n"
    "clique=4\n"
    "role=x1 attach=3\n"
    "role=x2 attach=3\n"
    "role=x0 attach=0\n"
    "edge=x1,x2\n"
    "free=x0,x1\n"
    "free=x0,x2\n"
    "expect_generated=6\n"
    "expect_survivors=0\n";

constexpr const char* kX3Independent =
    "name=x3-independent\n"
    "params=75,32,10,16\n"
    "clique=4\n"
    "role=X3 count=3 attach=3\n"
    "free=X3,X3\n"
    "require_edge=X3\n"
    "expect_survivors=0\n";

FamilySpec builtin_family(const char* text) {
  std::istringstream in(text);
  return parse_family_spec(in);
}

// K4 with two X0 vertices, their X1 contacts and the X2 neighbours of one
// of them that avoid the other.
FamilySpec case_223451() {
  std::istringstream in(
      "name=case-223451\n"
      "params=75,32,10,16\n"
      "clique=4\n"
      "role=x0 attach=0\n"
      "role=x1 attach=0\n"
      "role=x3 attach=3\n"
      "role=x1p attach=1\n"
      "role=A count=15 attach=2\n"
      "edge=x0,x3\n"
      "edge=x1,x3\n"
      "edge=x1,x1p\n"
      "free=x3,x1p\n"
      "edge=A,x0\n"
      "free=A,x3\n"
      "free=A,x1p\n"
      "free=A,A max=2\n"
      "prune=interlace\n"
      "expect_survivors=0\n");
  FamilySpec spec = parse_family_spec(in);
  const std::size_t x3 = spec.role_id("x3"), x1p = spec.role_id("x1p"), a = spec.role_id("A");
  // deg_A(v) = 1 - [v ~ x3] + [v ~ x1']; x3 has [x3 ~ x1'] neighbours in A.
  const auto check = [=](const Config& c, bool exact) {
    const auto vx3 = c.single(x3), vx1p = c.single(x1p);
    if (!vx3 || !vx1p) return true;
    const std::size_t want = c.graph.adjacent(*vx3, *vx1p) ? 1 : 0;
    const std::size_t have = c.neighbors_in(*vx3, a);
    if (exact ? have != want : have > want) return false;
    for (std::size_t v : c.members(a)) {
      const int target = 1 - int(c.graph.adjacent(v, *vx3)) + int(c.graph.adjacent(v, *vx1p));
      const int deg = int(c.neighbors_in(v, a));
      if (exact ? deg != target : deg > target) return false;
    }
    return true;
  };
  spec.partial = [=](const Config& c) { return check(c, false); };
  spec.final = [=](const Config& c) { return check(c, true); };
  return spec;
}

// K4, x0 in X0, its X1 neighbours P, the two X3 vertices and the X2
// vertices Y not adjacent to x0.
FamilySpec case_126422() {
  std::istringstream in(
      "name=case-126422\n"
      "params=75,32,10,16\n"
      "clique=4\n"
      "role=X3 count=2 attach=3\n"
      "role=x0 attach=0\n"
      "role=P count=2 attach=1\n"
      "role=Y count=14 attach=2\n"
      "edge=x0,X3\n"
      "edge=x0,P\n"
      "free=P,X3\n"
      "free=Y,X3\n"
      "free=Y,P\n"
      "free=Y,Y max=2\n"
      "prune=interlace\n"
      "expect_survivors=3597\n");
  FamilySpec spec = parse_family_spec(in);
  const std::size_t x3 = spec.role_id("X3"), p = spec.role_id("P"), y = spec.role_id("Y");
  const auto check = [=](const Config& c, bool exact) {
    const bool p_done = c.count(p) == 2;
    for (std::size_t x : c.members(x3)) {
      if (p_done && c.neighbors_in(x, p) == 0) return false;
      if (c.neighbors_in(x, y) > 1) return false;
    }
    const std::size_t ny = c.count(y);
    for (std::size_t v : c.members(p)) {
      // 15 - t neighbours in Y, t = neighbours in X3.
      const std::size_t t = c.neighbors_in(v, x3);
      const std::size_t non = ny - c.neighbors_in(v, y);
      if (t == 0 || non > t - 1) return false;
      if (exact && non != t - 1) return false;
    }
    for (std::size_t v : c.members(y)) {
      // deg_Y(v) = t - a, t = neighbours in P, a = neighbours in X3.
      const std::size_t a = c.neighbors_in(v, x3), t = c.neighbors_in(v, p);
      if (t < a) return false;
      const std::size_t deg = c.neighbors_in(v, y);
      if (exact ? deg != t - a : deg > t - a) return false;
    }
    return true;
  };
  spec.partial = [=](const Config& c) { return check(c, false); };
  spec.final = [=](const Config& c) { return check(c, true); };
  return spec;
}

// K4, the independent X3 = {x0} + O, A = X2 neighbours of x0 and
// B = X1 non-neighbours of x0.
FamilySpec case_029393() {
  std::istringstream in(
      "name=case-029393\n"
      "params=75,32,10,16\n"
      "clique=4\n"
      "role=x0 attach=3\n"
      "role=O count=2 attach=3\n"
      "role=A count=8 attach=2\n"
      "role=B count=8 attach=1\n"
      "edge=A,x0\n"
      "free=A,O\n"
      "free=A,A max=2\n"
      "free=B,O\n"
      "free=B,A\n"
      "free=B,B max=2\n"
      "prune=interlace\n"
      "expect_survivors=18089\n");
  FamilySpec spec = parse_family_spec(in);
  const std::size_t x0 = spec.role_id("x0"), o = spec.role_id("O"), a = spec.role_id("A"),
                    b = spec.role_id("B");
  const auto check = [=](const Config& c, bool exact) {
    const auto vx0 = c.single(x0);
    if (!vx0) return true;
    const auto ma = c.members(a), mb = c.members(b);
    for (std::size_t x : c.members(o)) {
      if (c.neighbors_in(x, a) > 1) return false;
      if (mb.size() - c.neighbors_in(x, b) > 1) return false;
      std::vector<std::size_t> away;
      for (std::size_t v : ma) {
        if (!c.graph.adjacent(v, x)) away.push_back(v);
      }
      if (!triangle_free(c.graph, away)) return false;
      away.clear();
      for (std::size_t v : mb) {
        if (!c.graph.adjacent(v, x)) away.push_back(v);
      }
      if (!triangle_free(c.graph, away)) return false;
    }
    const bool b_started = !mb.empty();
    for (std::size_t v : ma) {
      // k + m + t <= 3 and exactly 5 + k + m + t neighbours in B.
      const std::size_t k = c.neighbors_in(v, a), t = c.neighbors_in(v, o);
      const std::size_t m = common_clique_neighbors(c, v, *vx0);
      if (k + m + t > 3) return false;
      const std::size_t l = c.neighbors_in(v, b);
      if (b_started && l > 5 + k + m + t) return false;
      if (exact && l != 5 + k + m + t) return false;
    }
    for (std::size_t v : mb) {
      // k = l - 9 + t + m with l = neighbours in A.
      const std::size_t k = c.neighbors_in(v, b), t = c.neighbors_in(v, o);
      const std::size_t m = common_clique_neighbors(c, v, *vx0);
      const std::size_t l = c.neighbors_in(v, a);
      if (l + t + m < 9) return false;
      const std::size_t want = l + t + m - 9;
      if (exact ? k != want : k > want) return false;
    }
    return true;
  };
  spec.partial = [=](const Config& c) { return check(c, false); };
  spec.final = [=](const Config& c) { return check(c, true); };
  return spec;
}

// K5 plus triangles in 8 of the 10 pair classes; triangles on pairs sharing
// one clique vertex are joined by a perfect matching, disjoint pairs by the
// complement of one.
struct TriangleOutcome {
  std::string missing;
  std::size_t generated = 0;
  std::size_t survivors = 0;
  std::vector<std::string> graphs;
};

TriangleOutcome triangles_for(const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                              const std::string& missing, std::size_t jobs, std::ostream* progress) {
  const SrgParams params{75, 32, 10, 16};
  const InterlacingFilter filter(params);
  const LocalRules local(params);
  // Roles 1..5: clique vertices; 6 + p: triangle on pairs[p].
  Config start;
  start.graph = complete_graph(5);
  start.role = {1, 2, 3, 4, 5};
  std::vector<Config> level{start};
  static constexpr std::array<std::array<std::size_t, 3>, 6> kPerms{
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [i, j] = pairs[p];
    level = grow(level, [&, p, i = i, j = j](const Config& c, const Emit& emit) {
      std::vector<std::size_t> clique(6, 0);
      for (std::size_t v = 0; v < c.role.size(); ++v) {
        if (c.role[v] >= 1 && c.role[v] <= 5) clique[c.role[v]] = v;
      }
      std::vector<std::vector<std::size_t>> earlier(p);
      for (std::size_t q = 0; q < p; ++q) earlier[q] = c.members(6 + q);
      const std::size_t base = c.graph.order();
      // Vertices of the sub-configuration on the clique, triangles 0..q-1
      // and the new triangle; prefix[q] lists them.
      std::vector<std::vector<std::size_t>> prefix(p + 1);
      for (std::size_t v = 1; v <= 5; ++v) prefix[0].push_back(clique[v]);
      for (std::size_t q = 0; q < p; ++q) {
        prefix[q + 1] = prefix[q];
        prefix[q + 1].insert(prefix[q + 1].end(), earlier[q].begin(), earlier[q].end());
      }
      std::vector<std::size_t> pick(p, 0);
      const auto build = [&](std::size_t decided) {
        Config next = c;
        for (std::size_t t = 0; t < 3; ++t) {
          std::vector<std::size_t> nbrs{clique[i + 1], clique[j + 1]};
          for (std::size_t s = 0; s < t; ++s) nbrs.push_back(base + s);
          for (std::size_t q = 0; q < decided; ++q) {
            const auto [k, l] = pairs[q];
            const bool shares = i == k || i == l || j == k || j == l;
            const std::size_t matched = earlier[q][kPerms[pick[q]][t]];
            for (std::size_t w : earlier[q]) {
              if ((w == matched) == shares) nbrs.push_back(w);
            }
          }
          std::sort(nbrs.begin(), nbrs.end());
          next = with_vertex(next, 6 + p, nbrs);
        }
        return next;
      };
      const auto admissible = [&](const Graph& g, std::size_t decided) {
        auto vertices = prefix[decided];
        for (std::size_t t = 0; t < 3; ++t) vertices.push_back(base + t);
        const Graph sub = induced_subgraph(g, vertices);
        return local(sub) && filter(sub);
      };
      // Relabelling the new triangle makes the first choice free, so it is
      // fixed to the identity.
      std::function<void(std::size_t)> choose = [&](std::size_t q) {
        if (q == p) {
          Config next = build(p);
          if (p == 0 && !admissible(next.graph, 0)) return;
          emit(std::move(next));
          return;
        }
        const std::size_t options = q == 0 ? 1 : kPerms.size();
        for (std::size_t o = 0; o < options; ++o) {
          pick[q] = o;
          if (admissible(build(q + 1).graph, q + 1)) choose(q + 1);
        }
      };
      choose(0);
    }, jobs);
    if (progress != nullptr) {
      *progress << "triangles-8 " << missing << ": triangle " << p + 1 << " -> " << level.size() << std::endl;
    }
  }
  TriangleOutcome out;
  out.missing = missing;
  std::vector<Graph> graphs;
  for (const auto& c : level) graphs.push_back(c.graph);
  const auto classes = dedup_canonical(graphs);
  out.generated = classes.size();
  for (const auto& g : classes) {
    if (filter(g)) {
      ++out.survivors;
      out.graphs.push_back(write_graph6(g));
    }
  }
  return out;
}

ScenarioReport triangles_8(const ScenarioOptions& options) {
  ScenarioReport report;
  report.name = "triangles-8";
  std::vector<std::pair<std::size_t, std::size_t>> all;
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = i + 1; j < 5; ++j) all.emplace_back(i, j);
  }
  const auto without = [&](std::pair<std::size_t, std::size_t> a, std::pair<std::size_t, std::size_t> b) {
    std::vector<std::pair<std::size_t, std::size_t>> keep;
    for (const auto& e : all) {
      if (e != a && e != b) keep.push_back(e);
    }
    return keep;
  };
  const std::vector<TriangleOutcome> outcomes{
      triangles_for(without({0, 1}, {1, 2}), "adjacent", options.jobs, options.progress),
      triangles_for(without({0, 1}, {2, 3}), "disjoint", options.jobs, options.progress)};
  std::multiset<std::size_t> counts;
  for (const auto& o : outcomes) {
    report.lines.push_back("missing pairs " + o.missing + ": generated " + std::to_string(o.generated) +
                           " interlacing " + std::to_string(o.survivors));
    counts.insert(o.survivors);
    report.graphs.insert(report.graphs.end(), o.graphs.begin(), o.graphs.end());
  }
  report.passed = counts == std::multiset<std::size_t>{0, 1};
  report.lines.push_back(std::string("expect one configuration with 0 and one with 1 survivor: ") +
                         (report.passed ? "ok" : "MISMATCH"));
  return report;
}

ScenarioReport bvector_scenario(const std::string& name, std::size_t m, const std::map<std::size_t, std::int64_t>& caps,
                                const std::vector<BVector>& expected) {
  ScenarioReport report;
  report.name = name;
  const SrgParams p{75, 32, 10, 16};
  DegreeHistogram d = DegreeHistogram::of(complete_graph(m));
  const auto found = enumerate_b_vectors(p, d, caps);
  for (const auto& b : found) report.lines.push_back("b " + tuple_string(b));
  auto want = expected;
  std::sort(want.begin(), want.end());
  report.passed = found == want;
  report.lines.push_back(std::string("expect ") + std::to_string(want.size()) + " tuples: " +
                         (report.passed ? "ok" : "MISMATCH"));
  return report;
}

ScenarioReport petersen_positive(const ScenarioOptions& options) {
  ScenarioReport report;
  report.name = "petersen-positive";
  auto ctx = SearchContext::for_params(SrgParams{10, 3, 0, 1}, 1);
  ctx.jobs = options.jobs;
  const Graph seed = induced_subgraph(petersen_graph(), std::vector<std::size_t>{0, 1, 2});
  const auto verdict = pipeline_check(seed, ctx);
  report.lines.push_back("verdict " + verdict.to_string());
  report.passed = verdict.status == Verdict::Status::kWitnessFound;
  report.lines.push_back(std::string("expect witness-found: ") + (report.passed ? "ok" : "MISMATCH"));
  return report;
}

}  // namespace

std::vector<std::size_t> Config::members(std::size_t r) const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < role.size(); ++v) {
    if (role[v] == r) out.push_back(v);
  }
  return out;
}

std::size_t Config::count(std::size_t r) const {
  return static_cast<std::size_t>(std::count(role.begin(), role.end(), r));
}

std::optional<std::size_t> Config::single(std::size_t r) const {
  for (std::size_t v = 0; v < role.size(); ++v) {
    if (role[v] == r) return v;
  }
  return std::nullopt;
}

std::size_t Config::neighbors_in(std::size_t v, std::size_t r) const {
  std::size_t n = 0;
  for_each_bit(graph.row(v), [&](std::size_t u) {
    if (role[u] == r) ++n;
  });
  return n;
}

std::size_t FamilySpec::role_id(const std::string& n) const {
  for (std::size_t i = 0; i < roles.size(); ++i) {
    if (roles[i].name == n) return i + 1;
  }
  throw DomainError("unknown role " + n);
}

const PairSpec& FamilySpec::pair(std::size_t a, std::size_t b) const {
  static const PairSpec kDefault;
  const auto it = pairs.find({std::min(a, b), std::max(a, b)});
  return it == pairs.end() ? kDefault : it->second;
}

FamilySpec parse_family_spec(std::istream& in) {
  FamilySpec spec;
  std::string line;
  std::size_t offset = 0;
  const auto number = [](const std::string& s, std::size_t at) -> std::size_t {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &used);
    } catch (const std::exception&) {
      throw ParseError("expected a number", at);
    }
    if (used != s.size()) throw ParseError("expected a number", at);
    return static_cast<std::size_t>(v);
  };
  const auto role_pair = [&](const std::string& value, std::size_t at) {
    const auto comma = value.find(',');
    if (comma == std::string::npos) throw ParseError("expected two role names", at);
    try {
      const std::size_t a = spec.role_id(value.substr(0, comma));
      const std::size_t b = spec.role_id(value.substr(comma + 1));
      return std::make_pair(std::min(a, b), std::max(a, b));
    } catch (const DomainError& e) {
      throw ParseError(e.what(), at);
    }
  };
  bool have_params = false;
  while (std::getline(in, line)) {
    const std::size_t at = offset;
    offset += line.size() + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::istringstream tokens(line);
    std::string head;
    tokens >> head;
    const auto eq = head.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value", at);
    const std::string key = head.substr(0, eq);
    const std::string value = head.substr(eq + 1);
    std::map<std::string, std::string> attrs;
    for (std::string tok; tokens >> tok;) {
      const auto e = tok.find('=');
      if (e == std::string::npos) throw ParseError("expected attribute=value", at);
      attrs[tok.substr(0, e)] = tok.substr(e + 1);
    }
    if (key == "name") {
      spec.name = value;
    } else if (key == "params") {
      std::array<std::int64_t, 4> v{};
      std::istringstream ps(value);
      char sep = 0;
      for (std::size_t i = 0; i < 4; ++i) {
        if (!(ps >> v[i]) || (i < 3 && (!(ps >> sep) || sep != ','))) throw ParseError("bad params", at);
      }
      spec.params = SrgParams{v[0], v[1], v[2], v[3]};
      have_params = true;
    } else if (key == "clique") {
      spec.clique = number(value, at);
    } else if (key == "role") {
      if (value.empty() || value == "K") throw ParseError("bad role name", at);
      for (const auto& r : spec.roles) {
        if (r.name == value) throw ParseError("duplicate role " + value, at);
      }
      Role r{value, 1, 0};
      for (const auto& [k, v] : attrs) {
        if (k == "count") {
          r.count = number(v, at);
        } else if (k == "attach") {
          r.attach = number(v, at);
        } else {
          throw ParseError("unknown role attribute " + k, at);
        }
      }
      spec.roles.push_back(r);
    } else if (key == "edge" || key == "nonedge" || key == "free") {
      PairSpec ps;
      ps.rule = key == "edge" ? PairRule::kEdge : key == "free" ? PairRule::kFree : PairRule::kNonEdge;
      for (const auto& [k, v] : attrs) {
        if (k != "max" || ps.rule != PairRule::kFree) throw ParseError("unknown pair attribute " + k, at);
        ps.max_neighbors = number(v, at);
      }
      spec.pairs[role_pair(value, at)] = ps;
    } else if (key == "require_edge") {
      try {
        spec.require_edge_within.push_back(spec.role_id(value));
      } catch (const DomainError& e) {
        throw ParseError(e.what(), at);
      }
    } else if (key == "prune") {
      if (value != "interlace" && value != "none") throw ParseError("prune must be interlace or none", at);
      spec.prune_partial_interlacing = value == "interlace";
    } else if (key == "expect_generated") {
      spec.expect_generated = number(value, at);
    } else if (key == "expect_survivors") {
      spec.expect_survivors = number(value, at);
    } else {
      throw ParseError("unknown key " + key, at);
    }
  }
  if (!have_params) throw ParseError("missing params", offset);
  if (spec.name.empty()) throw ParseError("missing name", offset);
  for (const auto& r : spec.roles) {
    if (r.attach > spec.clique) throw ParseError("role " + r.name + " attaches to more vertices than the clique has", 0);
  }
  return spec;
}

FamilyResult run_family(const FamilySpec& spec, std::size_t jobs, std::ostream* progress) {
  const InterlacingFilter filter(spec.params);
  Config start;
  start.graph = complete_graph(spec.clique);
  start.role.assign(spec.clique, kCliqueRole);
  std::vector<Config> level{start};
  FamilyResult result;
  result.level_sizes.push_back(level.size());
  for (std::size_t r = 1; r <= spec.roles.size(); ++r) {
    const auto step = family_step(spec, r, filter);
    for (std::size_t i = 0; i < spec.roles[r - 1].count; ++i) {
      level = grow(level, step, jobs);
      result.level_sizes.push_back(level.size());
      if (progress != nullptr) {
        *progress << spec.name << ": " << spec.roles[r - 1].name << " #" << i + 1 << " -> " << level.size()
                  << std::endl;
      }
    }
  }
  std::vector<Graph> structural;
  for (const auto& c : level) {
    if (spec.final && !spec.final(c)) continue;
    bool ok = true;
    for (std::size_t r : spec.require_edge_within) ok = ok && has_edge_within(c, r);
    if (ok) structural.push_back(c.graph);
  }
  auto classes = dedup_canonical(structural);
  result.generated = classes.size();
  for (auto& g : classes) {
    if (filter(g)) result.survivors.push_back(std::move(g));
  }
  return result;
}

ScenarioReport run_family_scenario(const FamilySpec& spec, const ScenarioOptions& options) {
  ScenarioReport report;
  report.name = spec.name;
  const auto result = run_family(spec, options.jobs, options.progress);
  std::ostringstream levels;
  for (std::size_t i = 0; i < result.level_sizes.size(); ++i) levels << (i ? "," : "") << result.level_sizes[i];
  report.lines.push_back("levels " + levels.str());
  report.lines.push_back("generated " + std::to_string(result.generated));
  report.lines.push_back("interlacing " + std::to_string(result.survivors.size()));
  for (const auto& g : result.survivors) report.graphs.push_back(write_graph6(g));
  report.passed = true;
  if (spec.expect_generated) {
    const bool ok = result.generated == *spec.expect_generated;
    report.lines.push_back("expect generated " + std::to_string(*spec.expect_generated) + ": " +
                           (ok ? "ok" : "MISMATCH got " + std::to_string(result.generated)));
    report.passed = report.passed && ok;
  }
  if (spec.expect_survivors) {
    const bool ok = result.survivors.size() == *spec.expect_survivors;
    report.lines.push_back("expect interlacing " + std::to_string(*spec.expect_survivors) + ": " +
                           (ok ? "ok" : "MISMATCH got " + std::to_string(result.survivors.size())));
    report.passed = report.passed && ok;
  }
  return report;
}

const std::vector<ScenarioInfo>& builtin_scenarios() {
  static const std::vector<ScenarioInfo> kList{
      {"x1x2-adjacent", false, "K4 with adjacent X3 vertices and an X0 vertex: 6 classes, none interlace"},
      {"k4-bvectors", false, "b-vectors of a K4 outside any K5"},
      {"k5-config", false, "b-vector of a K5 is unique"},
      {"x3-independent", false, "no edge pattern on three X3 vertices interlaces"},
      {"case-223451", true, "K4 with b = (2,23,45,1): nothing interlaces"},
      {"triangles-8", true, "K5 with eight triangles: one configuration leaves a single survivor"},
      {"petersen-positive", false, "pipeline finds the clique on the Petersen graph"},
      {"case-126422", true, "K4 with b = (1,26,42,2): 3597 interlacing graphs"},
      {"case-029393", true, "K4 with b = (0,29,39,3): 18089 interlacing graphs"},
  };
  return kList;
}

ScenarioReport run_scenario(const std::string& name, const ScenarioOptions& options) {
  const auto& list = builtin_scenarios();
  const auto it = std::find_if(list.begin(), list.end(), [&](const ScenarioInfo& s) { return s.name == name; });
  if (it == list.end()) throw DomainError("unknown scenario " + name);
  if (it->heavy && !options.heavy) {
    ScenarioReport report;
    report.name = name;
    report.skipped = true;
    report.lines.push_back("long-running scenario; pass --heavy to run it");
    return report;
  }
  if (name == "x1x2-adjacent") return run_family_scenario(builtin_family(kX1X2Adjacent), options);
  if (name == "x3-independent") return run_family_scenario(builtin_family(kX3Independent), options);
  if (name == "case-223451") return run_family_scenario(case_223451(), options);
  if (name == "case-126422") return run_family_scenario(case_126422(), options);
  if (name == "case-029393") return run_family_scenario(case_029393(), options);
  if (name == "triangles-8") return triangles_8(options);
  if (name == "petersen-positive") return petersen_positive(options);
  if (name == "k4-bvectors") {
    return bvector_scenario(name, 4, {{4, 0}}, {{3, 20, 48, 0, 0}, {0, 29, 39, 3, 0}, {1, 26, 42, 2, 0}, {2, 23, 45, 1, 0}});
  }
  return bvector_scenario(name, 5, {}, {{0, 0, 70, 0, 0, 0}});
}

}  // namespace specter
