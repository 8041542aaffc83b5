#include "specter/search.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "specter/clique.hpp"
#include "specter/errors.hpp"
#include "specter/interlacing.hpp"
#include "specter/isomorph.hpp"
#include "specter/parallel.hpp"
#include "specter/spectra.hpp"
#include "specter/starcomp.hpp"

namespace specter {

namespace {

constexpr std::size_t kMaxScanOrder = 30;
constexpr std::uint64_t kScanChunk = 1024;

constexpr std::uint8_t kInterlaces = 1;
constexpr std::uint8_t kHasR = 2;

Graph extension(const Graph& h, std::uint64_t mask) {
  VertexSet nbrs(h.order());
  for (std::size_t i = 0; i < h.order(); ++i) {
    if ((mask >> i) & 1U) nbrs.insert(i);
  }
  return add_vertex(h, nbrs);
}

bool contains_pair(std::uint64_t mask, std::size_t u, std::size_t v) {
  return ((mask >> u) & 1U) != 0 && ((mask >> v) & 1U) != 0;
}

// Per-neighbourhood flags for every one-vertex extension of h. kHasR is only
// evaluated on interlacing extensions, and only when requested.
std::vector<std::uint8_t> scan_extensions(const Graph& h, const SearchContext& ctx,
                                          const InterlacingFilter& filter, bool need_r) {
  if (h.order() > kMaxScanOrder) {
    throw UnsupportedSizeError("extension scan supports at most 30 vertices");
  }
  const std::uint64_t total = std::uint64_t{1} << h.order();
  std::vector<std::uint8_t> flags(total, 0);
  const std::uint64_t chunks = (total + kScanChunk - 1) / kScanChunk;
  parallel_for(chunks, ctx.jobs, [&](std::size_t c) {
    const std::uint64_t end = std::min(total, (c + 1) * kScanChunk);
    for (std::uint64_t mask = c * kScanChunk; mask < end; ++mask) {
      const Graph g = extension(h, mask);
      if (!filter(g)) continue;
      std::uint8_t f = kInterlaces;
      if (need_r && eigenvalue_multiplicity_exact(g, ctx.r) > 0) f |= kHasR;
      flags[mask] = f;
    }
  });
  return flags;
}

std::vector<std::pair<std::size_t, std::size_t>> deficient_pairs(const Graph& h, const SrgParams& p) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t u = 0; u < h.order(); ++u) {
    for (std::size_t v = u + 1; v < h.order(); ++v) {
      const auto common = static_cast<std::int64_t>(common_neighbor_count(h, u, v));
      if (common < (h.adjacent(u, v) ? p.lambda : p.mu)) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> graceful_from_scan(const Graph& h, const SearchContext& ctx,
                                                                    const std::vector<std::uint8_t>& flags) {
  auto pairs = deficient_pairs(h, ctx.params);
  if (pairs.empty()) return pairs;
  const std::size_t n = h.order();
  std::vector<char> spoiled(n * n, 0);
  for (std::uint64_t mask = 0; mask < flags.size(); ++mask) {
    if (flags[mask] != (kInterlaces | kHasR)) continue;
    for (std::size_t u = 0; u < n; ++u) {
      if (((mask >> u) & 1U) == 0) continue;
      for (std::size_t v = u + 1; v < n; ++v) {
        if ((mask >> v) & 1U) spoiled[u * n + v] = 1;
      }
    }
  }
  std::erase_if(pairs, [&](const auto& pr) { return spoiled[pr.first * n + pr.second] != 0; });
  return pairs;
}

struct Canonized {
  CanonicalForm form;
  Graph graph;
};

std::vector<Canonized> canonize_all(const Graph& h, const std::vector<std::uint64_t>& masks,
                                    std::size_t jobs) {
  std::vector<Canonized> out(masks.size());
  parallel_for(masks.size(), jobs, [&](std::size_t i) {
    const Graph g = extension(h, masks[i]);
    auto info = analyze_symmetry(g);
    std::vector<std::size_t> to_position(g.order());
    for (std::size_t p = 0; p < g.order(); ++p) to_position[info.canonical_labeling[p]] = p;
    out[i] = Canonized{std::move(info.form), relabel(g, to_position)};
  });
  return out;
}

// One level step for a single graph: the surviving extensions, canonized.
std::vector<Canonized> level_extensions(const Graph& h, const SearchContext& ctx,
                                        const InterlacingFilter& filter, bool final_level,
                                        bool allow_graceful, SearchCounts& counts) {
  const bool graceful = allow_graceful && ctx.use_graceful && h.order() > 2;
  const auto flags = scan_extensions(h, ctx, filter, graceful || final_level);

  std::vector<std::uint64_t> interlacing;
  for (std::uint64_t mask = 0; mask < flags.size(); ++mask) {
    if (flags[mask] & kInterlaces) interlacing.push_back(mask);
  }
  const auto keep_final = [&](std::uint64_t mask) { return !final_level || (flags[mask] & kHasR) == 0; };

  if (graceful) {
    const auto pairs = graceful_from_scan(h, ctx, flags);
    if (!pairs.empty()) {
      auto all = canonize_all(h, interlacing, ctx.jobs);
      std::size_t best = 0;
      std::size_t best_classes = SIZE_MAX;
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        std::set<CanonicalForm> classes;
        for (std::size_t i = 0; i < interlacing.size(); ++i) {
          if (contains_pair(interlacing[i], pairs[p].first, pairs[p].second)) classes.insert(all[i].form);
        }
        if (classes.size() < best_classes) {
          best_classes = classes.size();
          best = p;
        }
      }
      const auto [u, v] = pairs[best];
      std::vector<Canonized> kept;
      const std::uint64_t generated = std::uint64_t{1} << (h.order() - 2);
      for (std::size_t i = 0; i < interlacing.size(); ++i) {
        if (contains_pair(interlacing[i], u, v) && keep_final(interlacing[i])) kept.push_back(std::move(all[i]));
      }
      counts.generated += generated;
      counts.passed += kept.size();
      counts.pruned += generated - kept.size();
      return kept;
    }
  }

  std::vector<std::uint64_t> masks;
  for (std::uint64_t mask : interlacing) {
    if (keep_final(mask)) masks.push_back(mask);
  }
  counts.generated += flags.size();
  counts.passed += masks.size();
  counts.pruned += flags.size() - masks.size();
  return canonize_all(h, masks, ctx.jobs);
}

std::string params_field(const SrgParams& p) {
  std::ostringstream os;
  os << p.v << ',' << p.k << ',' << p.lambda << ',' << p.mu;
  return os.str();
}

void write_level(const std::filesystem::path& file, const std::vector<Graph>& graphs) {
  const auto tmp = std::filesystem::path(file).concat(".tmp");
  {
    std::ofstream out(tmp);
    for (const auto& g : graphs) out << write_graph6(g) << '\n';
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, file);
}

std::vector<Graph> read_level(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  std::vector<Graph> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(parse_graph6(line));
  }
  return out;
}

}  // namespace

SearchContext SearchContext::for_params(const SrgParams& p, std::int64_t r) {
  p.validate();
  const auto spec = srg_spectrum(p);
  if (!spec.multiplicities_integral || !spec.r_int || !spec.s_int) {
    throw ParameterError("search needs integral eigenvalues and multiplicities for " + p.to_string());
  }
  SearchContext ctx;
  ctx.params = p;
  ctx.r = r;
  std::int64_t f = 0;
  if (r == *spec.r_int) {
    f = *spec.f_int;
  } else if (r == *spec.s_int) {
    f = *spec.g_int;
  } else {
    throw ParameterError(std::to_string(r) + " is not an eigenvalue of " + p.to_string());
  }
  ctx.clique_target = static_cast<std::size_t>(f);
  ctx.target_order = static_cast<std::size_t>(p.v - f);
  return ctx;
}

SearchCounts& SearchCounts::operator+=(const SearchCounts& o) {
  generated += o.generated;
  pruned += o.pruned;
  passed += o.passed;
  comparability_tested += o.comparability_tested;
  comparability_too_small += o.comparability_too_small;
  return *this;
}

std::string_view status_name(Verdict::Status s) {
  switch (s) {
    case Verdict::Status::kRefuted:
      return "refuted";
    case Verdict::Status::kWitnessFound:
      return "witness-found";
    case Verdict::Status::kInconclusive:
      return "exhausted-inconclusive";
  }
  return "?";
}

std::string Verdict::to_string() const {
  std::ostringstream os;
  os << status_name(status) << " scc_order=" << scc_order << " candidates=" << candidates
     << " generated=" << counts.generated << " pruned=" << counts.pruned << " passed=" << counts.passed
     << " comparability_tested=" << counts.comparability_tested
     << " comparability_too_small=" << counts.comparability_too_small;
  if (witness) os << " witness=" << write_graph6(*witness);
  return os.str();
}

std::vector<Graph> extend_one_vertex(const Graph& h, const SearchContext& ctx, SearchCounts* counts) {
  const InterlacingFilter filter(ctx.params);
  SearchCounts local;
  auto found = level_extensions(h, ctx, filter, false, false, local);
  if (counts != nullptr) *counts += local;
  std::map<CanonicalForm, Graph> classes;
  for (auto& c : found) classes.try_emplace(std::move(c.form), std::move(c.graph));
  std::vector<Graph> out;
  out.reserve(classes.size());
  for (auto& [form, g] : classes) out.push_back(std::move(g));
  return out;
}

std::vector<Graph> extend_step(const Graph& h, const SearchContext& ctx, SearchCounts* counts) {
  if (h.order() >= ctx.target_order) throw DomainError("extend_step: graph already at target order");
  const InterlacingFilter filter(ctx.params);
  SearchCounts local;
  auto found = level_extensions(h, ctx, filter, h.order() + 1 == ctx.target_order, true, local);
  if (counts != nullptr) *counts += local;
  std::map<CanonicalForm, Graph> classes;
  for (auto& c : found) classes.try_emplace(std::move(c.form), std::move(c.graph));
  std::vector<Graph> out;
  out.reserve(classes.size());
  for (auto& [form, g] : classes) out.push_back(std::move(g));
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> graceful_pairs(const Graph& h, const SearchContext& ctx) {
  if (h.order() <= 2) return {};
  const InterlacingFilter filter(ctx.params);
  return graceful_from_scan(h, ctx, scan_extensions(h, ctx, filter, true));
}

std::filesystem::path level_file(const std::filesystem::path& dir, std::size_t order) {
  return dir / ("level_" + std::to_string(order) + ".g6");
}

void CheckpointManifest::write(const std::filesystem::path& file) const {
  const auto tmp = std::filesystem::path(file).concat(".tmp");
  {
    std::ofstream out(tmp);
    out << "format=specter-checkpoint\n"
        << "form_version=" << static_cast<int>(kCanonicalFormVersion) << '\n'
        << "params=" << params_field(params) << '\n'
        << "r=" << r << '\n'
        << "target_order=" << target_order << '\n'
        << "use_graceful=" << (use_graceful ? 1 : 0) << '\n'
        << "seed=" << seed << '\n'
        << "completed_order=" << completed_order << '\n';
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, file);
}

CheckpointManifest CheckpointManifest::read(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t offset = 0;
  while (std::getline(in, line)) {
    const std::size_t start = offset;
    offset += line.size() + 1;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError("manifest line without key=value", start);
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  const auto need = [&](const char* key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) throw ParseError(std::string("manifest lacks ") + key, offset);
    return it->second;
  };
  if (need("format") != "specter-checkpoint") throw ParseError("unknown manifest format", 0);
  if (std::stoi(need("form_version")) != kCanonicalFormVersion) {
    throw ParseError("checkpoint written with another canonical form version", 0);
  }
  CheckpointManifest m;
  char c1 = 0, c2 = 0, c3 = 0;
  std::istringstream ps(need("params"));
  if (!(ps >> m.params.v >> c1 >> m.params.k >> c2 >> m.params.lambda >> c3 >> m.params.mu) || c1 != ',' ||
      c2 != ',' || c3 != ',') {
    throw ParseError("bad params field in manifest", 0);
  }
  m.r = std::stoll(need("r"));
  m.target_order = std::stoull(need("target_order"));
  m.use_graceful = need("use_graceful") == "1";
  m.seed = need("seed");
  m.completed_order = std::stoull(need("completed_order"));
  return m;
}

ExtendResult extend_to_order(const Graph& h, const SearchContext& ctx, const ExtendOptions& options) {
  if (h.order() > ctx.target_order) throw DomainError("extend_to_order: seed larger than target order");
  if (eigenvalue_multiplicity_exact(h, ctx.r) > 0) {
    throw DomainError("extend_to_order: seed already has eigenvalue " + std::to_string(ctx.r));
  }
  const InterlacingFilter filter(ctx.params);
  ExtendResult result;

  CheckpointManifest manifest{ctx.params, ctx.r, ctx.target_order, ctx.use_graceful, write_graph6(h), h.order()};
  std::optional<std::filesystem::path> manifest_file;
  if (options.checkpoint_dir) {
    std::filesystem::create_directories(*options.checkpoint_dir);
    manifest_file = *options.checkpoint_dir / "manifest.txt";
  }

  std::vector<Graph> level;
  std::size_t order = h.order();
  bool resumed = false;
  if (options.resume && manifest_file && std::filesystem::exists(*manifest_file)) {
    const auto saved = CheckpointManifest::read(*manifest_file);
    if (saved.params != manifest.params || saved.r != manifest.r || saved.target_order != manifest.target_order ||
        saved.use_graceful != manifest.use_graceful || saved.seed != manifest.seed) {
      throw DomainError("checkpoint manifest belongs to a different run");
    }
    order = saved.completed_order;
    level = read_level(level_file(*options.checkpoint_dir, order));
    manifest.completed_order = order;
    resumed = true;
  }

  if (!resumed) {
    level.push_back(canonical_graph(h));
    if (order == ctx.target_order && !filter(level.front())) level.clear();
    if (manifest_file) {
      write_level(level_file(*options.checkpoint_dir, order), level);
      manifest.write(*manifest_file);
    }
  }

  while (order < ctx.target_order) {
    const bool final_level = order + 1 == ctx.target_order;
    std::map<CanonicalForm, Graph> next;
    for (const auto& g : level) {
      if (options.cancel != nullptr && options.cancel->load()) {
        result.complete = false;
        result.graphs = std::move(level);
        return result;
      }
      for (auto& c : level_extensions(g, ctx, filter, final_level, true, result.counts)) {
        next.try_emplace(std::move(c.form), std::move(c.graph));
      }
    }
    level.clear();
    level.reserve(next.size());
    for (auto& [form, g] : next) level.push_back(std::move(g));
    ++order;
    if (manifest_file) {
      write_level(level_file(*options.checkpoint_dir, order), level);
      manifest.completed_order = order;
      manifest.write(*manifest_file);
    }
    if (options.on_level) options.on_level(order, level.size());
  }
  result.graphs = std::move(level);
  return result;
}

VertexSet scc_select(const Graph& h, const SearchContext& ctx) {
  const std::size_t n = h.order();
  for (std::size_t size = std::min(n, ctx.target_order);; --size) {
    std::optional<std::vector<std::size_t>> best;
    long double best_aut = 0;
    std::vector<std::size_t> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    for (;;) {
      const Graph sub = induced_subgraph(h, pick);
      if (eigenvalue_multiplicity_exact(sub, ctx.r) == 0) {
        const long double aut = automorphism_group_order(sub);
        if (!best || aut > best_aut) {
          best = pick;
          best_aut = aut;
        }
      }
      // Next combination in lexicographic order.
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
    if (best) return VertexSet(n, *best);
    if (size == 0) break;
  }
  return VertexSet(n);
}

Verdict pipeline_check(const Graph& seed, const SearchContext& ctx, const PipelineOptions& options) {
  Verdict verdict;
  const VertexSet chosen = scc_select(seed, ctx);
  verdict.scc_order = chosen.count();
  if (ctx.target_order - verdict.scc_order > 2 && options.log != nullptr) {
    *options.log << "warning: extending from order " << verdict.scc_order << " to " << ctx.target_order
                 << " may be infeasible\n";
  }
  const Graph start = induced_subgraph(seed, chosen);
  const auto extended = extend_to_order(start, ctx, options.extend);
  verdict.counts = extended.counts;
  if (!extended.complete) return verdict;
  verdict.candidates = extended.graphs.size();

  const auto& candidates = extended.graphs;
  std::vector<char> has_clique(candidates.size(), 0);
  std::vector<char> too_small(candidates.size(), 0);
  std::atomic<bool> cancelled{false};
  const ComparabilityOptions copts{ctx.clique_target, true};
  parallel_for(candidates.size(), ctx.jobs, [&](std::size_t i) {
    if (options.extend.cancel != nullptr && options.extend.cancel->load()) {
      cancelled = true;
      return;
    }
    const auto comp = comparability_graph(candidates[i], ctx.r, copts);
    if (const auto* cg = std::get_if<ComparabilityGraph>(&comp)) {
      has_clique[i] = has_f_clique(*cg, ctx.clique_target) ? 1 : 0;
    } else {
      too_small[i] = 1;
    }
  });
  if (cancelled) return verdict;

  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (too_small[i]) {
      ++verdict.counts.comparability_too_small;
    } else {
      ++verdict.counts.comparability_tested;
    }
    if (has_clique[i] && !verdict.witness) verdict.witness = candidates[i];
  }
  verdict.status = verdict.witness ? Verdict::Status::kWitnessFound : Verdict::Status::kRefuted;
  return verdict;
}

}  // namespace specter
