#ifndef SPECTER_SEARCH_HPP
#define SPECTER_SEARCH_HPP

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "specter/feasibility.hpp"
#include "specter/graph.hpp"

namespace specter {

struct SearchContext {
  SrgParams params;
  std::int64_t r = 0;
  std::size_t target_order = 0;   // v - f
  std::size_t clique_target = 0;  // f
  bool use_graceful = true;
  std::size_t jobs = 1;

  // Context for the eigenvalue r of the SRG spectrum. Throws ParameterError
  // when r is not an integral eigenvalue with integral multiplicity.
  static SearchContext for_params(const SrgParams& p, std::int64_t r);
};

struct SearchCounts {
  std::uint64_t generated = 0;  // one-vertex extensions examined
  std::uint64_t pruned = 0;     // failed interlacing or the final eigenvalue filter
  std::uint64_t passed = 0;     // generated - pruned, before isomorph rejection
  std::uint64_t comparability_tested = 0;
  std::uint64_t comparability_too_small = 0;

  SearchCounts& operator+=(const SearchCounts& o);
};

struct Verdict {
  enum class Status { kRefuted, kWitnessFound, kInconclusive };

  Status status = Status::kInconclusive;
  SearchCounts counts;
  std::size_t scc_order = 0;
  std::size_t candidates = 0;
  // Star complement whose comparability graph holds an f-clique.
  std::optional<Graph> witness;

  std::string to_string() const;
};

std::string_view status_name(Verdict::Status s);

// All one-vertex extensions of h that interlace, one per isomorphism class,
// each relabelled canonically and sorted by canonical form.
std::vector<Graph> extend_one_vertex(const Graph& h, const SearchContext& ctx,
                                     SearchCounts* counts = nullptr);

// One level of extend_to_order for a single graph: graceful restriction when
// enabled, eigenvalue filter when |h| + 1 == target_order.
std::vector<Graph> extend_step(const Graph& h, const SearchContext& ctx, SearchCounts* counts = nullptr);

// Deficient pairs (u, v), u < v, such that every interlacing extension whose
// new vertex is adjacent to both u and v lacks the eigenvalue r.
std::vector<std::pair<std::size_t, std::size_t>> graceful_pairs(const Graph& h, const SearchContext& ctx);

struct ExtendOptions {
  // Level files and a manifest are written here when set.
  std::optional<std::filesystem::path> checkpoint_dir;
  // Continue from the last completed level recorded in checkpoint_dir.
  bool resume = false;
  const std::atomic<bool>* cancel = nullptr;
  std::function<void(std::size_t order, std::size_t graphs)> on_level;
};

struct ExtendResult {
  std::vector<Graph> graphs;  // canonical representatives, ascending by form
  SearchCounts counts;
  bool complete = true;  // false when cancelled
};

// Level-wise extension of h to ctx.target_order with canonical dedup between
// levels. A graceful pair, when one exists, restricts a level to extensions
// adjacent to both of its vertices (the pair giving the fewest classes).
// The last level keeps the graphs without eigenvalue r that interlace.
// Throws DomainError if r is an eigenvalue of h or |h| > target_order.
ExtendResult extend_to_order(const Graph& h, const SearchContext& ctx, const ExtendOptions& options = {});

// Largest S with |S| <= target_order and r not an eigenvalue of h[S]; ties by
// larger automorphism group, then lexicographically smallest member list.
VertexSet scc_select(const Graph& h, const SearchContext& ctx);

struct PipelineOptions {
  ExtendOptions extend;
  std::ostream* log = nullptr;  // warnings and progress
};

Verdict pipeline_check(const Graph& seed, const SearchContext& ctx, const PipelineOptions& options = {});

// Manifest of a checkpointed extension run: key=value lines.
struct CheckpointManifest {
  SrgParams params;
  std::int64_t r = 0;
  std::size_t target_order = 0;
  bool use_graceful = true;
  std::string seed;  // graph6
  std::size_t completed_order = 0;

  void write(const std::filesystem::path& file) const;
  static CheckpointManifest read(const std::filesystem::path& file);
};

std::filesystem::path level_file(const std::filesystem::path& dir, std::size_t order);

}  // namespace specter

#endif  // SPECTER_SEARCH_HPP
