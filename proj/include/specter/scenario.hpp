#ifndef SPECTER_SCENARIO_HPP
#define SPECTER_SCENARIO_HPP

#include <cstddef>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "specter/feasibility.hpp"
#include "specter/graph.hpp"

namespace specter {

// A partially built configuration: graph plus the role of every vertex.
// Role 0 is the base clique.
struct Config {
  Graph graph;
  std::vector<std::size_t> role;

  std::vector<std::size_t> members(std::size_t r) const;
  std::size_t count(std::size_t r) const;
  // The unique vertex of a singleton role, if placed.
  std::optional<std::size_t> single(std::size_t r) const;
  std::size_t neighbors_in(std::size_t v, std::size_t r) const;
};

enum class PairRule { kNonEdge, kEdge, kFree };

struct Role {
  std::string name;
  std::size_t count = 1;
  std::size_t attach = 0;  // exact number of neighbours in the base clique
};

struct PairSpec {
  PairRule rule = PairRule::kNonEdge;
  // For kFree: a new vertex gets at most this many neighbours in the other role.
  std::optional<std::size_t> max_neighbors;
};

struct FamilySpec {
  std::string name;
  SrgParams params;
  std::size_t clique = 0;
  std::vector<Role> roles;  // placed in order after the clique; index = role id - 1
  std::map<std::pair<std::size_t, std::size_t>, PairSpec> pairs;  // role ids, first <= second
  std::vector<std::size_t> require_edge_within;                   // role ids
  bool prune_partial_interlacing = false;
  // Hereditary constraint checked on every partial configuration.
  std::function<bool(const Config&)> partial;
  // Checked once every vertex is placed.
  std::function<bool(const Config&)> final;

  std::optional<std::size_t> expect_generated;
  std::optional<std::size_t> expect_survivors;

  std::size_t role_id(const std::string& name) const;
  const PairSpec& pair(std::size_t a, std::size_t b) const;
};

// Parses the key=value family format. Throws ParseError.
FamilySpec parse_family_spec(std::istream& in);

struct FamilyResult {
  std::size_t generated = 0;  // isomorphism classes satisfying the structure
  std::vector<Graph> survivors;  // classes that also interlace, canonical order
  std::vector<std::size_t> level_sizes;
};

FamilyResult run_family(const FamilySpec& spec, std::size_t jobs, std::ostream* progress = nullptr);

struct ScenarioOptions {
  std::size_t jobs = 1;
  bool heavy = false;
  std::ostream* progress = nullptr;  // one line per generation level
};

struct ScenarioReport {
  std::string name;
  bool passed = false;
  bool skipped = false;
  std::vector<std::string> lines;
  // Graphs worth emitting (survivors), graph6 in canonical order.
  std::vector<std::string> graphs;
};

struct ScenarioInfo {
  std::string name;
  bool heavy = false;
  std::string summary;
};

const std::vector<ScenarioInfo>& builtin_scenarios();

// Runs a built-in by name. Throws DomainError for an unknown name.
ScenarioReport run_scenario(const std::string& name, const ScenarioOptions& options);
ScenarioReport run_family_scenario(const FamilySpec& spec, const ScenarioOptions& options);

}  // namespace specter

#endif  // SPECTER_SCENARIO_HPP
