#include "specter/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include "specter/adjdump.hpp"
#include "specter/clique.hpp"
#include "specter/errors.hpp"
#include "specter/feasibility.hpp"
#include "specter/interlacing.hpp"
#include "specter/isomorph.hpp"
#include "specter/parallel.hpp"
#include "specter/scenario.hpp"
#include "specter/search.hpp"
#include "specter/starcomp.hpp"

namespace specter {

namespace {

// Raised for bad arguments discovered after CLI11 parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::size_t default_jobs() {
  if (const char* env = std::getenv("SPECTER_JOBS")) {
    try {
      const auto v = std::stoul(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return 1;
}

struct Shard {
  std::size_t index = 0;
  std::size_t count = 1;
};

Shard parse_shard(const std::string& s) {
  if (s.empty()) return {};
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) throw UsageError("");
    Shard sh{std::stoul(s.substr(0, slash)), std::stoul(s.substr(slash + 1))};
    if (sh.count == 0 || sh.index >= sh.count) throw UsageError("");
    return sh;
  } catch (const std::exception&) {
    throw UsageError("--shard expects i/n with 0 <= i < n");
  }
}

SrgParams params_from(const std::vector<std::int64_t>& v) {
  SrgParams p{v.at(0), v.at(1), v.at(2), v.at(3)};
  try {
    p.validate();
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }
  return p;
}

struct Common {
  std::size_t jobs = default_jobs();
  std::string shard;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--jobs", c.jobs, "worker threads (default $SPECTER_JOBS or 1)")->check(CLI::PositiveNumber);
  sub->add_option("--shard", c.shard, "process only shard i of n (by canonical-form hash)");
}

std::vector<Graph> read_graphs(std::istream& in, const Common& c) {
  GraphReader reader(in);
  std::vector<Graph> all;
  while (auto g = reader.next()) all.push_back(std::move(*g));
  const Shard sh = parse_shard(c.shard);
  if (sh.count == 1) return all;
  std::vector<char> keep(all.size(), 0);
  parallel_for(all.size(), c.jobs, [&](std::size_t i) {
    keep[i] = canonical_form(all[i]).hash() % sh.count == sh.index ? 1 : 0;
  });
  std::vector<Graph> out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (keep[i]) out.push_back(std::move(all[i]));
  }
  return out;
}

SearchContext context_for(const SrgParams& p, std::int64_t r, std::size_t jobs) {
  try {
    auto ctx = SearchContext::for_params(p, r);
    ctx.jobs = jobs;
    return ctx;
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }
}

int cmd_params(const SrgParams& p, std::ostream& out) {
  out << "params " << p.v << ',' << p.k << ',' << p.lambda << ',' << p.mu << '\n';
  const bool edges = check_edge_equation(p);
  out << "edge_equation " << (edges ? "ok" : "fails") << '\n';
  const auto s = srg_spectrum(p);
  if (s.conference) out << "conference\n";
  if (s.r_int && s.s_int && s.f_int && s.g_int) {
    out << "r=" << *s.r_int << " f=" << *s.f_int << " s=" << *s.s_int << " g=" << *s.g_int << '\n';
  } else {
    out << std::setprecision(12) << "r=" << s.r << " f=" << s.f << " s=" << s.s << " g=" << s.g << '\n';
  }
  if (const auto order = s.star_complement_order(p)) out << "star_complement_order=" << *order << '\n';
  const bool feasible = edges && s.multiplicities_integral;
  out << "feasible " << (feasible ? "yes" : "no") << '\n';
  return feasible ? kExitOk : kExitAssertion;
}

int cmd_bvec(const SrgParams& p, const std::string& degrees, const std::vector<std::string>& caps,
             std::ostream& out) {
  DegreeHistogram d;
  std::istringstream ds(degrees);
  for (std::string item; std::getline(ds, item, ',');) {
    try {
      d.d.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw UsageError("--degrees expects comma-separated counts");
    }
  }
  d.m = d.d.size();
  if (!d.valid()) throw UsageError("--degrees is not a valid degree histogram");
  std::map<std::size_t, std::int64_t> cap_map;
  for (const auto& c : caps) {
    const auto eq = c.find('=');
    try {
      if (eq == std::string::npos) throw UsageError("");
      cap_map[std::stoul(c.substr(0, eq))] = std::stoll(c.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("--cap expects i=n");
    }
  }
  for (const auto& b : enumerate_b_vectors(p, d, cap_map)) {
    out << '(';
    for (std::size_t i = 0; i < b.size(); ++i) out << (i ? "," : "") << b[i];
    out << ")\n";
  }
  return kExitOk;
}

int cmd_interlace(const SrgParams& p, const Common& c, std::istream& in, std::ostream& out) {
  const auto graphs = read_graphs(in, c);
  const InterlacingFilter filter(p);
  std::vector<char> pass(graphs.size(), 0);
  parallel_for(graphs.size(), c.jobs, [&](std::size_t i) { pass[i] = filter(graphs[i]) ? 1 : 0; });
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (pass[i]) out << write_graph6(graphs[i]) << '\n';
  }
  return kExitOk;
}

int cmd_extend(const SearchContext& ctx, const Common& c, std::istream& in, std::ostream& out,
               std::ostream& err) {
  const auto graphs = read_graphs(in, c);
  std::map<CanonicalForm, Graph> classes;
  SearchCounts counts;
  for (const auto& g : graphs) {
    if (g.order() >= ctx.target_order) throw UsageError("input graph already has the target order");
    for (auto& e : extend_step(g, ctx, &counts)) {
      auto form = canonical_form(e);
      classes.try_emplace(std::move(form), std::move(e));
    }
  }
  for (const auto& [form, g] : classes) out << write_graph6(g) << '\n';
  err << "extend: inputs=" << graphs.size() << " generated=" << counts.generated << " pruned=" << counts.pruned
      << " passed=" << counts.passed << " classes=" << classes.size() << '\n';
  return kExitOk;
}

int cmd_compgraph(std::int64_t r, std::size_t min_order, bool regular, const Common& c, std::istream& in,
                  std::ostream& out, std::ostream& err) {
  const auto graphs = read_graphs(in, c);
  std::vector<std::optional<std::string>> dumps(graphs.size());
  parallel_for(graphs.size(), c.jobs, [&](std::size_t i) {
    const auto comp = comparability_graph(graphs[i], r, ComparabilityOptions{min_order, regular});
    if (const auto* cg = std::get_if<ComparabilityGraph>(&comp)) dumps[i] = format_adjdump(cg->graph);
  });
  std::size_t skipped = 0;
  for (const auto& d : dumps) {
    if (d) {
      out << *d;
    } else {
      ++skipped;
    }
  }
  err << "compgraph: inputs=" << graphs.size() << " below_min_order=" << skipped << '\n';
  return kExitOk;
}

int cmd_clique(std::optional<std::size_t> cutoff, const Common& c, std::istream& in, std::ostream& out) {
  const auto graphs = read_graphs(in, c);
  std::vector<CliqueResult> results(graphs.size());
  parallel_for(graphs.size(), c.jobs, [&](std::size_t i) {
    results[i] = clique_number_symmetric(graphs[i], cutoff.value_or(graphs[i].order() + 1));
  });
  bool reached = false;
  for (const auto& res : results) {
    out << res.to_string() << '\n';
    reached = reached || (cutoff && res.reached());
  }
  return reached ? kExitAssertion : kExitOk;
}

int cmd_pipeline(SearchContext ctx, bool graceful, const std::string& checkpoint, bool resume, const Common& c,
                 std::istream& in, std::ostream& out, std::ostream& err) {
  ctx.use_graceful = graceful;
  const auto graphs = read_graphs(in, c);
  bool all_refuted = true;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    PipelineOptions opts;
    opts.log = &err;
    if (!checkpoint.empty()) {
      opts.extend.checkpoint_dir = std::filesystem::path(checkpoint) / ("seed_" + std::to_string(i));
      opts.extend.resume = resume;
    }
    const auto verdict = pipeline_check(graphs[i], ctx, opts);
    out << write_graph6(graphs[i]) << ' ' << verdict.to_string() << '\n';
    all_refuted = all_refuted && verdict.status == Verdict::Status::kRefuted;
  }
  return all_refuted ? kExitOk : kExitAssertion;
}

int cmd_scenario(const std::string& name, const std::string& file, bool list, bool heavy, bool emit, bool verbose,
                 const Common& c, std::ostream& out, std::ostream& err) {
  if (list) {
    for (const auto& s : builtin_scenarios()) {
      out << s.name << (s.heavy ? " [heavy] " : " ") << s.summary << '\n';
    }
    return kExitOk;
  }
  const ScenarioOptions options{c.jobs, heavy, verbose ? &err : nullptr};
  ScenarioReport report;
  if (!file.empty()) {
    std::ifstream f(file);
    if (!f) throw UsageError("cannot open " + file);
    report = run_family_scenario(parse_family_spec(f), options);
  } else if (!name.empty()) {
    try {
      report = run_scenario(name, options);
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
  } else {
    throw UsageError("scenario needs a name, --file or --list");
  }
  out << "scenario " << report.name << '\n';
  for (const auto& line : report.lines) out << line << '\n';
  if (emit) {
    for (const auto& g : report.graphs) out << g << '\n';
  }
  if (report.skipped) {
    err << report.name << ": skipped\n";
    return kExitUsage;
  }
  out << (report.passed ? "PASS" : "FAIL") << '\n';
  return report.passed ? kExitOk : kExitAssertion;
}

}  // namespace

int run_subcommand(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"Spectral feasibility toolkit for strongly regular graph parameters", "specter"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Common common;
  std::vector<std::int64_t> srg;
  std::int64_t r = 0;

  auto* params = app.add_subcommand("params", "spectrum and feasibility of SRG parameters");
  params->add_option("srg", srg, "v k lambda mu")->required()->expected(4);

  auto* bvec = app.add_subcommand("bvec", "b-vectors for an induced subgraph degree histogram");
  std::string degrees;
  std::vector<std::string> caps;
  bvec->add_option("srg", srg, "v k lambda mu")->required()->expected(4);
  bvec->add_option("--degrees", degrees, "d_0,...,d_{m-1}")->required();
  bvec->add_option("--cap", caps, "i=n bounds b_i by n")->take_all();

  auto* interlace = app.add_subcommand("interlace", "keep graph6 lines that interlace");
  interlace->add_option("srg", srg, "v k lambda mu")->required()->expected(4);
  add_common(interlace, common);

  auto* extend = app.add_subcommand("extend", "one extension level of each input graph");
  std::optional<std::size_t> target;
  bool no_graceful = false;
  extend->add_option("srg", srg, "v k lambda mu")->required()->expected(4);
  extend->add_option("--r", r, "eigenvalue")->required();
  extend->add_option("--target", target, "star complement order (default v - f)");
  extend->add_flag("--no-graceful", no_graceful, "never restrict to a graceful pair");
  add_common(extend, common);

  auto* compgraph = app.add_subcommand("compgraph", "comparability graphs of star complements");
  std::size_t min_order = 0;
  bool irregular = false;
  compgraph->add_option("--r", r, "eigenvalue")->required();
  compgraph->add_option("--min-order", min_order, "skip comparability graphs with fewer vertices");
  compgraph->add_flag("--irregular-host", irregular, "drop the <u,1> = -1 condition");
  add_common(compgraph, common);

  auto* clique = app.add_subcommand("clique", "clique numbers of graph6 lines or adjacency dumps");
  std::optional<std::size_t> cutoff;
  clique->add_option("--cutoff", cutoff, "stop once a clique of this size is found");
  add_common(clique, common);

  auto* pipeline = app.add_subcommand("pipeline", "full star complement check for each seed graph");
  std::string checkpoint;
  bool resume = false;
  pipeline->add_option("srg", srg, "v k lambda mu")->required()->expected(4);
  pipeline->add_option("--r", r, "eigenvalue")->required();
  pipeline->add_flag("--no-graceful", no_graceful, "never restrict to a graceful pair");
  pipeline->add_option("--checkpoint", checkpoint, "directory for level files and manifests");
  pipeline->add_flag("--resume", resume, "continue from checkpoints");
  add_common(pipeline, common);

  auto* scenario = app.add_subcommand("scenario", "run a built-in or file-defined scenario");
  std::string scenario_name;
  std::string scenario_file;
  bool list = false;
  bool heavy = false;
  bool emit = false;
  scenario->add_option("name", scenario_name, "built-in scenario");
  scenario->add_option("--file", scenario_file, "scenario definition file");
  scenario->add_flag("--list", list, "list built-in scenarios");
  scenario->add_flag("--heavy", heavy, "allow long-running scenarios");
  scenario->add_flag("--emit", emit, "print surviving graphs as graph6");
  bool verbose = false;
  scenario->add_flag("--verbose", verbose, "report level sizes on stderr");
  add_common(scenario, common);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "specter: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*params) return cmd_params(params_from(srg), out);
    if (*bvec) return cmd_bvec(params_from(srg), degrees, caps, out);
    if (*interlace) return cmd_interlace(params_from(srg), common, in, out);
    if (*extend) {
      auto ctx = context_for(params_from(srg), r, common.jobs);
      if (target) ctx.target_order = *target;
      ctx.use_graceful = !no_graceful;
      return cmd_extend(ctx, common, in, out, err);
    }
    if (*compgraph) return cmd_compgraph(r, min_order, !irregular, common, in, out, err);
    if (*clique) return cmd_clique(cutoff, common, in, out);
    if (*pipeline) {
      return cmd_pipeline(context_for(params_from(srg), r, common.jobs), !no_graceful, checkpoint, resume, common, in,
                          out, err);
    }
    if (*scenario) return cmd_scenario(scenario_name, scenario_file, list, heavy, emit, verbose, common, out, err);
  } catch (const UsageError& e) {
    err << "specter: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "specter: input error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnsupportedSizeError& e) {
    err << "specter: input error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SingularMatrixError& e) {
    err << "specter: input error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "specter: input error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParameterError& e) {
    err << "specter: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "specter: internal error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace specter
