#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "specter/adjdump.hpp"
#include "specter/cli.hpp"
#include "specter/errors.hpp"
#include "specter/interlacing.hpp"
#include "specter/scenario.hpp"

using namespace specter;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  Run r;
  r.code = run_subcommand(args, in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::multiset<std::string> line_set(const std::string& text) {
  const auto l = lines_of(text);
  return {l.begin(), l.end()};
}

std::string graph6_lines(const std::vector<Graph>& graphs) {
  std::string s;
  for (const auto& g : graphs) s += write_graph6(g) + "\n";
  return s;
}

std::vector<Graph> read_all(const std::string& text) {
  std::istringstream in(text);
  GraphReader reader(in);
  std::vector<Graph> out;
  while (auto g = reader.next()) out.push_back(*g);
  return out;
}

std::size_t parse_error_offset(const std::string& text) {
  try {
    read_all(text);
  } catch (const ParseError& e) {
    return e.offset();
  }
  return SIZE_MAX;
}

// Composes interlace | extend ... | compgraph | clique the way a shell would.
int composed(const std::vector<std::string>& srg, const std::string& r, std::size_t steps, const std::string& f,
             const std::string& seeds) {
  auto with = [&](std::vector<std::string> head, std::vector<std::string> tail) {
    head.insert(head.end(), srg.begin(), srg.end());
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
  };
  std::string stream = run(with({"interlace"}, {}), seeds).out;
  for (std::size_t i = 0; i < steps; ++i) stream = run(with({"extend"}, {"--r", r}), stream).out;
  stream = run({"compgraph", "--r", r, "--min-order", f}, stream).out;
  return run({"clique", "--cutoff", f}, stream).code;
}

}  // namespace

TEST_CASE("params report") {
  const auto r = run({"params", "75", "32", "10", "16"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "params 75,32,10,16\nedge_equation ok\nr=2 f=56 s=-8 g=18\nstar_complement_order=19\nfeasible yes\n");
  const auto bad = run({"params", "10", "3", "1", "1"});
  CHECK(bad.out.find("edge_equation fails") != std::string::npos);
  CHECK(run({"params", "10", "10", "1", "1"}).code == kExitUsage);
  CHECK(run({"params", "10", "3"}).code == kExitUsage);
}

TEST_CASE("bvec subcommand") {
  const auto r = run({"bvec", "75", "32", "10", "16", "--degrees", "0,0,0,4", "--cap", "4=0"});
  CHECK(r.code == kExitOk);
  CHECK(line_set(r.out) == std::multiset<std::string>{"(0,29,39,3,0)", "(1,26,42,2,0)", "(2,23,45,1,0)", "(3,20,48,0,0)"});
  const auto k5 = run({"bvec", "75", "32", "10", "16", "--degrees", "0,0,0,0,5"});
  CHECK(k5.out == "(0,0,70,0,0,0)\n");
  CHECK(run({"bvec", "75", "32", "10", "16", "--degrees", "0,x"}).code == kExitUsage);
}

TEST_CASE("usage and input errors exit 2") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  const auto bad = run({"interlace", "10", "3", "0", "1"}, "Bw\nB!\n");
  CHECK(bad.code == kExitUsage);
  CHECK(bad.err.find("byte 4") != std::string::npos);
  CHECK(run({"extend", "10", "3", "0", "1", "--r", "5"}, "@\n").code == kExitUsage);
  CHECK(run({"scenario", "no-such-scenario"}).code == kExitUsage);
  CHECK(run({"interlace", "10", "3", "0", "1", "--shard", "3/2"}, "@\n").code == kExitUsage);
}

TEST_CASE("interlace filter keeps input order") {
  const std::vector<std::string> input{"Cr", "@", "Bw", "A_", "Dhc"};
  std::string text, expected;
  const InterlacingFilter filter({10, 3, 0, 1});
  for (const auto& s : input) {
    text += s + "\n";
    if (filter(parse_graph6(s))) expected += s + "\n";
  }
  const auto r = run({"interlace", "10", "3", "0", "1"}, text);
  CHECK(r.code == kExitOk);
  CHECK(r.out == expected);
  CHECK(r.out.find("Bw") == std::string::npos);  // a triangle in a triangle-free srg
}

TEST_CASE("pipeline and its stdin/stdout composition agree") {
  const std::vector<std::string> petersen{"10", "3", "0", "1"};
  const std::string seed = write_graph6(Graph(1)) + "\n";
  const auto mono = run({"pipeline", "10", "3", "0", "1", "--r", "1"}, seed);
  CHECK(mono.code == kExitAssertion);
  CHECK(mono.out.find("witness-found") != std::string::npos);
  CHECK(composed(petersen, "1", 4, "5", seed) == kExitAssertion);

  const std::string k6 = write_graph6(complete_graph(6)) + "\n";
  const auto refuted = run({"pipeline", "75", "32", "10", "16", "--r", "2"}, k6);
  CHECK(refuted.code == kExitOk);
  CHECK(refuted.out.find(" refuted ") != std::string::npos);
  CHECK(composed({"75", "32", "10", "16"}, "2", 13, "56", k6) == kExitOk);
}

TEST_CASE("pipeline checkpoints") {
  const fs::path dir = fs::temp_directory_path() / "specter_cli_checkpoint";
  fs::remove_all(dir);
  const std::string seed = write_graph6(Graph(1)) + "\n";
  const auto first = run({"pipeline", "10", "3", "0", "1", "--r", "1", "--checkpoint", dir.string()}, seed);
  CHECK(fs::exists(dir / "seed_0" / "manifest.txt"));
  const auto again =
      run({"pipeline", "10", "3", "0", "1", "--r", "1", "--checkpoint", dir.string(), "--resume"}, seed);
  // Counts cover only the work done by this invocation; the verdict is the same.
  const auto verdict_part = [](const std::string& out) { return out.substr(0, out.find(" generated=")); };
  CHECK(verdict_part(again.out) == verdict_part(first.out));
  CHECK(again.out.substr(again.out.find(" witness=")) == first.out.substr(first.out.find(" witness=")));
  CHECK(again.out.find("generated=0 ") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("shards partition the work") {
  std::mt19937_64 rng(71);
  std::vector<Graph> graphs;
  for (int i = 0; i < 60; ++i) graphs.push_back(oracle::random_graph(5 + i % 4, 0.3, rng));
  const std::string input = graph6_lines(graphs);
  for (const std::string sub : {"interlace", "extend"}) {
    std::vector<std::string> base{sub, "10", "3", "0", "1"};
    if (sub == "extend") base.insert(base.end(), {"--r", "1", "--target", "9"});
    const auto whole = line_set(run(base, input).out);
    std::multiset<std::string> united;
    for (int i = 0; i < 3; ++i) {
      auto args = base;
      args.insert(args.end(), {"--shard", std::to_string(i) + "/3"});
      for (const auto& l : lines_of(run(args, input).out)) united.insert(l);
    }
    if (sub == "interlace") {
      CHECK(united == whole);
    } else {
      // Classes from different shards may coincide; the union as a set matches.
      CHECK(std::set<std::string>(united.begin(), united.end()) == std::set<std::string>(whole.begin(), whole.end()));
    }
  }
}

TEST_CASE("output is byte-identical across job counts") {
  std::mt19937_64 rng(72);
  std::vector<Graph> graphs;
  for (int i = 0; i < 40; ++i) graphs.push_back(oracle::random_graph(6, 0.4, rng));
  const std::string input = graph6_lines(graphs);
  const std::vector<std::vector<std::string>> commands{
      {"interlace", "75", "32", "10", "16"},
      {"extend", "75", "32", "10", "16", "--r", "2"},
      {"scenario", "x1x2-adjacent", "--emit"},
      {"clique"},
  };
  for (const auto& cmd : commands) {
    std::string reference;
    for (const std::string jobs : {"1", "4", "16"}) {
      auto args = cmd;
      args.insert(args.end(), {"--jobs", jobs});
      const auto r = run(args, input);
      CHECK(r.code != kExitUsage);
      if (jobs == "1") reference = r.out;
      CHECK(r.out == reference);
    }
  }
}

TEST_CASE("adjacency dumps") {
  CHECK(format_adjdump(path_graph(3)) == "n=3\n4\na\n4\n");
  CHECK(format_adjdump(Graph(0)) == "n=0\n");
  std::mt19937_64 rng(73);
  std::vector<Graph> graphs;
  std::string mixed;
  for (int i = 0; i < 40; ++i) {
    graphs.push_back(oracle::random_graph(i * 3 % 130, 0.4, rng));
    mixed += (graphs.back().order() <= kGraph6MaxOrder && i % 2 == 0) ? write_graph6(graphs.back()) + "\n\n"
                                                                      : format_adjdump(graphs.back());
  }
  CHECK(read_all(mixed) == graphs);

  CHECK(parse_error_offset("n=\n") == 2);
  CHECK(parse_error_offset("Bw\nn=x\n") == 5);
  CHECK(parse_error_offset("n=2\n4\n") == 6);          // truncated
  CHECK(parse_error_offset("n=2\n44\n8\n") == 4);      // row too long
  CHECK(parse_error_offset("n=2\n4\ng\n") == 6);       // non-hex
  CHECK(parse_error_offset("n=2\n6\n8\n") == 4);       // padding bit
  CHECK(parse_error_offset("n=2\n8\n8\n") == 4);       // loop
  CHECK(parse_error_offset("n=2\n4\n0\n") == 6);       // asymmetric
  CHECK(parse_error_offset("n=3\n4\na\n4\n") == SIZE_MAX);
}

TEST_CASE("compgraph and clique subcommands") {
  // C5 with r = 1 under the regular-host rule.
  const auto comp = run({"compgraph", "--r", "1"}, write_graph6(cycle_graph(5)) + "\n");
  CHECK(comp.code == kExitOk);
  const auto graphs = read_all(comp.out);
  REQUIRE(graphs.size() == 1);
  const auto skipped = run({"compgraph", "--r", "1", "--min-order", "1000"}, write_graph6(cycle_graph(5)) + "\n");
  CHECK(skipped.out.empty());
  CHECK(skipped.err.find("below_min_order=1") != std::string::npos);
  CHECK(run({"compgraph", "--r", "2"}, write_graph6(cycle_graph(4)) + "\n").code == kExitUsage);

  const auto cl = run({"clique"}, format_adjdump(petersen_graph()) + write_graph6(complete_graph(5)) + "\n");
  CHECK(cl.code == kExitOk);
  const auto verdicts = lines_of(cl.out);
  REQUIRE(verdicts.size() == 2);
  CHECK(verdicts[0].rfind("exact 2 witness ", 0) == 0);
  CHECK(verdicts[1] == "exact 5 witness 0,1,2,3,4");
  CHECK(run({"clique", "--cutoff", "3"}, write_graph6(complete_graph(5)) + "\n").code == kExitAssertion);
  CHECK(run({"clique", "--cutoff", "3"}, write_graph6(petersen_graph()) + "\n").code == kExitOk);
}

TEST_CASE("built-in scenarios") {
  const auto x1x2 = run({"scenario", "x1x2-adjacent"});
  CHECK(x1x2.code == kExitOk);
  CHECK(x1x2.out.find("generated 6\n") != std::string::npos);
  CHECK(x1x2.out.find("interlacing 0\n") != std::string::npos);
  CHECK(lines_of(x1x2.out).back() == "PASS");
  for (const std::string name : {"x3-independent", "k4-bvectors", "k5-config", "petersen-positive"}) {
    const auto r = run({"scenario", name});
    CHECK_MESSAGE(r.code == kExitOk, name);
  }
  for (const std::string name : {"case-126422", "case-029393", "case-223451", "triangles-8"}) {
    const auto r = run({"scenario", name});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("skipped") != std::string::npos);
  }
  const auto list = run({"scenario", "--list"});
  CHECK(lines_of(list.out).size() == builtin_scenarios().size());
  CHECK_THROWS_AS(run_scenario("nope", {}), DomainError);
}

TEST_CASE("file-defined scenarios") {
  const fs::path file = fs::temp_directory_path() / "specter_family.txt";
  // K2 plus two vertices on one clique vertex each, edge between them free:
  // paw, C4, K_{1,3} and P4.
  std::ofstream(file) << "name=two-pendants\nparams=10,3,0,1\nclique=2\nrole=a count=2 attach=1\nfree=a,a\n"
                         "prune=none\nexpect_generated=4\n";
  const auto r = run({"scenario", "--file", file.string()});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("generated 4\n") != std::string::npos);

  std::ofstream(file) << "name=wrong\nparams=10,3,0,1\nclique=2\nrole=a count=2 attach=1\nexpect_generated=3\n";
  CHECK(run({"scenario", "--file", file.string()}).code == kExitAssertion);

  std::ofstream(file) << "name=broken\nparams=10,3,0,1\nrole=a count=x\n";
  const auto broken = run({"scenario", "--file", file.string()});
  CHECK(broken.code == kExitUsage);
  CHECK(broken.err.find("byte 28") != std::string::npos);
  fs::remove(file);

  std::istringstream missing("name=x\n");
  CHECK_THROWS_AS(parse_family_spec(missing), ParseError);
  std::istringstream unknown("name=x\nparams=10,3,0,1\nrole=a\nfree=a,b\n");
  CHECK_THROWS_AS(parse_family_spec(unknown), ParseError);
}
