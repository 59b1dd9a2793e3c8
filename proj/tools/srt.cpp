// srt: strongly stable roommates solver CLI.
//
// Subcommands: solve, verify, oracle, crosscheck, gen. Exit codes encode
// operability, not the mathematical answer: 0 = a decision was reached
// (yes or no), 1 = crosscheck found a disagreement, 2 = input error,
// 3 = a defensive limit was hit or an internal invariant failed.

#include "CLI11.hpp"
#include "json.hpp"

#include "sr/algorithm.hpp"
#include "sr/generator.hpp"
#include "sr/instance.hpp"
#include "sr/oracle.hpp"
#include "sr/polytope.hpp"
#include "sr/rational.hpp"
#include "sr/verify.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using nlohmann::json;

constexpr int kExitDecision = 0;
constexpr int kExitDisagreement = 1;
constexpr int kExitInputError = 2;
constexpr int kExitLimit = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

sr::Rat parse_rat_flag(const std::string& text, const std::string& flag) {
  auto r = sr::rat_from_string(text);
  if (!r) throw InputError(flag + " expects a rational like 1/3, got '" + text + "'");
  return *r;
}

sr::SeparationMode parse_separation(const std::string& name) {
  if (name == "padberg-rao") return sr::SeparationMode::PadbergRao;
  if (name == "exhaustive") return sr::SeparationMode::Exhaustive;
  if (name == "both") return sr::SeparationMode::Both;
  throw InputError("--separation expects padberg-rao, exhaustive or both");
}

std::string matching_names(const sr::Instance& inst, const sr::Matching& mu) {
  std::string out;
  for (sr::EdgeId e : mu.edges) {
    if (!out.empty()) out += ' ';
    out += inst.edge_name(e);
  }
  return out;
}

// --- solve -----------------------------------------------------------------

struct SolveFlags {
  std::string path;
  bool trace = false;
  bool certificate = false;
  bool as_json = false;
  bool check = false;
  std::string separation = "padberg-rao";
  long limit_cuts = -1;
  long limit_pivots = sr::kDefaultPivotLimit;
};

int cmd_solve(const SolveFlags& flags) {
  sr::Instance inst = sr::parse_instance(read_file(flags.path));
  sr::RunOptions opts;
  opts.separation = parse_separation(flags.separation);
  opts.cut_limit = flags.limit_cuts;
  opts.pivot_limit = flags.limit_pivots;
  sr::EdgeVector last_point;
  bool have_point = false;
  if (flags.certificate) {
    opts.on_point = [&](int, const sr::EdgeVector& z) {
      last_point = z;
      have_point = true;
    };
  }
  sr::SolveOutcome out = sr::run(inst, opts);
  if (out.exists()) {
    if (sr::strongly_stable(inst, *out.matching).has_value()) {
      throw sr::AlgorithmError("yes-answer failed re-verification");
    }
    last_point = sr::characteristic_vector(inst, *out.matching);
    have_point = true;
  } else if (flags.check) {
    // nothing extra to re-check for a no-answer
  }

  const bool yes = out.exists();
  const bool polytope_empty = out.status == sr::SolveOutcome::Status::PolytopeEmpty;

  if (flags.as_json) {
    json doc;
    doc["result"] = yes ? "yes" : "no";
    if (polytope_empty) doc["reason"] = "polytope-empty";
    if (yes) {
      doc["matching"] = json::array();
      for (sr::EdgeId e : out.matching->edges) doc["matching"].push_back(inst.edge_name(e));
    }
    doc["iterations"] = out.trace.size();
    if (flags.trace) {
      doc["trace"] = json::array();
      for (const auto& rec : out.trace) {
        doc["trace"].push_back({{"t", rec.t},
                                {"f", inst.edge_name(rec.f)},
                                {"v", inst.name(rec.v)},
                                {"g", inst.edge_name(rec.g)},
                                {"branch", rec.branch == sr::IterationRecord::Branch::Max  ? "max"
                                           : rec.branch == sr::IterationRecord::Branch::Min ? "min"
                                                                                            : "no"},
                                {"tier_size", rec.tier_size}});
      }
    }
    if (flags.certificate && have_point) {
      json cert = json::object();
      for (sr::EdgeId e = 0; e < inst.num_edges(); ++e) {
        if (last_point[e] != 0) cert[inst.edge_name(e)] = sr::rat_to_string(last_point[e]);
      }
      doc["certificate"] = cert;
    }
    std::cout << doc.dump(2) << '\n';
    return kExitDecision;
  }

  std::cout << "result: " << (yes ? "yes" : "no") << '\n';
  if (yes) std::cout << "matching: " << matching_names(inst, *out.matching) << '\n';
  if (polytope_empty) std::cout << "reason: polytope-empty\n";
  std::cout << "iterations: " << out.trace.size() << '\n';
  if (flags.trace) std::cout << sr::trace_to_string(inst, out.trace);
  if (flags.certificate && have_point) {
    for (sr::EdgeId e = 0; e < inst.num_edges(); ++e) {
      if (last_point[e] != 0) {
        std::cout << inst.edge_name(e) << '=' << sr::rat_to_string(last_point[e]) << '\n';
      }
    }
  }
  return kExitDecision;
}

// --- verify ----------------------------------------------------------------

sr::Matching parse_matching_spec(const sr::Instance& inst, const std::vector<std::string>& pairs) {
  sr::Matching mu;
  for (const std::string& token : pairs) {
    size_t dash = token.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 == token.size()) {
      throw InputError("matching entries look like u-v, got '" + token + "'");
    }
    sr::VertexId u = inst.vertex_by_name(token.substr(0, dash));
    sr::VertexId v = inst.vertex_by_name(token.substr(dash + 1));
    if (u < 0 || v < 0) throw InputError("unknown agent in pair '" + token + "'");
    sr::EdgeId e = inst.edge_between(u, v);
    if (e < 0) {
      throw sr::VerifyError(sr::VerifyError::Kind::UnknownEdge,
                            "'" + token + "' is not an edge of the instance");
    }
    mu.edges.push_back(e);
  }
  std::sort(mu.edges.begin(), mu.edges.end());
  mu.edges.erase(std::unique(mu.edges.begin(), mu.edges.end()), mu.edges.end());
  return mu;
}

int cmd_verify(const std::string& path, std::vector<std::string> pairs,
               const std::string& matching_file, bool as_json) {
  sr::Instance inst = sr::parse_instance(read_file(path));
  if (!matching_file.empty()) {
    std::istringstream in(read_file(matching_file));
    std::string token;
    while (in >> token) pairs.push_back(token);
  }
  sr::Matching mu = parse_matching_spec(inst, pairs);
  std::optional<sr::EdgeId> blocking = sr::strongly_stable(inst, mu);
  if (as_json) {
    json doc;
    doc["strongly_stable"] = !blocking.has_value();
    if (blocking) doc["blocking_edge"] = inst.edge_name(*blocking);
    std::cout << doc.dump(2) << '\n';
  } else if (blocking) {
    std::cout << "strongly-stable: false blocking-edge: " << inst.edge_name(*blocking) << '\n';
  } else {
    std::cout << "strongly-stable: true\n";
  }
  return kExitDecision;
}

// --- oracle ----------------------------------------------------------------

int cmd_oracle(const std::string& path, int edge_cap, bool as_json) {
  sr::Instance inst = sr::parse_instance(read_file(path));
  std::optional<sr::Matching> mu = sr::brute_force_exists(inst, edge_cap);
  if (as_json) {
    json doc;
    doc["result"] = mu ? "yes" : "no";
    doc["method"] = "brute-force";
    if (mu) {
      doc["matching"] = json::array();
      for (sr::EdgeId e : mu->edges) doc["matching"].push_back(inst.edge_name(e));
    }
    std::cout << doc.dump(2) << '\n';
    return kExitDecision;
  }
  std::cout << "result: " << (mu ? "yes" : "no") << '\n';
  if (mu) std::cout << "matching: " << matching_names(inst, *mu) << '\n';
  std::cout << "method: brute-force\n";
  return kExitDecision;
}

// --- crosscheck --------------------------------------------------------------

struct CrosscheckFlags {
  bool exhaustive_n4 = false;
  int n = 0;
  int count = 100;
  std::uint64_t seed = 1;
  std::string tie = "1/3";
  std::string edge = "1/2";
  int jobs = 1;
  int edge_cap = 64;
  std::string separation = "padberg-rao";
};

struct CheckResult {
  bool agree = true;
  bool yes = false;
  bool strict_consistent = true;
  std::string instance_text;  // filled on failure
};

CheckResult check_one(const sr::Instance& inst, int edge_cap, bool strict_mode,
                      sr::SeparationMode separation) {
  CheckResult res;
  sr::RunOptions opts;
  opts.separation = separation;
  sr::SolveOutcome out = sr::run(inst, opts);
  std::optional<sr::Matching> oracle = sr::brute_force_exists(inst, edge_cap);
  res.yes = out.exists();
  res.agree = out.exists() == oracle.has_value();
  if (res.agree && out.exists()) {
    res.agree = !sr::strongly_stable(inst, *out.matching).has_value();
  }
  if (strict_mode) {
    // with strict preferences, blocking must coincide with the classical
    // both-strictly-prefer notion on every matching
    sr::enumerate_matchings(
        inst,
        [&](const sr::Matching& mu) {
          for (sr::EdgeId e = 0; e < inst.num_edges(); ++e) {
            if (std::find(mu.edges.begin(), mu.edges.end(), e) != mu.edges.end()) continue;
            sr::BlockReport rep = sr::blocks(inst, mu, e);
            if (rep.blocks != (rep.strong_on[0] && rep.strong_on[1])) {
              res.strict_consistent = false;
              return false;
            }
          }
          return true;
        },
        edge_cap);
  }
  if (!res.agree || !res.strict_consistent) res.instance_text = inst.serialize();
  return res;
}

int cmd_crosscheck(const CrosscheckFlags& flags) {
  std::vector<sr::Instance> instances;
  bool strict_mode = false;
  if (flags.exhaustive_n4) {
    sr::enumerate_instances(4, true, [&](const sr::Instance& inst) {
      instances.push_back(inst);
      return true;
    });
  } else {
    if (flags.n < 1) throw InputError("crosscheck needs --exhaustive-n4 or --n");
    sr::Rat tie = parse_rat_flag(flags.tie, "--tie");
    sr::Rat edge = parse_rat_flag(flags.edge, "--edge");
    strict_mode = tie == 0;
    for (int i = 0; i < flags.count; ++i) {
      instances.push_back(sr::random_instance(flags.n, edge, tie, flags.seed + i));
    }
  }

  std::vector<CheckResult> results(instances.size());
  int jobs = std::max(1, flags.jobs);
  sr::SeparationMode separation = parse_separation(flags.separation);
  std::atomic<size_t> cursor{0};
  auto worker = [&] {
    for (;;) {
      size_t i = cursor.fetch_add(1);
      if (i >= instances.size()) return;
      results[i] = check_one(instances[i], flags.edge_cap, strict_mode, separation);
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  size_t agreements = 0, yes_count = 0;
  std::optional<size_t> first_bad;
  for (size_t i = 0; i < results.size(); ++i) {
    if (results[i].agree && results[i].strict_consistent) {
      ++agreements;
    } else if (!first_bad) {
      first_bad = i;
    }
    if (results[i].yes) ++yes_count;
  }
  std::cout << "instances: " << instances.size() << '\n';
  std::cout << "agreements: " << agreements << '\n';
  std::cout << "yes: " << yes_count << '\n';
  std::cout << "no: " << instances.size() - yes_count << '\n';
  if (first_bad) {
    std::cout << "result: disagreement\n";
    std::cout << "offending instance:\n" << results[*first_bad].instance_text;
    return kExitDisagreement;
  }
  std::cout << "result: agreement\n";
  return kExitDecision;
}

// --- gen ---------------------------------------------------------------------

int cmd_gen(int n, const std::string& edge, const std::string& tie, std::uint64_t seed) {
  if (n < 1) throw InputError("--n must be at least 1");
  sr::Instance inst = sr::random_instance(n, parse_rat_flag(edge, "--edge"),
                                          parse_rat_flag(tie, "--tie"), seed);
  std::cout << inst.serialize();
  return kExitDecision;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strongly stable roommates solver"};
  app.require_subcommand(1);

  SolveFlags solve_flags;
  CLI::App* solve = app.add_subcommand("solve", "decide an instance file");
  solve->add_option("path", solve_flags.path, "instance file")->required();
  solve->add_flag("--trace", solve_flags.trace, "print the iteration trace");
  solve->add_flag("--certificate", solve_flags.certificate, "print the final point, edge=p/q");
  solve->add_flag("--json", solve_flags.as_json, "emit a single JSON object");
  solve->add_flag("--check", solve_flags.check, "re-verify yes-answers (always on, kept for scripts)");
  solve->add_option("--separation", solve_flags.separation,
                    "padberg-rao | exhaustive | both (both cross-checks)");
  solve->add_option("--limit-cuts", solve_flags.limit_cuts, "odd-set cut cap (-1: 10|V|^2)");
  solve->add_option("--limit-pivots", solve_flags.limit_pivots, "simplex pivot cap");

  std::string verify_path, matching_file;
  std::vector<std::string> verify_pairs;
  bool verify_json = false;
  CLI::App* verify = app.add_subcommand("verify", "check a matching for strong stability");
  verify->add_option("path", verify_path, "instance file")->required();
  verify->add_option("pairs", verify_pairs, "matching as u-v pairs");
  verify->add_option("--matching-file", matching_file, "read u-v pairs from a file");
  verify->add_flag("--json", verify_json, "emit a single JSON object");

  std::string oracle_path;
  int oracle_cap = sr::kDefaultMatchingEdgeCap;
  bool oracle_json = false;
  CLI::App* oracle = app.add_subcommand("oracle", "brute-force answer by matching enumeration");
  oracle->add_option("path", oracle_path, "instance file")->required();
  oracle->add_option("--limit-edges", oracle_cap, "enumeration edge cap");
  oracle->add_flag("--json", oracle_json, "emit a single JSON object");

  CrosscheckFlags cc;
  CLI::App* crosscheck = app.add_subcommand("crosscheck", "solve vs oracle on instance batches");
  crosscheck->add_flag("--exhaustive-n4", cc.exhaustive_n4,
                       "all 28561 weak-order profiles on K4");
  crosscheck->add_option("--n", cc.n, "agents per random instance");
  crosscheck->add_option("--count", cc.count, "number of random instances");
  crosscheck->add_option("--seed", cc.seed, "base seed (instance i uses seed+i)");
  crosscheck->add_option("--tie", cc.tie, "tie probability p/q");
  crosscheck->add_option("--edge", cc.edge, "edge probability p/q");
  crosscheck->add_option("--jobs", cc.jobs, "worker threads");
  crosscheck->add_option("--limit-edges", cc.edge_cap, "oracle enumeration edge cap");
  crosscheck->add_option("--separation", cc.separation,
                         "padberg-rao | exhaustive | both (both cross-checks)");

  int gen_n = 0;
  std::string gen_edge = "1/2", gen_tie = "1/3";
  std::uint64_t gen_seed = 1;
  CLI::App* gen = app.add_subcommand("gen", "emit a seeded random instance");
  gen->add_option("--n", gen_n, "number of agents")->required();
  gen->add_option("--edge", gen_edge, "edge probability p/q");
  gen->add_option("--tie", gen_tie, "tie probability p/q");
  gen->add_option("--seed", gen_seed, "seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  try {
    if (*solve) return cmd_solve(solve_flags);
    if (*verify) return cmd_verify(verify_path, verify_pairs, matching_file, verify_json);
    if (*oracle) return cmd_oracle(oracle_path, oracle_cap, oracle_json);
    if (*crosscheck) return cmd_crosscheck(cc);
    if (*gen) return cmd_gen(gen_n, gen_edge, gen_tie, gen_seed);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const sr::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const sr::VerifyError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    // defensive limits and internal invariants
    std::cerr << "error: " << e.what() << '\n';
    return kExitLimit;
  }
  return kExitInputError;
}
