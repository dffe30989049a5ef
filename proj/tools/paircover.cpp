// Command-line front end: generate, verify, witness, stats.
//
// Exit codes: 0 guarantee holds / success, 1 guarantee fails, 2 usage or
// input error, 3 undecided (solver budget).

#include <chrono>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "paircover/io.hpp"
#include "paircover/subset.hpp"
#include "paircover/verify.hpp"

namespace {

using namespace paircover;
using nlohmann::json;

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUndecided = 3;

std::string join(const std::vector<element_id>& xs) {
  std::ostringstream out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out << ' ';
    out << xs[i];
  }
  return out.str();
}

const char* outcome_name(verify_outcome o) {
  switch (o) {
    case verify_outcome::holds: return "HOLDS";
    case verify_outcome::fails: return "FAILS";
    case verify_outcome::undecided: return "UNDECIDED";
  }
  return "?";
}

const char* method_name(verify_method m) {
  switch (m) {
    case verify_method::exhaustive: return "exhaustive";
    case verify_method::graph: return "graph";
    case verify_method::structural: return "structural";
  }
  return "?";
}

// Derives the subset size from the construction metadata when the user did
// not pass one.
int resolve_subset_size(const design_family& fam, int requested) {
  if (requested > 0) return requested;
  if (!fam.structure)
    throw parameter_error("--subset-size is required for designs without structure");
  try {
    return proof_witness(fam).certified_threshold();
  } catch (const error&) {
    throw parameter_error(
        "cannot derive the subset size from invalid structure; pass --subset-size");
  }
}

struct verify_printer {
  bool as_json = false;
  int subset_size = 0;

  void print(const verification_report& rpt, double elapsed_ms) const {
    if (as_json) {
      json j{{"command", "verify"},
             {"method", method_name(rpt.method)},
             {"outcome", outcome_name(rpt.outcome)},
             {"subset_size", subset_size},
             {"scanned", rpt.scanned},
             {"elapsed_ms", elapsed_ms}};
      if (rpt.counterexample) j["counterexample"] = *rpt.counterexample;
      if (rpt.alpha) j["alpha"] = *rpt.alpha;
      if (rpt.certificate) j["certificate"] = rpt.certificate->cliques;
      if (rpt.certified_threshold) j["certified_threshold"] = *rpt.certified_threshold;
      if (!rpt.detail.empty()) j["detail"] = rpt.detail;
      std::cout << j.dump() << '\n';
      return;
    }
    std::cout << "method: " << method_name(rpt.method) << '\n'
              << "outcome: " << outcome_name(rpt.outcome) << '\n'
              << "scanned: " << rpt.scanned << '\n'
              << "elapsed_ms: " << elapsed_ms << '\n';
    if (rpt.alpha) std::cout << "alpha: " << *rpt.alpha << '\n';
    if (rpt.certified_threshold)
      std::cout << "certified_threshold: " << *rpt.certified_threshold << '\n';
    if (rpt.counterexample)
      std::cout << "counterexample: " << join(*rpt.counterexample) << '\n';
    if (rpt.certificate) {
      std::cout << "certificate_size: " << rpt.certificate->cliques.size() << '\n';
      for (const auto& clique : rpt.certificate->cliques)
        std::cout << "clique: " << join(clique) << '\n';
    }
    if (!rpt.detail.empty()) std::cout << "detail: " << rpt.detail << '\n';
  }
};

int run_generate(int group_size, int groups, const std::string& out_path, bool as_json) {
  const construction_params params(group_size, groups);
  const design_family fam = build_family(params);
  std::ostream* summary = &std::cout;
  if (!out_path.empty()) {
    write_design_file(fam, out_path);
  } else {
    std::cout << write_design(fam);
    summary = &std::cerr;
  }
  if (as_json) {
    const json j{{"command", "generate"},
                 {"n", fam.n},
                 {"k", fam.k},
                 {"blocks", fam.blocks.size()},
                 {"threshold", params.guarantee_threshold()}};
    *summary << j.dump() << '\n';
  } else {
    *summary << "n: " << fam.n << '\n'
             << "blocks: " << fam.blocks.size() << '\n'
             << "threshold: " << params.guarantee_threshold() << '\n';
  }
  return kExitHolds;
}

int run_verify(const std::string& path, int subset_size, const std::string& mode,
               int jobs, std::uint64_t budget, bool as_json) {
  const design_family fam = read_design_file(path);
  const int s = resolve_subset_size(fam, subset_size);
  std::vector<verify_method> methods;
  if (mode == "exhaustive") methods = {verify_method::exhaustive};
  else if (mode == "graph") methods = {verify_method::graph};
  else if (mode == "structural") methods = {verify_method::structural};
  else {
    methods = {verify_method::exhaustive, verify_method::graph};
    if (fam.structure) methods.push_back(verify_method::structural);
  }

  const verify_printer printer{as_json, s};
  std::vector<verification_report> reports;
  bool first = true;
  for (verify_method m : methods) {
    const auto start = std::chrono::steady_clock::now();
    verification_report rpt;
    switch (m) {
      case verify_method::exhaustive: rpt = exhaustive_verify(fam, s, jobs); break;
      case verify_method::graph: rpt = graph_verify(fam, s, budget); break;
      case verify_method::structural: rpt = structural_verify(fam, s); break;
    }
    const double elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    if (!as_json && !first) std::cout << '\n';
    first = false;
    printer.print(rpt, elapsed_ms);
    reports.push_back(std::move(rpt));
  }

  bool any_fails = false, any_undecided = false;
  bool saw_holds = false, saw_fails = false;
  for (const auto& rpt : reports) {
    if (rpt.outcome == verify_outcome::fails) any_fails = saw_fails = true;
    if (rpt.outcome == verify_outcome::holds) saw_holds = true;
    if (rpt.outcome == verify_outcome::undecided) any_undecided = true;
  }
  if (methods.size() > 1) {
    const bool agree = !(saw_holds && saw_fails);
    if (as_json)
      std::cout << json{{"command", "verify"}, {"agreement", agree}}.dump() << '\n';
    else
      std::cout << "\nagreement: " << (agree ? "yes" : "no") << '\n';
    if (!agree) return kExitUsage;  // methods disagree: internal inconsistency
  }
  if (any_fails) return kExitFails;
  if (any_undecided) return kExitUndecided;
  return kExitHolds;
}

std::vector<element_id> parse_set(const std::string& csv) {
  std::vector<element_id> out;
  std::istringstream in(csv);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    std::size_t used = 0;
    int value;
    try {
      value = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw parameter_error("invalid element '" + tok + "' in --set");
    }
    if (used != tok.size()) throw parameter_error("invalid element '" + tok + "' in --set");
    out.push_back(value);
  }
  if (out.empty()) throw parameter_error("--set must list at least one element");
  return out;
}

int run_witness(const std::string& path, const std::string& setcsv, bool as_json) {
  const design_family fam = read_design_file(path);
  const proof_witness pw(fam);
  const auto subset = parse_set(setcsv);
  const witness_result res = pw.lookup(subset);
  const block& blk = fam.blocks[res.block_index - 1];
  if (as_json) {
    json j{{"command", "witness"}, {"block_index", res.block_index}, {"block", blk}};
    if (res.case_tag == witness_result::kind::base_collision) {
      j["case"] = "BASE";
      j["base"] = res.base;
    } else {
      j["case"] = "PAIR";
      j["pair"] = res.pair;
      j["left_half"] = res.left_half;
      j["right_half"] = res.right_half;
    }
    std::cout << j.dump() << '\n';
  } else if (res.case_tag == witness_result::kind::base_collision) {
    std::cout << "BASE i=" << res.base << " -> block " << res.block_index << ": "
              << join(blk) << '\n';
  } else {
    std::cout << "PAIR m=" << res.pair << " u=" << res.left_half
              << " v=" << res.right_half << " -> block " << res.block_index << ": "
              << join(blk) << '\n';
  }
  return kExitHolds;
}

int run_stats(const std::string& path, bool irredundancy, int subset_size,
              std::uint64_t budget, bool as_json) {
  const design_family fam = read_design_file(path);
  const coverage_record rec = coverage_stats(fam);
  const pair_graph graph = covered_pair_graph(fam);
  const mis_result mis = independence_number(graph, budget);
  const clique_cover cover = greedy_clique_cover(graph);

  json j{{"command", "stats"},
         {"n", fam.n},
         {"k", fam.k},
         {"blocks", fam.blocks.size()},
         {"covered_pairs", rec.covered_pairs},
         {"clique_cover_size", cover.cliques.size()}};
  std::ostringstream hist;
  {
    json jh = json::object();
    bool first = true;
    for (const auto& [mult, count] : rec.multiplicity_histogram) {
      if (!first) hist << ' ';
      first = false;
      hist << mult << ':' << count;
      jh[std::to_string(mult)] = count;
    }
    j["multiplicity_histogram"] = jh;
  }
  if (mis.decided) {
    j["alpha"] = mis.alpha;
    j["alpha_witness"] = mis.witness;
  } else {
    j["alpha"] = nullptr;
    j["alpha_lower_bound"] = mis.alpha;
  }

  std::optional<irredundancy_report> irr;
  if (irredundancy) {
    const int s = resolve_subset_size(fam, subset_size);
    irr = irredundancy_check(fam, s, budget);
    j["subset_size"] = s;
    j["necessary_blocks"] = irr->necessary_blocks();
  }

  if (as_json) {
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "n: " << fam.n << '\n'
              << "k: " << fam.k << '\n'
              << "blocks: " << fam.blocks.size() << '\n'
              << "covered_pairs: " << rec.covered_pairs << '\n'
              << "multiplicity_histogram: " << hist.str() << '\n';
    if (mis.decided)
      std::cout << "alpha: " << mis.alpha << '\n'
                << "alpha_witness: " << join(mis.witness) << '\n';
    else
      std::cout << "alpha: undecided (>= " << mis.alpha << ")" << '\n';
    std::cout << "clique_cover_size: " << cover.cliques.size() << '\n';
    if (irr) {
      std::cout << "necessary: " << irr->necessary_blocks().size() << "/"
                << fam.blocks.size() << '\n';
      for (std::size_t i = 0; i < irr->verdicts.size(); ++i) {
        const char* verdict = irr->verdicts[i] == removal_verdict::necessary ? "necessary"
                              : irr->verdicts[i] == removal_verdict::redundant
                                  ? "redundant"
                                  : "undecided";
        std::cout << "block " << (i + 1) << ": " << verdict << '\n';
      }
    }
  }
  return mis.decided ? kExitHolds : kExitUndecided;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pair-intersection covering family toolkit"};
  app.require_subcommand(1);

  int group_size = 0, groups = 0;
  std::string out_path;
  bool gen_json = false;
  auto* gen = app.add_subcommand("generate", "build a family and write it as a design file");
  gen->add_option("--group-size", group_size, "size of each base block (even, >= 2)")
      ->required();
  gen->add_option("--groups", groups, "number of base blocks (even, >= 2)")->required();
  gen->add_option("--out", out_path, "output file (default: stdout)");
  gen->add_flag("--json", gen_json, "machine-readable summary");

  std::string verify_path, mode = "all";
  int subset_size = 0, jobs = 0;
  std::uint64_t budget = mis_default_budget;
  bool verify_json = false;
  auto* ver = app.add_subcommand("verify", "check the two-point intersection guarantee");
  ver->add_option("design", verify_path, "design file")->required();
  ver->add_option("--subset-size", subset_size,
                  "subset size to verify (default: derived from structure)");
  ver->add_option("--mode", mode, "exhaustive|graph|structural|all")
      ->check(CLI::IsMember({"exhaustive", "graph", "structural", "all"}));
  ver->add_option("--jobs", jobs, "worker threads for the exhaustive sweep (0 = all cores)");
  ver->add_option("--budget", budget, "node budget for the graph solver");
  ver->add_flag("--json", verify_json, "one JSON object per method");

  std::string witness_path, set_csv;
  bool witness_json = false;
  auto* wit = app.add_subcommand("witness", "name a block meeting the given subset twice");
  wit->add_option("design", witness_path, "design file with structure")->required();
  wit->add_option("--set", set_csv, "comma-separated elements")->required();
  wit->add_flag("--json", witness_json, "machine-readable output");

  std::string stats_path;
  bool irredundancy = false, stats_json = false;
  int stats_subset_size = 0;
  std::uint64_t stats_budget = mis_default_budget;
  auto* st = app.add_subcommand("stats", "coverage and independence statistics");
  st->add_option("design", stats_path, "design file")->required();
  st->add_flag("--irredundancy", irredundancy, "re-verify with each block removed");
  st->add_option("--subset-size", stats_subset_size, "subset size for --irredundancy");
  st->add_option("--budget", stats_budget, "node budget for the graph solver");
  st->add_flag("--json", stats_json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return run_generate(group_size, groups, out_path, gen_json);
    if (ver->parsed())
      return run_verify(verify_path, subset_size, mode, jobs, budget, verify_json);
    if (wit->parsed()) return run_witness(witness_path, set_csv, witness_json);
    if (st->parsed())
      return run_stats(stats_path, irredundancy, stats_subset_size, stats_budget, stats_json);
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
