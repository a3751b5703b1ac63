#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "crownkit/errors.hpp"
#include "crownkit/verify.hpp"

using namespace crownkit;

namespace {

int cmd_blocks(const std::string& group_spec, int point_1based, bool all, bool exclude_trivial,
               GroupCaps caps) {
  GroupPtr G = resolve_group(group_spec, caps);
  Point omega = point_1based > 0 ? static_cast<Point>(point_1based - 1) : 0;

  std::vector<BlockSystem> systems =
      all ? all_block_systems(G, omega) : maximal_block_systems(G, omega, exclude_trivial);

  std::cout << (all ? "all block systems of " : "maximal systems of imprimitivity of ")
            << G->name() << " through point " << (omega + 1) << ": " << systems.size() << "\n";
  for (const BlockSystem& s : systems) std::cout << "  " << s.to_string() << "\n";
  return 0;
}

int cmd_maxsub(const std::string& group_spec, const std::string& subgroup_gens, GroupCaps caps) {
  GroupPtr G = resolve_group(group_spec, caps);

  std::vector<Perm> gens;
  if (subgroup_gens != "()" && !subgroup_gens.empty()) {
    // Comma-separated cycle strings, e.g. "(1 2),(3 4)".
    int depth = 0;
    std::string cur;
    auto flush = [&] {
      if (!cur.empty()) gens.push_back(Perm::parse_cycles(cur, G->degree()));
      cur.clear();
    };
    for (char ch : subgroup_gens) {
      if (ch == '(') ++depth;
      if (ch == ')') --depth;
      if (ch == ',' && depth == 0)
        flush();
      else
        cur += ch;
    }
    flush();
  }

  SubgroupHandle H = gens.empty() ? trivial_subgroup(G) : generated_subgroup(G, gens);
  auto maxes = maximal_overgroups(H);
  std::cout << "max(H, " << G->name() << ") = " << maxes.size() << "  (|G:H| = "
            << G->order() / H.order << ")\n";
  for (const SubgroupHandle& m : maxes)
    std::cout << "  order " << m.order << ": <" << m.describe() << ">\n";
  return 0;
}

int cmd_crowns(const std::string& group_spec, GroupCaps caps) {
  GroupPtr G = resolve_group(group_spec, caps);
  ChiefSeries series = chief_series(G, 0);

  std::cout << "chief series of " << G->name() << " (order " << G->order() << "), bottom up:\n";
  for (const ChiefFactor& F : series.factors)
    std::cout << "  factor of order " << F.size << (F.abelian ? " abelian" : " nonabelian")
              << (F.frattini ? " frattini" : "") << "  [" << F.lower.order << " -> "
              << F.upper.order << "]\n";

  std::vector<const ChiefFactor*> reps;
  for (const ChiefFactor& F : series.factors) {
    if (F.frattini) continue;
    bool seen = false;
    for (const ChiefFactor* rep : reps)
      if (g_equivalent(*rep, F)) {
        seen = true;
        break;
      }
    if (!seen) reps.push_back(&F);
  }

  for (const ChiefFactor* F : reps) {
    CrownRecord rec = compute_crown(G, *F);
    std::cout << "crown of the order-" << F->size << " class: delta = " << rec.delta
              << ", |R| = " << rec.R.order << ", |I| = " << rec.I.order
              << ", |N_A| = " << rec.members.size() << ", L_A order "
              << rec.monolithic.group->order() << " (G/R = (L_A)_delta verified)\n";
  }
  return 0;
}

int cmd_verify(const std::string& catalog_spec, const std::vector<std::string>& suites,
               std::uint64_t max_order, int jobs, const std::string& out_path, GroupCaps caps,
               bool strict) {
  VerifyOptions opts;
  opts.suites = std::set<std::string>(suites.begin(), suites.end());
  opts.max_order = max_order;
  opts.jobs = jobs;
  opts.caps = caps;
  opts.strict_soluble = strict;

  auto entries = resolve_catalog(catalog_spec);
  VerifyReport report = run_verify(entries, opts);

  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw InputError("cannot write report: " + out_path);
    if (out_path.size() >= 5 && out_path.substr(out_path.size() - 5) == ".json")
      out << report.to_json();
    else
      out << report.to_tsv();
  }

  std::uint64_t fails = 0, passes = 0, skips = 0;
  for (const CheckLine& c : report.checks) {
    if (c.status == "fail") ++fails;
    if (c.status == "pass") ++passes;
    if (c.status == "skip") ++skips;
    std::cout << "[" << c.status << "] " << c.suite << "/" << c.name;
    if (!c.detail.empty()) std::cout << ": " << c.detail;
    std::cout << "\n";
  }
  std::cout << report.rows.size() << " (G,H) rows, " << passes << " checks passed, " << fails
            << " failed, " << skips << " skipped";
  if (report.max_ratio > 0)
    std::cout << "; max ratio " << report.max_ratio << " at " << report.max_ratio_witness;
  std::cout << "\nviolations: " << report.violations << "\n";
  return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"crownkit: block systems, maximal-subgroup counts and crown machinery"};
  app.require_subcommand(1);

  GroupCaps caps;
  app.add_option("--element-cap", caps.element_cap,
                 "full element list cap (operations needing it fail above)");

  auto* blocks = app.add_subcommand("blocks", "block systems of a transitive group");
  std::string blocks_group;
  int blocks_point = 1;
  bool blocks_all = false, blocks_maximal = false, blocks_exclude = false;
  blocks->add_option("--group", blocks_group, "builtin name or catalog file")->required();
  blocks->add_option("--point", blocks_point, "1-based base point (default 1)");
  blocks->add_flag("--all", blocks_all, "every system of the interval [G_w, G]");
  blocks->add_flag("--maximal", blocks_maximal, "only maximal systems (default)");
  blocks->add_flag("--exclude-trivial", blocks_exclude,
                   "drop the singleton system of a primitive group");

  auto* maxsub = app.add_subcommand("maxsub", "maximal subgroups of G containing H");
  std::string maxsub_group, maxsub_sub;
  maxsub->add_option("--group", maxsub_group)->required();
  maxsub->add_option("--subgroup", maxsub_sub,
                     "generators of H as comma-separated cycle strings; \"()\" for trivial")
      ->required();

  auto* crowns = app.add_subcommand("crowns", "chief series and crowns of a group");
  std::string crowns_group;
  crowns->add_option("--group", crowns_group)->required();

  auto* verify = app.add_subcommand("verify", "run the verification harness");
  std::string verify_catalog = "default";
  std::vector<std::string> verify_suites = {"all"};
  std::uint64_t verify_max_order = 0;
  int verify_jobs = 1;
  std::string verify_out;
  bool verify_strict = false;
  verify->add_option("--catalog", verify_catalog,
                     "catalog file, builtin name list, or 'default'");
  verify->add_option("--suite", verify_suites, "soluble|ratio|lemmas|sotto|all")
      ->delimiter(',');
  verify->add_option("--max-order", verify_max_order, "skip catalog groups above this order");
  verify->add_option("--jobs", verify_jobs, "worker threads (deterministic fold)");
  verify->add_option("--out", verify_out, "report path (.tsv or .json)");
  verify->add_flag("--strict", verify_strict, "error on insoluble entries in the soluble suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (blocks->parsed())
      return cmd_blocks(blocks_group, blocks_point, blocks_all && !blocks_maximal,
                        blocks_exclude, caps);
    if (maxsub->parsed()) return cmd_maxsub(maxsub_group, maxsub_sub, caps);
    if (crowns->parsed()) return cmd_crowns(crowns_group, caps);
    if (verify->parsed())
      return cmd_verify(verify_catalog, verify_suites, verify_max_order, verify_jobs, verify_out,
                        caps, verify_strict);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const CapError& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
