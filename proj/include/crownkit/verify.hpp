#pragma once

#include "crownkit/blocks.hpp"
#include "crownkit/catalog.hpp"
#include "crownkit/crowns.hpp"

namespace crownkit {

struct VerifyOptions {
  std::set<std::string> suites = {"all"};  // soluble | ratio | lemmas | sotto | all
  std::uint64_t max_order = 0;             // 0 = unfiltered
  int jobs = 1;
  GroupCaps caps;
  bool strict_soluble = false;             // insoluble entry under the soluble suite errors
  std::uint64_t sigma_rho_order_cap = 1000;  // reduced-pair size the split is computed at
};

struct BoundRow {
  std::string group;
  std::string hdesc;
  std::uint64_t index = 0;
  std::uint64_t max_count = 0;
  std::int64_t sigma = -1;  // -1 = split not computed
  std::int64_t rho = -1;
  double ratio = 0.0;
  bool soluble = false;
  std::string verdict;  // pass | fail | na
  std::vector<std::string> witnesses;  // maximal overgroups, JSON report only
};

struct CheckLine {
  std::string suite;
  std::string name;
  std::string status;  // pass | fail | skip
  std::string detail;
};

struct VerifyReport {
  std::vector<BoundRow> rows;
  std::vector<CheckLine> checks;
  std::uint64_t violations = 0;
  double max_ratio = 0.0;
  std::string max_ratio_witness;

  std::string to_tsv() const;
  std::string to_json() const;
  int exit_code() const { return violations ? 1 : 0; }
};

VerifyReport run_verify(const std::vector<CatalogEntry>& entries, const VerifyOptions& opts);

// The sotto decomposition of a Frattini-trivial group: a chief factor class
// A and a nontrivial normal D with I_G(A) = R_G(A) x D.
struct SottoWitness {
  CrownRecord crown;
  SubgroupHandle D;
};
std::optional<SottoWitness> sotto_decomposition(GroupPtr G);

// Lemma harness pieces, exposed for the acceptance suite.
struct LemmaResult {
  std::string name;
  bool pass = false;
  bool skipped = false;
  std::string detail;
};

LemmaResult check_lemma_crown_socle(const MonolithicGroup& L, unsigned k, unsigned lcg_samples = 12);
LemmaResult check_lemma_normal_dichotomy(const MonolithicGroup& L, unsigned k);
LemmaResult check_sotto_properties(GroupPtr G);
LemmaResult check_case1_claim(const MonolithicGroup& L, unsigned k, unsigned lcg_samples = 8);

}  // namespace crownkit
