#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "wcg/catalog.hpp"
#include "wcg/commutator.hpp"

namespace wcg {

struct CampaignConfig {
  std::vector<std::string> groups;  // empty = every catalog group
  int max_order = 12;
  int depth = 12;
  int window = 2;
  std::uint64_t cost_cap = 2'000'000'000;
  int jobs = 0;       // 0 = hardware concurrency
  std::uint64_t seed = 0;  // reserved for sampled campaigns; full sweeps ignore it

  void validate() const;  // depth >= 4, window >= 1
};

struct CampaignSummary {
  long long instances = 0;
  long long mismatches = 0;
  long long unstable = 0;
  long long huq_violations = 0;
  long long vanishing_violations = 0;
  long long weight_dependence_violations = 0;

  bool ok() const {
    return mismatches == 0 && unstable == 0 && huq_violations == 0 &&
           vanishing_violations == 0 && weight_dependence_violations == 0;
  }
};

struct CampaignResult {
  std::vector<CommutatorReport> reports;  // deterministic order
  CampaignSummary summary;
};

/// Sweeps every (X, Y, W) subgroup triple of every selected catalog group
/// (as inclusion cospans), comparing the decomposition formula against the
/// enumeration oracle and folding in the Huq, vanishing-criterion, and
/// weight-independence assertions.
CampaignResult run_decomposition_campaign(const Catalog& catalog,
                                          const CampaignConfig& config);

/// Visits every double-split admissibility diagram over the named base
/// groups: every split epimorphism pair of catalog groups within the order
/// cap, with every compatible triple of maps into a catalog codomain. The
/// pullback of each split pair is computed once and shared across visits.
void for_each_split_diagram(
    const Catalog& catalog, int max_order,
    const std::vector<std::string>& base_labels,
    const std::function<void(const AdmissibilityDiagram&, const PullbackGroup&)>&
        visit);

}  // namespace wcg
