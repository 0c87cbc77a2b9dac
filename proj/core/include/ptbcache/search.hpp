#pragma once

#include <string>
#include <vector>

#include "ptbcache/coupled.hpp"
#include "ptbcache/design.hpp"

namespace ptb {

enum class GroupingFilter { All, EqualOnly, Explicit };

/// Finite candidate space for the integer optimization: node groupings times
/// independent per-multicast-type transmitter selections.
struct SearchSpace {
  int K = 0, t = 0;
  GroupingFilter filter = GroupingFilter::All;
  std::vector<PartitionVector> explicit_groupings;
  int k_cap = 12;
  size_t max_candidates = 5'000'000;
  double time_budget_s = 0;  // 0 = unlimited
  bool validate_all = false; // bit-validate every ranked entry, not just the best
  bool include_coupled = false;
};

struct RankedEntry {
  PartitionVector grouping;
  std::vector<TransmitterSelection> selections;
  std::vector<Int> alpha;
  Int F;
  std::string selections_str;  // starred encoding, '~' marks inactive types
  enum class Validation { NotRun, Pass, Fail };
  Validation validation = Validation::NotRun;
};

struct SearchResult {
  int K = 0, t = 0;
  Int F_jcm;
  std::vector<RankedEntry> table;      // (F, grouping, alpha) ascending
  std::vector<PtbDesign> best;         // validated minimum-F designs
  std::vector<CoupledDesign> coupled;  // separate unequal-length path
  Int candidates = 0;
  Int rejected_no_lcm = 0;
  Int rejected_memory = 0;
  Int rejected_decode = 0;  // structural schedulability + bit-level failures
  bool truncated = false;
};

// Exhaustive enumeration of (grouping, selections) with the cheap filters
// (LCM existence, schedulability, memory constraint), deduplicated per
// grouping by alpha; bit-exact decodability validation of the minimum-F
// layer (or everything with validate_all). Deterministic output order.
// Throws design_error when K exceeds the cap.
SearchResult solve(const SearchSpace& space);

// Builds the PtbDesign behind a ranked entry (N = K, M = t).
PtbDesign design_from_entry(const RankedEntry& e, int t);

}  // namespace ptb
