#pragma once

#include <string>
#include <vector>

#include "ptbcache/bigint.hpp"
#include "ptbcache/counting.hpp"
#include "ptbcache/design.hpp"
#include "ptbcache/partition.hpp"

namespace ptb {

/// Side-resolved packet type for a two-group unequal grouping: x nodes from
/// the larger group, y = t - x from the smaller. Unequal group sizes break
/// the sorted-partition symmetry, so the coupled machinery keeps both sides
/// explicit.
struct RefinedType {
  int x = 0;  // nodes in the larger group
  int y = 0;  // nodes in the smaller group
  bool operator==(const RefinedType&) const = default;
  std::string str() const;
};

enum class SideSelection { Inactive, BigSide, SmallSide, Both };

std::string side_selection_str(SideSelection s);

/// One coupled group: an independently scheduled sub-design whose packets
/// all share one bit length (gamma_h relative to group 1).
struct CoupledGroupSpec {
  std::vector<Int> alpha;                 // per refined type
  std::vector<SideSelection> selections;  // per refined multicast profile (by u)
  std::vector<Int> z;                     // per refined multicast profile
  Rat gamma;
};

/// A two-group unequal-grouping design with heterogeneous packet lengths:
/// each raw packet of refined type v carries alpha_h(v) packets of length
/// gamma_h units per coupled group h; the length ratios are solved exactly
/// from sum_h gamma_h * alpha_h . dF = 0.
struct CoupledDesign {
  std::string name;
  int K = 0, N = 0, M = 0, t = 0, tbar = 0;
  NodeGrouping grouping;                 // (a, b) with a > b
  std::vector<RefinedType> types;        // ascending x; only embeddable ones
  std::vector<Int> raw_counts;
  std::vector<std::vector<Int>> per_node_counts;  // 2 x V (big row, small row)
  std::vector<Int> delta;                         // small row - big row
  std::vector<CoupledGroupSpec> groups;           // H
  std::vector<Int> alpha_total;
  Int F, F_jcm;
  GainDecomposition gains;

  explicit CoupledDesign(NodeGrouping g) : grouping(std::move(g)) {}

  int H() const { return static_cast<int>(groups.size()); }
  Rat ratio() const { return Rat(F, F_jcm); }
  // Per-node cached length (units of the group-1 packet length) for a node
  // of the given side (0 = larger group); equal across sides by the balance
  // equation.
  Rat cached_units_per_file(int side) const;
};

// Refined multicast profiles are (u, w = t+1-u) for u in [0, t+1], kept when
// u <= a and w <= b. Members of the larger side need type (u-1, w), members
// of the smaller side need (u, w-1).

// Assembles a coupled design from per-h selections; alpha_h and z_h are
// derived from the selection rows by the same LCM machinery; gamma solved
// from the balance equation. Throws infeasible_error when rows are
// inconsistent, the schedule cannot exhaust split counts, or no positive
// length ratio exists.
CoupledDesign assemble_coupled(std::string name, NodeGrouping grouping, int t,
                               std::vector<std::vector<SideSelection>> selections_per_h, int N,
                               int M);

// Unequal two-group grouping ((K+1)/2, (K-1)/2) for odd K and even t = 2r:
// H = 2 coupled groups, a balanced vector alpha_1(x,y) = min(x,y) (the
// smaller part of every multicast profile transmits) and a cascade vector
// alpha_2(x,y) = x (the larger-group part transmits), giving the total
// splitting vector (0,2,4,...,t-2,t,...,t) over ascending x.
CoupledDesign preset_heterogeneous(int K, int t, int N, int M);
CoupledDesign preset_heterogeneous(int K, int t);

// Theorem-style ratio cap reported alongside coupled designs (not asserted):
// (1/t) * (C(t, t/2) / 2^t - 1) + 1.
Rat heterogeneous_ratio_bound(int t);

// All valid coupled designs (H <= 2) on one two-group unequal grouping,
// deduplicated and sorted by F then lexicographic key. The grouping must
// have exactly two groups of distinct sizes.
std::vector<CoupledDesign> enumerate_coupled_two_group(const NodeGrouping& grouping, int t,
                                                       int N, int M, size_t max_results);

}  // namespace ptb
