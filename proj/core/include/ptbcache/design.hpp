#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ptbcache/bigint.hpp"
#include "ptbcache/counting.hpp"
#include "ptbcache/errors.hpp"
#include "ptbcache/fsr.hpp"
#include "ptbcache/partition.hpp"

namespace ptb {

/// Transmitter choice for one multicast type: a non-empty set of its unique
/// groups, or inactive (the type performs no transmissions; legal only when
/// all its involved packet types end up excluded).
struct TransmitterSelection {
  bool active = true;
  std::vector<int> unique_part_indices;

  static TransmitterSelection inactive() { return {false, {}}; }
  static TransmitterSelection of(std::vector<int> idx) { return {true, std::move(idx)}; }

  bool operator==(const TransmitterSelection&) const = default;
};

struct GainDecomposition {
  Int raw_subfile_saving;  // sub-files removed by excluding types
  Int raw_packet_saving;   // packets saved by the exclusions (t per sub-file)
  Int splitting_gain;      // packets saved by splitting kept types below t
};

/// A complete abstract scheme: grouping, kept packet types with their
/// overall splitting ratios, multicast types with transmitter selections and
/// round scalars, counts and totals.
struct PtbDesign {
  std::string name;
  int K = 0, N = 0, M = 0, t = 0, tbar = 0;
  NodeGrouping grouping;
  std::vector<PartitionVector> packet_types;   // V, descending lexicographic
  std::vector<MulticastType> multicast_types;  // S, descending lexicographic
  std::vector<TransmitterSelection> selections;
  FsrTable fsrt;              // local rows; inactive rows all-empty
  std::vector<Int> z;         // per multicast type; 1 for inactive
  std::vector<Int> alpha_lcm; // V
  std::vector<Int> raw_counts;
  MemoryTable mct;
  Int F, F_jcm;
  GainDecomposition gains;

  explicit PtbDesign(NodeGrouping g) : grouping(std::move(g)) {}

  bool kept(int type_index) const { return alpha_lcm[type_index] > 0; }
  Rat ratio() const { return Rat(F, F_jcm); }
  // "(3,2*,2*)" rendering of a multicast type with starred transmitters.
  std::string starred(int multicast_index) const;
};

enum class CandidateStatus { Ok, NoLcm, NotSchedulable, MemoryFail };

struct CandidateEval {
  CandidateStatus status = CandidateStatus::Ok;
  FsrTable fsrt;
  std::vector<Int> z;
  std::vector<Int> alpha;
  Int F;
  std::string detail;
};

// Cheap evaluation of one (grouping, selections) candidate against
// precomputed tables: FSRT -> LCM -> schedulability -> memory -> F.
// Schedulability demands, for every multicast type s and each of its unique
// groups i, alpha_lcm(involved_i) == z_s * local_fsr_s(involved_i) when s is
// active and == 0 when s is inactive; this is exactly the condition for the
// delivery schedule to exhaust every requester's splits.
CandidateEval evaluate_candidate(const std::vector<PartitionVector>& packet_types,
                                 const std::vector<MulticastType>& multicast_types,
                                 const std::vector<TransmitterSelection>& selections,
                                 const std::vector<Int>& raw_counts, const MemoryTable& mct);

// Full assembly; throws design_error / infeasible_error.
PtbDesign assemble_design(std::string name, NodeGrouping grouping, int t,
                          std::vector<TransmitterSelection> selections, int N, int M);

Int jcm_subpacketization(int K, int t);
Int subpacketization(const std::vector<Int>& alpha, const std::vector<Int>& raw_counts);
GainDecomposition gain_decomposition(const PtbDesign& d);

// All selection candidates for one multicast type: every non-empty subset of
// its unique groups, then the inactive option.
std::vector<TransmitterSelection> selection_options(const MulticastType& s);

// Baseline: singleton grouping, every node of every group transmits,
// alpha = t, F = t * C(K, t).
PtbDesign jcm_design(int K, int t, int N, int M);
PtbDesign jcm_design(int K, int t);  // N = K, M = t

// Equal grouping (3,...,3) at t = K - 3: singleton unique group transmits in
// (3,...,3,1)-type groups, the size-2 unique group transmits in
// (3,...,2,2)-type groups; alpha pattern (4,3,0).
PtbDesign preset_triple_grouping(int K, int N, int M);
PtbDesign preset_triple_grouping(int K);

// Pair grouping (2,...,2) for even tbar = K - t: the frozen minimal-F valid
// result of the selection enumeration restricted to that grouping.
PtbDesign preset_pair_grouping(int K, int tbar, int N, int M);
PtbDesign preset_pair_grouping(int K, int tbar);

// Two-group equal grouping (K/2, K/2) at even t = 2r: multicast type
// (t+1-j, j) transmits from its size-j side, giving alpha = (0,1,...,r) over
// ((t,0),(t-1,1),...,(r,r)).
PtbDesign preset_two_group(int K, int t, int N, int M);
PtbDesign preset_two_group(int K, int t);

}  // namespace ptb
