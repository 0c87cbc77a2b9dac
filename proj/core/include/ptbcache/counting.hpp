#pragma once

#include <vector>

#include "ptbcache/bigint.hpp"
#include "ptbcache/partition.hpp"

namespace ptb {

// Number of t-subsets of users whose per-group intersection sizes, sorted,
// equal v: a sum over distinct part-to-group assignments of products of
// binomials. Throws std::invalid_argument when v does not embed in q.
Int count_raw_packets(const PartitionVector& v, const NodeGrouping& q);

// Number of type-v subsets containing one fixed node of unique group i
// (independent of which node of the unique group is fixed).
Int count_cached_by_node(const PartitionVector& v, const NodeGrouping& q, int unique_index);

std::vector<Int> raw_count_vector(const std::vector<PartitionVector>& types,
                                  const NodeGrouping& q);

/// The memory constraint table: per unique group, the per-node cached raw
/// packet counts by type, plus the consecutive-row differences.
struct MemoryTable {
  std::vector<std::vector<Int>> per_node_counts;  // N_d x V, row i = F_i
  std::vector<std::vector<Int>> deltas;           // (N_d - 1) x V, F_{i+1} - F_i
};

MemoryTable build_memory_table(const std::vector<PartitionVector>& types,
                               const NodeGrouping& q);

// True iff alpha . delta_i == 0 for every delta row (nodes of all unique
// groups cache the same number of packets).
bool memory_check(const std::vector<Int>& alpha, const MemoryTable& mct);

Int dot(const std::vector<Int>& a, const std::vector<Int>& b);

}  // namespace ptb
