#pragma once

#include <optional>
#include <vector>

#include "ptbcache/bigint.hpp"
#include "ptbcache/partition.hpp"

namespace ptb {

// All packet types (partitions of t embeddable in q), descending
// lexicographic order.
std::vector<PartitionVector> enumerate_packet_types(const NodeGrouping& q, int t);

/// One multicasting group type: a partition of t+1 embeddable in q, with its
/// unique-group structure and the involved packet type per unique group
/// (obtained by removing one node from a part of that size).
struct MulticastType {
  PartitionVector partition;  // total t+1
  struct UniquePart {
    int size;                  // part size
    int multiplicity;          // parts of this size in the type
    int g;                     // size * multiplicity, nodes in the unique group
    PartitionVector involved;  // packet type needed by nodes of this unique group
    int involved_index;        // column in the packet type table
  };
  std::vector<UniquePart> unique_parts;
};

std::vector<MulticastType> enumerate_multicast_types(const NodeGrouping& q, int t,
                                                     const std::vector<PartitionVector>& packet_types);

// The involved packet type map of s: one (valid) packet type per unique
// group, the image of removing one node from a part of that size.
std::vector<PartitionVector> involved_types(const PartitionVector& s);

using FsrEntry = std::optional<Int>;

struct FsrRow {
  std::vector<FsrEntry> entries;  // width V; nullopt where the type is not involved
};

// The local further splitting ratio row of s for transmitter selection dt
// (indices into s.unique_parts, non-empty): with G = sum of g over dt,
// alpha(involved_i) = G - 1 for i in dt, G otherwise. Other columns empty.
FsrRow local_fsr(const MulticastType& s, const std::vector<int>& dt, int num_types);

struct FsrTable {
  std::vector<FsrRow> rows;  // one per multicast type; inactive rows all-empty
};

struct LcmSolution {
  std::vector<Int> z;      // positive scalars, one per input row
  std::vector<Int> alpha;  // the combine; 0 where no scaled entry is positive
};

// Minimal consistent positive integer scaling of the rows per the LCM-vector
// definition: scaled rows must agree position-wise wherever both entries are
// positive; zero and empty entries match anything; the combine takes the
// positive value when one exists, else 0. Returns nullopt when no consistent
// scaling exists. Scalars are minimized per connected component of the
// shared-column constraint graph (gcd 1), which minimizes the combine norm.
std::optional<LcmSolution> lcm_vector(const std::vector<FsrRow>& rows);

}  // namespace ptb
