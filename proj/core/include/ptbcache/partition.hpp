#pragma once

#include <compare>
#include <string>
#include <vector>

namespace ptb {

/// A non-increasing integer partition. Trailing zeros are not stored; they
/// are a rendering concern only ("0" is never a part).
class PartitionVector {
 public:
  PartitionVector() = default;

  // Canonicalizes: sorts descending, strips zeros. Negative parts rejected.
  static PartitionVector of(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int total() const { return total_; }
  int num_parts() const { return static_cast<int>(parts_.size()); }
  int max_part() const { return parts_.empty() ? 0 : parts_.front(); }

  // Number of parts equal to value.
  int count_of(int value) const;

  // Parts right-padded with zeros to the given width.
  std::vector<int> padded(int width) const;

  // Partition with one part of size `value` removed and `value-1` inserted
  // (dropped when it reaches zero). Used for involved-type maps.
  PartitionVector with_part_decremented(int value) const;

  std::string str() const;  // "(3,2,1)"

  bool operator==(const PartitionVector&) const = default;
  // Descending lexicographic: (3,3) before (3,2,1) before (2,2,2).
  std::strong_ordering operator<=>(const PartitionVector& o) const;

 private:
  std::vector<int> parts_;
  int total_ = 0;
};

// All partitions of n with every part <= max_part and at most max_parts
// parts, in descending lexicographic order. Empty set when infeasible;
// partitions(0,...) yields the single empty partition.
std::vector<PartitionVector> partitions(int n, int max_part, int max_parts);

/// A partition of the K users into groups, plus the derived unique-group
/// structure (groups of equal size pooled together).
class NodeGrouping {
 public:
  struct UniqueGroup {
    int size;          // beta_i, nodes per group
    int multiplicity;  // psi_i, number of groups of this size
  };

  explicit NodeGrouping(PartitionVector partition);

  const PartitionVector& partition() const { return partition_; }
  int user_count() const { return partition_.total(); }
  int group_count() const { return partition_.num_parts(); }
  const std::vector<int>& group_sizes() const { return partition_.parts(); }

  int unique_count() const { return static_cast<int>(unique_.size()); }
  const std::vector<UniqueGroup>& unique_groups() const { return unique_; }
  // Index into unique_groups() for a group size, -1 if absent.
  int unique_index_of_size(int size) const;
  // Unique-group index of the j-th group (0-based).
  int unique_index_of_group(int group) const;

  bool is_equal_grouping() const { return unique_.size() <= 1; }

  // True iff the parts of v can be assigned to distinct groups with each
  // part within its group's size. Both sides sorted descending, so the
  // greedy position-wise test is exact.
  bool embeds(const PartitionVector& v) const;

  bool operator==(const NodeGrouping& o) const { return partition_ == o.partition_; }

 private:
  PartitionVector partition_;
  std::vector<UniqueGroup> unique_;
};

}  // namespace ptb
