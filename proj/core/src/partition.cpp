#include "ptbcache/partition.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace ptb {

PartitionVector PartitionVector::of(std::vector<int> parts) {
  PartitionVector p;
  for (int x : parts)
    if (x < 0) throw std::invalid_argument("negative part in partition");
  std::sort(parts.begin(), parts.end(), std::greater<int>());
  while (!parts.empty() && parts.back() == 0) parts.pop_back();
  p.parts_ = std::move(parts);
  for (int x : p.parts_) p.total_ += x;
  return p;
}

int PartitionVector::count_of(int value) const {
  return static_cast<int>(std::count(parts_.begin(), parts_.end(), value));
}

std::vector<int> PartitionVector::padded(int width) const {
  std::vector<int> out = parts_;
  if (static_cast<int>(out.size()) > width)
    throw std::invalid_argument("padding width smaller than part count");
  out.resize(width, 0);
  return out;
}

PartitionVector PartitionVector::with_part_decremented(int value) const {
  if (value <= 0 || count_of(value) == 0)
    throw std::invalid_argument("no part of size " + std::to_string(value));
  std::vector<int> out = parts_;
  auto it = std::find(out.begin(), out.end(), value);
  *it -= 1;
  return PartitionVector::of(std::move(out));
}

std::string PartitionVector::str() const {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (i) os << ',';
    os << parts_[i];
  }
  os << ')';
  return os.str();
}

std::strong_ordering PartitionVector::operator<=>(const PartitionVector& o) const {
  // Descending lexicographic order over zero-padded forms: larger leading
  // parts come first.
  const size_t n = std::max(parts_.size(), o.parts_.size());
  for (size_t i = 0; i < n; ++i) {
    const int a = i < parts_.size() ? parts_[i] : 0;
    const int b = i < o.parts_.size() ? o.parts_[i] : 0;
    if (a != b) return b <=> a;
  }
  return std::strong_ordering::equal;
}

std::vector<PartitionVector> partitions(int n, int max_part, int max_parts) {
  if (n < 0 || max_part < 1 || max_parts < 1)
    throw std::invalid_argument("partitions: require n >= 0, max_part >= 1, max_parts >= 1");
  std::vector<PartitionVector> out;
  std::vector<int> cur;
  // Largest first part first gives descending lexicographic output order.
  std::function<void(int, int, int)> rec = [&](int rem, int cap, int slots) {
    if (rem == 0) {
      out.push_back(PartitionVector::of(cur));
      return;
    }
    if (slots == 0) return;
    for (int x = std::min(rem, cap); x >= 1; --x) {
      cur.push_back(x);
      rec(rem - x, x, slots - 1);
      cur.pop_back();
    }
  };
  rec(n, max_part, max_parts);
  return out;
}

NodeGrouping::NodeGrouping(PartitionVector partition) : partition_(std::move(partition)) {
  if (partition_.total() <= 0 || partition_.num_parts() == 0)
    throw std::invalid_argument("node grouping needs at least one non-empty group");
  for (int size : partition_.parts()) {
    if (!unique_.empty() && unique_.back().size == size) {
      unique_.back().multiplicity++;
    } else {
      unique_.push_back({size, 1});
    }
  }
}

int NodeGrouping::unique_index_of_size(int size) const {
  for (size_t i = 0; i < unique_.size(); ++i)
    if (unique_[i].size == size) return static_cast<int>(i);
  return -1;
}

int NodeGrouping::unique_index_of_group(int group) const {
  if (group < 0 || group >= group_count()) throw std::out_of_range("group index");
  return unique_index_of_size(group_sizes()[group]);
}

bool NodeGrouping::embeds(const PartitionVector& v) const {
  const auto& parts = v.parts();
  const auto& sizes = group_sizes();
  if (parts.size() > sizes.size()) return false;
  for (size_t i = 0; i < parts.size(); ++i)
    if (parts[i] > sizes[i]) return false;
  return true;
}

}  // namespace ptb
