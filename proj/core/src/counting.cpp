#include "ptbcache/counting.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace ptb {

namespace {

struct ValueCount {
  int value;
  int count;
};

std::vector<ValueCount> to_value_counts(const PartitionVector& v) {
  std::vector<ValueCount> out;
  for (int x : v.parts()) {
    if (!out.empty() && out.back().value == x)
      out.back().count++;
    else
      out.push_back({x, 1});
  }
  return out;
}

// Sum over all assignments of the remaining parts to the remaining unique
// groups (at most one part per group, part <= group size) of the product of
// per-group node choices. Groups inside a unique group are interchangeable,
// so each unique group absorbs a sub-multiset of parts; the number of
// arrangements is the multinomial over its psi group slots.
Int count_assignments(std::vector<ValueCount>& parts,
                      const std::vector<NodeGrouping::UniqueGroup>& groups, size_t g) {
  if (g == groups.size()) {
    for (const auto& vc : parts)
      if (vc.count > 0) return 0;
    return 1;
  }
  const int beta = groups[g].size;
  const int psi = groups[g].multiplicity;
  Int total = 0;
  // Choose c_j parts of each distinct value for this unique group.
  std::function<void(size_t, int, const Int&)> pick = [&](size_t j, int used, const Int& acc) {
    if (j == parts.size()) {
      total += acc * count_assignments(parts, groups, g + 1);
      return;
    }
    const int value = parts[j].value;
    const int avail = parts[j].count;
    const int cap = value <= beta ? std::min(avail, psi - used) : 0;
    for (int c = 0; c <= cap; ++c) {
      if (c > 0) {
        parts[j].count -= c;
        Int ways = binomial(psi - used, c);
        Int per_group = binomial(beta, value);
        Int factor = ways;
        for (int r = 0; r < c; ++r) factor *= per_group;
        pick(j + 1, used + c, acc * factor);
        parts[j].count += c;
      } else {
        pick(j + 1, used, acc);
      }
    }
  };
  pick(0, 0, 1);
  return total;
}

}  // namespace

Int count_raw_packets(const PartitionVector& v, const NodeGrouping& q) {
  if (!q.embeds(v))
    throw std::invalid_argument("packet type " + v.str() + " is not valid under grouping " +
                                q.partition().str());
  auto parts = to_value_counts(v);
  return count_assignments(parts, q.unique_groups(), 0);
}

Int count_cached_by_node(const PartitionVector& v, const NodeGrouping& q, int unique_index) {
  if (unique_index < 0 || unique_index >= q.unique_count())
    throw std::out_of_range("unique group index out of range");
  if (!q.embeds(v))
    throw std::invalid_argument("packet type " + v.str() + " is not valid under grouping " +
                                q.partition().str());
  const auto& ug = q.unique_groups()[unique_index];
  // Condition on the part size x landing on the fixed node's group; the
  // fixed node is one of the x chosen there, the rest of the parts go to
  // the other groups.
  std::vector<NodeGrouping::UniqueGroup> rest = q.unique_groups();
  if (rest[unique_index].multiplicity == 1)
    rest.erase(rest.begin() + unique_index);
  else
    rest[unique_index].multiplicity--;

  Int total = 0;
  auto vcs = to_value_counts(v);
  for (size_t j = 0; j < vcs.size(); ++j) {
    const int x = vcs[j].value;
    if (x < 1 || x > ug.size) continue;
    auto remaining = vcs;
    if (--remaining[j].count == 0) remaining.erase(remaining.begin() + j);
    total += binomial(ug.size - 1, x - 1) * count_assignments(remaining, rest, 0);
  }
  return total;
}

std::vector<Int> raw_count_vector(const std::vector<PartitionVector>& types,
                                  const NodeGrouping& q) {
  std::vector<Int> out;
  out.reserve(types.size());
  for (const auto& v : types) out.push_back(count_raw_packets(v, q));
  return out;
}

MemoryTable build_memory_table(const std::vector<PartitionVector>& types,
                               const NodeGrouping& q) {
  MemoryTable mct;
  for (int i = 0; i < q.unique_count(); ++i) {
    std::vector<Int> row;
    row.reserve(types.size());
    for (const auto& v : types) row.push_back(count_cached_by_node(v, q, i));
    mct.per_node_counts.push_back(std::move(row));
  }
  for (int i = 0; i + 1 < q.unique_count(); ++i) {
    std::vector<Int> d(types.size());
    for (size_t j = 0; j < types.size(); ++j)
      d[j] = mct.per_node_counts[i + 1][j] - mct.per_node_counts[i][j];
    mct.deltas.push_back(std::move(d));
  }
  return mct;
}

bool memory_check(const std::vector<Int>& alpha, const MemoryTable& mct) {
  for (const auto& d : mct.deltas) {
    if (d.size() != alpha.size()) throw std::invalid_argument("memory table dimension mismatch");
    if (dot(alpha, d) != 0) return false;
  }
  return true;
}

Int dot(const std::vector<Int>& a, const std::vector<Int>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace ptb
