#include "ptbcache/fsr.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace ptb {

std::vector<PartitionVector> enumerate_packet_types(const NodeGrouping& q, int t) {
  if (t < 1 || t >= q.user_count())
    throw std::invalid_argument("packet types need 1 <= t < K");
  std::vector<PartitionVector> out;
  for (auto& p : partitions(t, q.group_sizes().front(), q.group_count()))
    if (q.embeds(p)) out.push_back(std::move(p));
  return out;
}

std::vector<PartitionVector> involved_types(const PartitionVector& s) {
  std::vector<PartitionVector> out;
  int prev = -1;
  for (int size : s.parts()) {
    if (size == prev) continue;  // one image per unique group (part size)
    prev = size;
    out.push_back(s.with_part_decremented(size));
  }
  return out;
}

std::vector<MulticastType> enumerate_multicast_types(
    const NodeGrouping& q, int t, const std::vector<PartitionVector>& packet_types) {
  std::map<PartitionVector, int> type_index;
  for (size_t j = 0; j < packet_types.size(); ++j)
    type_index.emplace(packet_types[j], static_cast<int>(j));

  std::vector<MulticastType> out;
  for (auto& p : partitions(t + 1, q.group_sizes().front(), q.group_count())) {
    if (!q.embeds(p)) continue;
    MulticastType mt;
    mt.partition = std::move(p);
    for (int size : mt.partition.parts()) {
      if (!mt.unique_parts.empty() && mt.unique_parts.back().size == size) {
        mt.unique_parts.back().multiplicity++;
        mt.unique_parts.back().g += size;
        continue;
      }
      MulticastType::UniquePart up;
      up.size = size;
      up.multiplicity = 1;
      up.g = size;
      up.involved = mt.partition.with_part_decremented(size);
      auto it = type_index.find(up.involved);
      if (it == type_index.end())
        throw std::logic_error("involved type " + up.involved.str() +
                               " missing from packet type table");
      up.involved_index = it->second;
      mt.unique_parts.push_back(std::move(up));
    }
    out.push_back(std::move(mt));
  }
  return out;
}

FsrRow local_fsr(const MulticastType& s, const std::vector<int>& dt, int num_types) {
  if (dt.empty()) throw std::invalid_argument("transmitter selection must be non-empty");
  Int big_g = 0;
  std::vector<bool> selected(s.unique_parts.size(), false);
  for (int i : dt) {
    if (i < 0 || i >= static_cast<int>(s.unique_parts.size()))
      throw std::out_of_range("transmitter group index out of range");
    if (selected[i]) throw std::invalid_argument("duplicate transmitter group index");
    selected[i] = true;
    big_g += s.unique_parts[i].g;
  }
  FsrRow row;
  row.entries.assign(num_types, std::nullopt);
  for (size_t i = 0; i < s.unique_parts.size(); ++i) {
    const Int value = selected[i] ? big_g - 1 : big_g;
    row.entries[s.unique_parts[i].involved_index] = value;
  }
  return row;
}

namespace {

// Union-find carrying the exact ratio z_i / z_root.
struct RatioForest {
  std::vector<int> parent;
  std::vector<Rat> ratio;

  explicit RatioForest(size_t n) : parent(n), ratio(n, Rat(1)) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  std::pair<int, Rat> find(int i) {
    if (parent[i] == i) return {i, ratio[i]};
    auto [root, r] = find(parent[i]);
    parent[i] = root;
    ratio[i] = ratio[i] * r;
    return {root, ratio[i]};
  }

  // Enforce z_a * va == z_b * vb. Returns false on an inconsistent cycle.
  bool link(int a, const Int& va, int b, const Int& vb) {
    auto [ra, qa] = find(a);
    auto [rb, qb] = find(b);
    // z_a = qa * z_ra, z_b = qb * z_rb; constraint: qa*z_ra*va == qb*z_rb*vb.
    if (ra == rb) return qa * Rat(va) == qb * Rat(vb);
    // Attach rb under ra: z_rb = (qa * va) / (qb * vb) * z_ra.
    ratio[rb] = qa * Rat(va) / (qb * Rat(vb));
    parent[rb] = ra;
    return true;
  }
};

}  // namespace

std::optional<LcmSolution> lcm_vector(const std::vector<FsrRow>& rows) {
  const size_t n = rows.size();
  if (n == 0) return LcmSolution{{}, {}};
  const size_t width = rows[0].entries.size();
  for (const auto& r : rows)
    if (r.entries.size() != width) throw std::invalid_argument("ragged FSR rows");

  RatioForest forest(n);
  for (size_t j = 0; j < width; ++j) {
    int first = -1;
    for (size_t i = 0; i < n; ++i) {
      const auto& e = rows[i].entries[j];
      if (!e || *e == 0) continue;  // zero and empty match anything
      if (first < 0) {
        first = static_cast<int>(i);
        continue;
      }
      if (!forest.link(first, *rows[first].entries[j], static_cast<int>(i), *e))
        return std::nullopt;
    }
  }

  // Scale each component to minimal positive integers.
  std::vector<Rat> zq(n);
  std::map<int, Int> denom_lcm;
  for (size_t i = 0; i < n; ++i) {
    auto [root, q] = forest.find(static_cast<int>(i));
    zq[i] = q;
    Int d = rat_den(q);
    auto [it, inserted] = denom_lcm.emplace(root, d);
    if (!inserted) it->second = boost::multiprecision::lcm(it->second, d);
  }
  std::map<int, Int> numer_gcd;
  std::vector<Int> z(n);
  for (size_t i = 0; i < n; ++i) {
    auto [root, q] = forest.find(static_cast<int>(i));
    z[i] = rat_num(zq[i]) * (denom_lcm[root] / rat_den(zq[i]));
    auto [it, inserted] = numer_gcd.emplace(root, z[i]);
    if (!inserted) it->second = boost::multiprecision::gcd(it->second, z[i]);
  }
  for (size_t i = 0; i < n; ++i) {
    auto [root, q] = forest.find(static_cast<int>(i));
    z[i] /= numer_gcd[root];
  }

  LcmSolution sol;
  sol.z = std::move(z);
  sol.alpha.assign(width, 0);
  for (size_t j = 0; j < width; ++j) {
    for (size_t i = 0; i < n; ++i) {
      const auto& e = rows[i].entries[j];
      if (!e || *e == 0) continue;
      const Int scaled = sol.z[i] * *e;
      if (sol.alpha[j] != 0 && sol.alpha[j] != scaled) return std::nullopt;  // paranoia
      sol.alpha[j] = scaled;
    }
  }
  return sol;
}

}  // namespace ptb
