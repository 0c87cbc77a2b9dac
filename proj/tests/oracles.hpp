#pragma once

// Independent brute-force oracles for the combinatorial layer. These stay
// deliberately dumb: enumerate, tally, compare. They must not share code
// with the production closed forms they check.

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "ptbcache/bigint.hpp"
#include "ptbcache/fsr.hpp"
#include "ptbcache/partition.hpp"
#include "ptbcache/scheme.hpp"

namespace oracle {

using ptb::Int;

// Sorted nonzero per-group intersection profile of a node subset under the
// canonical consecutive-block assignment.
inline std::vector<int> profile_of(uint32_t mask, const std::vector<int>& group_sizes) {
  std::vector<int> prof;
  int base = 0;
  for (int sz : group_sizes) {
    const uint32_t gm = ((sz < 32 ? (uint32_t(1) << sz) : 0u) - 1u) << base;
    const int c = std::popcount(mask & gm);
    if (c) prof.push_back(c);
    base += sz;
  }
  std::sort(prof.begin(), prof.end(), std::greater<int>());
  return prof;
}

// Tally of all t-subsets by profile.
inline std::map<std::vector<int>, Int> tally_subsets(const std::vector<int>& group_sizes, int t) {
  int K = 0;
  for (int s : group_sizes) K += s;
  std::map<std::vector<int>, Int> tally;
  for (uint32_t mask : ptb::subsets_of_size(K, t)) tally[profile_of(mask, group_sizes)] += 1;
  return tally;
}

inline Int count_raw(const std::vector<int>& group_sizes, int t, const std::vector<int>& type) {
  auto tally = tally_subsets(group_sizes, t);
  auto key = type;
  std::sort(key.begin(), key.end(), std::greater<int>());
  while (!key.empty() && key.back() == 0) key.pop_back();
  auto it = tally.find(key);
  return it == tally.end() ? Int(0) : it->second;
}

// Count of type-`type` t-subsets containing the given node (1-based, under
// the canonical assignment).
inline Int count_cached(const std::vector<int>& group_sizes, int t, const std::vector<int>& type,
                        int node) {
  int K = 0;
  for (int s : group_sizes) K += s;
  auto key = type;
  std::sort(key.begin(), key.end(), std::greater<int>());
  while (!key.empty() && key.back() == 0) key.pop_back();
  Int n = 0;
  for (uint32_t mask : ptb::subsets_of_size(K, t)) {
    if (!((mask >> (node - 1)) & 1u)) continue;
    if (profile_of(mask, group_sizes) == key) n += 1;
  }
  return n;
}

// All partitions of n (parts <= max_part, at most max_parts parts) obtained
// by enumerating compositions and canonicalizing.
inline std::set<std::vector<int>> partitions_by_composition(int n, int max_part, int max_parts) {
  std::set<std::vector<int>> out;
  std::vector<int> comp;
  std::function<void(int, int)> rec = [&](int rem, int slots) {
    if (rem == 0) {
      auto canon = comp;
      std::sort(canon.begin(), canon.end(), std::greater<int>());
      out.insert(canon);
      return;
    }
    if (slots == 0) return;
    for (int x = 1; x <= std::min(rem, max_part); ++x) {
      comp.push_back(x);
      rec(rem - x, slots - 1);
      comp.pop_back();
    }
  };
  rec(n, max_parts);
  if (n == 0) out.insert({});
  return out;
}

// Involved packet types of a multicast type under a grouping: realize one
// instance per achievable profile, remove one node from each unique group.
inline std::set<std::vector<int>> involved_by_removal(const std::vector<int>& group_sizes,
                                                      const std::vector<int>& s_type) {
  int K = 0;
  for (int sz : group_sizes) K += sz;
  int t1 = 0;
  for (int x : s_type) t1 += x;
  auto key = s_type;
  std::sort(key.begin(), key.end(), std::greater<int>());
  while (!key.empty() && key.back() == 0) key.pop_back();
  std::set<std::vector<int>> out;
  for (uint32_t mask : ptb::subsets_of_size(K, t1)) {
    if (profile_of(mask, group_sizes) != key) continue;
    for (int node : ptb::mask_to_nodes(mask))
      out.insert(profile_of(mask & ~(uint32_t(1) << (node - 1)), group_sizes));
    break;  // types are instance-independent; one instance suffices
  }
  return out;
}

// Brute-force LCM-vector search: scalars in [1, zmax]^n, Definition-1 rules,
// minimal squared norm of the combine.
inline std::optional<ptb::LcmSolution> lcm_brute(const std::vector<ptb::FsrRow>& rows,
                                                 long long zmax) {
  const size_t n = rows.size();
  const size_t width = n ? rows[0].entries.size() : 0;
  std::vector<long long> z(n, 1);
  std::optional<ptb::LcmSolution> best;
  Int best_norm = -1;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == n) {
      std::vector<Int> combine(width, 0);
      for (size_t j = 0; j < width; ++j) {
        for (size_t r = 0; r < n; ++r) {
          const auto& e = rows[r].entries[j];
          if (!e || *e == 0) continue;
          const Int scaled = Int(z[r]) * *e;
          if (combine[j] != 0 && combine[j] != scaled) return;
          combine[j] = scaled;
        }
      }
      Int norm = 0;
      for (const auto& c : combine) norm += c * c;
      if (best_norm < 0 || norm < best_norm) {
        best_norm = norm;
        ptb::LcmSolution sol;
        for (long long v : z) sol.z.push_back(v);
        sol.alpha = combine;
        best = sol;
      }
      return;
    }
    for (z[i] = 1; z[i] <= zmax; ++z[i]) rec(i + 1);
  };
  rec(0);
  return best;
}

}  // namespace oracle
