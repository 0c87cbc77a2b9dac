#include "ptbcache/coupled.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace ptb {

namespace {

struct RefinedTables {
  int a, b, t;
  std::vector<RefinedType> types;  // ascending x
  std::vector<Int> counts;
  std::vector<std::vector<Int>> per_node;  // 2 x V
  std::vector<Int> delta;
  std::vector<int> profile_u;  // valid multicast profiles, ascending u
  std::map<int, int> type_index_by_x;
};

RefinedTables refined_tables(const NodeGrouping& q, int t) {
  if (q.group_count() != 2 || q.unique_count() != 2)
    throw design_error("coupled designs need a two-group unequal grouping");
  RefinedTables tb;
  tb.a = q.group_sizes()[0];
  tb.b = q.group_sizes()[1];
  tb.t = t;
  for (int x = std::max(0, t - tb.b); x <= std::min(t, tb.a); ++x) {
    tb.type_index_by_x[x] = static_cast<int>(tb.types.size());
    tb.types.push_back({x, t - x});
  }
  for (const auto& v : tb.types) {
    tb.counts.push_back(binomial(tb.a, v.x) * binomial(tb.b, v.y));
  }
  tb.per_node.resize(2);
  for (const auto& v : tb.types) {
    tb.per_node[0].push_back(binomial(tb.a - 1, v.x - 1) * binomial(tb.b, v.y));
    tb.per_node[1].push_back(binomial(tb.a, v.x) * binomial(tb.b - 1, v.y - 1));
  }
  tb.delta.resize(tb.types.size());
  for (size_t j = 0; j < tb.types.size(); ++j)
    tb.delta[j] = tb.per_node[1][j] - tb.per_node[0][j];
  for (int u = std::max(0, t + 1 - tb.b); u <= std::min(t + 1, tb.a); ++u)
    tb.profile_u.push_back(u);
  return tb;
}

// Local splitting row of refined profile (u, w) under a side selection.
// Nodes of the large side need (u-1, w); nodes of the small side (u, w-1).
FsrRow refined_row(const RefinedTables& tb, int u, SideSelection sel) {
  const int w = tb.t + 1 - u;
  FsrRow row;
  row.entries.assign(tb.types.size(), std::nullopt);
  if (sel == SideSelection::Inactive) return row;
  const bool big = sel == SideSelection::BigSide || sel == SideSelection::Both;
  const bool small = sel == SideSelection::SmallSide || sel == SideSelection::Both;
  if (big && u == 0) throw design_error("empty large-side part selected as transmitter");
  if (small && w == 0) throw design_error("empty small-side part selected as transmitter");
  const Int big_g = (big ? u : 0) + (small ? w : 0);
  if (u >= 1) row.entries[tb.type_index_by_x.at(u - 1)] = big ? big_g - 1 : big_g;
  if (w >= 1) row.entries[tb.type_index_by_x.at(u)] = small ? big_g - 1 : big_g;
  return row;
}

struct HEval {
  bool ok = false;
  std::vector<Int> alpha;
  std::vector<Int> z;
  Int dot_delta;
  std::string detail;
};

HEval evaluate_h(const RefinedTables& tb, const std::vector<SideSelection>& sel) {
  HEval ev;
  if (sel.size() != tb.profile_u.size())
    throw design_error("one side selection per refined multicast profile required");
  std::vector<FsrRow> rows;
  for (size_t r = 0; r < tb.profile_u.size(); ++r)
    rows.push_back(refined_row(tb, tb.profile_u[r], sel[r]));
  auto lcm = lcm_vector(rows);
  if (!lcm) {
    ev.detail = "no consistent LCM scaling";
    return ev;
  }
  for (size_t r = 0; r < tb.profile_u.size(); ++r) {
    const int u = tb.profile_u[r];
    const int w = tb.t + 1 - u;
    auto check = [&](int x) -> bool {
      const int j = tb.type_index_by_x.at(x);
      const Int expect = sel[r] == SideSelection::Inactive ? Int(0)
                                                           : lcm->z[r] * *rows[r].entries[j];
      if (lcm->alpha[j] != expect) {
        ev.detail = "profile (" + std::to_string(u) + "," + std::to_string(w) + ") delivers " +
                    to_string(expect) + " splits of type index " + std::to_string(j) +
                    " but alpha is " + to_string(lcm->alpha[j]);
        return false;
      }
      return true;
    };
    if (u >= 1 && !check(u - 1)) return ev;
    if (w >= 1 && !check(u)) return ev;
  }
  ev.ok = true;
  ev.alpha = std::move(lcm->alpha);
  ev.z = std::move(lcm->z);
  ev.dot_delta = dot(ev.alpha, tb.delta);
  return ev;
}

void require_coupled_params(int K, int N, int M, int t) {
  if (t < 1 || t >= K) throw design_error("coupled design needs 1 <= t < K");
  if (N < 1 || M < 1) throw design_error("N and M must be positive");
  if (static_cast<long long>(K) * M % N != 0 || static_cast<long long>(K) * M / N != t)
    throw design_error("K*M/N must equal t exactly");
}

}  // namespace

std::string RefinedType::str() const {
  return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
}

std::string side_selection_str(SideSelection s) {
  switch (s) {
    case SideSelection::Inactive: return "off";
    case SideSelection::BigSide: return "big";
    case SideSelection::SmallSide: return "small";
    case SideSelection::Both: return "both";
  }
  return "?";
}

Rat CoupledDesign::cached_units_per_file(int side) const {
  Rat total = 0;
  for (size_t j = 0; j < types.size(); ++j) {
    Rat len = 0;
    for (const auto& g : groups) len += Rat(g.alpha[j]) * g.gamma;
    total += Rat(per_node_counts[side][j]) * len;
  }
  return total;
}

CoupledDesign assemble_coupled(std::string name, NodeGrouping grouping, int t,
                               std::vector<std::vector<SideSelection>> selections_per_h, int N,
                               int M) {
  const int K = grouping.user_count();
  require_coupled_params(K, N, M, t);
  auto tb = refined_tables(grouping, t);
  const int H = static_cast<int>(selections_per_h.size());
  if (H < 1 || H > 2) throw design_error("coupled designs support H in {1, 2}");

  CoupledDesign d(std::move(grouping));
  d.name = std::move(name);
  d.K = K;
  d.N = N;
  d.M = M;
  d.t = t;
  d.tbar = K - t;
  d.types = tb.types;
  d.raw_counts = tb.counts;
  d.per_node_counts = tb.per_node;
  d.delta = tb.delta;

  std::vector<Int> dots;
  for (auto& sel : selections_per_h) {
    auto ev = evaluate_h(tb, sel);
    if (!ev.ok)
      throw infeasible_error("coupled design '" + d.name + "' is not schedulable: " + ev.detail);
    CoupledGroupSpec spec;
    spec.alpha = std::move(ev.alpha);
    spec.selections = std::move(sel);
    spec.z = std::move(ev.z);
    d.groups.push_back(std::move(spec));
    dots.push_back(ev.dot_delta);
  }

  // gamma_1 = 1; the balance equation sum_h gamma_h * (alpha_h . dF) = 0
  // fixes the remaining ratio.
  d.groups[0].gamma = 1;
  if (H == 1) {
    if (dots[0] != 0)
      throw infeasible_error("coupled design '" + d.name +
                             "' violates the memory balance (alpha . dF = " + to_string(dots[0]) +
                             ") and has no second coupled group to compensate");
  } else {
    if (dots[0] == 0 && dots[1] == 0) {
      d.groups[1].gamma = 1;
    } else if (dots[1] == 0 || Rat(-dots[0], dots[1]) <= 0) {
      throw infeasible_error("coupled design '" + d.name +
                             "' admits no positive packet-length ratio (dots " +
                             to_string(dots[0]) + ", " + to_string(dots[1]) + ")");
    } else {
      d.groups[1].gamma = Rat(-dots[0], dots[1]);
    }
  }
  Rat balance = 0;
  for (int h = 0; h < H; ++h) balance += d.groups[h].gamma * Rat(dots[h]);
  if (balance != 0) throw std::logic_error("balance equation not satisfied after gamma solve");

  d.alpha_total.assign(d.types.size(), 0);
  for (const auto& g : d.groups)
    for (size_t j = 0; j < d.types.size(); ++j) d.alpha_total[j] += g.alpha[j];
  d.F = dot(d.alpha_total, d.raw_counts);
  if (d.F == 0) throw infeasible_error("coupled design '" + d.name + "' excludes every type");
  d.F_jcm = jcm_subpacketization(K, t);

  Int kept = 0;
  d.gains.splitting_gain = 0;
  for (size_t j = 0; j < d.types.size(); ++j) {
    if (d.alpha_total[j] > 0) {
      kept += d.raw_counts[j];
      d.gains.splitting_gain += (Int(t) - d.alpha_total[j]) * d.raw_counts[j];
    }
  }
  d.gains.raw_subfile_saving = binomial(K, t) - kept;
  d.gains.raw_packet_saving = Int(t) * d.gains.raw_subfile_saving;
  return d;
}

CoupledDesign preset_heterogeneous(int K, int t, int N, int M) {
  if (K % 2 != 1 || K < 3) throw design_error("heterogeneous grouping needs odd K");
  if (t % 2 != 0 || t < 2) throw design_error("heterogeneous grouping needs t = 2r with r >= 1");
  if ((K - 1) / 2 < t + 1)
    throw design_error("heterogeneous grouping needs (K-1)/2 >= t+1 (K=" + std::to_string(K) +
                       ", t=" + std::to_string(t) + ")");
  const int r = t / 2;
  NodeGrouping q(PartitionVector::of({(K + 1) / 2, (K - 1) / 2}));

  // Balanced group: alpha(x,y) = min(x,y); the smaller part of each profile
  // transmits. Cascade group: alpha(x,y) = x; the larger-group part
  // transmits. Their sum is min(2x, t) = (0,2,4,...,t-2,t,...,t).
  std::vector<SideSelection> balanced, cascade;
  for (int u = 0; u <= t + 1; ++u) {
    const int w = t + 1 - u;
    if (u == 0 || u == t + 1)
      balanced.push_back(SideSelection::Inactive);
    else
      balanced.push_back(u <= r ? SideSelection::BigSide : SideSelection::SmallSide);
    cascade.push_back(u == 0 ? SideSelection::Inactive : SideSelection::BigSide);
    (void)w;
  }
  return assemble_coupled("hetero", std::move(q), t, {std::move(balanced), std::move(cascade)},
                          N, M);
}

CoupledDesign preset_heterogeneous(int K, int t) { return preset_heterogeneous(K, t, K, t); }

Rat heterogeneous_ratio_bound(int t) {
  // (1/t) * (C(t, t/2) / 2^t - 1) + 1
  Rat inner = Rat(binomial(t, t / 2), Int(1) << t) - 1;
  return inner / t + 1;
}

std::vector<CoupledDesign> enumerate_coupled_two_group(const NodeGrouping& grouping, int t,
                                                       int N, int M, size_t max_results) {
  auto tb = refined_tables(grouping, t);
  const size_t P = tb.profile_u.size();

  struct HCand {
    std::vector<SideSelection> sel;
    std::vector<Int> alpha;
    Int dot;
  };
  std::vector<HCand> cands;
  std::vector<SideSelection> cur(P, SideSelection::Inactive);
  std::function<void(size_t)> walk = [&](size_t i) {
    if (i == P) {
      auto ev = evaluate_h(tb, cur);
      if (ev.ok) cands.push_back({cur, std::move(ev.alpha), std::move(ev.dot_delta)});
      return;
    }
    const int u = tb.profile_u[i];
    const int w = t + 1 - u;
    std::vector<SideSelection> opts{SideSelection::Inactive};
    if (u >= 1) opts.push_back(SideSelection::BigSide);
    if (w >= 1) opts.push_back(SideSelection::SmallSide);
    if (u >= 1 && w >= 1) opts.push_back(SideSelection::Both);
    for (auto o : opts) {
      cur[i] = o;
      walk(i + 1);
    }
  };
  walk(0);

  std::vector<CoupledDesign> out;
  std::set<std::string> seen;
  auto try_add = [&](std::vector<std::vector<SideSelection>> sels) {
    try {
      auto d = assemble_coupled("coupled-search", NodeGrouping(grouping.partition()), t, sels, N,
                                M);
      std::ostringstream key;
      for (const auto& a : d.alpha_total) key << a << ',';
      key << '|';
      for (const auto& g : d.groups) {
        for (const auto& a : g.alpha) key << a << ',';
        key << '@' << to_string(g.gamma) << ';';
      }
      if (seen.insert(key.str()).second) out.push_back(std::move(d));
    } catch (const infeasible_error&) {
    }
  };

  for (size_t i = 0; i < cands.size(); ++i) {
    if (cands[i].dot == 0) try_add({cands[i].sel});
    for (size_t j = i + 1; j < cands.size(); ++j) {
      const bool opposite = (cands[i].dot > 0 && cands[j].dot < 0) ||
                            (cands[i].dot < 0 && cands[j].dot > 0) ||
                            (cands[i].dot == 0 && cands[j].dot == 0);
      if (!opposite) continue;
      // Positive-dot group first, matching the preset's ordering.
      if (cands[j].dot > 0)
        try_add({cands[j].sel, cands[i].sel});
      else
        try_add({cands[i].sel, cands[j].sel});
    }
  }

  std::sort(out.begin(), out.end(), [](const CoupledDesign& a, const CoupledDesign& b) {
    if (a.F != b.F) return a.F < b.F;
    if (a.alpha_total != b.alpha_total) return a.alpha_total < b.alpha_total;
    return a.H() < b.H();
  });
  if (out.size() > max_results)
    out.erase(out.begin() + static_cast<long>(max_results), out.end());
  return out;
}

}  // namespace ptb
