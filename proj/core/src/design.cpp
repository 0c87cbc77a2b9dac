#include "ptbcache/design.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace ptb {

namespace {

std::string require_valid_t(int K, int t) {
  if (t < 1)
    throw design_error("t = KM/N must be a positive integer (t <= 0 means no caching, "
                       "delivery degenerates)");
  if (t >= K)
    throw design_error("t = KM/N must be < K (t = K means every node caches the whole "
                       "library; no delivery needed)");
  return {};
}

void require_params(int K, int N, int M, int t) {
  require_valid_t(K, t);
  if (N < 1 || M < 1) throw design_error("N and M must be positive");
  if (static_cast<long long>(K) * M % N != 0 ||
      static_cast<long long>(K) * M / N != t)
    throw design_error("K*M/N must equal t exactly (got K=" + std::to_string(K) +
                       ", N=" + std::to_string(N) + ", M=" + std::to_string(M) + ")");
}

}  // namespace

std::string PtbDesign::starred(int multicast_index) const {
  const auto& mt = multicast_types[multicast_index];
  const auto& sel = selections[multicast_index];
  std::ostringstream os;
  os << '(';
  int unique = -1, prev = -1;
  for (size_t i = 0; i < mt.partition.parts().size(); ++i) {
    const int part = mt.partition.parts()[i];
    if (part != prev) ++unique, prev = part;
    if (i) os << ',';
    os << part;
    if (sel.active && std::find(sel.unique_part_indices.begin(), sel.unique_part_indices.end(),
                                unique) != sel.unique_part_indices.end())
      os << '*';
  }
  os << ')';
  if (!sel.active) os << '~';
  return os.str();
}

Int jcm_subpacketization(int K, int t) { return Int(t) * binomial(K, t); }

Int subpacketization(const std::vector<Int>& alpha, const std::vector<Int>& raw_counts) {
  return dot(alpha, raw_counts);
}

CandidateEval evaluate_candidate(const std::vector<PartitionVector>& packet_types,
                                 const std::vector<MulticastType>& multicast_types,
                                 const std::vector<TransmitterSelection>& selections,
                                 const std::vector<Int>& raw_counts, const MemoryTable& mct) {
  if (selections.size() != multicast_types.size())
    throw design_error("one transmitter selection per multicast type required");
  const int V = static_cast<int>(packet_types.size());

  CandidateEval ev;
  for (size_t r = 0; r < multicast_types.size(); ++r) {
    if (selections[r].active)
      ev.fsrt.rows.push_back(local_fsr(multicast_types[r], selections[r].unique_part_indices, V));
    else
      ev.fsrt.rows.push_back(FsrRow{std::vector<FsrEntry>(V, std::nullopt)});
  }

  auto lcm = lcm_vector(ev.fsrt.rows);
  if (!lcm) {
    ev.status = CandidateStatus::NoLcm;
    ev.detail = "no consistent LCM scaling of the local splitting rows";
    return ev;
  }
  ev.z = std::move(lcm->z);
  ev.alpha = std::move(lcm->alpha);

  // Schedulability: the per-group delivered split counts must exhaust every
  // requester's overall splitting ratio exactly.
  for (size_t r = 0; r < multicast_types.size(); ++r) {
    const auto& mt = multicast_types[r];
    for (const auto& up : mt.unique_parts) {
      const Int& a = ev.alpha[up.involved_index];
      if (!selections[r].active) {
        if (a != 0) {
          ev.status = CandidateStatus::NotSchedulable;
          ev.detail = "inactive multicast type " + mt.partition.str() + " involves kept type " +
                      up.involved.str();
          return ev;
        }
        continue;
      }
      const Int expect = ev.z[r] * *ev.fsrt.rows[r].entries[up.involved_index];
      if (a != expect) {
        ev.status = CandidateStatus::NotSchedulable;
        ev.detail = "type " + up.involved.str() + " gets " + to_string(expect) +
                    " splits in groups of type " + mt.partition.str() + " but alpha is " +
                    to_string(a);
        return ev;
      }
    }
  }

  ev.F = subpacketization(ev.alpha, raw_counts);
  if (ev.F == 0) {
    ev.status = CandidateStatus::NotSchedulable;
    ev.detail = "all packet types excluded";
    return ev;
  }

  if (!memory_check(ev.alpha, mct)) {
    ev.status = CandidateStatus::MemoryFail;
    ev.detail = "alpha . dF != 0 for some unique-group pair";
    return ev;
  }
  return ev;
}

PtbDesign assemble_design(std::string name, NodeGrouping grouping, int t,
                          std::vector<TransmitterSelection> selections, int N, int M) {
  const int K = grouping.user_count();
  require_params(K, N, M, t);

  PtbDesign d(std::move(grouping));
  d.name = std::move(name);
  d.K = K;
  d.N = N;
  d.M = M;
  d.t = t;
  d.tbar = K - t;
  d.packet_types = enumerate_packet_types(d.grouping, t);
  d.multicast_types = enumerate_multicast_types(d.grouping, t, d.packet_types);
  d.selections = std::move(selections);
  d.raw_counts = raw_count_vector(d.packet_types, d.grouping);
  d.mct = build_memory_table(d.packet_types, d.grouping);

  auto ev = evaluate_candidate(d.packet_types, d.multicast_types, d.selections, d.raw_counts,
                               d.mct);
  switch (ev.status) {
    case CandidateStatus::NoLcm:
      throw infeasible_error("design '" + d.name + "': " + ev.detail);
    case CandidateStatus::NotSchedulable:
      throw infeasible_error("design '" + d.name + "' is not schedulable: " + ev.detail);
    case CandidateStatus::MemoryFail:
      throw infeasible_error("design '" + d.name + "' violates the memory constraint: " +
                             ev.detail);
    case CandidateStatus::Ok:
      break;
  }
  d.fsrt = std::move(ev.fsrt);
  d.z = std::move(ev.z);
  d.alpha_lcm = std::move(ev.alpha);
  d.F = std::move(ev.F);
  d.F_jcm = jcm_subpacketization(K, t);
  d.gains = gain_decomposition(d);
  return d;
}

GainDecomposition gain_decomposition(const PtbDesign& d) {
  GainDecomposition g;
  Int kept_subfiles = 0;
  g.splitting_gain = 0;
  for (size_t j = 0; j < d.packet_types.size(); ++j) {
    if (d.alpha_lcm[j] > 0) {
      kept_subfiles += d.raw_counts[j];
      g.splitting_gain += (Int(d.t) - d.alpha_lcm[j]) * d.raw_counts[j];
    }
  }
  g.raw_subfile_saving = binomial(d.K, d.t) - kept_subfiles;
  g.raw_packet_saving = Int(d.t) * g.raw_subfile_saving;
  return g;
}

std::vector<TransmitterSelection> selection_options(const MulticastType& s) {
  const int u = static_cast<int>(s.unique_parts.size());
  std::vector<TransmitterSelection> out;
  for (int mask = 1; mask < (1 << u); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < u; ++i)
      if (mask & (1 << i)) idx.push_back(i);
    out.push_back(TransmitterSelection::of(std::move(idx)));
  }
  out.push_back(TransmitterSelection::inactive());
  return out;
}

PtbDesign jcm_design(int K, int t, int N, int M) {
  require_valid_t(K, t);
  NodeGrouping q(PartitionVector::of(std::vector<int>(K, 1)));
  return assemble_design("jcm", std::move(q), t, {TransmitterSelection::of({0})}, N, M);
}

PtbDesign jcm_design(int K, int t) { return jcm_design(K, t, K, t); }

PtbDesign preset_triple_grouping(int K, int N, int M) {
  if (K % 3 != 0 || K / 3 < 3)
    throw design_error("triple grouping needs K = 3m with m >= 3 (K=" + std::to_string(K) + ")");
  const int t = K - 3;
  NodeGrouping q(PartitionVector::of(std::vector<int>(K / 3, 3)));
  auto types = enumerate_packet_types(q, t);
  auto mts = enumerate_multicast_types(q, t, types);
  std::vector<TransmitterSelection> sel;
  for (const auto& mt : mts) {
    // (3,...,3,1): the singleton transmits; (3,...,2,2): the pairs transmit.
    const int target = mt.partition.count_of(1) == 1 ? 1 : 2;
    int idx = -1;
    for (size_t i = 0; i < mt.unique_parts.size(); ++i)
      if (mt.unique_parts[i].size == target) idx = static_cast<int>(i);
    if (idx < 0) throw std::logic_error("unexpected multicast type " + mt.partition.str());
    sel.push_back(TransmitterSelection::of({idx}));
  }
  return assemble_design("triple", std::move(q), t, std::move(sel), N, M);
}

PtbDesign preset_triple_grouping(int K) { return preset_triple_grouping(K, K, K - 3); }

PtbDesign preset_two_group(int K, int t, int N, int M) {
  if (K % 2 != 0) throw design_error("two-group grouping needs even K");
  if (t % 2 != 0 || t < 2) throw design_error("two-group grouping needs t = 2r with r >= 1");
  if (K / 2 < t + 1)
    throw design_error("two-group grouping needs K/2 >= t+1 (K=" + std::to_string(K) +
                       ", t=" + std::to_string(t) + ")");
  NodeGrouping q(PartitionVector::of({K / 2, K / 2}));
  auto types = enumerate_packet_types(q, t);
  auto mts = enumerate_multicast_types(q, t, types);
  std::vector<TransmitterSelection> sel;
  for (const auto& mt : mts) {
    if (mt.unique_parts.size() == 1) {
      // (t+1, 0): its only involved type (t,0) is excluded, no transmissions.
      sel.push_back(TransmitterSelection::inactive());
    } else {
      // (t+1-j, j): the size-j side transmits.
      sel.push_back(TransmitterSelection::of({1}));
    }
  }
  return assemble_design("two-group", std::move(q), t, std::move(sel), N, M);
}

PtbDesign preset_two_group(int K, int t) { return preset_two_group(K, t, K, t); }

PtbDesign preset_pair_grouping(int K, int tbar, int N, int M) {
  if (K % 2 != 0) throw design_error("pair grouping needs even K");
  if (tbar % 2 != 0 || tbar < 2) throw design_error("pair grouping needs even tbar >= 2");
  if (K < 2 * tbar)
    throw design_error("pair grouping needs K >= 2*tbar (K=" + std::to_string(K) +
                       ", tbar=" + std::to_string(tbar) + ")");
  const int t = K - tbar;
  NodeGrouping q(PartitionVector::of(std::vector<int>(K / 2, 2)));
  auto types = enumerate_packet_types(q, t);
  auto mts = enumerate_multicast_types(q, t, types);
  const auto counts = raw_count_vector(types, q);
  const auto mct = build_memory_table(types, q);

  // Freeze the minimal-F valid selection over this grouping.
  std::vector<std::vector<TransmitterSelection>> options;
  for (const auto& mt : mts) options.push_back(selection_options(mt));
  std::vector<TransmitterSelection> cur(mts.size()), best;
  std::vector<Int> best_alpha;
  Int best_f = -1;
  std::function<void(size_t)> walk = [&](size_t i) {
    if (i == mts.size()) {
      auto ev = evaluate_candidate(types, mts, cur, counts, mct);
      if (ev.status != CandidateStatus::Ok) return;
      if (best_f < 0 || ev.F < best_f || (ev.F == best_f && ev.alpha < best_alpha)) {
        best_f = ev.F;
        best = cur;
        best_alpha = ev.alpha;
      }
      return;
    }
    for (const auto& opt : options[i]) {
      cur[i] = opt;
      walk(i + 1);
    }
  };
  walk(0);
  if (best_f < 0)
    throw infeasible_error("pair grouping admits no valid selection at K=" + std::to_string(K) +
                           ", tbar=" + std::to_string(tbar));
  return assemble_design("pair", std::move(q), t, std::move(best), N, M);
}

PtbDesign preset_pair_grouping(int K, int tbar) {
  return preset_pair_grouping(K, tbar, K, K - tbar);
}

}  // namespace ptb
