#include "ptbcache/search.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <future>
#include <map>
#include <sstream>

#include "ptbcache/simulate.hpp"

namespace ptb {

namespace {

using Clock = std::chrono::steady_clock;

std::string starred_encoding(const NodeGrouping& q, const std::vector<MulticastType>& mts,
                             const std::vector<TransmitterSelection>& sel) {
  std::ostringstream os;
  os << q.partition().str() << ':';
  for (size_t r = 0; r < mts.size(); ++r) {
    if (r) os << '+';
    os << '(';
    int unique = -1, prev = -1;
    const auto& parts = mts[r].partition.parts();
    for (size_t i = 0; i < parts.size(); ++i) {
      if (parts[i] != prev) ++unique, prev = parts[i];
      if (i) os << ',';
      os << parts[i];
      if (sel[r].active &&
          std::find(sel[r].unique_part_indices.begin(), sel[r].unique_part_indices.end(),
                    unique) != sel[r].unique_part_indices.end())
        os << '*';
    }
    os << ')';
    if (!sel[r].active) os << '~';
  }
  return os.str();
}

struct GroupingScan {
  std::vector<RankedEntry> entries;
  Int candidates = 0, no_lcm = 0, memory = 0, schedule = 0;
  bool truncated = false;
};

GroupingScan scan_grouping(const PartitionVector& gp, int t, const SearchSpace& space,
                           Clock::time_point deadline, bool has_deadline) {
  GroupingScan out;
  NodeGrouping q(gp);
  const auto types = enumerate_packet_types(q, t);
  const auto mts = enumerate_multicast_types(q, t, types);
  const auto counts = raw_count_vector(types, q);
  const auto mct = build_memory_table(types, q);

  std::vector<std::vector<TransmitterSelection>> options;
  for (const auto& mt : mts) options.push_back(selection_options(mt));

  std::map<std::vector<Int>, RankedEntry> dedup;  // alpha -> first hit
  std::vector<TransmitterSelection> cur(mts.size());
  std::function<bool(size_t)> walk = [&](size_t i) -> bool {
    if (has_deadline && Clock::now() > deadline) {
      out.truncated = true;
      return false;
    }
    if (out.candidates >= space.max_candidates) {
      out.truncated = true;
      return false;
    }
    if (i == mts.size()) {
      out.candidates++;
      auto ev = evaluate_candidate(types, mts, cur, counts, mct);
      switch (ev.status) {
        case CandidateStatus::NoLcm: out.no_lcm++; return true;
        case CandidateStatus::NotSchedulable: out.schedule++; return true;
        case CandidateStatus::MemoryFail: out.memory++; return true;
        case CandidateStatus::Ok: break;
      }
      if (!dedup.count(ev.alpha)) {
        RankedEntry e;
        e.grouping = gp;
        e.selections = cur;
        e.alpha = ev.alpha;
        e.F = ev.F;
        e.selections_str = starred_encoding(q, mts, cur);
        dedup.emplace(std::move(ev.alpha), std::move(e));
      }
      return true;
    }
    for (const auto& opt : options[i]) {
      cur[i] = opt;
      if (!walk(i + 1)) return false;
    }
    return true;
  };
  walk(0);
  for (auto& [alpha, e] : dedup) out.entries.push_back(std::move(e));
  return out;
}

int thread_count() {
  if (const char* env = std::getenv("PTB_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

}  // namespace

PtbDesign design_from_entry(const RankedEntry& e, int t) {
  return assemble_design("search", NodeGrouping(e.grouping), t, e.selections,
                         e.grouping.total(), t);
}

SearchResult solve(const SearchSpace& space) {
  if (space.K < 2 || space.t < 1 || space.t >= space.K)
    throw design_error("search needs 2 <= K and 1 <= t < K");
  if (space.K > space.k_cap)
    throw design_error("search cap exceeded: K=" + std::to_string(space.K) + " > cap " +
                       std::to_string(space.k_cap));

  std::vector<PartitionVector> groupings;
  switch (space.filter) {
    case GroupingFilter::All:
      groupings = partitions(space.K, space.K, space.K);
      break;
    case GroupingFilter::EqualOnly:
      for (auto& p : partitions(space.K, space.K, space.K))
        if (NodeGrouping(p).unique_count() == 1) groupings.push_back(std::move(p));
      break;
    case GroupingFilter::Explicit:
      for (const auto& p : space.explicit_groupings) {
        if (p.total() != space.K)
          throw design_error("explicit grouping " + p.str() + " does not partition K");
        groupings.push_back(p);
      }
      break;
  }

  const bool has_deadline = space.time_budget_s > 0;
  const auto deadline =
      Clock::now() + std::chrono::duration_cast<Clock::duration>(
                         std::chrono::duration<double>(space.time_budget_s));

  SearchResult res;
  res.K = space.K;
  res.t = space.t;
  res.F_jcm = jcm_subpacketization(space.K, space.t);

  std::vector<GroupingScan> scans(groupings.size());
  const int threads = thread_count();
  if (threads <= 1) {
    for (size_t i = 0; i < groupings.size(); ++i)
      scans[i] = scan_grouping(groupings[i], space.t, space, deadline, has_deadline);
  } else {
    std::vector<std::future<GroupingScan>> futs;
    for (size_t i = 0; i < groupings.size(); ++i)
      futs.push_back(std::async(std::launch::async, [&, i] {
        return scan_grouping(groupings[i], space.t, space, deadline, has_deadline);
      }));
    for (size_t i = 0; i < groupings.size(); ++i) scans[i] = futs[i].get();
  }
  for (auto& s : scans) {
    res.candidates += s.candidates;
    res.rejected_no_lcm += s.no_lcm;
    res.rejected_memory += s.memory;
    res.rejected_decode += s.schedule;
    res.truncated = res.truncated || s.truncated;
    for (auto& e : s.entries) res.table.push_back(std::move(e));
  }

  std::sort(res.table.begin(), res.table.end(), [](const RankedEntry& a, const RankedEntry& b) {
    if (a.F != b.F) return a.F < b.F;
    if (a.grouping != b.grouping) return a.grouping < b.grouping;
    return a.alpha < b.alpha;
  });

  // Bit-exact decodability on the cheap-filter survivors: walk the ranked
  // table upward until a validated F layer is found (everything when
  // validate_all is set).
  SimConfig cfg;
  cfg.seed = 1;
  Int best_f = -1;
  for (auto& e : res.table) {
    if (!space.validate_all && best_f >= 0 && e.F > best_f) break;
    PtbDesign d = design_from_entry(e, space.t);
    SimReport rep;
    run_with_artifacts(SchemePlan::from(d), d.N, d.M, cfg, &rep, d.gains, d.F, d.F_jcm, d.name);
    if (rep.all_decoded && rep.cache_audit_ok) {
      e.validation = RankedEntry::Validation::Pass;
      if (best_f < 0) best_f = e.F;
      if (e.F == best_f) res.best.push_back(std::move(d));
    } else {
      e.validation = RankedEntry::Validation::Fail;
      res.rejected_decode++;
    }
  }

  if (space.include_coupled) {
    for (const auto& gp : groupings) {
      NodeGrouping q(gp);
      if (q.group_count() != 2 || q.unique_count() != 2) continue;
      if (q.group_sizes()[1] < space.t + 1) continue;  // refined table must be complete
      for (auto& cd : enumerate_coupled_two_group(q, space.t, space.K, space.t, 64)) {
        SimReport rep = run(cd, cfg);
        if (rep.all_decoded && rep.cache_audit_ok) res.coupled.push_back(std::move(cd));
      }
    }
    std::sort(res.coupled.begin(), res.coupled.end(),
              [](const CoupledDesign& a, const CoupledDesign& b) { return a.F < b.F; });
  }
  return res;
}

}  // namespace ptb
