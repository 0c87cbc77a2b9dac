#include "ptbcache/scheme.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <sstream>
#include <tuple>

namespace ptb {

// ---------------------------------------------------------------------------
// BitString

BitString::BitString(long long bits) : words_((bits + 63) / 64, 0), bits_(bits) {}

BitString BitString::random(long long bits, std::mt19937_64& rng) {
  BitString b(bits);
  for (auto& w : b.words_) w = rng();
  if (bits % 64) b.words_.back() &= (uint64_t(1) << (bits % 64)) - 1;
  return b;
}

void BitString::xor_with(const BitString& o) {
  if (o.bits_ != bits_) throw std::invalid_argument("xor of unequal-length payloads");
  for (size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
}

bool BitString::get(long long i) const { return (words_[i / 64] >> (i % 64)) & 1u; }

BitString BitString::slice(long long offset, long long len) const {
  if (offset < 0 || len < 0 || offset + len > bits_)
    throw std::out_of_range("slice out of range");
  BitString out(len);
  for (long long i = 0; i < len; ++i) {
    const long long src = offset + i;
    if ((words_[src / 64] >> (src % 64)) & 1u) out.words_[i / 64] |= uint64_t(1) << (i % 64);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Subset helpers

std::vector<int> mask_to_nodes(uint32_t mask) {
  std::vector<int> out;
  for (int k = 1; mask; ++k, mask >>= 1)
    if (mask & 1u) out.push_back(k);
  return out;
}

uint32_t nodes_to_mask(const std::vector<int>& nodes) {
  uint32_t m = 0;
  for (int k : nodes) m |= uint32_t(1) << (k - 1);
  return m;
}

std::vector<uint32_t> subsets_of_size(int K, int r) {
  std::vector<uint32_t> out;
  if (r < 0 || r > K) return out;
  if (r == 0) return {0};
  uint32_t v = (uint32_t(1) << r) - 1;
  const uint32_t limit = K < 32 ? (uint32_t(1) << K) : 0;
  while (K == 32 || v < limit) {
    out.push_back(v);
    const uint32_t c = v & -v, rr = v + c;
    const uint32_t next = (((rr ^ v) >> 2) / c) | rr;
    if (next <= v) break;
    v = next;
  }
  return out;
}

// ---------------------------------------------------------------------------
// NodeAssignment

NodeAssignment NodeAssignment::canonical(const NodeGrouping& q) {
  NodeAssignment a;
  a.group_of.assign(q.user_count() + 1, -1);
  int next = 1;
  for (int g = 0; g < q.group_count(); ++g) {
    std::vector<int> nodes;
    for (int i = 0; i < q.group_sizes()[g]; ++i) {
      a.group_of[next] = g;
      nodes.push_back(next++);
    }
    a.group_masks.push_back(nodes_to_mask(nodes));
    a.groups.push_back(std::move(nodes));
  }
  return a;
}

// ---------------------------------------------------------------------------
// SchemePlan

std::vector<int> SchemePlan::profile_of_mask(uint32_t mask) const {
  std::vector<int> prof;
  for (uint32_t gm : assignment_.group_masks) {
    const int c = std::popcount(mask & gm);
    if (c) prof.push_back(c);
  }
  std::sort(prof.begin(), prof.end(), std::greater<int>());
  return prof;
}

SchemePlan SchemePlan::from(const PtbDesign& d) {
  if (d.K > 31) throw design_error("scheme construction supports K <= 31");
  SchemePlan p;
  p.K_ = d.K;
  p.t_ = d.t;
  p.H_ = 1;
  p.refined_ = false;
  p.assignment_ = NodeAssignment::canonical(d.grouping);
  p.gamma_ = {Rat(1)};
  p.alpha_ = {d.alpha_lcm};
  p.class_counts_ = d.raw_counts;
  for (size_t j = 0; j < d.packet_types.size(); ++j) {
    p.class_names_.push_back(d.packet_types[j].str());
    p.class_by_profile_[d.packet_types[j].parts()] = static_cast<int>(j);
  }
  for (size_t r = 0; r < d.multicast_types.size(); ++r) {
    const auto& mt = d.multicast_types[r];
    KindBehavior kb;
    kb.active = d.selections[r].active;
    kb.z = kb.active ? to_ll(d.z[r]) : 0;
    if (kb.active)
      for (int i : d.selections[r].unique_part_indices)
        kb.tx_sizes.push_back(mt.unique_parts[i].size);
    p.kind_by_profile_[mt.partition.parts()] = {kb};
  }
  return p;
}

SchemePlan SchemePlan::from(const CoupledDesign& d) {
  if (d.K > 31) throw design_error("scheme construction supports K <= 31");
  SchemePlan p;
  p.K_ = d.K;
  p.t_ = d.t;
  p.H_ = d.H();
  p.refined_ = true;
  p.assignment_ = NodeAssignment::canonical(d.grouping);
  for (const auto& g : d.groups) p.gamma_.push_back(g.gamma);
  for (const auto& g : d.groups) p.alpha_.push_back(g.alpha);
  p.class_counts_ = d.raw_counts;
  for (size_t j = 0; j < d.types.size(); ++j) {
    p.class_names_.push_back(d.types[j].str());
    p.class_by_x_[d.types[j].x] = static_cast<int>(j);
  }
  // Profiles in ascending u, same order used by assemble_coupled.
  const int a = d.grouping.group_sizes()[0], b = d.grouping.group_sizes()[1];
  int idx = 0;
  for (int u = std::max(0, d.t + 1 - b); u <= std::min(d.t + 1, a); ++u, ++idx) {
    std::vector<KindBehavior> per_h;
    for (const auto& g : d.groups) {
      KindBehavior kb;
      const SideSelection sel = g.selections[idx];
      kb.active = sel != SideSelection::Inactive;
      kb.z = kb.active ? to_ll(g.z[idx]) : 0;
      kb.tx_big = sel == SideSelection::BigSide || sel == SideSelection::Both;
      kb.tx_small = sel == SideSelection::SmallSide || sel == SideSelection::Both;
      per_h.push_back(kb);
    }
    p.kind_by_u_[u] = std::move(per_h);
  }
  return p;
}

Int SchemePlan::total_splits(int cls) const {
  Int s = 0;
  for (int h = 0; h < H_; ++h) s += alpha_[h][cls];
  return s;
}

Int SchemePlan::subpacketization() const {
  Int f = 0;
  for (int c = 0; c < num_classes(); ++c) f += total_splits(c) * class_counts_[c];
  return f;
}

int SchemePlan::class_of_subset(uint32_t mask) const {
  if (refined_) {
    const int x = std::popcount(mask & assignment_.group_masks[0]);
    auto it = class_by_x_.find(x);
    if (it == class_by_x_.end()) throw std::logic_error("subset outside refined type table");
    return it->second;
  }
  auto it = class_by_profile_.find(profile_of_mask(mask));
  if (it == class_by_profile_.end()) throw std::logic_error("subset outside packet type table");
  return it->second;
}

uint32_t SchemePlan::tx_mask_for(uint32_t group_mask, const KindBehavior& kb) const {
  uint32_t tx = 0;
  if (refined_) {
    if (kb.tx_big) tx |= group_mask & assignment_.group_masks[0];
    if (kb.tx_small) tx |= group_mask & assignment_.group_masks[1];
    return tx;
  }
  for (uint32_t gm : assignment_.group_masks) {
    const int c = std::popcount(group_mask & gm);
    if (c && std::find(kb.tx_sizes.begin(), kb.tx_sizes.end(), c) != kb.tx_sizes.end())
      tx |= group_mask & gm;
  }
  return tx;
}

SchemePlan::GroupBehavior SchemePlan::behavior(uint32_t group_mask, int h) const {
  const KindBehavior* kb = nullptr;
  if (refined_) {
    const int u = std::popcount(group_mask & assignment_.group_masks[0]);
    auto it = kind_by_u_.find(u);
    if (it == kind_by_u_.end()) throw std::logic_error("group outside refined profile table");
    kb = &it->second[h];
  } else {
    auto it = kind_by_profile_.find(profile_of_mask(group_mask));
    if (it == kind_by_profile_.end()) throw std::logic_error("group outside multicast type table");
    kb = &it->second[h];
  }
  GroupBehavior b;
  b.active = kb->active;
  if (!b.active) return b;
  b.z = kb->z;
  b.tx_mask = tx_mask_for(group_mask, *kb);
  return b;
}

// ---------------------------------------------------------------------------
// FileLayout

FileLayout FileLayout::build(const SchemePlan& plan, long long file_bits_requested) {
  FileLayout L;
  // Smallest unit lengths making every coupled group's packet an integer
  // number of bits: ell_1 = lcm of the gamma denominators.
  Int ell1 = 1;
  for (const auto& g : plan.gamma()) ell1 = boost::multiprecision::lcm(ell1, rat_den(g));
  std::vector<Int> ell;
  for (const auto& g : plan.gamma()) {
    Rat e = Rat(ell1) * g;
    if (rat_den(e) != 1 || rat_num(e) <= 0) throw std::logic_error("bad unit length");
    ell.push_back(rat_num(e));
  }
  Int total_min = 0;
  for (int c = 0; c < plan.num_classes(); ++c)
    for (int h = 0; h < plan.H(); ++h)
      total_min += plan.class_counts()[c] * plan.splits(c, h) * ell[h];

  long long requested = file_bits_requested;
  if (requested == 0) requested = to_ll(total_min);
  if (requested <= 0 || Int(requested) % total_min != 0)
    throw design_error("file size " + std::to_string(file_bits_requested) +
                       " bits is incompatible with this design; it must be a positive multiple "
                       "of " + to_string(total_min) + " bits");
  const Int scale = Int(requested) / total_min;
  L.file_bits = requested;
  for (int h = 0; h < plan.H(); ++h) L.unit_bits.push_back(to_ll(ell[h] * scale));

  long long offset = 0;
  for (uint32_t mask : subsets_of_size(plan.K(), plan.t())) {
    const int cls = plan.class_of_subset(mask);
    if (plan.total_splits(cls) == 0) continue;
    RawPacket pkt;
    pkt.mask = mask;
    pkt.cls = cls;
    for (int h = 0; h < plan.H(); ++h) {
      pkt.base_offset.push_back(offset);
      offset += to_ll(plan.splits(cls, h)) * L.unit_bits[h];
    }
    L.packet_index[mask] = static_cast<int>(L.packets.size());
    L.packets.push_back(std::move(pkt));
  }
  if (offset != L.file_bits) throw std::logic_error("layout does not tile the file exactly");
  return L;
}

long long FileLayout::split_offset(int packet_id, int h, long long split_1based) const {
  const auto& pkt = packets[packet_id];
  return pkt.base_offset[h] + (split_1based - 1) * unit_bits[h];
}

long long FileLayout::packet_bits(int packet_id) const {
  const auto& pkt = packets[packet_id];
  const long long end = static_cast<size_t>(packet_id) + 1 < packets.size()
                            ? packets[packet_id + 1].base_offset[0]
                            : file_bits;
  return end - pkt.base_offset[0];
}

// ---------------------------------------------------------------------------
// Placement

Int Placement::cached_bits(int node) const {
  Int bits = 0;
  for (size_t i = 0; i < layout.packets.size(); ++i)
    if (node_caches(node, static_cast<int>(i))) bits += layout.packet_bits(static_cast<int>(i));
  return bits * N;
}

Placement build_placement(const SchemePlan& plan, int N, int M, long long file_bits,
                          uint64_t seed) {
  if (N < 1 || M < 1) throw design_error("N and M must be positive");
  Placement p{plan, FileLayout::build(plan, file_bits), N, M, {}};
  std::mt19937_64 rng(seed);
  for (int n = 0; n < N; ++n) p.files.push_back(BitString::random(p.layout.file_bits, rng));
  return p;
}

// ---------------------------------------------------------------------------
// Schedule

DeliverySchedule build_schedule(const Placement& p, const std::vector<int>& demand) {
  const SchemePlan& plan = p.plan;
  const int K = plan.K();
  if (static_cast<int>(demand.size()) != K)
    throw design_error("demand vector must have K entries");
  for (int d : demand)
    if (d < 1 || d > p.N) throw design_error("demand out of range [1, N]");

  DeliverySchedule sched;
  for (uint32_t smask : subsets_of_size(K, plan.t() + 1)) {
    const auto members = mask_to_nodes(smask);
    for (int h = 0; h < plan.H(); ++h) {
      const auto b = plan.behavior(smask, h);
      // Exhaustion bookkeeping: a member's needed packet has
      // alpha_h(class) splits in this coupled group, all of which must be
      // delivered inside this instance (z*G to receivers-only members,
      // z*(G-1) to fellow transmitters).
      const uint32_t tx = b.active ? b.tx_mask : 0;
      const long long G = std::popcount(tx);
      for (int k : members) {
        const int cls = plan.class_of_subset(smask & ~(uint32_t(1) << (k - 1)));
        const Int needed = plan.splits(cls, h);
        const bool is_tx = (tx >> (k - 1)) & 1u;
        const Int delivered = !b.active ? Int(0) : (is_tx ? Int(b.z) * (G - 1) : Int(b.z) * G);
        if (delivered != needed) {
          std::ostringstream os;
          os << "schedule-infeasible: node " << k << " in group {";
          for (size_t i = 0; i < members.size(); ++i) os << (i ? "," : "") << members[i];
          os << "} (coupled group " << h + 1 << ") would receive " << to_string(delivered)
             << " splits of a packet that has " << to_string(needed);
          throw infeasible_error(os.str());
        }
      }
      if (!b.active) continue;

      const auto tx_nodes = mask_to_nodes(tx);
      for (long long round = 1; round <= b.z; ++round) {
        for (size_t r = 0; r < tx_nodes.size(); ++r) {
          const int sender = tx_nodes[r];
          Message msg;
          msg.group_mask = smask;
          msg.sender = sender;
          msg.h = h;
          msg.length_bits = p.layout.unit_bits[h];
          for (int k : members) {
            if (k == sender) continue;
            const uint32_t pkt_mask = smask & ~(uint32_t(1) << (k - 1));
            const int packet_id = p.layout.packet_index.at(pkt_mask);
            long long split;
            if ((tx >> (k - 1)) & 1u) {
              // rank of sender among the transmitters other than k
              long long rank = 0;
              for (int x : tx_nodes) {
                if (x == k) continue;
                ++rank;
                if (x == sender) break;
              }
              split = (round - 1) * (G - 1) + rank;
            } else {
              split = (round - 1) * G + static_cast<long long>(r) + 1;
            }
            msg.constituents.push_back({k, demand[k - 1], packet_id, h, split});
          }
          sched.total_bits += msg.length_bits;
          sched.messages.push_back(std::move(msg));
        }
      }
    }
  }
  return sched;
}

// ---------------------------------------------------------------------------
// Validation

ValidationReport validate(const Placement& p, const DeliverySchedule& s,
                          const std::vector<int>& demand) {
  const SchemePlan& plan = p.plan;
  const int K = plan.K();
  ValidationReport rep;
  rep.per_user.resize(K);
  rep.messages_ok = true;

  auto fail_user = [&](int k, const std::string& why) {
    auto& v = rep.per_user[k - 1];
    if (v.decode_ok) {
      v.decode_ok = false;
      v.detail = why;
    }
  };

  // (node, packet, h, split) -> delivery count
  std::map<std::tuple<int, int, int, long long>, int> delivered;

  for (const auto& msg : s.messages) {
    // Reconstruct the payload from true file contents.
    BitString payload(msg.length_bits);
    for (const auto& c : msg.constituents) {
      payload.xor_with(p.files[c.file - 1].slice(p.layout.split_offset(c.packet_id, c.h, c.split),
                                                 msg.length_bits));
    }
    for (int k : mask_to_nodes(msg.group_mask)) {
      if (k == msg.sender) continue;
      const SplitRef* own = nullptr;
      bool cancel_ok = true;
      BitString recovered = payload;
      for (const auto& c : msg.constituents) {
        if (c.requester == k) {
          if (own) cancel_ok = false;  // two unknowns, not one-shot
          own = &c;
          continue;
        }
        if (!p.node_caches(k, c.packet_id)) {
          cancel_ok = false;
          break;
        }
        recovered.xor_with(p.files[c.file - 1].slice(
            p.layout.split_offset(c.packet_id, c.h, c.split), msg.length_bits));
      }
      if (!cancel_ok) {
        rep.messages_ok = false;
        fail_user(k, "cannot cancel message from node " + std::to_string(msg.sender));
        continue;
      }
      if (!own) continue;  // nothing addressed to k in this message
      const BitString truth = p.files[own->file - 1].slice(
          p.layout.split_offset(own->packet_id, own->h, own->split), msg.length_bits);
      if (!(recovered == truth)) {
        rep.messages_ok = false;
        fail_user(k, "decoded split mismatches file content");
        continue;
      }
      delivered[{k, own->packet_id, own->h, own->split}]++;
    }
  }

  // Coverage: every split of every needed packet exactly once.
  for (int k = 1; k <= K; ++k) {
    for (size_t pid = 0; pid < p.layout.packets.size(); ++pid) {
      if (p.node_caches(k, static_cast<int>(pid))) continue;
      const int cls = p.layout.packets[pid].cls;
      for (int h = 0; h < plan.H(); ++h) {
        const long long splits = to_ll(plan.splits(cls, h));
        for (long long i = 1; i <= splits; ++i) {
          const auto it = delivered.find({k, static_cast<int>(pid), h, i});
          const int count = it == delivered.end() ? 0 : it->second;
          if (count != 1)
            fail_user(k, (count == 0 ? "missing" : "duplicate") + std::string(" split ") +
                             std::to_string(i) + " of packet " + std::to_string(pid) +
                             " (coupled group " + std::to_string(h + 1) + ")");
        }
      }
    }
  }

  rep.cache_audit_ok = true;
  const Int budget = Int(p.M) * p.layout.file_bits;
  for (int k = 1; k <= K; ++k)
    if (p.cached_bits(k) != budget) rep.cache_audit_ok = false;

  rep.all_decoded = true;
  for (const auto& v : rep.per_user) rep.all_decoded = rep.all_decoded && v.decode_ok;
  rep.message_count = static_cast<long long>(s.messages.size());
  rep.total_bits = s.total_bits;
  rep.rate = Rat(s.total_bits, Int(p.layout.file_bits));
  return rep;
}

}  // namespace ptb
