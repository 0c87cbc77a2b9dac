#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "ptbcache/bigint.hpp"
#include "ptbcache/coupled.hpp"
#include "ptbcache/design.hpp"

namespace ptb {

/// Bit-exact payload container; lengths need not be byte-aligned.
class BitString {
 public:
  BitString() = default;
  explicit BitString(long long bits);
  static BitString random(long long bits, std::mt19937_64& rng);

  long long size() const { return bits_; }
  void xor_with(const BitString& o);
  BitString slice(long long offset, long long len) const;
  bool get(long long i) const;
  bool operator==(const BitString&) const = default;

 private:
  std::vector<uint64_t> words_;
  long long bits_ = 0;
};

/// Concrete node-to-group map: groups in non-increasing size order, nodes
/// 1..K assigned consecutively.
struct NodeAssignment {
  std::vector<std::vector<int>> groups;  // group -> node ids
  std::vector<int> group_of;             // index by node id (entry 0 unused)
  std::vector<uint32_t> group_masks;

  static NodeAssignment canonical(const NodeGrouping& q);
};

/// Uniform view of a design for the scheduler: packet classes with per-
/// coupled-group split counts, and per-group-kind transmitter behavior.
/// Equal-length designs are the H = 1 case with gamma = (1).
class SchemePlan {
 public:
  static SchemePlan from(const PtbDesign& d);
  static SchemePlan from(const CoupledDesign& d);

  int K() const { return K_; }
  int t() const { return t_; }
  int H() const { return H_; }
  const NodeAssignment& assignment() const { return assignment_; }
  const std::vector<Rat>& gamma() const { return gamma_; }

  int num_classes() const { return static_cast<int>(class_counts_.size()); }
  const std::vector<Int>& class_counts() const { return class_counts_; }
  const Int& splits(int cls, int h) const { return alpha_[h][cls]; }
  Int total_splits(int cls) const;
  std::string class_name(int cls) const { return class_names_[cls]; }
  Int subpacketization() const;  // F

  // Class of a t-subset of nodes (every t-subset has one).
  int class_of_subset(uint32_t mask) const;

  struct GroupBehavior {
    bool active = false;
    long long z = 0;
    uint32_t tx_mask = 0;
  };
  // Behavior of a (t+1)-subset instance in coupled group h.
  GroupBehavior behavior(uint32_t group_mask, int h) const;

 private:
  int K_ = 0, t_ = 0, H_ = 1;
  bool refined_ = false;
  NodeAssignment assignment_;
  std::vector<Rat> gamma_;
  std::vector<std::vector<Int>> alpha_;  // H x classes
  std::vector<Int> class_counts_;
  std::vector<std::string> class_names_;
  std::map<std::vector<int>, int> class_by_profile_;  // sorted profile -> class
  std::map<int, int> class_by_x_;                     // refined mode
  struct KindBehavior {
    bool active;
    long long z;
    std::vector<int> tx_sizes;  // sorted mode: transmitting part sizes
    bool tx_big = false, tx_small = false;  // refined mode
  };
  std::map<std::vector<int>, std::vector<KindBehavior>> kind_by_profile_;  // -> per h
  std::map<int, std::vector<KindBehavior>> kind_by_u_;                     // refined mode
  std::vector<int> profile_of_mask(uint32_t mask) const;                   // sorted, per group

  uint32_t tx_mask_for(uint32_t group_mask, const KindBehavior& kb) const;
};

/// Byte layout of one file: raw packets of kept classes in subset order,
/// per coupled group, split slices consecutive.
struct FileLayout {
  long long file_bits = 0;
  std::vector<long long> unit_bits;  // split length per coupled group
  struct RawPacket {
    uint32_t mask;
    int cls;
    std::vector<long long> base_offset;  // per h
  };
  std::vector<RawPacket> packets;
  std::unordered_map<uint32_t, int> packet_index;

  // file_bits_requested == 0 picks the smallest size making every packet an
  // integer number of bits; otherwise the request must be a multiple of it.
  static FileLayout build(const SchemePlan& plan, long long file_bits_requested);

  long long split_offset(int packet_id, int h, long long split_1based) const;
  long long packet_bits(int packet_id) const;
};

struct Placement {
  SchemePlan plan;
  FileLayout layout;
  int N = 0, M = 0;
  std::vector<BitString> files;

  bool node_caches(int node, int packet_id) const {
    return (layout.packets[packet_id].mask >> (node - 1)) & 1u;
  }
  Int cached_bits(int node) const;  // across all files
};

// Deterministic placement; file contents generated from the seed. Throws
// design_error when file_bits is incompatible (message names the minimal
// valid size).
Placement build_placement(const SchemePlan& plan, int N, int M, long long file_bits,
                          uint64_t seed);

struct SplitRef {
  int requester;     // node the split is destined to
  int file;          // demanded file index (1-based)
  int packet_id;     // into layout.packets
  int h;
  long long split;   // 1-based
};

struct Message {
  uint32_t group_mask;
  int sender;
  int h;
  long long length_bits;
  std::vector<SplitRef> constituents;
};

struct DeliverySchedule {
  std::vector<Message> messages;
  Int total_bits = 0;
};

// One message per (group instance, coupled group, round, transmitter), each
// XOR-combining one fresh split of every other member's needed packet.
// Round ell from transmitter rank r carries split (ell-1)*G + r to
// non-transmitters and (ell-1)*(G-1) + rank-among-others to transmitters.
// Throws infeasible_error when split counts cannot be exhausted exactly.
DeliverySchedule build_schedule(const Placement& p, const std::vector<int>& demand);

struct UserVerdict {
  bool decode_ok = true;
  std::string detail;
};

struct ValidationReport {
  std::vector<UserVerdict> per_user;
  bool all_decoded = false;
  bool cache_audit_ok = false;
  bool messages_ok = false;  // every receiver cancels all constituents but one
  long long message_count = 0;
  Int total_bits;
  Rat rate;  // total_bits / file_bits
};

// Semantic ground truth: decodes every message against actual cache
// contents, checks each user reassembles its demanded file bit-exactly, and
// audits cache sizes. Failures are report entries, never exceptions.
ValidationReport validate(const Placement& p, const DeliverySchedule& s,
                          const std::vector<int>& demand);

// Subset helpers (masks over nodes 1..K).
std::vector<int> mask_to_nodes(uint32_t mask);
uint32_t nodes_to_mask(const std::vector<int>& nodes);
// All C(K, r)-subsets in ascending mask order.
std::vector<uint32_t> subsets_of_size(int K, int r);

}  // namespace ptb
