#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ptbcache/coupled.hpp"
#include "ptbcache/design.hpp"
#include "ptbcache/scheme.hpp"

namespace ptb {

enum class DemandMode { WorstCaseDistinct, UniformRandom, Explicit };

struct SimConfig {
  long long file_bits = 0;  // 0 = smallest valid size (reported in output)
  DemandMode mode = DemandMode::WorstCaseDistinct;
  std::vector<int> explicit_demands;
  uint64_t seed = 0;
};

struct SimReport {
  std::string design_name;
  int K = 0, N = 0, M = 0, t = 0, tbar = 0;
  long long file_bits = 0;
  std::vector<int> demands;
  std::vector<bool> decode_ok;
  bool all_decoded = false;
  bool cache_audit_ok = false;
  Rat rate;
  Int F, F_jcm;
  Rat ratio;
  GainDecomposition gains;
  long long messages = 0;
  Int total_bits;
  double wall_ms = 0;  // excluded from the canonical serialization
};

std::vector<int> make_demands(int K, int N, DemandMode mode,
                              const std::vector<int>& explicit_demands, uint64_t seed);

// End-to-end run: synthesize file contents from the seed, place, schedule,
// validate, measure. Deterministic given the config and seed.
SimReport run(const PtbDesign& design, const SimConfig& config);
SimReport run(const CoupledDesign& design, const SimConfig& config);

// Exposed for tests and the search validator: run and also return the
// underlying report and schedule.
struct SimArtifacts {
  Placement placement;
  DeliverySchedule schedule;
  ValidationReport report;
};
SimArtifacts run_with_artifacts(const SchemePlan& plan, int N, int M, const SimConfig& config,
                                SimReport* out, const GainDecomposition& gains, const Int& F,
                                const Int& F_jcm, const std::string& name);

}  // namespace ptb
