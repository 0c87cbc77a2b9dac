#include "doctest.h"
#include "ptbcache/coupled.hpp"

using namespace ptb;

TEST_CASE("heterogeneous preset at (K,t) = (7,2)") {
  auto d = preset_heterogeneous(7, 2, 7, 2);
  CHECK(d.grouping.partition().parts() == std::vector<int>{4, 3});
  REQUIRE(d.types.size() == 3);
  CHECK(d.types[0] == RefinedType{0, 2});  // both nodes in the smaller group: excluded
  CHECK(d.types[1] == RefinedType{1, 1});
  CHECK(d.types[2] == RefinedType{2, 0});
  CHECK(d.alpha_total == std::vector<Int>{0, 2, 2});
  CHECK(d.raw_counts == std::vector<Int>{3, 12, 6});
  CHECK(d.F == 36);
  CHECK(d.F_jcm == 42);

  REQUIRE(d.H() == 2);
  CHECK(d.groups[0].alpha == std::vector<Int>{0, 1, 0});  // balanced: min(x, y)
  CHECK(d.groups[1].alpha == std::vector<Int>{0, 1, 2});  // cascade: x
  CHECK(d.groups[0].gamma == Rat(1));
  CHECK(d.groups[1].gamma == Rat(1, 5));  // 1/(K-2)

  // independent exact solve of gamma from the balance equation
  const Int dF_20 = binomial(4, 2) * 0 - binomial(3, 1) * binomial(3, 0);  // type (2,0)
  const Int dF_11 = binomial(4, 1) - binomial(3, 0) * binomial(3, 1);      // type (1,1)
  const Int dF_02 = binomial(2, 1) - 0;                                    // type (0,2)
  const Int dot1 = 0 * dF_02 + 1 * dF_11 + 0 * dF_20;
  const Int dot2 = 0 * dF_02 + 1 * dF_11 + 2 * dF_20;
  CHECK(Rat(-dot1, dot2) == d.groups[1].gamma);

  // per-node cached length identical across the two unique groups
  CHECK(d.cached_units_per_file(0) == d.cached_units_per_file(1));
  CHECK(d.cached_units_per_file(0) == Rat(24, 5));  // (M/N) * file = (2/7) * 84/5

  // reported, never asserted at small K: measured ratio vs theorem cap
  CHECK(heterogeneous_ratio_bound(2) == Rat(3, 4));
  CHECK(d.ratio() == Rat(6, 7));
  CHECK(d.ratio() > heterogeneous_ratio_bound(2));  // the documented discrepancy
}

TEST_CASE("heterogeneous preset at (K,t) = (11,4)") {
  auto d = preset_heterogeneous(11, 4);
  CHECK(d.grouping.partition().parts() == std::vector<int>{6, 5});
  CHECK(d.alpha_total == std::vector<Int>{0, 2, 4, 4, 4});  // (0,2,...,t-2,t,...,t)
  CHECK(d.groups[0].alpha == std::vector<Int>{0, 1, 2, 1, 0});
  CHECK(d.groups[1].alpha == std::vector<Int>{0, 1, 2, 3, 4});
  CHECK(d.groups[1].gamma == Rat(4, 21));
  CHECK(d.cached_units_per_file(0) == d.cached_units_per_file(1));
  Rat balance = 0;
  for (const auto& g : d.groups) balance += g.gamma * Rat(dot(g.alpha, d.delta));
  CHECK(balance == 0);
}

TEST_CASE("heterogeneous gamma follows 1/(K-2) at t = 2") {
  for (int K : {7, 9, 11, 13}) {
    auto d = preset_heterogeneous(K, 2);
    CHECK(d.groups[1].gamma == Rat(1, K - 2));
  }
}

TEST_CASE("heterogeneous preconditions") {
  CHECK_THROWS_AS(preset_heterogeneous(8, 2), design_error);   // odd K
  CHECK_THROWS_AS(preset_heterogeneous(7, 3), design_error);   // even t
  CHECK_THROWS_AS(preset_heterogeneous(7, 4), design_error);   // (K-1)/2 >= t+1
  CHECK_THROWS_AS(preset_heterogeneous(5, 2), design_error);
}

TEST_CASE("no positive length ratio is an error") {
  // Two cascade-style groups have same-sign balance dots; gamma would be
  // negative.
  NodeGrouping q(PartitionVector::of({4, 3}));
  std::vector<SideSelection> cascade;
  for (int u = 0; u <= 3; ++u)
    cascade.push_back(u == 0 ? SideSelection::Inactive : SideSelection::BigSide);
  CHECK_THROWS_AS(assemble_coupled("bad", NodeGrouping(q.partition()), 2, {cascade, cascade}, 7,
                                   2),
                  infeasible_error);
  // A single unbalanced group cannot stand alone.
  CHECK_THROWS_AS(assemble_coupled("bad1", NodeGrouping(q.partition()), 2, {cascade}, 7, 2),
                  infeasible_error);
}

TEST_CASE("coupled enumeration finds the preset design at (7,2)") {
  NodeGrouping q(PartitionVector::of({4, 3}));
  auto found = enumerate_coupled_two_group(q, 2, 7, 2, 64);
  REQUIRE_FALSE(found.empty());
  bool has_preset = false;
  for (const auto& d : found) {
    CHECK(d.F >= found.front().F);
    Rat balance = 0;
    for (const auto& g : d.groups) balance += g.gamma * Rat(dot(g.alpha, d.delta));
    CHECK(balance == 0);
    if (d.alpha_total == std::vector<Int>{0, 2, 2} && d.H() == 2 &&
        d.groups[1].gamma == Rat(1, 5))
      has_preset = true;
  }
  CHECK(has_preset);
  CHECK(found.front().F <= 36);
}
