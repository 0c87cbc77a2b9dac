#include "doctest.h"
#include "oracles.hpp"
#include "ptbcache/fsr.hpp"

using namespace ptb;

namespace {

NodeGrouping grouping(std::vector<int> sizes) {
  return NodeGrouping(PartitionVector::of(std::move(sizes)));
}

FsrRow row(std::vector<std::optional<long long>> entries) {
  FsrRow r;
  for (const auto& e : entries)
    r.entries.push_back(e ? FsrEntry(Int(*e)) : std::nullopt);
  return r;
}

std::vector<std::vector<int>> raw(const std::vector<PartitionVector>& ps) {
  std::vector<std::vector<int>> out;
  for (const auto& p : ps) out.push_back(p.parts());
  return out;
}

}  // namespace

TEST_CASE("packet type enumeration") {
  auto q = grouping({3, 3, 3});
  CHECK(raw(enumerate_packet_types(q, 6)) ==
        std::vector<std::vector<int>>{{3, 3}, {3, 2, 1}, {2, 2, 2}});

  // two-group equal grouping: (t,0), (t-1,1), ..., (r,r)
  auto two = grouping({5, 5});
  CHECK(raw(enumerate_packet_types(two, 4)) ==
        std::vector<std::vector<int>>{{4}, {3, 1}, {2, 2}});

  // singleton groups admit a single type
  auto ones = grouping(std::vector<int>(7, 1));
  CHECK(raw(enumerate_packet_types(ones, 4)) ==
        std::vector<std::vector<int>>{{1, 1, 1, 1}});

  CHECK_THROWS_AS(enumerate_packet_types(q, 0), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_packet_types(q, 9), std::invalid_argument);
}

TEST_CASE("multicast type enumeration") {
  auto q = grouping({3, 3, 3});
  auto types = enumerate_packet_types(q, 6);
  auto mts = enumerate_multicast_types(q, 6, types);
  REQUIRE(mts.size() == 2);
  CHECK(mts[0].partition.parts() == std::vector<int>{3, 3, 1});
  CHECK(mts[1].partition.parts() == std::vector<int>{3, 2, 2});

  auto ones = grouping(std::vector<int>(7, 1));
  auto ones_types = enumerate_packet_types(ones, 4);
  auto ones_mts = enumerate_multicast_types(ones, 4, ones_types);
  REQUIRE(ones_mts.size() == 1);
  CHECK(ones_mts[0].partition.parts() == std::vector<int>(5, 1));
  REQUIRE(ones_mts[0].unique_parts.size() == 1);
  CHECK(ones_mts[0].unique_parts[0].g == 5);

  auto two = grouping({4, 4});
  auto two_types = enumerate_packet_types(two, 4);
  auto two_mts = enumerate_multicast_types(two, 4, two_types);
  REQUIRE(two_mts.size() == 2);
  CHECK(two_mts[0].partition.parts() == std::vector<int>{4, 1});
  CHECK(two_mts[1].partition.parts() == std::vector<int>{3, 2});
}

TEST_CASE("involved type maps") {
  // s = (3,3,1): size-3 unique group -> (3,2,1); size-1 -> (3,3)
  auto inv1 = involved_types(PartitionVector::of({3, 3, 1}));
  REQUIRE(inv1.size() == 2);
  CHECK(inv1[0].parts() == std::vector<int>{3, 2, 1});
  CHECK(inv1[1].parts() == std::vector<int>{3, 3});

  // s = (3,2,2): size-3 -> (2,2,2); size-2 -> (3,2,1)
  auto inv2 = involved_types(PartitionVector::of({3, 2, 2}));
  REQUIRE(inv2.size() == 2);
  CHECK(inv2[0].parts() == std::vector<int>{2, 2, 2});
  CHECK(inv2[1].parts() == std::vector<int>{3, 2, 1});

  // singleton: (1^{t+1}) -> (1^t)
  auto inv3 = involved_types(PartitionVector::of(std::vector<int>(5, 1)));
  REQUIRE(inv3.size() == 1);
  CHECK(inv3[0].parts() == std::vector<int>(4, 1));
}

TEST_CASE("involved types match the remove-one-node oracle") {
  for (auto sizes : std::vector<std::vector<int>>{{3, 3, 3}, {5, 4}, {4, 2, 2}, {2, 2, 2, 1}}) {
    NodeGrouping q(PartitionVector::of(sizes));
    const int K = q.user_count();
    for (int t = 1; t < K - 1; ++t) {
      auto types = enumerate_packet_types(q, t);
      for (const auto& mt : enumerate_multicast_types(q, t, types)) {
        std::set<std::vector<int>> got;
        for (const auto& up : mt.unique_parts) got.insert(up.involved.parts());
        CHECK(got == oracle::involved_by_removal(sizes, mt.partition.parts()));
      }
    }
  }
}

TEST_CASE("local further splitting ratios") {
  auto q = grouping({3, 3, 3});
  auto types = enumerate_packet_types(q, 6);  // [(3,3),(3,2,1),(2,2,2)]
  auto mts = enumerate_multicast_types(q, 6, types);

  // s1 = (3,3,1), transmitters = the singleton (g = 1):
  // alpha((3,2,1)) = 1, alpha((3,3)) = 0, (2,2,2) not involved.
  auto r1 = local_fsr(mts[0], {1}, 3);
  CHECK(*r1.entries[0] == 0);
  CHECK(*r1.entries[1] == 1);
  CHECK_FALSE(r1.entries[2].has_value());

  // s2 = (3,2,2), transmitters = the pairs (g = 4):
  // alpha((2,2,2)) = 4, alpha((3,2,1)) = 3.
  auto r2 = local_fsr(mts[1], {1}, 3);
  CHECK_FALSE(r2.entries[0].has_value());
  CHECK(*r2.entries[1] == 3);
  CHECK(*r2.entries[2] == 4);

  // all transmitters in a singleton grouping: alpha((1^t)) = t
  auto ones = grouping(std::vector<int>(7, 1));
  auto ones_types = enumerate_packet_types(ones, 4);
  auto ones_mts = enumerate_multicast_types(ones, 4, ones_types);
  auto r3 = local_fsr(ones_mts[0], {0}, 1);
  CHECK(*r3.entries[0] == 4);

  CHECK_THROWS_AS(local_fsr(mts[0], {}, 3), std::invalid_argument);
  CHECK_THROWS_AS(local_fsr(mts[0], {2}, 3), std::out_of_range);
}

TEST_CASE("LCM vector of the worked-example rows") {
  // rows {(empty,1,0),(4,3,empty)} -> z = (3,1), alpha = (4,3,0)
  auto sol = lcm_vector({row({std::nullopt, 1, 0}), row({4, 3, std::nullopt})});
  REQUIRE(sol.has_value());
  CHECK(sol->z == std::vector<Int>{3, 1});
  CHECK(sol->alpha == std::vector<Int>{4, 3, 0});
}

TEST_CASE("LCM vector edge cases") {
  auto single = lcm_vector({row({6})});
  REQUIRE(single.has_value());
  CHECK(single->z == std::vector<Int>{1});
  CHECK(single->alpha == std::vector<Int>{6});

  // shared positive column: z = (3,2) makes both entries 6
  auto shared = lcm_vector({row({2, std::nullopt}), row({3, std::nullopt})});
  REQUIRE(shared.has_value());
  CHECK(shared->z == std::vector<Int>{3, 2});
  CHECK(shared->alpha == std::vector<Int>{6, 0});

  // jointly unsatisfiable cycle
  CHECK_FALSE(lcm_vector({row({1, 2}), row({2, 1})}).has_value());

  // zero entries match anything; combine takes the positive value
  auto zero = lcm_vector({row({0, 1}), row({4, std::nullopt})});
  REQUIRE(zero.has_value());
  CHECK(zero->alpha == std::vector<Int>{4, 1});
}

TEST_CASE("LCM minimality: scalars have gcd 1 per component") {
  auto sol = lcm_vector({row({std::nullopt, 2, 4}), row({6, 3, std::nullopt})});
  REQUIRE(sol.has_value());
  Int g = 0;
  for (const auto& z : sol->z) g = boost::multiprecision::gcd(g, z);
  CHECK(g == 1);
}

TEST_CASE("LCM vector agrees with the bounded brute-force oracle") {
  std::vector<std::vector<FsrRow>> cases = {
      {row({std::nullopt, 1, 0}), row({4, 3, std::nullopt})},
      {row({2, 3, std::nullopt}), row({std::nullopt, 1, 5})},
      {row({2, std::nullopt}), row({3, std::nullopt})},
      {row({1, 2}), row({2, 1})},
      {row({5, std::nullopt, 1}), row({std::nullopt, 2, 3}), row({10, 4, std::nullopt})},
      {row({0, 1, std::nullopt}), row({std::nullopt, 1, 2}), row({4, std::nullopt, std::nullopt})},
  };
  for (const auto& rows : cases) {
    auto got = lcm_vector(rows);
    auto want = oracle::lcm_brute(rows, 24);
    CHECK(got.has_value() == want.has_value());
    if (got && want) {
      CHECK(got->alpha == want->alpha);
      CHECK(got->z == want->z);
    }
  }
}
