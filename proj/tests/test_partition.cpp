#include "doctest.h"
#include "oracles.hpp"
#include "ptbcache/partition.hpp"

using namespace ptb;

namespace {
std::vector<std::vector<int>> raw(const std::vector<PartitionVector>& ps) {
  std::vector<std::vector<int>> out;
  for (const auto& p : ps) out.push_back(p.parts());
  return out;
}
}  // namespace

TEST_CASE("partition vector canonicalization") {
  auto p = PartitionVector::of({1, 3, 0, 2, 0});
  CHECK(p.parts() == std::vector<int>{3, 2, 1});
  CHECK(p.total() == 6);
  CHECK(p.num_parts() == 3);  // zeros are not parts
  CHECK(p.padded(5) == std::vector<int>{3, 2, 1, 0, 0});
  CHECK(p.str() == "(3,2,1)");
  CHECK_THROWS_AS(PartitionVector::of({-1}), std::invalid_argument);
}

TEST_CASE("partitions of 6 with parts <= 3 in at most 3 parts") {
  auto ps = partitions(6, 3, 3);
  CHECK(raw(ps) == std::vector<std::vector<int>>{{3, 3}, {3, 2, 1}, {2, 2, 2}});
}

TEST_CASE("partitions of zero and infeasible cases") {
  auto ps = partitions(0, 4, 2);
  REQUIRE(ps.size() == 1);
  CHECK(ps[0].parts().empty());
  CHECK(partitions(7, 2, 3).empty());
  CHECK_THROWS_AS(partitions(-1, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(partitions(3, 0, 2), std::invalid_argument);
}

TEST_CASE("partitions agree with the composition oracle") {
  for (int n : {4, 5, 6, 8}) {
    for (int max_part : {2, 3, n}) {
      for (int max_parts : {2, 4, n}) {
        auto got = partitions(n, max_part, max_parts);
        std::set<std::vector<int>> got_set;
        for (const auto& p : got) got_set.insert(p.parts());
        CHECK(got_set == oracle::partitions_by_composition(n, max_part, max_parts));
        CHECK(got.size() == got_set.size());  // no duplicates
        CHECK(std::is_sorted(got.begin(), got.end()));
      }
    }
  }
  // spec instance: partitions(4, 2, 4)
  auto ps = partitions(4, 2, 4);
  CHECK(raw(ps) == std::vector<std::vector<int>>{{2, 2}, {2, 1, 1}, {1, 1, 1, 1}});
}

TEST_CASE("descending lexicographic order") {
  CHECK(PartitionVector::of({3, 3}) < PartitionVector::of({3, 2, 1}));
  CHECK(PartitionVector::of({3, 2, 1}) < PartitionVector::of({2, 2, 2}));
  CHECK(PartitionVector::of({2, 2}) == PartitionVector::of({2, 2, 0}));
}

TEST_CASE("node grouping structure") {
  NodeGrouping q(PartitionVector::of({3, 2, 1, 1}));
  CHECK(q.user_count() == 7);
  CHECK(q.group_count() == 4);
  REQUIRE(q.unique_count() == 3);
  CHECK(q.unique_groups()[0].size == 3);
  CHECK(q.unique_groups()[0].multiplicity == 1);
  CHECK(q.unique_groups()[2].size == 1);
  CHECK(q.unique_groups()[2].multiplicity == 2);
  CHECK(q.unique_index_of_size(2) == 1);
  CHECK(q.unique_index_of_size(5) == -1);
  CHECK(q.unique_index_of_group(3) == 2);

  CHECK(q.embeds(PartitionVector::of({3, 2, 1})));
  CHECK(q.embeds(PartitionVector::of({2, 2})));
  CHECK_FALSE(q.embeds(PartitionVector::of({4})));
  CHECK_FALSE(q.embeds(PartitionVector::of({2, 2, 2})));  // only two groups hold >= 2
  CHECK_FALSE(q.embeds(PartitionVector::of({1, 1, 1, 1, 1})));
}
