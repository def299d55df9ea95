#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "lonely/errors.hpp"
#include "lonely/tuples.hpp"

using namespace lonely;

namespace {

std::vector<SpeedTuple> brute_force(std::int64_t n, std::int64_t v_max) {
  std::vector<SpeedTuple> out;
  SpeedTuple cur;
  auto rec = [&](auto&& self, std::int64_t lo) -> void {
    if (static_cast<std::int64_t>(cur.size()) == n) {
      std::int64_t g = 0;
      for (auto x : cur) g = std::gcd(g, x);
      if (g == 1) out.push_back(cur);
      return;
    }
    for (std::int64_t v = lo; v <= v_max; ++v) {
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

}  // namespace

TEST_CASE("enumerate_primitive examples") {
  CHECK(enumerate_primitive(2, 3) == std::vector<SpeedTuple>{{1, 2}, {1, 3}, {2, 3}});
  const auto pairs = enumerate_primitive(2, 4);
  CHECK(std::find(pairs.begin(), pairs.end(), SpeedTuple{2, 4}) == pairs.end());
  CHECK(enumerate_primitive(4, 6).size() == 15);

  const auto t = enumerate_primitive(3, 6);
  CHECK(t.front() == SpeedTuple{1, 2, 3});
  CHECK(t.size() == 19);
  for (const auto& bad : {SpeedTuple{2, 4, 6}, SpeedTuple{3, 6, 6}}) {
    CHECK(std::find(t.begin(), t.end(), bad) == t.end());
  }
  CHECK(std::find(t.begin(), t.end(), SpeedTuple{2, 3, 4}) != t.end());
  CHECK(std::find(t.begin(), t.end(), SpeedTuple{2, 4, 5}) != t.end());
  CHECK_THROWS_AS(enumerate_primitive(1, 5), DomainError);
  CHECK_THROWS_AS(enumerate_primitive(4, 3), DomainError);
}

TEST_CASE("enumeration matches brute force") {
  for (std::int64_t n = 2; n <= 5; ++n) {
    for (std::int64_t v = n; v <= 16; ++v) CHECK(enumerate_primitive(n, v) == brute_force(n, v));
  }
}

TEST_CASE("blocks partition the enumeration") {
  const auto blocks = leading_blocks(4, 20);
  CHECK(std::is_sorted(blocks.begin(), blocks.end()));
  std::vector<SpeedTuple> joined;
  for (const auto& b : blocks) {
    for_each_in_block(4, 20, b, [&](std::span<const std::int64_t> t) {
      CHECK(t[0] == b.first);
      CHECK(t[1] == b.second);
      joined.emplace_back(t.begin(), t.end());
    });
  }
  CHECK(joined == enumerate_primitive(4, 20));
}

TEST_CASE("shards are disjoint and complete") {
  const auto all = enumerate_primitive(4, 18);
  for (std::int64_t total : {1, 2, 3, 5}) {
    std::multiset<SpeedTuple> seen;
    for (std::int64_t i = 0; i < total; ++i) {
      for (auto& t : enumerate_primitive(4, 18, Shard{i, total})) seen.insert(t);
    }
    CHECK(seen.size() == all.size());
    CHECK(std::set<SpeedTuple>(seen.begin(), seen.end()).size() == all.size());
  }
}

TEST_CASE("parse_shard") {
  CHECK(parse_shard("2/5") == Shard{2, 5});
  CHECK(parse_shard("0/1") == Shard{0, 1});
  CHECK_THROWS_AS(parse_shard("5/5"), DomainError);
  CHECK_THROWS_AS(parse_shard("-1/3"), DomainError);
  CHECK_THROWS_AS(parse_shard("1"), DomainError);
  CHECK_THROWS_AS(parse_shard("a/b"), DomainError);
}

TEST_CASE("gcd filters") {
  CHECK(matches(TupleFilter::none, SpeedTuple{1, 2, 3, 5}));
  CHECK(matches(TupleFilter::three_share_factor, SpeedTuple{1, 2, 4, 6}));
  CHECK_FALSE(matches(TupleFilter::three_share_factor, SpeedTuple{1, 2, 3, 4}));
  CHECK(matches(TupleFilter::pair_factor_above_3, SpeedTuple{1, 4, 8, 9}));
  CHECK(matches(TupleFilter::pair_factor_above_3, SpeedTuple{1, 5, 10, 11}));
  CHECK_FALSE(matches(TupleFilter::pair_factor_above_3, SpeedTuple{1, 2, 3, 6}));
  CHECK(matches(TupleFilter::pair_factor_exactly_3, SpeedTuple{1, 2, 3, 12}));
  CHECK_FALSE(matches(TupleFilter::pair_factor_exactly_3, SpeedTuple{1, 3, 6, 9}));  // three share 3
  CHECK(matches(TupleFilter::pair_factor_exactly_3, SpeedTuple{1, 3, 6, 8}));
  CHECK_FALSE(matches(TupleFilter::pair_factor_exactly_3, SpeedTuple{2, 3, 4, 6}));  // 2, 4, 6 share 2
  CHECK_FALSE(matches(TupleFilter::pair_factor_exactly_3, SpeedTuple{1, 2, 5, 7}));
  for (const auto f : {TupleFilter::none, TupleFilter::three_share_factor, TupleFilter::pair_factor_above_3,
                       TupleFilter::pair_factor_exactly_3}) {
    CHECK(parse_filter(to_string(f)) == f);
  }
  CHECK_THROWS_AS(parse_filter("odd"), DomainError);
}
