#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lonely {

using SpeedTuple = std::vector<std::int64_t>;

/// Static partition of the leading-pair blocks: block b belongs to shard
/// b % total.
struct Shard {
  std::int64_t index = 0;
  std::int64_t total = 1;

  [[nodiscard]] bool owns(std::size_t block) const {
    return static_cast<std::int64_t>(block % static_cast<std::size_t>(total)) == index;
  }
  friend bool operator==(const Shard&, const Shard&) = default;
};

/// Parses "i/t"; DomainError unless 0 <= i < t.
Shard parse_shard(std::string_view text);

/// gcd-pattern predicates used to restrict scans to a theorem's hypothesis.
enum class TupleFilter {
  none,
  three_share_factor,     // some three speeds share a factor >= 2
  pair_factor_above_3,    // some pair has gcd > 3
  pair_factor_exactly_3,  // some pair has gcd 3; no pair above 3; no three sharing a factor
};

bool matches(TupleFilter filter, std::span<const std::int64_t> speeds);
const char* to_string(TupleFilter filter);
/// Accepts "none", "three-share", "pair-gt3", "pair-eq3".
TupleFilter parse_filter(std::string_view text);

/// A leading pair (v1, v2); all tuples starting with it form one block.
using LeadingPair = std::pair<std::int64_t, std::int64_t>;

/// Leading pairs in lexicographic order, restricted to those that can be
/// completed to an increasing n-tuple with maximum <= v_max.
std::vector<LeadingPair> leading_blocks(std::int64_t n, std::int64_t v_max);

/// Visits the strictly increasing n-tuples with gcd 1 that start with
/// `block`, in lexicographic order.
void for_each_in_block(std::int64_t n, std::int64_t v_max, LeadingPair block,
                       const std::function<void(std::span<const std::int64_t>)>& fn);

/// Visits every primitive increasing n-tuple with max <= v_max owned by
/// `shard`, in lexicographic order. DomainError unless n >= 2, v_max >= n.
void for_each_primitive(std::int64_t n, std::int64_t v_max, Shard shard,
                        const std::function<void(std::span<const std::int64_t>)>& fn);

/// Materialized for_each_primitive.
std::vector<SpeedTuple> enumerate_primitive(std::int64_t n, std::int64_t v_max, Shard shard = {});

}  // namespace lonely
