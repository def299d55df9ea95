#include "lonely/tuples.hpp"

#include <numeric>

#include "lonely/errors.hpp"
#include "lonely/rational.hpp"

namespace lonely {
namespace {

bool some_pair(std::span<const std::int64_t> v, const std::function<bool(std::int64_t)>& pred) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (pred(std::gcd(v[i], v[j]))) return true;
    }
  }
  return false;
}

bool some_triple_shares(std::span<const std::int64_t> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      const std::int64_t g = std::gcd(v[i], v[j]);
      if (g < 2) continue;
      for (std::size_t k = j + 1; k < v.size(); ++k) {
        if (std::gcd(g, v[k]) >= 2) return true;
      }
    }
  }
  return false;
}

void extend(std::int64_t remaining, std::int64_t v_max, std::int64_t g, SpeedTuple& prefix,
            const std::function<void(std::span<const std::int64_t>)>& fn) {
  if (remaining == 0) {
    if (g == 1) fn(prefix);
    return;
  }
  for (std::int64_t next = prefix.back() + 1; next + remaining - 1 <= v_max; ++next) {
    prefix.push_back(next);
    extend(remaining - 1, v_max, std::gcd(g, next), prefix, fn);
    prefix.pop_back();
  }
}

}  // namespace

Shard parse_shard(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) throw DomainError("shard must look like i/t");
  Shard s{parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1))};
  if (s.total < 1 || s.index < 0 || s.index >= s.total) {
    throw DomainError("shard index must satisfy 0 <= i < t");
  }
  return s;
}

bool matches(TupleFilter filter, std::span<const std::int64_t> speeds) {
  switch (filter) {
    case TupleFilter::none:
      return true;
    case TupleFilter::three_share_factor:
      return some_triple_shares(speeds);
    case TupleFilter::pair_factor_above_3:
      return some_pair(speeds, [](std::int64_t g) { return g > 3; });
    case TupleFilter::pair_factor_exactly_3:
      return some_pair(speeds, [](std::int64_t g) { return g == 3; }) &&
             !some_pair(speeds, [](std::int64_t g) { return g > 3; }) && !some_triple_shares(speeds);
  }
  return false;
}

const char* to_string(TupleFilter filter) {
  switch (filter) {
    case TupleFilter::none:
      return "none";
    case TupleFilter::three_share_factor:
      return "three-share";
    case TupleFilter::pair_factor_above_3:
      return "pair-gt3";
    case TupleFilter::pair_factor_exactly_3:
      return "pair-eq3";
  }
  return "none";
}

TupleFilter parse_filter(std::string_view text) {
  for (auto f : {TupleFilter::none, TupleFilter::three_share_factor, TupleFilter::pair_factor_above_3,
                 TupleFilter::pair_factor_exactly_3}) {
    if (text == to_string(f)) return f;
  }
  throw DomainError("unknown filter '" + std::string(text) + "'");
}

std::vector<LeadingPair> leading_blocks(std::int64_t n, std::int64_t v_max) {
  std::vector<LeadingPair> blocks;
  for (std::int64_t v1 = 1; v1 <= v_max; ++v1) {
    for (std::int64_t v2 = v1 + 1; v2 + (n - 2) <= v_max; ++v2) blocks.emplace_back(v1, v2);
  }
  return blocks;
}

void for_each_in_block(std::int64_t n, std::int64_t v_max, LeadingPair block,
                       const std::function<void(std::span<const std::int64_t>)>& fn) {
  SpeedTuple prefix{block.first, block.second};
  prefix.reserve(static_cast<std::size_t>(n));
  extend(n - 2, v_max, std::gcd(block.first, block.second), prefix, fn);
}

void for_each_primitive(std::int64_t n, std::int64_t v_max, Shard shard,
                        const std::function<void(std::span<const std::int64_t>)>& fn) {
  if (n < 2) throw DomainError("tuple length must be >= 2");
  if (v_max < n) throw DomainError("v_max must be >= n");
  const auto blocks = leading_blocks(n, v_max);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (shard.owns(b)) for_each_in_block(n, v_max, blocks[b], fn);
  }
}

std::vector<SpeedTuple> enumerate_primitive(std::int64_t n, std::int64_t v_max, Shard shard) {
  std::vector<SpeedTuple> out;
  for_each_primitive(n, v_max, shard, [&](std::span<const std::int64_t> t) { out.emplace_back(t.begin(), t.end()); });
  return out;
}

}  // namespace lonely
