#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <vector>

#include "mvc/model.hpp"

using mvc::PatternSpace;
using mvc::Rational;
using mvc::ReachabilityPattern;
using mvc::ServerStore;

TEST_CASE("latest common version") {
  const ReachabilityPattern both({0b11, 0b11});
  CHECK(latest_common_version(both, std::vector<int>{1, 2}) == 2);

  const ReachabilityPattern disjoint({0b01, 0b10});
  CHECK_FALSE(latest_common_version(disjoint, std::vector<int>{1, 2}).has_value());

  // The forcing pattern at c=3, v=2: dropping server i leaves i common.
  const ReachabilityPattern witness({0b10, 0b01, 0b11, 0b11});
  CHECK(latest_common_version(witness, std::vector<int>{2, 3, 4}) == 1);
  CHECK(latest_common_version(witness, std::vector<int>{1, 3, 4}) == 2);

  CHECK_THROWS_AS(latest_common_version(both, std::vector<int>{1, 3}), mvc::UnknownServerId);
  CHECK_THROWS_AS(latest_common_version(both, std::vector<int>{}), mvc::UnsupportedParams);
}

TEST_CASE("latest common version properties") {
  std::mt19937 rng(47);
  const int n = 5, v = 4;
  const PatternSpace space(n, v);
  std::uniform_int_distribution<std::uint64_t> pick(0, space.size() - 1);
  for (int t = 0; t < 300; ++t) {
    const auto pattern = space.at(pick(rng));
    // Singleton consistency: one server's latest common is its own maximum.
    for (int s = 1; s <= n; ++s) {
      const auto got = latest_common_version(pattern, std::vector<int>{s});
      const auto ids = pattern.received(s);
      if (ids.empty())
        CHECK_FALSE(got.has_value());
      else
        CHECK(got == ids.back());
    }
    // Monotone non-increasing under subset growth.
    std::vector<int> subset;
    for (int s = 1; s <= n; ++s) {
      subset.push_back(s);
      const auto grown = latest_common_version(pattern, subset);
      if (subset.size() > 1) {
        std::vector<int> prev(subset.begin(), subset.end() - 1);
        const auto before = latest_common_version(pattern, prev);
        if (grown.has_value()) {
          REQUIRE(before.has_value());
          CHECK(*grown <= *before);
        }
      }
    }
  }
}

TEST_CASE("pattern enumeration counts") {
  CHECK(PatternSpace(1, 1).size() == 2);
  CHECK(PatternSpace(2, 2).size() == 16);
  CHECK(PatternSpace(3, 2).size() == 64);
  CHECK_THROWS_AS(PatternSpace(8, 4), mvc::BudgetExceeded);  // n*v = 32
}

TEST_CASE("enumeration is exhaustive, distinct and lexicographic") {
  const PatternSpace space(3, 2);
  std::set<std::vector<std::uint32_t>> seen;
  std::vector<std::uint32_t> prev;
  for (std::uint64_t k = 0; k < space.size(); ++k) {
    const auto pattern = space.at(k);
    std::vector<std::uint32_t> masks;
    for (int s = 1; s <= 3; ++s) masks.push_back(pattern.mask(s));
    if (!prev.empty()) CHECK(prev < masks);  // strictly increasing lexicographically
    seen.insert(masks);
    prev = masks;
  }
  CHECK(seen.size() == space.size());
}

TEST_CASE("pattern text format round-trips") {
  const ReachabilityPattern p({0b10, 0b01, 0b11, 0b00});
  const std::string text = p.to_text();
  CHECK(text == "2\n1\n1,2\n\n");
  CHECK(ReachabilityPattern::from_text(text) == p);

  const ReachabilityPattern empty_only({0b00});
  CHECK(ReachabilityPattern::from_text(empty_only.to_text()) == empty_only);

  std::mt19937 rng(53);
  const PatternSpace space(4, 5);
  std::uniform_int_distribution<std::uint64_t> pick(0, space.size() - 1);
  for (int t = 0; t < 500; ++t) {
    const auto pattern = space.at(pick(rng));
    CHECK(ReachabilityPattern::from_text(pattern.to_text()) == pattern);
  }
}

TEST_CASE("storage cost is the exact symbol-weighted sum") {
  ServerStore store;
  const auto L = [](mvc::VersionId) { return 9; };
  CHECK(storage_cost(store, L) == Rational(0));

  store.holdings[1] = {0, 1};
  store.holdings[2] = {10, 11, 12};
  CHECK(storage_cost(store, L) == Rational(5, 9));

  // Replication-shaped store: one full copy.
  ServerStore copy;
  copy.holdings[2] = {4};
  CHECK(storage_cost(copy, [](mvc::VersionId) { return 1; }) == Rational(1));
}

TEST_CASE("default message size makes every scheme granularity integral") {
  for (int c = 1; c <= 6; ++c) {
    for (int v = 1; v <= c; ++v) {
      const long long bytes = mvc::default_message_bytes(c, v);
      CHECK(bytes % (2LL * c * (c + 1)) == 0);
      CHECK(bytes % (2LL * c * c) == 0);
      CHECK(bytes % (2LL * ((c + v - 1) / v)) == 0);
      CHECK(bytes % (2LL * c) == 0);
    }
  }
}

TEST_CASE("system params validation") {
  CHECK_THROWS_AS((mvc::SystemParams{2, 3, 1, 8}.validate()), mvc::UnsupportedParams);
  CHECK_THROWS_AS((mvc::SystemParams{3, 0, 1, 8}.validate()), mvc::UnsupportedParams);
  CHECK_THROWS_AS((mvc::SystemParams{3, 2, 0, 8}.validate()), mvc::UnsupportedParams);
  CHECK_NOTHROW((mvc::SystemParams{3, 2, 2, 8}.validate()));
}
