#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "mvc/codec.hpp"

using mvc::CodecParams;
using mvc::SymbolShare;

namespace {

std::vector<std::uint8_t> random_payload(std::mt19937& rng, std::size_t bytes) {
  std::vector<std::uint8_t> p(bytes);
  std::uniform_int_distribution<int> d(0, 255);
  for (auto& b : p) b = static_cast<std::uint8_t>(d(rng));
  return p;
}

std::vector<std::uint32_t> iota_indices(std::uint32_t count, std::uint32_t start = 0) {
  std::vector<std::uint32_t> idx(count);
  std::iota(idx.begin(), idx.end(), start);
  return idx;
}

bool prefix_equal(const std::vector<std::uint8_t>& payload,
                  const std::vector<std::uint8_t>& decoded) {
  return decoded.size() >= payload.size() &&
         std::equal(payload.begin(), payload.end(), decoded.begin());
}

}  // namespace

TEST_CASE("L=1 degenerates to copying") {
  const std::vector<std::uint8_t> payload = {'a', 'b'};
  const CodecParams params{1, 16};
  const auto shares = encode(payload, params, std::vector<std::uint32_t>{0});
  REQUIRE(shares.size() == 1);
  REQUIRE(shares[0].values.size() == 1);
  CHECK(shares[0].values[0].value == ('a' | ('b' << 8)));
  const auto decoded = decode(shares, params);
  REQUIRE(decoded.has_value());
  CHECK(*decoded == payload);

  // Degree-0 polynomial: every evaluation point carries the symbol.
  const auto other = encode(payload, params, std::vector<std::uint32_t>{9});
  CHECK(other[0].values[0] == shares[0].values[0]);
  CHECK(decode(other, params).value() == payload);
}

TEST_CASE("systematic prefix equals the raw symbols") {
  const std::vector<std::uint8_t> payload = {0x12, 0x34, 0x56, 0x78};  // s0=0x3412 s1=0x7856
  const CodecParams params{2, 32};
  const auto shares = encode(payload, params, iota_indices(2));
  CHECK(shares[0].values[0].value == 0x3412);
  CHECK(shares[1].values[0].value == 0x7856);
}

TEST_CASE("systematic consistency: decoding the systematic shares is the identity") {
  std::mt19937 rng(23);
  for (std::uint32_t L : {1u, 2u, 5u, 12u}) {
    const auto payload = random_payload(rng, 2 * L * 3);
    const CodecParams params{L, 2 * L};
    const auto shares = encode(payload, params, iota_indices(L));
    CHECK(decode(shares, params).value() == payload);
  }
}

TEST_CASE("roundtrip from random 12-subsets of 24 shares") {
  std::mt19937 rng(29);
  const CodecParams params{12, 64};
  const auto indices = iota_indices(24);
  for (int trial = 0; trial < 100; ++trial) {
    const auto payload = random_payload(rng, 240);
    const auto shares = encode(payload, params, indices);
    std::vector<SymbolShare> pick(shares.begin(), shares.end());
    std::shuffle(pick.begin(), pick.end(), rng);
    pick.resize(12);
    const auto decoded = decode(pick, params);
    REQUIRE(decoded.has_value());
    CHECK(prefix_equal(payload, *decoded));
  }
}

TEST_CASE("non-contiguous share set reconstructs") {
  std::mt19937 rng(31);
  const CodecParams params{9, 40};
  const std::vector<std::uint32_t> indices = {3, 7, 10, 11, 12, 20, 21, 30, 31};
  const auto payload = random_payload(rng, 2 * 9 * 2);
  const auto shares = encode(payload, params, indices);
  const auto decoded = decode(shares, params);
  REQUIRE(decoded.has_value());
  CHECK(*decoded == payload);
}

TEST_CASE("below threshold reports insufficient shares, never crashes") {
  std::mt19937 rng(37);
  const CodecParams params{5, 20};
  const auto payload = random_payload(rng, 2 * 5);
  const auto shares = encode(payload, params, iota_indices(8));
  std::vector<SymbolShare> four(shares.begin(), shares.begin() + 4);
  CHECK_FALSE(decode(four, params).has_value());
  // Duplicated indices do not count towards the threshold.
  std::vector<SymbolShare> dup = four;
  dup.push_back(four[0]);
  CHECK_FALSE(decode(dup, params).has_value());
}

TEST_CASE("index validation") {
  const CodecParams params{2, 8};
  const std::vector<std::uint8_t> payload = {1, 2, 3, 4};
  CHECK_THROWS_AS(encode(payload, params, std::vector<std::uint32_t>{1, 1}),
                  mvc::IndexCollision);
  CHECK_THROWS_AS(encode(payload, params, std::vector<std::uint32_t>{0, 8}),
                  mvc::IndexOutOfRange);
  CHECK_THROWS_AS((CodecParams{3, 2}.validate()), mvc::UnsupportedParams);
}

TEST_CASE("payload padding to whole stripes") {
  const CodecParams params{2, 8};
  const std::vector<std::uint8_t> payload = {9, 8, 7};  // 3 bytes -> padded to 4
  const auto shares = encode(payload, params, iota_indices(4));
  const auto decoded = decode(shares, params);
  REQUIRE(decoded.has_value());
  CHECK(decoded->size() == 4);
  CHECK((*decoded)[0] == 9);
  CHECK((*decoded)[1] == 8);
  CHECK((*decoded)[2] == 7);
  CHECK((*decoded)[3] == 0);
}

TEST_CASE("encode and decode are deterministic") {
  std::mt19937 rng(41);
  const CodecParams params{6, 30};
  const auto payload = random_payload(rng, 60);
  const auto a = encode(payload, params, iota_indices(20, 5));
  const auto b = encode(payload, params, iota_indices(20, 5));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].index == b[i].index);
    CHECK(a[i].values.size() == b[i].values.size());
    for (std::size_t t = 0; t < a[i].values.size(); ++t) CHECK(a[i].values[t] == b[i].values[t]);
  }
}

TEST_CASE("MDS property: every L-subset decodes, every (L-1)-subset fails") {
  std::mt19937 rng(43);
  for (std::uint32_t L : {1u, 2u, 3u, 5u, 8u}) {
    const std::uint32_t total = L + 3;
    const CodecParams params{L, 64};
    const auto payload = random_payload(rng, 2 * L * 2);
    const auto shares = encode(payload, params, iota_indices(total));

    // Exhaust L-subsets by bitmask (C(total, L) tiny here).
    for (std::uint32_t mask = 0; mask < (1u << total); ++mask) {
      const auto bits = static_cast<std::uint32_t>(__builtin_popcount(mask));
      if (bits != L && bits != L - 1) continue;
      std::vector<SymbolShare> pick;
      for (std::uint32_t i = 0; i < total; ++i)
        if ((mask >> i) & 1u) pick.push_back(shares[i]);
      const auto decoded = decode(pick, params);
      if (bits == L) {
        REQUIRE(decoded.has_value());
        CHECK(prefix_equal(payload, *decoded));
      } else {
        CHECK_FALSE(decoded.has_value());
      }
    }
  }
}
