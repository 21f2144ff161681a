#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "mvc/errors.hpp"
#include "mvc/rational.hpp"

namespace mvc {

/// Versions are 1-based and totally ordered; uploads happen in id order.
using VersionId = int;

/// Instance dimensions: n servers, decode obligations over any c of them,
/// v equal-size versions of message_bytes each.
struct SystemParams {
  int n = 1;
  int c = 1;
  int v = 1;
  long long message_bytes = 2;  // B

  void validate() const {
    if (c < 1 || c > n) throw UnsupportedParams("params: need 1 <= c <= n");
    if (v < 1) throw UnsupportedParams("params: need v >= 1");
    if (message_bytes < 1) throw UnsupportedParams("params: need message_bytes >= 1");
  }
};

/// Smallest payload size (bytes) for which every scheme's per-server
/// fractional storage at (c, v) is a whole number of bytes: twice the lcm
/// of all scheme subpacketizations.
inline long long default_message_bytes(int c, int v) {
  const long long ceil_cv = (c + v - 1) / v;
  long long l = std::lcm(static_cast<long long>(c) * c * (c + 1), ceil_cv);
  return 2 * l;
}

/// The adversary's move: which versions reached which servers. Stored as a
/// bitmask per server, bit (i-1) meaning version i was received. Arrival
/// order at a server is forced to increasing id order.
class ReachabilityPattern {
 public:
  ReachabilityPattern() = default;
  explicit ReachabilityPattern(std::vector<std::uint32_t> masks) : masks_(std::move(masks)) {}

  int server_count() const { return static_cast<int>(masks_.size()); }

  std::uint32_t mask(int server_id) const { return masks_[checked(server_id)]; }

  /// Received versions of one server, in arrival (= id) order.
  std::vector<VersionId> received(int server_id) const {
    std::vector<VersionId> out;
    std::uint32_t m = masks_[checked(server_id)];
    for (VersionId i = 1; m; ++i, m >>= 1)
      if (m & 1u) out.push_back(i);
    return out;
  }

  bool operator==(const ReachabilityPattern& o) const { return masks_ == o.masks_; }

  /// Text form: one line per server, comma-separated version ids, blank
  /// line for an empty set.
  std::string to_text() const {
    std::string out;
    for (int s = 1; s <= server_count(); ++s) {
      const auto ids = received(s);
      for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(ids[i]);
      }
      out += '\n';
    }
    return out;
  }

  static ReachabilityPattern from_text(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char ch : text) {
      if (ch == '\n') {
        lines.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    if (!cur.empty()) lines.push_back(cur);  // tolerate a missing final newline
    std::vector<std::uint32_t> masks;
    for (const auto& line : lines) {
      std::uint32_t m = 0;
      std::stringstream ss(line);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        const int id = std::stoi(tok);
        if (id < 1 || id > 30) throw UnsupportedParams("pattern: version id out of range");
        m |= 1u << (id - 1);
      }
      masks.push_back(m);
    }
    return ReachabilityPattern(std::move(masks));
  }

 private:
  std::vector<std::uint32_t> masks_;

  std::size_t checked(int server_id) const {
    if (server_id < 1 || server_id > server_count())
      throw UnknownServerId("pattern: server id " + std::to_string(server_id));
    return static_cast<std::size_t>(server_id - 1);
  }
};

/// Maximum version id received by every server of the subset; nullopt when
/// the intersection is empty. Server ids are 1-based.
inline std::optional<VersionId> latest_common_version(const ReachabilityPattern& pattern,
                                                      std::span<const int> subset) {
  if (subset.empty()) throw UnsupportedParams("latest_common_version: empty subset");
  std::uint32_t common = ~0u;
  for (int s : subset) common &= pattern.mask(s);
  if (common == 0) return std::nullopt;
  int top = 0;
  while (common >>= 1) ++top;
  return top + 1;
}

/// The full adversary at (n, v): all (2^v)^n reachability patterns in
/// lexicographic order of the per-server masks (server 1 most significant).
/// The k-th pattern is decodable from its ordinal, so the space can be
/// range-partitioned across workers.
class PatternSpace {
 public:
  PatternSpace(int n, int v) : n_(n), v_(v) {
    if (n < 1 || v < 1) throw UnsupportedParams("pattern space: need n, v >= 1");
    if (n * v > 30)
      throw BudgetExceeded("pattern space: n*v = " + std::to_string(n * v) + " exceeds 30");
  }

  int n() const { return n_; }
  int v() const { return v_; }

  std::uint64_t size() const { return std::uint64_t{1} << (static_cast<unsigned>(n_) * v_); }

  /// Per-server masks of pattern `ordinal`, without materializing the
  /// pattern object (hot path).
  void masks_at(std::uint64_t ordinal, std::span<std::uint32_t> out) const {
    const std::uint32_t per = (1u << v_) - 1u;
    for (int s = n_; s >= 1; --s) {
      out[static_cast<std::size_t>(s - 1)] = static_cast<std::uint32_t>(ordinal) & per;
      ordinal >>= static_cast<unsigned>(v_);
    }
  }

  ReachabilityPattern at(std::uint64_t ordinal) const {
    std::vector<std::uint32_t> masks(static_cast<std::size_t>(n_));
    masks_at(ordinal, masks);
    return ReachabilityPattern(std::move(masks));
  }

 private:
  int n_;
  int v_;
};

/// Exact per-version symbol holdings of one server, plus the out-of-band
/// original payload lengths.
struct ServerStore {
  std::map<VersionId, std::vector<std::uint32_t>> holdings;
  std::map<VersionId, long long> payload_lengths;

  int symbol_count(VersionId ver) const {
    auto it = holdings.find(ver);
    return it == holdings.end() ? 0 : static_cast<int>(it->second.size());
  }
};

/// Per-server storage in units of B: sum over versions of |holdings| / L.
template <class SubpacketizationFn>
Rational storage_cost(const ServerStore& store, SubpacketizationFn&& L_of) {
  Rational total(0);
  for (const auto& [ver, indices] : store.holdings)
    total += Rational(static_cast<long long>(indices.size()), L_of(ver));
  return total;
}

}  // namespace mvc
