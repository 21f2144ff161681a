#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mvc/errors.hpp"
#include "mvc/model.hpp"
#include "mvc/rational.hpp"

namespace mvc {

enum class SchemeKind { replication, mds, alg1, alg2, ext_latest };

inline const char* scheme_name(SchemeKind k) {
  switch (k) {
    case SchemeKind::replication: return "replication";
    case SchemeKind::mds: return "mds";
    case SchemeKind::alg1: return "alg1";
    case SchemeKind::alg2: return "alg2";
    case SchemeKind::ext_latest: return "ext_latest";
  }
  return "?";
}

inline SchemeKind scheme_kind_from_name(const std::string& name) {
  for (SchemeKind k : {SchemeKind::replication, SchemeKind::mds, SchemeKind::alg1,
                       SchemeKind::alg2, SchemeKind::ext_latest})
    if (name == scheme_name(k)) return k;
  throw UnsupportedParams("unknown scheme '" + name + "'");
}

/// One server's view: its strictly increasing arrival history and its
/// current store of absolute symbol indices.
struct SchemeState {
  int server_id = 1;  // 1-based
  std::vector<VersionId> history;
  ServerStore store;
};

/// Worst-case storage cost the scheme claims, in units of B.
inline Rational claimed_worst_cost(SchemeKind kind, int c, int v) {
  if (c < 1 || v < 1) throw UnsupportedParams("claimed_worst_cost: need c, v >= 1");
  const long long cc = c, vv = v;
  switch (kind) {
    case SchemeKind::replication:
      return Rational(1);
    case SchemeKind::mds:
      return Rational(vv, cc);
    case SchemeKind::alg1:
      if (v > c) throw UnsupportedParams("alg1: needs v <= c");
      return Rational(vv - 1, cc + 1) + Rational(1, cc);
    case SchemeKind::alg2:
      if (v > c) throw UnsupportedParams("alg2: needs v <= c");
      return Rational(vv * cc - vv + 1, cc * cc);
    case SchemeKind::ext_latest:
      return Rational(1, (cc + vv - 1) / vv);  // 1 / ceil(c/v)
  }
  throw UnsupportedParams("claimed_worst_cost: bad kind");
}

/// A storage scheme bound to concrete instance parameters: a deterministic
/// per-server state machine over symbol indices, with closed-form block
/// allocation so indices held by distinct servers never collide.
class Scheme {
 public:
  Scheme(SchemeKind kind, SystemParams params) : kind_(kind), params_(params) {
    params_.validate();
    if ((kind == SchemeKind::alg1 || kind == SchemeKind::alg2) && params_.v > params_.c)
      throw UnsupportedParams(std::string(scheme_name(kind)) + ": needs v <= c, got v = " +
                              std::to_string(params_.v) + ", c = " + std::to_string(params_.c));
    if (static_cast<long long>(params_.n) * block_width() > 65536)
      throw UnsupportedParams("scheme: index space n * block_width exceeds GF(2^16)");
  }

  SchemeKind kind() const { return kind_; }
  const char* name() const { return scheme_name(kind_); }
  const SystemParams& params() const { return params_; }

  /// Symbols needed to decode one version (uniform across versions; the
  /// version argument is kept for the contract).
  int subpacketization(VersionId version = 1) const {
    check_version(version);
    const int c = params_.c, v = params_.v;
    switch (kind_) {
      case SchemeKind::replication: return 1;
      case SchemeKind::mds: return c;
      case SchemeKind::alg1: return c * (c + 1);
      case SchemeKind::alg2: return c * c;
      case SchemeKind::ext_latest: return (c + v - 1) / v;  // ceil(c/v)
    }
    throw UnsupportedParams("subpacketization: bad kind");
  }

  /// Width of each server's private per-version index block.
  int block_width() const {
    const int c = params_.c, v = params_.v;
    switch (kind_) {
      case SchemeKind::replication: return 1;
      case SchemeKind::mds: return 1;
      case SchemeKind::alg1: return 2 * c;
      case SchemeKind::alg2: return v * c - v + 1;
      case SchemeKind::ext_latest: return (c + v - 1) / v;
    }
    throw UnsupportedParams("block_width: bad kind");
  }

  Rational claimed_worst_cost() const { return mvc::claimed_worst_cost(kind_, params_.c, params_.v); }

  SchemeState initial_state(int server_id) const {
    if (server_id < 1 || server_id > params_.n)
      throw UnknownServerId("scheme: server id " + std::to_string(server_id));
    SchemeState st;
    st.server_id = server_id;
    return st;
  }

  /// Transition on arrival of `version` (strictly greater than everything
  /// received before at this server). Pure: returns the successor state.
  SchemeState on_receive(const SchemeState& state, VersionId version) const {
    check_version(version);
    if (!state.history.empty() && version <= state.history.back())
      throw OutOfOrderArrival("scheme: version " + std::to_string(version) +
                              " after " + std::to_string(state.history.back()));
    SchemeState next = state;
    next.history.push_back(version);
    next.store.payload_lengths[version] = params_.message_bytes;

    const int c = params_.c, v = params_.v;
    const std::uint32_t base = block_base(state.server_id);
    auto block_range = [&](int count) {
      std::vector<std::uint32_t> idx(static_cast<std::size_t>(count));
      for (int i = 0; i < count; ++i) idx[static_cast<std::size_t>(i)] = base + static_cast<std::uint32_t>(i);
      return idx;
    };

    switch (kind_) {
      case SchemeKind::replication:
        // Full copy of the newest version, nothing else.
        next.store.holdings.clear();
        next.store.payload_lengths.clear();
        next.store.payload_lengths[version] = params_.message_bytes;
        next.store.holdings[version] = block_range(1);
        break;

      case SchemeKind::mds:
        // One symbol of an L = c code per version, kept forever.
        next.store.holdings[version] = block_range(1);
        break;

      case SchemeKind::alg1: {
        // 2c symbols for a non-final version, c+1 for the final one; the
        // immediate predecessor, if still held in full, drops to c symbols.
        next.store.holdings[version] = block_range(version < v ? 2 * c : c + 1);
        auto prev = next.store.holdings.find(version - 1);
        if (prev != next.store.holdings.end() &&
            static_cast<int>(prev->second.size()) == 2 * c)
          prev->second.resize(static_cast<std::size_t>(c));  // keep the lower-indexed half
        break;
      }

      case SchemeKind::alg2: {
        const int first_alloc = v * c - v + 1;
        if (state.history.empty()) {
          next.store.holdings[version] = block_range(first_alloc);
        } else {
          next.store.holdings[version] = block_range(c);
          const VersionId first = next.history.front();
          auto& held = next.store.holdings.at(first);
          if (static_cast<int>(held.size()) < c)
            throw UnderflowDeletion("alg2: first-version holdings below deletion amount");
          held.erase(held.begin(), held.begin() + c);  // delete the lowest-indexed symbols
        }
        break;
      }

      case SchemeKind::ext_latest:
        // One symbol of an L = ceil(c/v) code for the newest version only.
        next.store.holdings.clear();
        next.store.payload_lengths.clear();
        next.store.payload_lengths[version] = params_.message_bytes;
        next.store.holdings[version] = block_range(1);
        break;
    }
    return next;
  }

  /// Feed a full received set (increasing id order) from scratch.
  SchemeState run(int server_id, std::span<const VersionId> arrivals) const {
    SchemeState st = initial_state(server_id);
    for (VersionId ver : arrivals) st = on_receive(st, ver);
    return st;
  }

  Rational cost_of(const SchemeState& state) const {
    return storage_cost(state.store, [this](VersionId ver) { return subpacketization(ver); });
  }

  /// First absolute index of this server's block.
  std::uint32_t block_base(int server_id) const {
    return static_cast<std::uint32_t>(server_id - 1) * static_cast<std::uint32_t>(block_width());
  }

 private:
  SchemeKind kind_;
  SystemParams params_;

  void check_version(VersionId version) const {
    if (version < 1 || version > params_.v)
      throw UnsupportedParams("scheme: version " + std::to_string(version) + " outside [1, " +
                              std::to_string(params_.v) + "]");
  }
};

inline Scheme make_scheme(const std::string& name, SystemParams params) {
  return Scheme(scheme_kind_from_name(name), params);
}

}  // namespace mvc
