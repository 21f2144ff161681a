#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mvc/errors.hpp"
#include "mvc/model.hpp"
#include "mvc/rational.hpp"
#include "mvc/schemes.hpp"

namespace mvc {

/// min(1, v/(c+1)): worst-case storage is at least this for the original
/// problem; the clamp at 1 makes replication optimal once v > c.
inline Rational prop1_bound(int c, int v) {
  if (c < 1 || v < 1) throw UnsupportedParams("prop1_bound: need c, v >= 1");
  const Rational r(static_cast<long long>(v), static_cast<long long>(c) + 1);
  return r > Rational(1) ? Rational(1) : r;
}

/// 1 - (1 - 1/c)^v, the earlier original-problem bound.
inline Rational wc14a_bound(int c, int v) {
  if (c < 1 || v < 1) throw UnsupportedParams("wc14a_bound: need c, v >= 1");
  return Rational(1) - Rational(static_cast<long long>(c) - 1, c).pow(static_cast<unsigned>(v));
}

/// v/(c+v-1): the extended-problem bound that grows with v.
inline Rational prop2_bound(int c, int v) {
  if (c < 1 || v < 1) throw UnsupportedParams("prop2_bound: need c, v >= 1");
  return Rational(static_cast<long long>(v), static_cast<long long>(c) + v - 1);
}

/// The earlier extended-problem bound, independent of v:
/// 2/(c+1) for odd c, 2(c+1)/(c(c+2)) for even c.
inline Rational wc14b_bound(int c) {
  if (c < 1) throw UnsupportedParams("wc14b_bound: need c >= 1");
  const long long cc = c;
  if (c % 2 == 1) return Rational(2, cc + 1);
  return Rational(2 * (cc + 1), cc * (cc + 2));
}

/// The adversary that forces total information v*B onto c+1 servers:
/// server i <= v missed exactly version i, everyone else got everything.
/// Every subset S_i = all-but-server-i then has latest common version i.
inline ReachabilityPattern prop1_witness(int c, int v) {
  if (c < 1 || v < 1) throw UnsupportedParams("prop1_witness: need c, v >= 1");
  if (v > c) throw UnsupportedParams("prop1_witness: needs v <= c");
  const std::uint32_t all = (1u << v) - 1u;
  std::vector<std::uint32_t> masks(static_cast<std::size_t>(c) + 1, all);
  for (int i = 1; i <= v; ++i) masks[static_cast<std::size_t>(i - 1)] = all & ~(1u << (i - 1));
  return ReachabilityPattern(std::move(masks));
}

/// A server profile: the set of versions it received, as a length-v bit
/// vector (coordinate i = version i).
struct Profile {
  std::uint32_t bits = 0;
  int v = 0;

  bool get(VersionId i) const { return (bits >> (i - 1)) & 1u; }
  bool any() const { return bits != 0; }

  std::vector<VersionId> versions() const {
    std::vector<VersionId> out;
    for (VersionId i = 1; i <= v; ++i)
      if (get(i)) out.push_back(i);
    return out;
  }

  /// "110"-style rendering, coordinate 1 first.
  std::string to_string() const {
    std::string s(static_cast<std::size_t>(v), '0');
    for (VersionId i = 1; i <= v; ++i)
      if (get(i)) s[static_cast<std::size_t>(i - 1)] = '1';
    return s;
  }

  friend bool operator==(const Profile& a, const Profile& b) {
    return a.bits == b.bits && a.v == b.v;
  }
};

/// One coordinate zeroed while building a profile, with the joint
/// information (in units of B) that triggered it.
struct AuditNullification {
  VersionId version = 0;
  Rational joint_info;
};

/// The construction of one profile p_{i+1} out of p_i.
struct AuditBuildStep {
  Profile start;
  std::vector<AuditNullification> nullifications;
  Profile result;
};

/// The audit's bug report: c profiles share a version yet no version's
/// joint information reaches B.
struct AuditViolation {
  std::vector<Profile> profiles;
  VersionId shared_version = 0;  // highest coordinate common to all
  Rational joint_info;           // of that shared version, < 1
};

struct AuditResult {
  std::vector<Profile> profiles;  // p_1 .. p_m
  int m = 0;
  std::map<VersionId, Rational> per_version_info;  // joint across p_1 .. p_m
  Rational implied_bound;                          // v / (m + v)
  std::optional<AuditViolation> violation;
  std::vector<AuditBuildStep> trace;
};

/// Executable form of the extended-problem bound proof: iteratively build
/// profiles p_1 = all-ones, p_{i+1} = p_i with every coordinate zeroed
/// whose version the accumulated servers jointly hold in full; coordinates
/// are scanned in ascending order and the working profile's store is
/// re-evaluated after every hit. A correct scheme runs out of nonzero
/// profiles after m <= c-1 of them, which implies worst cost >= v/(m+v).
/// Reaching c nonzero profiles is returned as a violation witness instead.
inline AuditResult profile_audit(const Scheme& scheme) {
  const int c = scheme.params().c;
  const int v = scheme.params().v;
  if (c < 2)
    throw UnsupportedParams("profile_audit: needs c >= 2 (p_1 is given, not built, so the "
                            "m <= c-1 argument starts at c = 2)");

  // Per-profile per-version information in units of B, memoized by mask.
  std::vector<std::vector<Rational>> info(std::size_t{1} << v,
                                          std::vector<Rational>(static_cast<std::size_t>(v) + 1, Rational(0)));
  for (std::uint32_t mask = 0; mask < (1u << v); ++mask) {
    SchemeState st = scheme.initial_state(1);
    for (VersionId i = 1; i <= v; ++i)
      if ((mask >> (i - 1)) & 1u) st = scheme.on_receive(st, i);
    for (VersionId i = 1; i <= v; ++i)
      info[mask][static_cast<std::size_t>(i)] =
          Rational(st.store.symbol_count(i), scheme.subpacketization(i));
  }

  AuditResult result;
  std::vector<std::uint32_t> kept;  // masks of p_1 .. p_i
  kept.push_back((1u << v) - 1u);
  result.profiles.push_back(Profile{kept.back(), v});

  auto joint = [&](std::uint32_t working, VersionId ver) {
    Rational total = info[working][static_cast<std::size_t>(ver)];
    for (std::uint32_t m : kept) total += info[m][static_cast<std::size_t>(ver)];
    return total;
  };

  while (true) {
    AuditBuildStep step;
    std::uint32_t working = kept.back();
    step.start = Profile{working, v};

    bool changed = true;
    while (changed) {
      changed = false;
      for (VersionId j = 1; j <= v; ++j) {
        if (!((working >> (j - 1)) & 1u)) continue;
        const Rational jt = joint(working, j);
        if (jt >= Rational(1)) {
          working &= ~(1u << (j - 1));
          step.nullifications.push_back({j, jt});
          changed = true;
          break;  // rescan from coordinate 1 against the re-evaluated store
        }
      }
    }
    step.result = Profile{working, v};
    result.trace.push_back(step);

    if (working == 0) {
      result.m = static_cast<int>(kept.size());
      break;
    }
    kept.push_back(working);
    result.profiles.push_back(Profile{working, v});

    if (static_cast<int>(kept.size()) == c) {
      // m would reach c: the nested profiles share every 1-coordinate of
      // the last one, and the stall left all of them under one B.
      AuditViolation viol;
      viol.profiles = result.profiles;
      int top = 0;
      for (VersionId j = 1; j <= v; ++j)
        if ((working >> (j - 1)) & 1u) top = j;
      viol.shared_version = top;
      Rational jt(0);
      for (std::uint32_t m : kept) jt += info[m][static_cast<std::size_t>(top)];
      viol.joint_info = jt;
      result.violation = std::move(viol);
      result.m = static_cast<int>(kept.size());
      break;
    }
  }

  for (VersionId i = 1; i <= v; ++i) {
    Rational total(0);
    for (std::uint32_t m : kept) total += info[m][static_cast<std::size_t>(i)];
    result.per_version_info[i] = total;
  }
  result.implied_bound = result.violation
                             ? Rational(0)
                             : Rational(v, static_cast<long long>(result.m) + v);
  return result;
}

}  // namespace mvc
