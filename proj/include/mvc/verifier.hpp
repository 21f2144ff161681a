#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "mvc/codec.hpp"
#include "mvc/errors.hpp"
#include "mvc/model.hpp"
#include "mvc/rational.hpp"
#include "mvc/schemes.hpp"

namespace mvc {

enum class VerifyMode { original, extended, extended_general };

inline const char* verify_mode_name(VerifyMode m) {
  switch (m) {
    case VerifyMode::original: return "original";
    case VerifyMode::extended: return "extended";
    case VerifyMode::extended_general: return "extended_general";
  }
  return "?";
}

/// One unmet decode obligation: the pattern and c-subset, the version the
/// obligation is anchored to (0 in general mode, where any version would
/// do), and the best candidate's joint symbol count against its threshold.
struct Violation {
  std::uint64_t pattern_ordinal = 0;
  std::string pattern_text;
  std::vector<int> subset;       // 1-based server ids
  VersionId required_version = 0;
  int joint_symbols = 0;
  int symbols_needed = 0;
};

struct WorstCostWitness {
  std::uint64_t pattern_ordinal = 0;
  std::string pattern_text;
  int server_id = 1;
};

struct VerifyReport {
  SystemParams params;
  std::string scheme;
  VerifyMode mode = VerifyMode::original;
  std::uint64_t obligations_checked = 0;
  std::uint64_t decode_checks = 0;
  std::vector<Violation> violations;
  Rational measured_worst_cost;
  WorstCostWitness worst_cost_witness;
  Rational claimed_worst_cost;

  bool clean() const { return violations.empty(); }

  /// One line fit for CSV aggregation across runs.
  std::string summary() const {
    return scheme + "," + verify_mode_name(mode) + "," + std::to_string(params.n) + "," +
           std::to_string(params.c) + "," + std::to_string(params.v) + "," +
           std::to_string(obligations_checked) + "," + std::to_string(violations.size()) + "," +
           measured_worst_cost.to_string() + "," + claimed_worst_cost.to_string();
  }
};

struct VerifyOptions {
  int workers = 0;                    // 0 = available parallelism
  std::uint64_t decode_stride = 16;   // codec exercised on 1-in-stride obligations
  std::uint64_t seed = 0xC0DE;        // payload seed
  std::uint64_t obligation_budget = 1'000'000'000;
};

namespace verify_detail {

inline std::uint64_t splitmix64(std::uint64_t& s) {
  s += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Deterministic payload for (seed, pattern, version): failures reproduce
/// from the report alone.
inline std::vector<std::uint8_t> payload_for(std::uint64_t seed, std::uint64_t ordinal,
                                             VersionId version, long long bytes) {
  std::uint64_t s = seed;
  s ^= 0x632BE59BD9B4E019ull * (ordinal + 1);
  (void)splitmix64(s);
  s ^= 0xD1B54A32D192ED03ull * static_cast<std::uint64_t>(version);
  std::vector<std::uint8_t> out(static_cast<std::size_t>(bytes));
  std::uint64_t word = 0;
  int have = 0;
  for (auto& b : out) {
    if (have == 0) {
      word = splitmix64(s);
      have = 8;
    }
    b = static_cast<std::uint8_t>(word & 0xFF);
    word >>= 8;
    --have;
  }
  return out;
}

inline bool decode_sampled(std::uint64_t obligation_id, std::uint64_t stride) {
  if (stride <= 1) return true;
  std::uint64_t s = obligation_id;
  return splitmix64(s) % stride == 0;
}

// Final store and prefix-max cost of one server after receiving a version
// subset in increasing id order. Counts and relative indices are
// server-independent; the block base shifts everything.
struct MaskSim {
  std::vector<int> counts;                          // [version] -> symbols held
  std::vector<std::vector<std::uint32_t>> rel;      // [version] -> relative indices
  Rational prefix_max_cost;
  Rational final_cost;
};

inline std::vector<MaskSim> simulate_masks(const Scheme& scheme) {
  const int v = scheme.params().v;
  const std::uint32_t base = scheme.block_base(1);  // server 1: relative == absolute
  std::vector<MaskSim> sims(std::size_t{1} << v);
  for (std::uint32_t mask = 0; mask < (1u << v); ++mask) {
    SchemeState st = scheme.initial_state(1);
    Rational peak(0);
    for (VersionId i = 1; i <= v; ++i) {
      if (!((mask >> (i - 1)) & 1u)) continue;
      st = scheme.on_receive(st, i);
      const Rational cost = scheme.cost_of(st);
      if (cost > peak) peak = cost;
    }
    MaskSim sim;
    sim.counts.assign(static_cast<std::size_t>(v) + 1, 0);
    sim.rel.assign(static_cast<std::size_t>(v) + 1, {});
    for (const auto& [ver, indices] : st.store.holdings) {
      sim.counts[static_cast<std::size_t>(ver)] = static_cast<int>(indices.size());
      auto& r = sim.rel[static_cast<std::size_t>(ver)];
      r.reserve(indices.size());
      for (std::uint32_t idx : indices) r.push_back(idx - base);
    }
    sim.prefix_max_cost = peak;
    sim.final_cost = scheme.cost_of(st);
    sims[mask] = std::move(sim);
  }
  return sims;
}

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

inline std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

struct LocalReport {
  std::uint64_t obligations = 0;
  std::uint64_t decode_checks = 0;
  std::vector<Violation> violations;
  Rational max_cost = Rational(0);
  std::uint64_t max_ordinal = 0;
  int max_server = 1;
  bool max_seen = false;
};

}  // namespace verify_detail

/// Exhaustive verification of one scheme over every reachability pattern
/// and every c-subset obligation of the requested mode. Accounting (joint
/// distinct symbols >= L) is checked on every obligation; the codec path
/// (encode at the held indices, decode, bit-compare) on a deterministic
/// 1-in-stride sample. Worst-case storage cost is measured exactly over
/// all patterns, servers and arrival prefixes.
inline VerifyReport verify(const Scheme& scheme, VerifyMode mode, VerifyOptions options = {}) {
  using namespace verify_detail;
  const SystemParams& p = scheme.params();
  const PatternSpace space(p.n, p.v);

  const auto subsets = combinations(p.n, p.c);
  const std::uint64_t obligation_bound = space.size() * static_cast<std::uint64_t>(subsets.size());
  if (obligation_bound > options.obligation_budget)
    throw BudgetExceeded("verify: " + std::to_string(obligation_bound) +
                         " obligations exceed budget " + std::to_string(options.obligation_budget));

  const auto sims = simulate_masks(scheme);
  const int v = p.v;
  const int L = scheme.subpacketization();
  const CodecParams codec{static_cast<std::uint32_t>(L),
                          static_cast<std::uint32_t>(p.n) * static_cast<std::uint32_t>(scheme.block_width())};

  auto run_range = [&](std::uint64_t lo, std::uint64_t hi, LocalReport& local) {
    std::vector<std::uint32_t> masks(static_cast<std::size_t>(p.n));
    for (std::uint64_t ordinal = lo; ordinal < hi; ++ordinal) {
      space.masks_at(ordinal, masks);

      for (int s = 0; s < p.n; ++s) {
        const Rational& cost = sims[masks[static_cast<std::size_t>(s)]].prefix_max_cost;
        if (!local.max_seen || cost > local.max_cost) {
          local.max_cost = cost;
          local.max_ordinal = ordinal;
          local.max_server = s + 1;
          local.max_seen = true;
        }
      }

      for (std::size_t rank = 0; rank < subsets.size(); ++rank) {
        const auto& subset = subsets[rank];

        VersionId floor = 0;  // lowest version that satisfies the obligation
        if (mode == VerifyMode::extended_general) {
          bool all_nonempty = true;
          for (int s : subset)
            if (masks[static_cast<std::size_t>(s)] == 0) { all_nonempty = false; break; }
          if (!all_nonempty) continue;
          floor = 1;
        } else {
          std::uint32_t common = ~0u;
          for (int s : subset) common &= masks[static_cast<std::size_t>(s)];
          if (common == 0) continue;  // no obligation for this subset
          int top = 0;
          while (common >>= 1) ++top;
          floor = top + 1;
        }
        const VersionId required = mode == VerifyMode::extended_general ? 0 : floor;
        ++local.obligations;

        // Accounting: scan candidates from v downward, take the first
        // whose joint distinct symbols reach its threshold.
        VersionId ok_version = 0;
        int best_joint = 0;
        VersionId best_version = mode == VerifyMode::original ? floor : v;
        for (VersionId j = mode == VerifyMode::original ? floor : v; j >= floor; --j) {
          int joint = 0;
          for (int s : subset) joint += sims[masks[static_cast<std::size_t>(s)]].counts[static_cast<std::size_t>(j)];
          if (joint > best_joint) {
            best_joint = joint;
            best_version = j;
          }
          if (joint >= L) {
            ok_version = j;
            break;
          }
        }

        if (ok_version == 0) {
          Violation viol;
          viol.pattern_ordinal = ordinal;
          viol.pattern_text = space.at(ordinal).to_text();
          for (int s : subset) viol.subset.push_back(s + 1);
          viol.required_version = required;
          viol.joint_symbols = best_joint;
          viol.symbols_needed = L;
          local.violations.push_back(std::move(viol));
        }

        const std::uint64_t obligation_id = ordinal * subsets.size() + rank;
        if (decode_sampled(obligation_id, options.decode_stride)) {
          ++local.decode_checks;
          const VersionId target = ok_version != 0 ? ok_version : best_version;
          if (target >= 1) {
            const auto payload =
                payload_for(options.seed, ordinal, target, p.message_bytes);
            std::vector<std::uint32_t> indices;
            for (int s : subset) {
              const std::uint32_t base = scheme.block_base(s + 1);
              for (std::uint32_t r : sims[masks[static_cast<std::size_t>(s)]].rel[static_cast<std::size_t>(target)])
                indices.push_back(base + r);
            }
            const auto shares = encode(payload, codec, indices);
            const auto decoded = decode(shares, codec);
            const bool decode_ok =
                decoded.has_value() &&
                std::equal(payload.begin(), payload.end(), decoded->begin());
            if (decode_ok != (ok_version != 0))
              throw std::logic_error("verify: accounting and codec legs disagree");
          }
        }
      }
    }
  };

  int workers = options.workers > 0 ? options.workers
                                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, 64);
  const std::uint64_t total = space.size();
  workers = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(workers),
                                                     std::max<std::uint64_t>(total, 1)));

  std::vector<LocalReport> locals(static_cast<std::size_t>(workers));
  {
    std::vector<std::thread> threads;
    const std::uint64_t chunk = (total + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const std::uint64_t lo = std::min<std::uint64_t>(w * chunk, total);
      const std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, total);
      threads.emplace_back([&, lo, hi, w] { run_range(lo, hi, locals[static_cast<std::size_t>(w)]); });
    }
    for (auto& t : threads) t.join();
  }

  VerifyReport report;
  report.params = p;
  report.scheme = scheme.name();
  report.mode = mode;
  report.claimed_worst_cost = scheme.claimed_worst_cost();
  bool have_max = false;
  for (const auto& local : locals) {
    report.obligations_checked += local.obligations;
    report.decode_checks += local.decode_checks;
    report.violations.insert(report.violations.end(), local.violations.begin(),
                             local.violations.end());
    if (local.max_seen &&
        (!have_max || local.max_cost > report.measured_worst_cost)) {
      report.measured_worst_cost = local.max_cost;
      report.worst_cost_witness.pattern_ordinal = local.max_ordinal;
      report.worst_cost_witness.server_id = local.max_server;
      have_max = true;
    }
  }
  report.worst_cost_witness.pattern_text =
      space.at(report.worst_cost_witness.pattern_ordinal).to_text();
  return report;
}

inline VerifyReport verify_original(const Scheme& scheme, VerifyOptions options = {}) {
  return verify(scheme, VerifyMode::original, options);
}

inline VerifyReport verify_extended(const Scheme& scheme, bool general, VerifyOptions options = {}) {
  return verify(scheme, general ? VerifyMode::extended_general : VerifyMode::extended, options);
}

/// (measured, claimed, equal) for a completed verify run of the scheme in
/// the given mode.
inline std::tuple<Rational, Rational, bool> measured_vs_claimed(const Scheme& scheme,
                                                                VerifyMode mode,
                                                                VerifyOptions options = {}) {
  const VerifyReport report = verify(scheme, mode, options);
  return {report.measured_worst_cost, report.claimed_worst_cost,
          report.measured_worst_cost == report.claimed_worst_cost};
}

/// The configuration that starves every version under a latest-only scheme
/// whose per-version storage is capped below 1/ceil(c/v): v groups of
/// ceil(c/v) servers, group i reached only by version i.
struct ImpossibilityWitness {
  int group_size = 0;            // ceil(c/v)
  ReachabilityPattern pattern;   // v * group_size servers
  Rational per_version_info;     // group_size * cost_cap, < 1
};

inline std::optional<ImpossibilityWitness> impossibility_probe(const Rational& cost_cap,
                                                               const SystemParams& params) {
  params.validate();
  const int g = (params.c + params.v - 1) / params.v;
  if (cost_cap >= Rational(1, g)) return std::nullopt;
  ImpossibilityWitness w;
  w.group_size = g;
  std::vector<std::uint32_t> masks;
  masks.reserve(static_cast<std::size_t>(params.v) * g);
  for (int i = 1; i <= params.v; ++i)
    for (int k = 0; k < g; ++k) masks.push_back(1u << (i - 1));
  w.pattern = ReachabilityPattern(std::move(masks));
  w.per_version_info = Rational(g) * cost_cap;
  return w;
}

}  // namespace mvc
