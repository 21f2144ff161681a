#pragma once

#include <json.hpp>

#include "mvc/bounds.hpp"
#include "mvc/verifier.hpp"

namespace mvc {

/// JSON encodings: rationals as "num/den" strings, patterns in the text
/// format (one line per server).

inline nlohmann::json to_json(const Rational& r) { return r.to_string(); }

inline nlohmann::json to_json(const SystemParams& p) {
  return {{"n", p.n}, {"c", p.c}, {"v", p.v}, {"message_bytes", p.message_bytes}};
}

inline nlohmann::json to_json(const Violation& v) {
  return {{"pattern_ordinal", v.pattern_ordinal},
          {"pattern", v.pattern_text},
          {"subset", v.subset},
          {"required_version", v.required_version},
          {"joint_symbols", v.joint_symbols},
          {"symbols_needed", v.symbols_needed}};
}

inline nlohmann::json to_json(const VerifyReport& r) {
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : r.violations) violations.push_back(to_json(v));
  return {{"scheme", r.scheme},
          {"mode", verify_mode_name(r.mode)},
          {"params", to_json(r.params)},
          {"obligations_checked", r.obligations_checked},
          {"decode_checks", r.decode_checks},
          {"violations", violations},
          {"measured_worst_cost", to_json(r.measured_worst_cost)},
          {"claimed_worst_cost", to_json(r.claimed_worst_cost)},
          {"worst_cost_witness",
           {{"pattern_ordinal", r.worst_cost_witness.pattern_ordinal},
            {"pattern", r.worst_cost_witness.pattern_text},
            {"server", r.worst_cost_witness.server_id}}},
          {"summary", r.summary()}};
}

inline nlohmann::json to_json(const AuditResult& a) {
  nlohmann::json profiles = nlohmann::json::array();
  for (const auto& p : a.profiles) profiles.push_back(p.to_string());
  nlohmann::json info = nlohmann::json::object();
  for (const auto& [ver, r] : a.per_version_info) info[std::to_string(ver)] = to_json(r);
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& step : a.trace) {
    nlohmann::json nulls = nlohmann::json::array();
    for (const auto& n : step.nullifications)
      nulls.push_back({{"version", n.version}, {"joint_info", to_json(n.joint_info)}});
    trace.push_back({{"start", step.start.to_string()},
                     {"nullifications", nulls},
                     {"result", step.result.to_string()}});
  }
  nlohmann::json out = {{"profiles", profiles},
                        {"m", a.m},
                        {"per_version_info", info},
                        {"implied_bound", to_json(a.implied_bound)},
                        {"trace", trace}};
  if (a.violation) {
    nlohmann::json vp = nlohmann::json::array();
    for (const auto& p : a.violation->profiles) vp.push_back(p.to_string());
    out["violation"] = {{"profiles", vp},
                        {"shared_version", a.violation->shared_version},
                        {"joint_info", to_json(a.violation->joint_info)}};
  } else {
    out["violation"] = nullptr;
  }
  return out;
}

}  // namespace mvc
