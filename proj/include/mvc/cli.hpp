#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mvc/bounds.hpp"
#include "mvc/json_io.hpp"
#include "mvc/model.hpp"
#include "mvc/schemes.hpp"
#include "mvc/verifier.hpp"

namespace mvc::cli {

// Exit codes: 0 clean, 1 contract violation discovered, 2 usage or
// parameter error.

namespace cli_detail {

inline std::pair<int, int> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    const int x = std::stoi(text);
    return {x, x};
  }
  const int lo = std::stoi(text.substr(0, colon));
  const int hi = std::stoi(text.substr(colon + 1));
  if (lo < 1 || hi < lo) throw UnsupportedParams("range '" + text + "': need 1 <= lo <= hi");
  return {lo, hi};
}

inline std::string cell(const Rational& r) { return r.to_string() + "=" + r.to_decimal6(); }

inline std::uint64_t payload_seed() {
  if (const char* env = std::getenv("MVCLAB_SEED"))
    return std::strtoull(env, nullptr, 0);
  return 0xC0DE;
}

inline const std::vector<std::string>& scheme_names() {
  static const std::vector<std::string> names = {"replication", "mds", "alg1", "alg2",
                                                 "ext_latest"};
  return names;
}

}  // namespace cli_detail

inline int cmd_verify(const std::string& scheme_name, int n, int c, int v,
                      const std::string& mode_name, const std::string& json_path, int workers,
                      std::ostream& out, std::ostream& err) {
  VerifyMode mode;
  if (mode_name == "original") mode = VerifyMode::original;
  else if (mode_name == "extended") mode = VerifyMode::extended;
  else if (mode_name == "extended-general") mode = VerifyMode::extended_general;
  else {
    err << "unknown mode '" << mode_name << "'\n";
    return 2;
  }

  SystemParams params{n, c, v, default_message_bytes(c, v)};
  const Scheme scheme = make_scheme(scheme_name, params);
  VerifyOptions options;
  options.workers = workers;
  options.seed = cli_detail::payload_seed();
  const VerifyReport report = verify(scheme, mode, options);

  out << "scheme=" << report.scheme << " mode=" << verify_mode_name(report.mode) << " n=" << n
      << " c=" << c << " v=" << v << "\n";
  out << "obligations=" << report.obligations_checked
      << " decode_checks=" << report.decode_checks << " violations=" << report.violations.size()
      << "\n";
  out << "measured_worst_cost=" << cli_detail::cell(report.measured_worst_cost)
      << " claimed=" << cli_detail::cell(report.claimed_worst_cost)
      << " match=" << (report.measured_worst_cost == report.claimed_worst_cost ? "yes" : "no")
      << "\n";
  if (!report.violations.empty()) {
    const auto& first = report.violations.front();
    out << "first violation: pattern #" << first.pattern_ordinal << ", subset {";
    for (std::size_t i = 0; i < first.subset.size(); ++i)
      out << (i ? "," : "") << first.subset[i];
    out << "}, required version " << first.required_version << ", joint " << first.joint_symbols
        << " of " << first.symbols_needed << " symbols\n";
  }
  out << "summary: " << report.summary() << "\n";

  if (!json_path.empty()) {
    std::ofstream f(json_path);
    if (!f) {
      err << "cannot write " << json_path << "\n";
      return 2;
    }
    f << to_json(report).dump(2) << "\n";
  }
  return report.violations.empty() ? 0 : 1;
}

inline int cmd_costs(const std::string& c_range, const std::string& v_range,
                     const std::string& format, std::ostream& out, std::ostream& err) {
  const auto [c_lo, c_hi] = cli_detail::parse_range(c_range);
  const auto [v_lo, v_hi] = cli_detail::parse_range(v_range);
  if (static_cast<long long>(c_hi - c_lo + 1) * (v_hi - v_lo + 1) > 100000) {
    err << "costs: range too large\n";
    return 2;
  }

  auto scheme_cost = [](const std::string& name, int c, int v) -> std::optional<Rational> {
    if ((name == "alg1" || name == "alg2") && v > c) return std::nullopt;
    return claimed_worst_cost(scheme_kind_from_name(name), c, v);
  };

  if (format == "csv") {
    out << "c,v,replication,mds,alg1,alg2,ext_latest,wc14a_lb,prop1_lb,wc14b_lb,prop2_lb\n";
    for (int c = c_lo; c <= c_hi; ++c) {
      for (int v = v_lo; v <= v_hi; ++v) {
        out << c << "," << v;
        for (const auto& name : cli_detail::scheme_names()) {
          const auto cost = scheme_cost(name, c, v);
          out << "," << (cost ? cli_detail::cell(*cost) : "-");
        }
        out << "," << cli_detail::cell(wc14a_bound(c, v));
        out << "," << cli_detail::cell(prop1_bound(c, v));
        out << "," << cli_detail::cell(wc14b_bound(c));
        out << "," << cli_detail::cell(prop2_bound(c, v));
        out << "\n";
      }
    }
    return 0;
  }
  if (format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (int c = c_lo; c <= c_hi; ++c) {
      for (int v = v_lo; v <= v_hi; ++v) {
        nlohmann::json row = {{"c", c}, {"v", v}};
        for (const auto& name : cli_detail::scheme_names()) {
          const auto cost = scheme_cost(name, c, v);
          if (cost)
            row[name] = {{"exact", cost->to_string()}, {"decimal", cost->to_decimal6()}};
          else
            row[name] = nullptr;
        }
        auto bound = [](const Rational& r) {
          return nlohmann::json{{"exact", r.to_string()}, {"decimal", r.to_decimal6()}};
        };
        row["wc14a_lb"] = bound(wc14a_bound(c, v));
        row["prop1_lb"] = bound(prop1_bound(c, v));
        row["wc14b_lb"] = bound(wc14b_bound(c));
        row["prop2_lb"] = bound(prop2_bound(c, v));
        rows.push_back(row);
      }
    }
    out << rows.dump(2) << "\n";
    return 0;
  }
  err << "unknown format '" << format << "'\n";
  return 2;
}

inline int cmd_bounds(int c, int v, std::ostream& out) {
  if (v > 0) {
    out << "wc14a_lb = " << cli_detail::cell(wc14a_bound(c, v)) << "\n";
    out << "prop1_lb = " << cli_detail::cell(prop1_bound(c, v)) << "\n";
  }
  out << "wc14b_lb = " << cli_detail::cell(wc14b_bound(c)) << "\n";
  if (v > 0) out << "prop2_lb = " << cli_detail::cell(prop2_bound(c, v)) << "\n";
  return 0;
}

inline int cmd_witness(int c, int v, std::ostream& out) {
  out << prop1_witness(c, v).to_text();
  return 0;
}

inline int cmd_audit(const std::string& scheme_name, int c, int v, std::ostream& out) {
  SystemParams params{c, c, v, default_message_bytes(c, v)};  // n = c: audit is n-independent
  const Scheme scheme = make_scheme(scheme_name, params);
  const AuditResult result = profile_audit(scheme);
  nlohmann::json j = to_json(result);
  j["scheme"] = scheme_name;
  j["c"] = c;
  j["v"] = v;
  out << j.dump(2) << "\n";
  return result.violation ? 1 : 0;
}

/// Dispatch `mvclab <subcommand> ...`; streams are injected for testing.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"multi-version coded storage laboratory"};
  app.require_subcommand(1);

  std::string scheme_name, mode_name = "original", json_path, c_range, v_range,
              format = "csv";
  int n = 0, c = 0, v = 0, workers = 0;

  auto* verify_cmd = app.add_subcommand("verify", "exhaustively verify a scheme");
  verify_cmd->add_option("--scheme", scheme_name, "scheme name")->required();
  verify_cmd->add_option("--n", n, "server count")->required();
  verify_cmd->add_option("--c", c, "connectivity")->required();
  verify_cmd->add_option("--v", v, "version count")->required();
  verify_cmd->add_option("--mode", mode_name, "original|extended|extended-general");
  verify_cmd->add_option("--json", json_path, "write full JSON report to this path");
  verify_cmd->add_option("--workers", workers, "worker threads (default: all cores)");

  auto* costs_cmd = app.add_subcommand("costs", "tabulate scheme costs against all bounds");
  costs_cmd->add_option("--c-range", c_range, "c range, lo:hi or single value")->required();
  costs_cmd->add_option("--v-range", v_range, "v range, lo:hi or single value")->required();
  costs_cmd->add_option("--format", format, "csv|json");

  auto* bounds_cmd = app.add_subcommand("bounds", "print lower bound values");
  bounds_cmd->add_option("--c", c, "connectivity")->required();
  bounds_cmd->add_option("--v", v, "version count (omit for v-independent bounds only)");

  auto* witness_cmd = app.add_subcommand("witness", "print the forcing pattern for n = c+1");
  witness_cmd->add_option("--c", c, "connectivity")->required();
  witness_cmd->add_option("--v", v, "version count")->required();

  auto* audit_cmd = app.add_subcommand("audit", "run the profile-nullification audit");
  audit_cmd->add_option("--scheme", scheme_name, "scheme name")->required();
  audit_cmd->add_option("--c", c, "connectivity")->required();
  audit_cmd->add_option("--v", v, "version count")->required();

  try {
    app.parse(argc, argv);
    if (verify_cmd->parsed())
      return cmd_verify(scheme_name, n, c, v, mode_name, json_path, workers, out, err);
    if (costs_cmd->parsed()) return cmd_costs(c_range, v_range, format, out, err);
    if (bounds_cmd->parsed()) return cmd_bounds(c, v, out);
    if (witness_cmd->parsed()) return cmd_witness(c, v, out);
    if (audit_cmd->parsed()) return cmd_audit(scheme_name, c, v, out);
    err << "no subcommand\n";
    return 2;
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const UnsupportedParams& e) {
    err << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    err << "budget error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace mvc::cli
