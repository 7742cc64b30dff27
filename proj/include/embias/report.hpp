// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "embias/assoc.hpp"
#include "embias/debias.hpp"
#include "embias/lexicon.hpp"
#include "embias/runner.hpp"
#include "embias/subspace.hpp"

namespace embias {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kToolName = "embias";
inline constexpr const char* kToolVersion = "0.1.0";

inline Json to_json(const OovEntry& e) {
  return Json{{"list", e.list}, {"label", e.label}, {"token", e.token}, {"reason", e.reason}};
}

inline Json to_json(const TestOutcome& o) {
  Json j = Json::object();
  j["test"] = o.test_name;
  j["category"] = to_string(o.category);
  j["variant"] = to_string(o.variant);
  if (o.error) {
    j["status"] = "error";
    j["error"] = Json{{"kind", to_string(o.error->kind)}, {"message", o.error->message}};
    return j;
  }
  const TestResult& r = *o.result;
  j["status"] = "ok";
  j["statistic"] = r.statistic;
  j["effect_size"] = r.effect_size ? Json(*r.effect_size) : Json(nullptr);
  j["p_value"] = r.p_value;
  j["permutations"] = r.permutations_used;
  j["mode"] = to_string(r.mode);
  j["tie_policy"] = to_string(r.tie_policy);
  j["stddev"] = to_string(r.stddev);
  j["sizes"] = Json{{"x", r.sizes[0]}, {"y", r.sizes[1]}, {"a", r.sizes[2]}, {"b", r.sizes[3]}};
  Json oov = Json::array();
  for (const auto& e : r.oov_report) oov.push_back(to_json(e));
  j["oov"] = std::move(oov);
  return j;
}

inline Json to_json(const BiasDirection& d) {
  Json parents = Json::array();
  for (const auto& p : d.parents) parents.push_back(p.label);
  return Json{{"label", d.label}, {"method", to_string(d.method)}, {"provenance", d.provenance()},
              {"parents", std::move(parents)}};
}

struct Comparison {
  std::string method;
  BiasDirection direction;
  std::vector<ComparisonRow> rows;
};

struct AuditReport {
  Json config = Json::object();
  std::vector<TestOutcome> results;
  std::optional<Comparison> comparison;
  std::vector<std::string> warnings;
};

inline Json to_json(const AuditReport& report) {
  Json j = Json::object();
  j["schema_version"] = kReportSchemaVersion;
  j["tool"] = Json{{"name", kToolName}, {"version", kToolVersion}};
  j["config"] = report.config;
  Json results = Json::array();
  for (const auto& o : report.results) results.push_back(to_json(o));
  j["results"] = std::move(results);
  if (report.comparison) {
    Json rows = Json::array();
    for (const auto& r : report.comparison->rows) {
      rows.push_back(Json{{"test", r.before.test_name},
                          {"category", to_string(r.before.category)},
                          {"information_retention", r.information_retention},
                          {"before", to_json(r.before)},
                          {"after", to_json(r.after)}});
    }
    j["comparison"] = Json{{"method", report.comparison->method},
                           {"direction", to_json(report.comparison->direction)},
                           {"rows", std::move(rows)}};
  }
  j["warnings"] = report.warnings;
  return j;
}

inline std::string render_json(const AuditReport& report) { return to_json(report).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Markdown

inline std::string format_fixed2(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", x);
  return buf;
}

/// "d (p)" with two decimals; "n/a" replaces d when it is undefined.
inline std::string format_cell(const TestOutcome& o) {
  if (o.error) return "error";
  const TestResult& r = *o.result;
  return (r.effect_size ? format_fixed2(*r.effect_size) : std::string("n/a")) + " (" +
         format_fixed2(r.p_value) + ")";
}

inline std::string render_markdown(const AuditReport& report) {
  std::string out;
  if (!report.results.empty() || !report.comparison) {
    out += "| Test | Category | Variant | n | d (p) |\n";
    out += "|---|---|---|---|---|\n";
    for (const auto& o : report.results) {
      const std::string n = o.result ? std::to_string(o.result->sizes[0]) : "-";
      out += "| " + o.test_name + " | " + to_string(o.category) + " | " + to_string(o.variant) + " | " + n +
             " | " + format_cell(o) + " |\n";
    }
  }
  if (report.comparison) {
    if (!out.empty()) out += "\n";
    out += "| Test | Category | Original d (p) | Debiased d (p) |\n";
    out += "|---|---|---|---|\n";
    for (const auto& r : report.comparison->rows) {
      const std::string cat = r.information_retention ? "ME (IR)" : to_string(r.before.category);
      out += "| " + r.before.test_name + " | " + cat + " | " + format_cell(r.before) + " | " +
             format_cell(r.after) + " |\n";
    }
  }
  std::vector<std::string> errors;
  auto collect = [&](const TestOutcome& o, const char* tag) {
    if (o.error) errors.push_back(o.test_name + tag + ": " + o.error->message);
  };
  for (const auto& o : report.results) collect(o, "");
  if (report.comparison) {
    for (const auto& r : report.comparison->rows) {
      collect(r.before, " (original)");
      collect(r.after, " (debiased)");
    }
  }
  if (!errors.empty()) {
    out += "\nErrors:\n\n";
    for (const auto& e : errors) out += "- " + e + "\n";
  }
  return out;
}

}  // namespace embias
