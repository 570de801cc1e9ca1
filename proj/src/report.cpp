// Copyright (c) 2026 arexit contributors.
// SPDX-License-Identifier: Apache-2.0
#include "arexit/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "arexit/rng.hpp"
#include "json.hpp"

namespace arexit::cli {

namespace {

using nlohmann::ordered_json;

// Doubles enter JSON rounded to 12 significant digits; the serializer then
// emits the shortest round-trip form, which cannot be longer than that.
ordered_json jnum(double v) { return ordered_json(round_sig12(v)); }

ordered_json path_json(const process::Path& path) {
  ordered_json points = ordered_json::array();
  for (const auto& p : path.points) {
    ordered_json row = ordered_json::array();
    for (double v : p.entries()) row.push_back(jnum(v));
    points.push_back(std::move(row));
  }
  return points;
}

ordered_json matrix_json(const matcore::Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(jnum(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string f6(double v) { return fmt_sig(v, 6); }
std::string f12(double v) { return fmt_sig(v, 12); }

}  // namespace

std::string fmt_sig(double v, int sig) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", sig, v);
  return buf;
}

double round_sig12(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::string csv_field(const std::string& raw) {
  if (raw.find_first_of(",\"\r\n") == std::string::npos) return raw;
  std::string out = "\"";
  for (char ch : raw) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  out += "\r\n";
  return out;
}

std::string simulate_csv(const std::vector<SimulateRow>& rows) {
  std::string out = csv_line({"epsilon", "n_paths", "mean_tau", "ci_low", "ci_high",
                              "scaled_log", "censored", "seed", "rng_version",
                              "schema_version"});
  for (const auto& r : rows)
    out += csv_line({f12(r.epsilon), std::to_string(r.n_paths), f12(r.mean_tau),
                     f12(r.ci_low), f12(r.ci_high), f12(r.scaled_log),
                     std::to_string(r.censored), std::to_string(r.seed),
                     mc::kRngVersion, std::to_string(kSchemaVersion)});
  return out;
}

std::string simulate_json(const std::vector<SimulateRow>& rows) {
  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = "simulate";
  doc["rng_version"] = mc::kRngVersion;
  doc["rows"] = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json row;
    row["epsilon"] = jnum(r.epsilon);
    row["n_paths"] = r.n_paths;
    row["mean_tau"] = jnum(r.mean_tau);
    row["ci_low"] = jnum(r.ci_low);
    row["ci_high"] = jnum(r.ci_high);
    row["scaled_log"] = jnum(r.scaled_log);
    row["censored"] = r.censored;
    row["seed"] = r.seed;
    doc["rows"].push_back(std::move(row));
  }
  return doc.dump(2) + "\n";
}

std::string simulate_text(const std::vector<SimulateRow>& rows) {
  std::ostringstream out;
  out << "epsilon     mean_tau      ci_95              scaled_log  censored\n";
  for (const auto& r : rows) {
    char line[160];
    std::snprintf(line, sizeof line, "%-10s  %-12s  [%s, %s]  %-10s  %zu%s\n",
                  f6(r.epsilon).c_str(), f6(r.mean_tau).c_str(),
                  f6(r.ci_low).c_str(), f6(r.ci_high).c_str(),
                  f6(r.scaled_log).c_str(), r.censored,
                  r.censored > 0 ? "  (mean is a lower bound)" : "");
    out << line;
  }
  out << "paths " << (rows.empty() ? 0 : rows.front().n_paths) << ", seed "
      << (rows.empty() ? 0 : rows.front().seed) << ", rng " << mc::kRngVersion
      << "\n";
  return out.str();
}

std::string table1_csv(const std::vector<Table1Row>& rows, double limit) {
  std::string out =
      csv_line({"epsilon", "ref_scaled_log", "scaled_log", "abs_diff", "limit",
                "mean_tau", "ci_low", "ci_high", "n_paths", "censored", "seed",
                "rng_version", "schema_version"});
  for (const auto& r : rows)
    out += csv_line({f12(r.epsilon), f12(r.reference), f12(r.computed),
                     f12(r.abs_diff), f12(limit), f12(r.mean_tau), f12(r.ci_low),
                     f12(r.ci_high), std::to_string(r.n_paths),
                     std::to_string(r.censored), std::to_string(r.seed),
                     mc::kRngVersion, std::to_string(kSchemaVersion)});
  return out;
}

std::string table1_json(const std::vector<Table1Row>& rows, double limit) {
  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = "table1";
  doc["rng_version"] = mc::kRngVersion;
  doc["limit"] = jnum(limit);
  doc["rows"] = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json row;
    row["epsilon"] = jnum(r.epsilon);
    row["ref_scaled_log"] = jnum(r.reference);
    row["scaled_log"] = jnum(r.computed);
    row["abs_diff"] = jnum(r.abs_diff);
    row["mean_tau"] = jnum(r.mean_tau);
    row["ci_low"] = jnum(r.ci_low);
    row["ci_high"] = jnum(r.ci_high);
    row["n_paths"] = r.n_paths;
    row["censored"] = r.censored;
    row["seed"] = r.seed;
    doc["rows"].push_back(std::move(row));
  }
  return doc.dump(2) + "\n";
}

std::string table1_text(const std::vector<Table1Row>& rows, double limit) {
  std::ostringstream out;
  out << "epsilon   reference  computed   |diff|     mean_tau      censored\n";
  for (const auto& r : rows) {
    char line[160];
    std::snprintf(line, sizeof line, "%-8s  %-9s  %-9s  %-9s  %-12s  %zu\n",
                  f6(r.epsilon).c_str(), f6(r.reference).c_str(),
                  f6(r.computed).c_str(), f6(r.abs_diff).c_str(),
                  f6(r.mean_tau).c_str(), r.censored);
    out << line;
  }
  out << "asymptotic limit: " << f6(limit);
  if (!rows.empty())
    out << "   (paths " << rows.front().n_paths << ", seed " << rows.front().seed
        << ", rng " << mc::kRngVersion << ")";
  out << "\n";
  return out.str();
}

std::string analyze_text(const AnalyzeReport& r) {
  std::ostringstream out;
  out << "model: " << r.model_kind << ", dim " << r.dim << ", epsilon "
      << f6(r.epsilon) << "\n";
  if (!r.arn_coefficients.empty()) {
    out << "coefficients:";
    for (double b : r.arn_coefficients) out << " " << f6(b);
    out << "\n";
  }
  out << "exit: c = [";
  for (std::size_t i = 0; i < r.exit_direction.size(); ++i)
    out << (i ? " " : "") << f6(r.exit_direction[i]);
  out << "], level = " << f6(r.exit_level) << ", " << r.exit_sided << "\n";
  out << "spectral radius: " << f6(r.spectral_radius) << "\n";
  out << "stationary covariance factor Sigma_inf:\n";
  for (std::size_t i = 0; i < r.sigma_infinity.rows(); ++i) {
    out << " ";
    for (std::size_t j = 0; j < r.sigma_infinity.cols(); ++j)
      out << " " << f6(r.sigma_infinity(i, j));
    out << "\n";
  }
  out << (r.model_kind == "arn" ? "stationary variance sigma^2: "
                                : "c^T Sigma_inf c: ")
      << f6(r.sigma2) << "\n";
  out << "asymptotic exponent 1/(2 c^T Sigma_inf c), level-normalized: "
      << f6(r.asymptotic_exponent) << "\n";
  out << "horizon table (exponent = 1/(2 c^T Sigma_N c)):\n";
  out << "  N           c^T Sigma_N c  exponent\n";
  for (const auto& h : r.horizons) {
    char line[120];
    if (h.reachable)
      std::snprintf(line, sizeof line, "  %-10zu  %-13s  %s\n", h.horizon,
                    f6(h.quadratic_form).c_str(), f6(h.exponent).c_str());
    else
      std::snprintf(line, sizeof line, "  %-10zu  unreachable\n", h.horizon);
    out << line;
  }
  out << "convergence horizon (within 1e-9 of the limit): "
      << r.convergence_horizon << "\n";
  if (r.optimal_path) {
    out << "optimal exit path (horizon " << r.path_horizon << "):\n";
    for (std::size_t t = 0; t < r.optimal_path->points.size(); ++t) {
      out << "  t=" << t << " ";
      for (double v : r.optimal_path->points[t].entries()) out << " " << f6(v);
      out << "\n";
    }
  }
  return out.str();
}

std::string analyze_json(const AnalyzeReport& r) {
  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = "analyze";
  doc["model"] = {{"kind", r.model_kind}, {"dim", r.dim}, {"epsilon", jnum(r.epsilon)}};
  if (!r.arn_coefficients.empty()) {
    ordered_json b = ordered_json::array();
    for (double v : r.arn_coefficients) b.push_back(jnum(v));
    doc["model"]["b"] = std::move(b);
  }
  ordered_json c = ordered_json::array();
  for (double v : r.exit_direction) c.push_back(jnum(v));
  doc["exit"] = {{"c", std::move(c)},
                 {"level", jnum(r.exit_level)},
                 {"sided", r.exit_sided}};
  doc["spectral_radius"] = jnum(r.spectral_radius);
  doc["sigma_infinity"] = matrix_json(r.sigma_infinity);
  doc["sigma2"] = jnum(r.sigma2);
  doc["quadratic_form"] = jnum(r.quadratic_form);
  doc["asymptotic_exponent"] = jnum(r.asymptotic_exponent);
  doc["convergence_horizon"] = r.convergence_horizon;
  doc["horizons"] = ordered_json::array();
  for (const auto& h : r.horizons) {
    ordered_json row;
    row["horizon"] = h.horizon;
    row["reachable"] = h.reachable;
    if (h.reachable) {
      row["quadratic_form"] = jnum(h.quadratic_form);
      row["exponent"] = jnum(h.exponent);
    }
    doc["horizons"].push_back(std::move(row));
  }
  if (r.optimal_path) {
    doc["optimal_path"] = {{"horizon", r.path_horizon},
                           {"points", path_json(*r.optimal_path)}};
  }
  return doc.dump(2) + "\n";
}

std::string analyze_csv(const AnalyzeReport& r) {
  std::string out =
      csv_line({"horizon", "quadratic_form", "exponent", "schema_version"});
  for (const auto& h : r.horizons) {
    if (h.reachable)
      out += csv_line({std::to_string(h.horizon), f12(h.quadratic_form),
                       f12(h.exponent), std::to_string(kSchemaVersion)});
    else
      out += csv_line({std::to_string(h.horizon), "", "",
                       std::to_string(kSchemaVersion)});
  }
  out += csv_line({"asymptotic", f12(r.quadratic_form), f12(r.asymptotic_exponent),
                   std::to_string(kSchemaVersion)});
  return out;
}

bool VerifyReport::passed() const {
  for (const auto& c : checks)
    if (c.failures > 0) return false;
  return true;
}

std::string verify_text(const VerifyReport& r) {
  std::ostringstream out;
  out << "verify: seed " << r.seed << ", trials " << r.trials << "\n";
  for (const auto& c : r.checks) {
    char line[120];
    std::snprintf(line, sizeof line, "  check %-24s %6zu instances  %zu failures\n",
                  c.name.c_str(), c.instances, c.failures);
    out << line;
    for (const auto& d : c.details) out << "    failing instance: " << d << "\n";
  }
  out << (r.passed() ? "all checks passed" : "FAILED") << "\n";
  return out.str();
}

std::string verify_json(const VerifyReport& r) {
  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = "verify";
  doc["seed"] = r.seed;
  doc["trials"] = r.trials;
  doc["checks"] = ordered_json::array();
  for (const auto& c : r.checks) {
    ordered_json row;
    row["name"] = c.name;
    row["instances"] = c.instances;
    row["failures"] = c.failures;
    row["details"] = c.details;
    doc["checks"].push_back(std::move(row));
  }
  doc["passed"] = r.passed();
  return doc.dump(2) + "\n";
}

}  // namespace arexit::cli
