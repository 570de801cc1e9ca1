// Copyright (c) 2026 arexit contributors.
// SPDX-License-Identifier: Apache-2.0
#include "arexit/config.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace arexit::cli {

using matcore::Matrix;
using matcore::Vector;

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw InvalidInputError("config line " + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& s, std::size_t line) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || s.empty() || errno == ERANGE || !std::isfinite(v))
    fail(line, "expected a finite number, got '" + s + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& s, std::size_t line) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size() || s.empty() || errno == ERANGE ||
      s.find('-') != std::string::npos)
    fail(line, "expected a nonnegative integer, got '" + s + "'");
  return v;
}

std::vector<double> parse_vector(const std::string& s, std::size_t line) {
  std::istringstream in(s);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) out.push_back(parse_double(tok, line));
  if (out.empty()) fail(line, "expected at least one number");
  return out;
}

Matrix parse_matrix(const std::string& s, std::size_t line) {
  std::vector<std::vector<double>> rows;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, ';')) rows.push_back(parse_vector(part, line));
  const std::size_t cols = rows.front().size();
  std::vector<double> flat;
  for (const auto& r : rows) {
    if (r.size() != cols) fail(line, "matrix rows have unequal lengths");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return Matrix(rows.size(), cols, std::move(flat));
}

// Raw key/value store per section, with line numbers for diagnostics.
struct RawConfig {
  std::map<std::string, std::map<std::string, std::pair<std::string, std::size_t>>> sections;
};

RawConfig tokenize(const std::string& text) {
  RawConfig raw;
  std::istringstream in(text);
  std::string line;
  std::string section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(lineno, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "model" && section != "exit" && section != "mc" &&
          section != "output")
        fail(lineno, "unknown section [" + section + "]");
      raw.sections[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(lineno, "expected 'key = value'");
    if (section.empty()) fail(lineno, "key outside any [section]");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) fail(lineno, "empty key or value");
    auto [it, inserted] = raw.sections[section].emplace(key, std::make_pair(value, lineno));
    if (!inserted) fail(lineno, "duplicate key '" + key + "' in [" + section + "]");
  }
  return raw;
}

class SectionReader {
 public:
  SectionReader(RawConfig& raw, const std::string& name) : name_(name) {
    if (auto it = raw.sections.find(name); it != raw.sections.end())
      entries_ = &it->second;
  }

  bool present() const { return entries_ != nullptr; }

  std::optional<std::pair<std::string, std::size_t>> take(const std::string& key) {
    if (!entries_) return std::nullopt;
    auto it = entries_->find(key);
    if (it == entries_->end()) return std::nullopt;
    auto out = it->second;
    entries_->erase(it);
    return out;
  }

  std::pair<std::string, std::size_t> require(const std::string& key) {
    auto v = take(key);
    if (!v)
      throw InvalidInputError("config: missing required key '" + key + "' in [" +
                              name_ + "]");
    return *v;
  }

  void finish() const {
    if (entries_ && !entries_->empty()) {
      const auto& [key, val] = *entries_->begin();
      fail(val.second, "unknown key '" + key + "' in [" + name_ + "]");
    }
  }

 private:
  const std::string name_;
  std::map<std::string, std::pair<std::string, std::size_t>>* entries_ = nullptr;
};

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += format_full(v[i]);
  }
  return out;
}

std::string join_matrix(const Matrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out += "; ";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      out += format_full(m(i, j));
    }
  }
  return out;
}

}  // namespace

double RunConfig::epsilon() const {
  return is_arn() ? std::get<ArnSection>(model).epsilon
                  : std::get<Ar1Section>(model).epsilon;
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  if (a.is_arn() != b.is_arn()) return false;
  if (a.is_arn()) {
    const auto& ma = std::get<ArnSection>(a.model);
    const auto& mb = std::get<ArnSection>(b.model);
    if (ma.b != mb.b || ma.epsilon != mb.epsilon || ma.starts != mb.starts)
      return false;
  } else {
    const auto& ma = std::get<Ar1Section>(a.model);
    const auto& mb = std::get<Ar1Section>(b.model);
    if (ma.a.rows() != mb.a.rows() || ma.a.entries() != mb.a.entries() ||
        ma.epsilon != mb.epsilon || ma.x0.entries() != mb.x0.entries() ||
        ma.noise != mb.noise)
      return false;
  }
  if (a.exit.c.has_value() != b.exit.c.has_value()) return false;
  if (a.exit.c && a.exit.c->entries() != b.exit.c->entries()) return false;
  if (a.exit.level != b.exit.level || a.exit.sided != b.exit.sided) return false;
  if (a.mc.n_paths != b.mc.n_paths || a.mc.seed != b.mc.seed ||
      a.mc.max_steps != b.mc.max_steps || a.mc.threads != b.mc.threads)
    return false;
  return a.output.format == b.output.format && a.output.path == b.output.path;
}

RunConfig parse_config(const std::string& text) {
  RawConfig raw = tokenize(text);

  SectionReader model(raw, "model");
  if (!model.present())
    throw InvalidInputError("config: missing required section [model]");
  const auto [type, type_line] = model.require("type");

  RunConfig cfg{Ar1Section{Matrix::identity(1), 1.0, Vector(1)}, {}, {}, {}};
  if (type == "ar1") {
    Ar1Section s{Matrix::identity(1), 1.0, Vector(1)};
    const auto [a_str, a_line] = model.require("a");
    s.a = parse_matrix(a_str, a_line);
    if (!s.a.square()) fail(a_line, "drift matrix must be square");
    if (auto dim = model.take("dim")) {
      if (parse_u64(dim->first, dim->second) != s.a.rows())
        fail(dim->second, "dim does not match the drift matrix");
    }
    const auto [eps_str, eps_line] = model.require("epsilon");
    s.epsilon = parse_double(eps_str, eps_line);
    const auto [x0_str, x0_line] = model.require("x0");
    s.x0 = Vector(parse_vector(x0_str, x0_line));
    if (s.x0.dim() != s.a.rows()) fail(x0_line, "x0 dimension does not match a");
    if (auto noise = model.take("noise")) {
      if (noise->first == "identity")
        s.noise = process::NoiseShape::identity;
      else if (noise->first == "first_coordinate")
        s.noise = process::NoiseShape::first_coordinate;
      else
        fail(noise->second, "noise must be identity or first_coordinate");
    }
    cfg.model = std::move(s);
  } else if (type == "arn") {
    ArnSection s;
    const auto [b_str, b_line] = model.require("b");
    s.b = parse_vector(b_str, b_line);
    const auto [eps_str, eps_line] = model.require("epsilon");
    s.epsilon = parse_double(eps_str, eps_line);
    const auto [st_str, st_line] = model.require("starts");
    s.starts = parse_vector(st_str, st_line);
    if (s.starts.size() != s.b.size())
      fail(st_line, "starts must list exactly one value per coefficient");
    cfg.model = std::move(s);
  } else {
    fail(type_line, "model type must be ar1 or arn");
  }
  model.finish();

  SectionReader exit(raw, "exit");
  if (auto c = exit.take("c")) {
    if (cfg.is_arn())
      fail(c->second, "AR(n) exit direction is fixed; remove 'c'");
    cfg.exit.c = Vector(parse_vector(c->first, c->second));
  }
  if (auto level = exit.take("level")) {
    cfg.exit.level = parse_double(level->first, level->second);
    if (!(cfg.exit.level > 0.0)) fail(level->second, "level must be positive");
  }
  if (auto sided = exit.take("sided")) {
    if (sided->first == "two_sided")
      cfg.exit.sided = ldp::Sidedness::two_sided;
    else if (sided->first == "one_sided")
      cfg.exit.sided = ldp::Sidedness::one_sided;
    else
      fail(sided->second, "sided must be two_sided or one_sided");
  }
  exit.finish();
  if (!cfg.is_arn()) {
    if (!cfg.exit.c)
      throw InvalidInputError("config: [exit] c is required for ar1 models");
    if (cfg.exit.c->dim() != std::get<Ar1Section>(cfg.model).a.rows())
      throw InvalidInputError("config: exit direction dimension does not match a");
    if (cfg.exit.c->is_zero())
      throw InvalidInputError("config: exit direction must be nonzero");
  }

  SectionReader mc(raw, "mc");
  if (auto v = mc.take("paths")) {
    cfg.mc.n_paths = parse_u64(v->first, v->second);
    if (cfg.mc.n_paths < 1) fail(v->second, "paths must be >= 1");
  }
  if (auto v = mc.take("seed")) cfg.mc.seed = parse_u64(v->first, v->second);
  if (auto v = mc.take("max_steps")) {
    cfg.mc.max_steps = parse_u64(v->first, v->second);
    if (cfg.mc.max_steps < 1) fail(v->second, "max_steps must be >= 1");
  }
  if (auto v = mc.take("threads")) {
    if (v->first == "auto")
      cfg.mc.threads = 0;
    else {
      const auto t = parse_u64(v->first, v->second);
      if (t < 1) fail(v->second, "threads must be 'auto' or >= 1");
      cfg.mc.threads = static_cast<unsigned>(t);
    }
  }
  mc.finish();

  SectionReader output(raw, "output");
  if (auto v = output.take("format")) {
    if (v->first == "csv")
      cfg.output.format = OutputFormat::csv;
    else if (v->first == "json")
      cfg.output.format = OutputFormat::json;
    else
      fail(v->second, "format must be csv or json");
  }
  if (auto v = output.take("path")) cfg.output.path = v->first;
  output.finish();

  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "[model]\n";
  if (cfg.is_arn()) {
    const auto& m = std::get<ArnSection>(cfg.model);
    out << "type = arn\n";
    out << "b = " << join(m.b) << "\n";
    out << "epsilon = " << format_full(m.epsilon) << "\n";
    out << "starts = " << join(m.starts) << "\n";
  } else {
    const auto& m = std::get<Ar1Section>(cfg.model);
    out << "type = ar1\n";
    out << "dim = " << m.a.rows() << "\n";
    out << "a = " << join_matrix(m.a) << "\n";
    out << "epsilon = " << format_full(m.epsilon) << "\n";
    out << "x0 = " << join(m.x0.entries()) << "\n";
    out << "noise = "
        << (m.noise == process::NoiseShape::identity ? "identity"
                                                     : "first_coordinate")
        << "\n";
  }
  out << "\n[exit]\n";
  if (cfg.exit.c) out << "c = " << join(cfg.exit.c->entries()) << "\n";
  out << "level = " << format_full(cfg.exit.level) << "\n";
  out << "sided = "
      << (cfg.exit.sided == ldp::Sidedness::two_sided ? "two_sided" : "one_sided")
      << "\n";
  out << "\n[mc]\n";
  out << "paths = " << cfg.mc.n_paths << "\n";
  out << "seed = " << cfg.mc.seed << "\n";
  out << "max_steps = " << cfg.mc.max_steps << "\n";
  if (cfg.mc.threads == 0)
    out << "threads = auto\n";
  else
    out << "threads = " << cfg.mc.threads << "\n";
  out << "\n[output]\n";
  out << "format = " << (cfg.output.format == OutputFormat::json ? "json" : "csv")
      << "\n";
  out << "path = " << cfg.output.path << "\n";
  return out.str();
}

process::ArModel build_model(const RunConfig& cfg) {
  if (cfg.is_arn()) {
    const auto& m = std::get<ArnSection>(cfg.model);
    return process::embed_arn(process::ArnModel(m.b, m.epsilon, m.starts)).model;
  }
  const auto& m = std::get<Ar1Section>(cfg.model);
  return process::ArModel(m.a, m.epsilon, m.x0, m.noise);
}

ldp::ExitSpec build_exit(const RunConfig& cfg) {
  if (cfg.is_arn()) {
    const auto& m = std::get<ArnSection>(cfg.model);
    return ldp::ExitSpec(Vector::unit(m.b.size(), 0), cfg.exit.sided, cfg.exit.level);
  }
  return ldp::ExitSpec(*cfg.exit.c, cfg.exit.sided, cfg.exit.level);
}

mc::McConfig build_mc_config(const RunConfig& cfg) {
  mc::McConfig out;
  out.n_paths = cfg.mc.n_paths;
  out.seed = cfg.mc.seed;
  out.max_steps = cfg.mc.max_steps;
  out.threads = cfg.mc.threads;
  return out;
}

}  // namespace arexit::cli
