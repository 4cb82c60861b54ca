#include "qtf/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "qtf/errors.hpp"

namespace qtf {

namespace {

using nlohmann::json;

json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double read_number(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw std::invalid_argument("expected a number");
}

Relation read_relation(const std::string& s) {
  if (s == "<=") return Relation::less_eq;
  if (s == ">=") return Relation::greater_eq;
  if (s == "==") return Relation::equal;
  throw std::invalid_argument("unknown relation '" + s + "'");
}

std::string cell(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string to_json_line(const InequalityResult& r) {
  json params = json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  json j = {{"name", r.name},
            {"params", params},
            {"lhs", number(r.lhs)},
            {"rhs", number(r.rhs)},
            {"margin", number(r.margin)},
            {"tolerance", number(r.tolerance)},
            {"relative", r.relative},
            {"relation", to_string(r.relation)},
            {"pass", r.pass},
            {"gated", r.gated}};
  if (!r.note.empty()) j["note"] = r.note;
  return j.dump();
}

std::string to_jsonl(const std::vector<InequalityResult>& results) {
  std::string out;
  for (const auto& r : results) {
    out += to_json_line(r);
    out.push_back('\n');
  }
  return out;
}

std::vector<InequalityResult> parse_jsonl(std::string_view text) {
  std::vector<InequalityResult> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
      try {
        const json j = json::parse(line);
        InequalityResult r;
        r.name = j.at("name").get<std::string>();
        for (const auto& [k, v] : j.at("params").items()) r.params.emplace_back(k, v.get<std::string>());
        r.lhs = read_number(j.at("lhs"));
        r.rhs = read_number(j.at("rhs"));
        r.margin = read_number(j.at("margin"));
        r.tolerance = read_number(j.at("tolerance"));
        r.relative = j.at("relative").get<bool>();
        r.relation = read_relation(j.at("relation").get<std::string>());
        r.pass = j.at("pass").get<bool>();
        r.gated = j.at("gated").get<bool>();
        if (j.contains("note")) r.note = j.at("note").get<std::string>();
        out.push_back(std::move(r));
      } catch (const std::exception& e) {
        throw FormatError(std::string("bad report line: ") + e.what(), pos);
      }
    }
    pos = eol + 1;
  }
  return out;
}

void print_table(std::ostream& os, const std::vector<InequalityResult>& results) {
  std::size_t width = 4;
  for (const auto& r : results) width = std::max(width, r.name.size());
  char line[512];
  std::snprintf(line, sizeof line, "%-*s  %-6s %13s %2s %13s %13s  %s\n", static_cast<int>(width), "name", "result",
                "lhs", "", "rhs", "margin", "params");
  os << line;
  std::size_t failed = 0, reported = 0;
  for (const auto& r : results) {
    const char* status = !r.gated ? "info" : (r.pass ? "pass" : "FAIL");
    if (!r.gated) ++reported;
    if (r.gated && !r.pass) ++failed;
    std::string params;
    for (const auto& [k, v] : r.params) params += k + "=" + v + " ";
    if (!r.note.empty()) params += "(" + r.note + ")";
    std::snprintf(line, sizeof line, "%-*s  %-6s %13s %2s %13s %13s  ", static_cast<int>(width), r.name.c_str(),
                  status, cell(r.lhs).c_str(), to_string(r.relation), cell(r.rhs).c_str(), cell(r.margin).c_str());
    os << line << params << '\n';
  }
  os << results.size() << " records, " << failed << " gated failures, " << reported << " informational\n";
}

}  // namespace qtf
