#include "coprime/report.hpp"

#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace coprime {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string frac(const Rat& r) { return rat_string(r); }

Rat parse_frac(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(BigInt(s));
  return Rat(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

// Minimal CSV quoting; values here are numeric strings and short labels,
// but a stray comma must not corrupt the table.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

}  // namespace

std::string report_to_json(const Report& report) {
  ordered_json j;
  j["command"] = report.command;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : report.params) params[k] = v;
  j["params"] = std::move(params);
  ordered_json results = ordered_json::array();
  for (const ReportEntry& e : report.results) {
    ordered_json r;
    r["name"] = e.name;
    r["num"] = numerator(e.value).str();
    r["den"] = denominator(e.value).str();
    r["decimal"] = decimal_string(e.value);
    if (e.mode) r["mode"] = *e.mode;
    if (e.tail_bound) r["tail_bound"] = frac(*e.tail_bound);
    if (e.ci) r["ci"] = ordered_json::array({frac(e.ci->first), frac(e.ci->second)});
    results.push_back(std::move(r));
  }
  j["results"] = std::move(results);
  j["timing_ms"] = report.timing_ms;
  return j.dump(2) + "\n";
}

Report report_from_json(const std::string& json_text) {
  const auto j = nlohmann::json::parse(json_text);
  Report report;
  report.command = j.at("command").get<std::string>();
  for (const auto& [k, v] : j.at("params").items())
    report.params[k] = v.get<std::string>();
  for (const auto& r : j.at("results")) {
    ReportEntry e;
    e.name = r.at("name").get<std::string>();
    e.value = Rat(BigInt(r.at("num").get<std::string>()),
                  BigInt(r.at("den").get<std::string>()));
    if (r.contains("mode")) e.mode = r.at("mode").get<std::string>();
    if (r.contains("tail_bound")) e.tail_bound = parse_frac(r.at("tail_bound").get<std::string>());
    if (r.contains("ci"))
      e.ci = std::make_pair(parse_frac(r.at("ci")[0].get<std::string>()),
                            parse_frac(r.at("ci")[1].get<std::string>()));
    report.results.push_back(std::move(e));
  }
  report.timing_ms = j.at("timing_ms").get<double>();
  return report;
}

std::string report_to_csv(const Report& report) {
  std::ostringstream out;
  if (report.table) {
    const ReportTable& t = *report.table;
    for (std::size_t i = 0; i < t.header.size(); ++i)
      out << (i ? "," : "") << csv_field(t.header[i]);
    out << "\n";
    for (const auto& row : t.rows) {
      if (row.size() != t.header.size())
        throw std::invalid_argument("table row width does not match header");
      for (std::size_t i = 0; i < row.size(); ++i)
        out << (i ? "," : "") << csv_field(row[i]);
      out << "\n";
    }
    return out.str();
  }
  out << "name,value,decimal,mode,tail_bound,ci_low,ci_high\n";
  for (const ReportEntry& e : report.results) {
    out << csv_field(e.name) << "," << frac(e.value) << "," << decimal_string(e.value)
        << "," << (e.mode ? *e.mode : "") << ","
        << (e.tail_bound ? frac(*e.tail_bound) : "") << ","
        << (e.ci ? frac(e.ci->first) : "") << "," << (e.ci ? frac(e.ci->second) : "")
        << "\n";
  }
  return out.str();
}

}  // namespace coprime
