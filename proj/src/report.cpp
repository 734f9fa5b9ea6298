#include "acceptcert/report.hpp"

#include <sstream>
#include <stdexcept>

namespace acceptcert {

namespace {

std::string compact(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

}  // namespace

const char* tool_version() { return "0.1.0"; }

bool Report::pass() const {
  if (results.empty()) return false;
  return passed() == results.size();
}

std::size_t Report::passed() const {
  std::size_t n = 0;
  for (const auto& r : results) n += r.pass();
  return n;
}

Json Report::to_json(bool with_timing) const {
  Json j;
  j["schema"] = kReportSchema;
  j["tool"] = Json{{"name", "acceptcert"}, {"version", version}};
  j["invocation"] = invocation;
  Json rs = Json::array();
  for (const auto& r : results) rs.push_back(r.to_json(with_timing));
  j["results"] = std::move(rs);
  j["aggregate"] = Json{{"status", pass() ? "pass" : "fail"},
                        {"total", results.size()},
                        {"passed", passed()},
                        {"failed", results.size() - passed()}};
  if (with_timing) j["timing"] = Json{{"seconds", seconds}};
  return j;
}

Report Report::from_json(const Json& j) {
  if (!j.is_object() || !j.contains("schema") || j["schema"] != kReportSchema)
    throw std::invalid_argument("unsupported report schema");
  try {
    Report r;
    r.version = j.at("tool").at("version").get<std::string>();
    r.invocation = j.at("invocation");
    for (const auto& x : j.at("results")) r.results.push_back(RunResult::from_json(x));
    if (j.contains("timing")) r.seconds = j.at("timing").at("seconds").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed report: ") + e.what());
  }
}

bool operator==(const Report& a, const Report& b) { return a.to_json(false) == b.to_json(false); }

std::string format_text(const Report& rep) {
  std::ostringstream os;
  for (const auto& r : rep.results) {
    os << (r.pass() ? "PASS" : "FAIL") << "  " << r.id;
    if (!r.params.empty()) os << " " << r.params.dump();
    os << "\n      " << r.anchor << "\n";
    for (const auto& c : r.checks) {
      os << "      " << (c.ok() ? "ok   " : "FAIL ") << c.name << " = " << compact(c.computed);
      if (!c.ok()) os << " (expected " << compact(c.expected) << ")";
      os << "\n";
    }
    if (!r.counts.empty()) {
      os << "      counts:";
      for (const auto& [k, v] : r.counts.items()) os << " " << k << "=" << compact(v);
      os << "\n";
    }
    if (r.details.contains("table")) {
      for (const auto& row : r.details["table"])
        os << "        2pi*" << row["k"] << "/" << row["m"] << "  " << compact(row["verdict"]) << "  ("
           << compact(row["reason"]) << ")\n";
    }
    if (!r.error.empty()) os << "      error: " << r.error << "\n";
  }
  os << rep.passed() << "/" << rep.results.size() << " passed\n";
  return os.str();
}

}  // namespace acceptcert
