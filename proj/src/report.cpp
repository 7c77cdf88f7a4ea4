#include "flatpoly/report.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "flatpoly/digest.hpp"

namespace flatpoly {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

void Report::set_config(const std::string& key, const std::string& value) {
  config.emplace_back(key, value);
}
void Report::set_config(const std::string& key, double value) {
  config.emplace_back(key, fmt_double(value));
}
void Report::set_summary(const std::string& key, const std::string& value) {
  summary.emplace_back(key, value);
}
void Report::set_summary(const std::string& key, double value) {
  summary.emplace_back(key, fmt_double(value));
}

std::string Report::payload() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < columns.size(); ++i)
    os << (i ? "," : "") << columns[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
  for (const auto& [k, v] : summary) os << k << '=' << v << '\n';
  return os.str();
}

std::string Report::payload_digest() const { return hex64(fnv1a_str(payload())); }

void Report::write_csv(std::ostream& os) const {
  os << "# flatpoly " << version << '\n';
  os << "# command: " << command << '\n';
  for (const auto& [k, v] : config) os << "# config." << k << " = " << v << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
  for (const auto& [k, v] : summary) os << "# summary." << k << " = " << v << '\n';
  os << "# payload_digest: " << payload_digest() << '\n';
}

void Report::write_json(std::ostream& os) const {
  nlohmann::ordered_json j;
  j["tool"] = "flatpoly";
  j["version"] = version;
  j["command"] = command;
  nlohmann::ordered_json cfg;
  for (const auto& [k, v] : config) cfg[k] = v;
  j["config"] = std::move(cfg);
  j["columns"] = columns;
  j["rows"] = rows;
  nlohmann::ordered_json sum;
  for (const auto& [k, v] : summary) sum[k] = v;
  j["summary"] = std::move(sum);
  j["payload_digest"] = payload_digest();
  os << j.dump(2) << '\n';
}

std::string Report::to_string(const std::string& format) const {
  std::ostringstream os;
  if (format == "json")
    write_json(os);
  else if (format == "csv")
    write_csv(os);
  else
    throw std::invalid_argument("unknown output format: " + format);
  return os.str();
}

Report Report::read_json(std::istream& is) {
  nlohmann::ordered_json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed report JSON: ") + e.what());
  }
  Report rep;
  try {
    rep.version = j.at("version").get<std::string>();
    rep.command = j.at("command").get<std::string>();
    for (const auto& [k, v] : j.at("config").items())
      rep.config.emplace_back(k, v.get<std::string>());
    rep.columns = j.at("columns").get<std::vector<std::string>>();
    rep.rows = j.at("rows").get<std::vector<std::vector<std::string>>>();
    for (const auto& [k, v] : j.at("summary").items())
      rep.summary.emplace_back(k, v.get<std::string>());
    const auto digest = j.at("payload_digest").get<std::string>();
    if (digest != rep.payload_digest())
      throw std::invalid_argument("report payload digest mismatch");
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed report JSON: ") + e.what());
  }
  return rep;
}

}  // namespace flatpoly
