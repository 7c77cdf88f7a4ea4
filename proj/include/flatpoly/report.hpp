#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace flatpoly {

std::string fmt_double(double v);

// One experiment's output: an ordered config echo, a rectangular table, and
// summary key/values. Serialization is fully deterministic (fixed field
// order, pinned float formatting, no timestamps), so identical runs produce
// byte-identical files; the digest covers the payload (columns, rows,
// summary).
struct Report {
  std::string command;
  std::string version;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> summary;

  void set_config(const std::string& key, const std::string& value);
  void set_config(const std::string& key, double value);
  void set_summary(const std::string& key, const std::string& value);
  void set_summary(const std::string& key, double value);

  std::string payload() const;
  std::string payload_digest() const;

  void write_csv(std::ostream& os) const;
  void write_json(std::ostream& os) const;
  std::string to_string(const std::string& format) const;

  // Parses the JSON form and checks the embedded digest; throws
  // std::invalid_argument on malformed input or a digest mismatch.
  static Report read_json(std::istream& is);
};

}  // namespace flatpoly
