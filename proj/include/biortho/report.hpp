#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace biortho {

// Ordered key/value report shared by the CLI and the check/suite outputs.
//
// Flat rendering:
//   # key = value        (header lines: config echo, version, ...)
//   # ===                (delimiter; payload below is the comparable content)
//   key = value
//
// JSON rendering: {"header": {...}, "report": {...}} with insertion order
// kept.  Doubles are printed with 17 significant digits in flat mode and
// serialized round-trip exact in JSON, so identical runs are byte-identical.
class Report {
 public:
  using Value = std::variant<double, std::int64_t, bool, std::string>;

  explicit Report(std::string title) : title_(std::move(title)) {}

  void header(const std::string& key, const std::string& value);
  void add(const std::string& key, double v);
  void add(const std::string& key, std::int64_t v);
  void add(const std::string& key, int v) { add(key, static_cast<std::int64_t>(v)); }
  void add(const std::string& key, bool v);
  void add(const std::string& key, const std::string& v);
  void add(const std::string& key, const char* v) { add(key, std::string(v)); }

  const std::string& title() const { return title_; }
  bool has(const std::string& key) const;
  double get_double(const std::string& key) const;

  void print_flat(std::ostream& os) const;
  nlohmann::ordered_json to_json() const;

 private:
  std::string title_;
  std::vector<std::pair<std::string, std::string>> header_;
  std::vector<std::pair<std::string, Value>> entries_;
};

}  // namespace biortho
