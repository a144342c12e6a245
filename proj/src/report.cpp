#include "biortho/report.hpp"

#include <stdexcept>

#include "biortho/common.hpp"

namespace biortho {

namespace {

std::string value_to_string(const Report::Value& v) {
  if (std::holds_alternative<double>(v)) return fmt_g17(std::get<double>(v));
  if (std::holds_alternative<std::int64_t>(v)) return std::to_string(std::get<std::int64_t>(v));
  if (std::holds_alternative<bool>(v)) return std::get<bool>(v) ? "true" : "false";
  return std::get<std::string>(v);
}

}  // namespace

void Report::header(const std::string& key, const std::string& value) {
  header_.emplace_back(key, value);
}

void Report::add(const std::string& key, double v) { entries_.emplace_back(key, Value(v)); }
void Report::add(const std::string& key, std::int64_t v) { entries_.emplace_back(key, Value(v)); }
void Report::add(const std::string& key, bool v) { entries_.emplace_back(key, Value(v)); }
void Report::add(const std::string& key, const std::string& v) {
  entries_.emplace_back(key, Value(v));
}

bool Report::has(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return true;
  }
  return false;
}

double Report::get_double(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k != key) continue;
    if (std::holds_alternative<double>(v)) return std::get<double>(v);
    if (std::holds_alternative<std::int64_t>(v)) {
      return static_cast<double>(std::get<std::int64_t>(v));
    }
    throw std::out_of_range("report key is not numeric: " + key);
  }
  throw std::out_of_range("report key not found: " + key);
}

void Report::print_flat(std::ostream& os) const {
  os << "# report = " << title_ << "\n";
  for (const auto& [k, v] : header_) {
    os << "# " << k << " = " << v << "\n";
  }
  os << "# ===\n";
  for (const auto& [k, v] : entries_) {
    os << k << " = " << value_to_string(v) << "\n";
  }
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json header;
  header["report"] = title_;
  for (const auto& [k, v] : header_) header[k] = v;

  nlohmann::ordered_json body;
  for (const auto& [k, v] : entries_) {
    if (std::holds_alternative<double>(v)) {
      body[k] = std::get<double>(v);
    } else if (std::holds_alternative<std::int64_t>(v)) {
      body[k] = std::get<std::int64_t>(v);
    } else if (std::holds_alternative<bool>(v)) {
      body[k] = std::get<bool>(v);
    } else {
      body[k] = std::get<std::string>(v);
    }
  }

  nlohmann::ordered_json out;
  out["header"] = std::move(header);
  out["report"] = std::move(body);
  return out;
}

}  // namespace biortho
