#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sketchlab {

// Scalar serialization used by every report: numbers print as their shortest
// round-trip decimal form, so equal doubles always produce equal bytes.
std::string json_number(double v);
std::string json_number(std::uint64_t v);
std::string json_number(std::int64_t v);
std::string json_bool(bool v);
std::string json_string(std::string_view s);

// A flat, ordered record: field order is insertion order, in JSON and CSV
// alike.  Values are stored already serialized as JSON fragments.
struct Record {
  std::vector<std::pair<std::string, std::string>> fields;

  void add_raw(std::string name, std::string serialized);
  void add(std::string name, double v);
  void add(std::string name, std::uint64_t v);  // also covers std::size_t
  void add(std::string name, std::int64_t v);
  void add(std::string name, bool v);
  void add(std::string name, std::string_view v);
  void add(std::string name, const char* v);
  void add(std::string name, std::span<const double> v);
  void add(std::string name, std::span<const std::size_t> v);

  const std::string* find(std::string_view name) const;
  std::string json_line() const;  // {"name":value,...}
};

// One JSON object per line, in record order.
std::string emit_json(std::span<const Record> records);

// Header row from the first record's field names (or `header` when there are
// no records); every record must have the same fields in the same order
// (std::invalid_argument otherwise).  Cells hold the JSON fragment for the
// value, quoted per CSV rules when needed.
std::string emit_csv(std::span<const Record> records,
                     std::span<const std::string> header = {});

void write_text_file(const std::string& path, std::string_view content);

}  // namespace sketchlab
