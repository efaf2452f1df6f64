#include "sketchlab/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace sketchlab {

std::string json_number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string json_number(std::uint64_t v) {
  char buf[24];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string json_number(std::int64_t v) {
  char buf[24];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string json_bool(bool v) { return v ? "true" : "false"; }

std::string json_string(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  out.push_back('"');
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char esc[8];
          std::snprintf(esc, sizeof esc, "\\u%04x", c);
          out += esc;
        } else {
          out.push_back(c);
        }
    }
  }
  out.push_back('"');
  return out;
}

void Record::add_raw(std::string name, std::string serialized) {
  fields.emplace_back(std::move(name), std::move(serialized));
}

void Record::add(std::string name, double v) {
  add_raw(std::move(name), json_number(v));
}
void Record::add(std::string name, std::uint64_t v) {
  add_raw(std::move(name), json_number(v));
}
void Record::add(std::string name, std::int64_t v) {
  add_raw(std::move(name), json_number(v));
}
void Record::add(std::string name, bool v) {
  add_raw(std::move(name), json_bool(v));
}
void Record::add(std::string name, std::string_view v) {
  add_raw(std::move(name), json_string(v));
}
void Record::add(std::string name, const char* v) {
  add_raw(std::move(name), json_string(v));
}
void Record::add(std::string name, std::span<const double> v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s.push_back(',');
    s += json_number(v[i]);
  }
  s.push_back(']');
  add_raw(std::move(name), std::move(s));
}
void Record::add(std::string name, std::span<const std::size_t> v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s.push_back(',');
    s += json_number(static_cast<std::uint64_t>(v[i]));
  }
  s.push_back(']');
  add_raw(std::move(name), std::move(s));
}

const std::string* Record::find(std::string_view name) const {
  for (const auto& [k, v] : fields)
    if (k == name) return &v;
  return nullptr;
}

std::string Record::json_line() const {
  std::string out = "{";
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    out += json_string(fields[i].first);
    out.push_back(':');
    out += fields[i].second;
  }
  out.push_back('}');
  return out;
}

std::string emit_json(std::span<const Record> records) {
  std::string out;
  for (const Record& r : records) {
    out += r.json_line();
    out.push_back('\n');
  }
  return out;
}

namespace {

std::string csv_cell(std::string_view v) {
  const bool needs_quote =
      v.find_first_of(",\"\n\r") != std::string_view::npos;
  if (!needs_quote) return std::string(v);
  std::string out = "\"";
  for (const char c : v) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::string emit_csv(std::span<const Record> records,
                     std::span<const std::string> header) {
  std::string out;
  if (records.empty()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) out.push_back(',');
      out += csv_cell(header[i]);
    }
    if (!header.empty()) out.push_back('\n');
    return out;
  }
  const Record& head = records.front();
  for (std::size_t i = 0; i < head.fields.size(); ++i) {
    if (i) out.push_back(',');
    out += csv_cell(head.fields[i].first);
  }
  out.push_back('\n');
  for (const Record& r : records) {
    if (r.fields.size() != head.fields.size())
      throw std::invalid_argument("csv: records disagree on schema");
    for (std::size_t i = 0; i < r.fields.size(); ++i) {
      if (r.fields[i].first != head.fields[i].first)
        throw std::invalid_argument("csv: records disagree on schema");
      if (i) out.push_back(',');
      out += csv_cell(r.fields[i].second);
    }
    out.push_back('\n');
  }
  return out;
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace sketchlab
