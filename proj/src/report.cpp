#include "hua/error.hpp"
#include "hua/harness.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace hua::harness {

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string cell_text(const Cell& c) {
  if (std::holds_alternative<long long>(c))
    return std::to_string(std::get<long long>(c));
  if (std::holds_alternative<double>(c))
    return format_double(std::get<double>(c));
  if (std::holds_alternative<std::string>(c))
    return std::get<std::string>(c);
  return {};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"')
      out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string render_csv(const Report& report) {
  std::string out;
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    if (i)
      out += ',';
    out += csv_field(report.columns[i]);
  }
  out += "\r\n";
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i)
        out += ',';
      out += csv_field(cell_text(row[i]));
    }
    out += "\r\n";
  }
  return out;
}

std::string render_json(const Report& report) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Cell& c = row[i];
      const std::string& key = report.columns[i];
      if (std::holds_alternative<long long>(c))
        obj[key] = std::get<long long>(c);
      else if (std::holds_alternative<double>(c))
        obj[key] = std::get<double>(c);
      else if (std::holds_alternative<std::string>(c))
        obj[key] = std::get<std::string>(c);
      else
        obj[key] = nullptr;
    }
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

std::string render_text(const Report& report) {
  std::size_t width = 0;
  for (const auto& c : report.columns)
    width = std::max(width, c.size());
  std::ostringstream os;
  for (std::size_t r = 0; r < report.rows.size(); ++r) {
    if (r)
      os << '\n';
    for (std::size_t i = 0; i < report.columns.size(); ++i) {
      const std::string text = cell_text(report.rows[r][i]);
      os << report.columns[i] << std::string(width - report.columns[i].size(), ' ') << " = "
         << (text.empty() ? "-" : text) << '\n';
    }
  }
  return os.str();
}

} // namespace

std::string render(const Report& report, std::string_view format) {
  if (format == "csv")
    return render_csv(report);
  if (format == "json")
    return render_json(report);
  if (format == "text")
    return render_text(report);
  throw Error(Errc::ConfigError, "unknown output format '" + std::string(format) + "'");
}

void emit(const Report& report, std::string_view format, const std::string& path) {
  const std::string bytes = render(report, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error(Errc::IoError, "cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out)
    throw Error(Errc::IoError, "write to '" + path + "' failed");
}

int column_index(const Report& report, std::string_view name) noexcept {
  for (std::size_t i = 0; i < report.columns.size(); ++i)
    if (report.columns[i] == name)
      return static_cast<int>(i);
  return -1;
}

} // namespace hua::harness
