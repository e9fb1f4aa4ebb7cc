#include "cvbound/csv.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace cvbound {

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_number(const std::string& s, std::size_t line_no) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    fail(Errc::IoError, "line " + std::to_string(line_no) + ": '" + s + "' is not a number");
  }
  return v;
}

}  // namespace

Dataset read_dataset_csv(const std::string& path, Ordering ordering) {
  std::ifstream in(path);
  if (!in) fail(Errc::IoError, "cannot open dataset file '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) fail(Errc::IoError, "dataset file '" + path + "' is empty");
  const auto header = split_line(line);
  if (header.empty() || header[0] != "y") {
    fail(Errc::IoError, "line 1: missing `y` column (header must be y,x1,..,xp)");
  }
  const std::size_t p = header.size() - 1;
  if (p < 1) fail(Errc::IoError, "line 1: need at least one predictor column x1");
  for (std::size_t k = 1; k < header.size(); ++k) {
    const std::string expected = "x" + std::to_string(k);
    if (header[k] != expected) {
      fail(Errc::IoError, "line 1: expected column '" + expected + "', got '" + header[k] + "'");
    }
  }

  std::vector<double> y, x;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_line(line);
    if (fields.size() != p + 1) {
      fail(Errc::IoError, "line " + std::to_string(line_no) + ": expected " +
                              std::to_string(p + 1) + " fields, got " +
                              std::to_string(fields.size()));
    }
    y.push_back(parse_number(fields[0], line_no));
    for (std::size_t k = 1; k <= p; ++k) x.push_back(parse_number(fields[k], line_no));
  }
  return Dataset::validated(std::move(y), std::move(x), p, ordering);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::IoError, "cannot write file '" + path + "'");
  out << content;
  if (!out) fail(Errc::IoError, "write failed for '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::IoError, "cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace cvbound
