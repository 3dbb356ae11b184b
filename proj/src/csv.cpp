#include "stratfuse/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "stratfuse/errors.hpp"

namespace stratfuse::csv {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << bytes;
  if (!out) throw IoError("write failed for '" + path + "'");
}

void write_curve(const std::string& path, const gdice::LearningCurve& curve,
                 const std::string& comment) {
  std::ostringstream out;
  out << "# " << comment << "\n";
  out << "iteration,best_so_far,iter_mean,iter_stderr\n";
  for (const gdice::CurvePoint& p : curve) {
    out << p.iteration << ',' << format_double(p.best_so_far) << ','
        << format_double(p.iter_mean) << ',' << format_double(p.iter_stderr) << '\n';
  }
  write_file(path, out.str());
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.push_back(field);
  return fields;
}

double parse_number(const std::string& field, std::size_t line_no) {
  char* end = nullptr;
  double v = std::strtod(field.c_str(), &end);
  if (field.empty() || end != field.c_str() + field.size())
    throw ParseError("expected a number, got '" + field + "'", line_no);
  return v;
}

}  // namespace

gdice::LearningCurve read_curve(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");

  gdice::LearningCurve curve;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != "iteration,best_so_far,iter_mean,iter_stderr")
        throw ParseError("unexpected curve header '" + line + "'", line_no);
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields = split_fields(line);
    if (fields.size() != 4) throw ParseError("expected 4 fields", line_no);
    gdice::CurvePoint p;
    p.iteration = static_cast<int>(parse_number(fields[0], line_no));
    p.best_so_far = parse_number(fields[1], line_no);
    p.iter_mean = parse_number(fields[2], line_no);
    p.iter_stderr = parse_number(fields[3], line_no);
    curve.push_back(p);
  }
  if (!header_seen) throw ParseError("empty curve file", line_no == 0 ? 1 : line_no);
  if (curve.empty()) throw ParseError("curve file has no data rows", line_no);
  return curve;
}

}  // namespace stratfuse::csv
