#pragma once

#include <string>
#include <vector>

#include "stratfuse/gdice.hpp"

namespace stratfuse::csv {

// Shortest exact decimal form (17 significant digits): round-trips doubles.
std::string format_double(double v);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

// Learning-curve files: a '#'-prefixed provenance comment, then
//   iteration,best_so_far,iter_mean,iter_stderr
void write_curve(const std::string& path, const gdice::LearningCurve& curve,
                 const std::string& comment);

// Parses a curve file; malformed content raises ParseError with the line.
gdice::LearningCurve read_curve(const std::string& path);

}  // namespace stratfuse::csv
