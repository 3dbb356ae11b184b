#include "stratfuse/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "stratfuse/errors.hpp"

namespace stratfuse::svg {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 50.0;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::string render_curve(const gdice::LearningCurve& curve, const std::string& title) {
  if (curve.empty()) throw ConfigError("render_curve: empty curve");

  double x_min = curve.front().iteration;
  double x_max = curve.back().iteration;
  if (x_max <= x_min) x_max = x_min + 1.0;
  double y_min = curve.front().iter_mean;
  double y_max = y_min;
  for (const gdice::CurvePoint& p : curve) {
    y_min = std::min({y_min, p.iter_mean - 1.96 * p.iter_stderr, p.best_so_far});
    y_max = std::max({y_max, p.iter_mean + 1.96 * p.iter_stderr, p.best_so_far});
  }
  if (y_max <= y_min) y_max = y_min + 1.0;

  auto sx = [&](double x) {
    return kMarginLeft + (x - x_min) / (x_max - x_min) * (kWidth - kMarginLeft - kMarginRight);
  };
  auto sy = [&](double y) {
    return kHeight - kMarginBottom -
           (y - y_min) / (y_max - y_min) * (kHeight - kMarginTop - kMarginBottom);
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << num(kWidth / 2) << "\" y=\"20\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";

  // Confidence band around the iteration mean.
  out << "<polygon fill=\"#9ecae1\" fill-opacity=\"0.5\" stroke=\"none\" points=\"";
  for (const gdice::CurvePoint& p : curve)
    out << num(sx(p.iteration)) << ',' << num(sy(p.iter_mean + 1.96 * p.iter_stderr)) << ' ';
  for (auto it = curve.rbegin(); it != curve.rend(); ++it)
    out << num(sx(it->iteration)) << ',' << num(sy(it->iter_mean - 1.96 * it->iter_stderr))
        << ' ';
  out << "\"/>\n";

  out << "<polyline id=\"iter_mean\" fill=\"none\" stroke=\"#3182bd\" stroke-width=\"1.5\" points=\"";
  for (const gdice::CurvePoint& p : curve)
    out << num(sx(p.iteration)) << ',' << num(sy(p.iter_mean)) << ' ';
  out << "\"/>\n";

  out << "<polyline id=\"best_so_far\" fill=\"none\" stroke=\"#e6550d\" stroke-width=\"1.5\" points=\"";
  for (const gdice::CurvePoint& p : curve)
    out << num(sx(p.iteration)) << ',' << num(sy(p.best_so_far)) << ' ';
  out << "\"/>\n";

  // Axes with end labels.
  out << "<line x1=\"" << num(kMarginLeft) << "\" y1=\"" << num(kHeight - kMarginBottom)
      << "\" x2=\"" << num(kWidth - kMarginRight) << "\" y2=\"" << num(kHeight - kMarginBottom)
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << num(kMarginLeft) << "\" y1=\"" << num(kMarginTop) << "\" x2=\""
      << num(kMarginLeft) << "\" y2=\"" << num(kHeight - kMarginBottom)
      << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << num(kMarginLeft) << "\" y=\"" << num(kHeight - kMarginBottom + 16)
      << "\" font-family=\"sans-serif\" font-size=\"11\">" << num(x_min) << "</text>\n";
  out << "<text x=\"" << num(kWidth - kMarginRight) << "\" y=\""
      << num(kHeight - kMarginBottom + 16)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << num(x_max)
      << "</text>\n";
  out << "<text x=\"" << num(kMarginLeft - 6) << "\" y=\"" << num(kHeight - kMarginBottom)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << num(y_min)
      << "</text>\n";
  out << "<text x=\"" << num(kMarginLeft - 6) << "\" y=\"" << num(kMarginTop + 4)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << num(y_max)
      << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace stratfuse::svg
