#pragma once

#include <string>

#include "stratfuse/gdice.hpp"

namespace stratfuse::svg {

// Line chart of a learning curve: iteration mean with a shaded band of
// +/- 1.96 standard errors, plus the best-so-far line.  A pure function of
// its arguments - identical input produces identical bytes.
std::string render_curve(const gdice::LearningCurve& curve, const std::string& title);

}  // namespace stratfuse::svg
