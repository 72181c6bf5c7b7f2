#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "pfab/metrics.hpp"

namespace pfab::harness {

using LabelledCurve = std::pair<std::string, AggregateCurve>;

// Reads a curve CSV written by the harness.
AggregateCurve read_curve_csv(const std::filesystem::path& path);

// Line chart of mean cumulative regret against step, one line per curve.
std::string render_svg(const std::vector<LabelledCurve>& curves, const std::string& title);

}  // namespace pfab::harness
