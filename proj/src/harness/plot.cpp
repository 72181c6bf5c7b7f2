#include "pfab/harness/plot.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "pfab/errors.hpp"
#include "pfab/harness/experiment.hpp"

namespace pfab::harness {

AggregateCurve read_curve_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot read {}", path.string()));
  std::string line;
  if (!std::getline(in, line) || line != kCurveHeader) {
    throw ParseError(fmt::format("{}: not a curve CSV (bad header)", path.string()));
  }
  AggregateCurve curve;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string step, mean, err, reps;
    if (!std::getline(row, step, ',') || !std::getline(row, mean, ',') || !std::getline(row, err, ',') ||
        !std::getline(row, reps)) {
      throw ParseError(fmt::format("{}: malformed row '{}'", path.string(), line));
    }
    try {
      curve.steps.push_back(std::stoull(step));
      curve.mean.push_back(std::stod(mean));
      curve.std_error.push_back(std::stod(err));
      curve.replications = std::stoull(reps);
    } catch (const std::exception&) {
      throw ParseError(fmt::format("{}: malformed row '{}'", path.string(), line));
    }
  }
  return curve;
}

std::string render_svg(const std::vector<LabelledCurve>& curves, const std::string& title) {
  constexpr double kWidth = 720, kHeight = 460, kLeft = 70, kRight = 200, kTop = 40, kBottom = 50;
  constexpr std::array<const char*, 6> kColors{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  double max_x = 1, max_y = 1e-12;
  for (const auto& [_, c] : curves) {
    if (!c.steps.empty()) max_x = std::max(max_x, static_cast<double>(c.steps.back()));
    for (double y : c.mean) max_y = std::max(max_y, y);
  }
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto sx = [&](double x) { return kLeft + x / max_x * plot_w; };
  const auto sy = [&](double y) { return kTop + plot_h - y / max_y * plot_h; };

  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" font-family=\"sans-serif\" "
      "font-size=\"12\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      kWidth, kHeight);
  svg += fmt::format("<text x=\"{}\" y=\"22\" font-size=\"15\">{}</text>\n", kLeft, title);
  svg += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n", kLeft, kTop + plot_h,
                     kLeft + plot_w);
  svg += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n", kLeft, kTop,
                     kTop + plot_h);
  for (int i = 0; i <= 4; ++i) {
    const double x = max_x * i / 4, y = max_y * i / 4;
    svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{:.0f}</text>\n", sx(x), kTop + plot_h + 18, x);
    svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{:.4g}</text>\n", kLeft - 6, sy(y) + 4, y);
  }
  svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">step</text>\n", kLeft + plot_w / 2,
                     kHeight - 10);
  svg += fmt::format("<text x=\"16\" y=\"{0}\" transform=\"rotate(-90 16 {0})\" text-anchor=\"middle\">mean "
                     "cumulative regret</text>\n",
                     kTop + plot_h / 2);
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto& [label, c] = curves[i];
    const char* color = kColors[i % kColors.size()];
    std::string points = fmt::format("{:.2f},{:.2f}", sx(0), sy(0));
    for (std::size_t j = 0; j < c.steps.size(); ++j) {
      points += fmt::format(" {:.2f},{:.2f}", sx(static_cast<double>(c.steps[j])), sy(c.mean[j]));
    }
    svg += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n", color, points);
    const double ly = kTop + 16 + 18 * static_cast<double>(i);
    svg += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"{3}\" stroke-width=\"2\"/>\n",
                       kWidth - kRight + 12, ly, kWidth - kRight + 32, color);
    svg += fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", kWidth - kRight + 38, ly + 4, label);
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace pfab::harness
