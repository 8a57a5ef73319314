#pragma once

#include <string>
#include <vector>

#include "vre/econ.hpp"

namespace vre {

/// Deterministic SVG line plot of a supply curve: x in TWh, y in GBP/kWh.
/// Returns the SVG text; identical input yields identical bytes. An empty
/// curve renders an empty-plot placeholder.
std::string render_cost_curve_svg(const std::vector<CostCurvePoint>& curve,
                                  const std::string& title = "Cost curve");

/// Validates the curve CSV (non-decreasing cumulative column) and writes
/// the SVG next to it.
void emit_plot(const std::string& curve_csv_path, const std::string& svg_path);

}  // namespace vre
