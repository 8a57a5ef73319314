#include "vre/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "vre/csv.hpp"
#include "vre/errors.hpp"

namespace vre {

namespace {

constexpr double kWidth = 640.0, kHeight = 420.0;
constexpr double kMarginLeft = 70.0, kMarginRight = 20.0;
constexpr double kMarginTop = 40.0, kMarginBottom = 50.0;

std::string fmt(double v) { return csv::format_number(v); }

}  // namespace

std::string render_cost_curve_svg(const std::vector<CostCurvePoint>& curve,
                                  const std::string& title) {
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
        << "\">\n";
    svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

    const double x0 = kMarginLeft, x1 = kWidth - kMarginRight;
    const double y0 = kHeight - kMarginBottom, y1 = kMarginTop;
    svg << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1 << "\" y2=\"" << y0
        << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0 << "\" y2=\"" << y1
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << "Cumulative energy (TWh/yr)</text>\n";
    svg << "<text x=\"18\" y=\"" << (y0 + y1) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        << "transform=\"rotate(-90 18 " << (y0 + y1) / 2 << ")\">LCOE (GBP/kWh)</text>\n";

    if (curve.empty()) {
        svg << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << (y0 + y1) / 2
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
            << "(empty curve)</text>\n";
        svg << "</svg>\n";
        return svg.str();
    }

    double max_x = 0.0, max_y = 0.0;
    for (const auto& p : curve) {
        max_x = std::max(max_x, p.cumulative_twh);
        max_y = std::max(max_y, p.marginal_lcoe);
    }
    if (max_x <= 0.0) max_x = 1.0;
    if (max_y <= 0.0) max_y = 1.0;

    auto px = [&](double v) { return x0 + v / max_x * (x1 - x0); };
    auto py = [&](double v) { return y0 - v / max_y * (y0 - y1); };

    // Axis extrema labels keep the plot readable without a tick engine.
    svg << "<text x=\"" << x1 << "\" y=\"" << y0 + 16
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << fmt(max_x) << "</text>\n";
    svg << "<text x=\"" << x0 - 6 << "\" y=\"" << y1 + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << fmt(max_y) << "</text>\n";

    svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < curve.size(); ++i) {
        if (i) svg << ' ';
        svg << fmt(px(curve[i].cumulative_twh)) << ',' << fmt(py(curve[i].marginal_lcoe));
    }
    svg << "\"/>\n</svg>\n";
    return svg.str();
}

void emit_plot(const std::string& curve_csv_path, const std::string& svg_path) {
    const csv::Table t = csv::read_file(curve_csv_path);
    std::vector<CostCurvePoint> curve;
    if (!t.rows.empty()) {
        const std::size_t cc = t.column("cumulative_TWh");
        const std::size_t cl = t.column("lcoe_GBP_per_kWh");
        const std::size_t cs = t.column_or_npos("site_id");
        double prev = -std::numeric_limits<double>::infinity();
        for (const auto& row : t.rows) {
            CostCurvePoint p;
            p.cumulative_twh = csv::to_double(row.at(cc), curve_csv_path);
            p.marginal_lcoe = csv::to_double(row.at(cl), curve_csv_path);
            if (cs != csv::Table::npos) p.site_id = csv::to_long(row.at(cs), curve_csv_path);
            if (p.cumulative_twh < prev) {
                throw DataError(curve_csv_path + ": cumulative_TWh column is not monotone");
            }
            prev = p.cumulative_twh;
            curve.push_back(p);
        }
    }
    std::ofstream out(svg_path, std::ios::binary);
    if (!out) throw DataError("cannot write SVG '" + svg_path + "'");
    out << render_cost_curve_svg(curve);
}

}  // namespace vre
