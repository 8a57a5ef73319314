#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "vre/grid.hpp"

namespace vre {

/// ESRI ASCII grid (ncols/nrows/xllcorner/yllcorner/cellsize/NODATA_value
/// header, row-major north-up body). Values are printed with 6 significant
/// digits and round-trip bit-exactly at that precision.
NumericGrid read_ascii_grid(const std::string& path);
NumericGrid read_ascii_grid_stream(std::istream& in, const std::string& name);
void write_ascii_grid(const NumericGrid& g, const std::string& path);
void write_ascii_grid_stream(const NumericGrid& g, std::ostream& out);

CategoricalGrid read_ascii_categorical(const std::string& path);
void write_ascii_categorical(const CategoricalGrid& g, const std::string& path);

struct PointSample {
    double x = 0.0;
    double y = 0.0;
    double value = 0.0;
    long votes = 1;
};

/// Point layer CSV with columns x,y,value[,votes].
std::vector<PointSample> read_point_csv(const std::string& path);

/// Rasterize point samples onto a grid: each cell takes the mean of the
/// samples falling inside it; vote counts accumulate into `votes_out`.
/// Cells with no sample are nodata (value) / zero (votes).
NumericGrid rasterize_points(const std::vector<PointSample>& pts, const GridSpec& spec,
                             NumericGrid* votes_out = nullptr);

}  // namespace vre
