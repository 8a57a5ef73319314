#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "vre/errors.hpp"

namespace vre {

/// Spatial metadata shared by every raster layer. Coordinates are planar
/// metres; origin is the centre of the lower-left cell. Rows are stored
/// north-up (row 0 = northernmost), matching ESRI ASCII grid order.
struct GridSpec {
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    double cell_size = 0.0;
    double origin_x = 0.0;
    double origin_y = 0.0;
    std::string crs_label;

    void validate() const;
    std::size_t size() const { return n_rows * n_cols; }
    std::size_t index(std::size_t row, std::size_t col) const { return row * n_cols + col; }

    // Cell-centre coordinates. Row 0 is the top of the grid.
    double cell_x(std::size_t col) const { return origin_x + static_cast<double>(col) * cell_size; }
    double cell_y(std::size_t row) const {
        return origin_y + static_cast<double>(n_rows - 1 - row) * cell_size;
    }
    double cell_area() const { return cell_size * cell_size; }

    bool aligned_with(const GridSpec& other) const;
};

void require_aligned(const GridSpec& a, const GridSpec& b, const std::string& context);

class NumericGrid {
public:
    NumericGrid() = default;
    NumericGrid(GridSpec spec, double fill = 0.0);

    static constexpr double kDefaultNodata = -9999.0;

    const GridSpec& spec() const { return spec_; }
    double nodata() const { return nodata_; }
    void set_nodata(double v) { nodata_ = v; }

    double at(std::size_t row, std::size_t col) const { return values_[spec_.index(row, col)]; }
    double& at(std::size_t row, std::size_t col) { return values_[spec_.index(row, col)]; }
    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }

    bool is_nodata(std::size_t i) const { return values_[i] == nodata_; }
    std::size_t size() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

private:
    GridSpec spec_;
    std::vector<double> values_;
    double nodata_ = kDefaultNodata;
};

class Mask {
public:
    Mask() = default;
    explicit Mask(GridSpec spec, bool fill = false);

    const GridSpec& spec() const { return spec_; }
    bool at(std::size_t row, std::size_t col) const { return values_[spec_.index(row, col)] != 0; }
    void set(std::size_t row, std::size_t col, bool v) { values_[spec_.index(row, col)] = v ? 1 : 0; }
    bool get(std::size_t i) const { return values_[i] != 0; }
    void set(std::size_t i, bool v) { values_[i] = v ? 1 : 0; }
    std::size_t size() const { return values_.size(); }
    std::size_t count() const;

    // Set algebra; operands must be aligned.
    Mask unite(const Mask& other) const;
    Mask intersect(const Mask& other) const;
    Mask subtract(const Mask& other) const;
    bool subset_of(const Mask& other) const;

private:
    GridSpec spec_;
    std::vector<std::uint8_t> values_;
};

class CategoricalGrid {
public:
    static constexpr int kNodata = -1;

    CategoricalGrid() = default;
    explicit CategoricalGrid(GridSpec spec, int fill = kNodata);

    const GridSpec& spec() const { return spec_; }
    int at(std::size_t row, std::size_t col) const { return values_[spec_.index(row, col)]; }
    int get(std::size_t i) const { return values_[i]; }
    void set(std::size_t i, int code);
    void set(std::size_t row, std::size_t col, int code) { set(spec_.index(row, col), code); }
    std::size_t size() const { return values_.size(); }

    const std::map<int, std::string>& legend() const { return legend_; }
    void define(int code, std::string label) { legend_[code] = std::move(label); }

    /// Every non-nodata code must appear in the legend.
    void validate_legend() const;

private:
    GridSpec spec_;
    std::vector<int> values_;
    std::map<int, std::string> legend_;
};

/// Horn eight-neighbour slope estimate in degrees, border rows/cols
/// replicated so the study area does not shrink. Nodata propagates to any
/// cell whose 3x3 window touches a nodata value.
NumericGrid compute_slope(const NumericGrid& dem);

/// True where the Euclidean distance between cell centres to any true input
/// cell is <= distance. Exact two-pass squared distance transform.
Mask buffer_mask(const Mask& m, double distance_m);

NumericGrid resample_nearest(const NumericGrid& g, const GridSpec& target);
Mask resample_nearest(const Mask& g, const GridSpec& target);
CategoricalGrid resample_nearest(const CategoricalGrid& g, const GridSpec& target);

/// Squared distance (in metres^2) from every cell centre to the nearest true
/// cell centre; infinity where the mask is empty along the reachable set.
std::vector<double> squared_distance_transform(const Mask& m);

}  // namespace vre
