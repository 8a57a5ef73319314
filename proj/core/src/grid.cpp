#include "vre/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vre {

void GridSpec::validate() const {
    if (n_rows < 1 || n_cols < 1) {
        throw InvalidInputError("GridSpec: n_rows and n_cols must be >= 1");
    }
    if (!(cell_size > 0.0)) {
        throw InvalidInputError("GridSpec: cell_size must be > 0");
    }
}

bool GridSpec::aligned_with(const GridSpec& other) const {
    return n_rows == other.n_rows && n_cols == other.n_cols &&
           cell_size == other.cell_size && origin_x == other.origin_x &&
           origin_y == other.origin_y;
}

void require_aligned(const GridSpec& a, const GridSpec& b, const std::string& context) {
    if (!a.aligned_with(b)) {
        throw AlignmentError(context + ": grids are not aligned");
    }
}

NumericGrid::NumericGrid(GridSpec spec, double fill) : spec_(std::move(spec)) {
    spec_.validate();
    values_.assign(spec_.size(), fill);
}

Mask::Mask(GridSpec spec, bool fill) : spec_(std::move(spec)) {
    spec_.validate();
    values_.assign(spec_.size(), fill ? 1 : 0);
}

std::size_t Mask::count() const {
    return static_cast<std::size_t>(
        std::count(values_.begin(), values_.end(), std::uint8_t{1}));
}

Mask Mask::unite(const Mask& other) const {
    require_aligned(spec_, other.spec_, "Mask::unite");
    Mask out(spec_);
    for (std::size_t i = 0; i < values_.size(); ++i) {
        out.values_[i] = (values_[i] | other.values_[i]) ? 1 : 0;
    }
    return out;
}

Mask Mask::intersect(const Mask& other) const {
    require_aligned(spec_, other.spec_, "Mask::intersect");
    Mask out(spec_);
    for (std::size_t i = 0; i < values_.size(); ++i) {
        out.values_[i] = (values_[i] & other.values_[i]) ? 1 : 0;
    }
    return out;
}

Mask Mask::subtract(const Mask& other) const {
    require_aligned(spec_, other.spec_, "Mask::subtract");
    Mask out(spec_);
    for (std::size_t i = 0; i < values_.size(); ++i) {
        out.values_[i] = (values_[i] && !other.values_[i]) ? 1 : 0;
    }
    return out;
}

bool Mask::subset_of(const Mask& other) const {
    require_aligned(spec_, other.spec_, "Mask::subset_of");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i] && !other.values_[i]) return false;
    }
    return true;
}

CategoricalGrid::CategoricalGrid(GridSpec spec, int fill) : spec_(std::move(spec)) {
    spec_.validate();
    values_.assign(spec_.size(), fill);
}

void CategoricalGrid::set(std::size_t i, int code) { values_[i] = code; }

void CategoricalGrid::validate_legend() const {
    for (int code : values_) {
        if (code != kNodata && legend_.find(code) == legend_.end()) {
            throw DataError("CategoricalGrid: code " + std::to_string(code) +
                            " missing from legend");
        }
    }
}

namespace {

// Clamped sampling with replicated borders.
inline double dem_at(const NumericGrid& dem, long r, long c) {
    const auto& s = dem.spec();
    r = std::clamp<long>(r, 0, static_cast<long>(s.n_rows) - 1);
    c = std::clamp<long>(c, 0, static_cast<long>(s.n_cols) - 1);
    return dem.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
}

inline bool window_has_nodata(const NumericGrid& dem, long r, long c) {
    const auto& s = dem.spec();
    for (long dr = -1; dr <= 1; ++dr) {
        for (long dc = -1; dc <= 1; ++dc) {
            long rr = std::clamp<long>(r + dr, 0, static_cast<long>(s.n_rows) - 1);
            long cc = std::clamp<long>(c + dc, 0, static_cast<long>(s.n_cols) - 1);
            if (dem.is_nodata(s.index(static_cast<std::size_t>(rr),
                                      static_cast<std::size_t>(cc)))) {
                return true;
            }
        }
    }
    return false;
}

}  // namespace

NumericGrid compute_slope(const NumericGrid& dem) {
    const GridSpec& s = dem.spec();
    s.validate();
    NumericGrid out(s);
    const double cs = s.cell_size;

    for (long r = 0; r < static_cast<long>(s.n_rows); ++r) {
        for (long c = 0; c < static_cast<long>(s.n_cols); ++c) {
            const std::size_t i = s.index(static_cast<std::size_t>(r),
                                          static_cast<std::size_t>(c));
            if (window_has_nodata(dem, r, c)) {
                out[i] = out.nodata();
                continue;
            }
            const double a = dem_at(dem, r - 1, c - 1), b = dem_at(dem, r - 1, c),
                         cc = dem_at(dem, r - 1, c + 1), d = dem_at(dem, r, c - 1),
                         f = dem_at(dem, r, c + 1), g = dem_at(dem, r + 1, c - 1),
                         h = dem_at(dem, r + 1, c), ii = dem_at(dem, r + 1, c + 1);
            const double dzdx = ((cc + 2.0 * f + ii) - (a + 2.0 * d + g)) / (8.0 * cs);
            const double dzdy = ((g + 2.0 * h + ii) - (a + 2.0 * b + cc)) / (8.0 * cs);
            out[i] = std::atan(std::hypot(dzdx, dzdy)) * 180.0 / M_PI;
        }
    }
    return out;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Large finite stand-in for "no seed": keeps the parabola intersections
// finite so the hull bookkeeping below never underflows.
constexpr double kFar = 1e30;

// 1-D squared distance transform of a sampled function (Felzenszwalb &
// Huttenlocher 2012).
void edt_1d(const std::vector<double>& f, std::vector<double>& d,
            std::vector<int>& v, std::vector<double>& z) {
    const int n = static_cast<int>(f.size());
    int k = 0;
    v[0] = 0;
    z[0] = -kInf;
    z[1] = kInf;
    for (int q = 1; q < n; ++q) {
        double s;
        while (true) {
            s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2.0 * q - 2.0 * v[k]);
            if (s <= z[k]) {
                --k;
            } else {
                break;
            }
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = kInf;
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < q) ++k;
        d[q] = (q - v[k]) * (q - v[k]) + f[v[k]];
    }
}

}  // namespace

std::vector<double> squared_distance_transform(const Mask& m) {
    const GridSpec& s = m.spec();
    const std::size_t nr = s.n_rows, nc = s.n_cols;
    std::vector<double> dist(s.size());
    for (std::size_t i = 0; i < dist.size(); ++i) {
        dist[i] = m.get(i) ? 0.0 : kFar;
    }

    const std::size_t nmax = std::max(nr, nc);
    std::vector<double> f(nmax), d(nmax), z(nmax + 1);
    std::vector<int> v(nmax);

    // columns
    for (std::size_t c = 0; c < nc; ++c) {
        f.resize(nr);
        d.resize(nr);
        for (std::size_t r = 0; r < nr; ++r) f[r] = dist[r * nc + c];
        edt_1d(f, d, v, z);
        for (std::size_t r = 0; r < nr; ++r) dist[r * nc + c] = d[r];
    }
    // rows
    for (std::size_t r = 0; r < nr; ++r) {
        f.resize(nc);
        d.resize(nc);
        for (std::size_t c = 0; c < nc; ++c) f[c] = dist[r * nc + c];
        edt_1d(f, d, v, z);
        for (std::size_t c = 0; c < nc; ++c) dist[r * nc + c] = d[c];
    }
    const double cs2 = s.cell_size * s.cell_size;
    for (double& x : dist) x = x >= kFar ? kInf : x * cs2;
    return dist;
}

Mask buffer_mask(const Mask& m, double distance_m) {
    if (distance_m < 0.0) {
        throw InvalidInputError("buffer_mask: distance must be >= 0");
    }
    if (distance_m == 0.0 || m.count() == 0) return m;
    const std::vector<double> d2 = squared_distance_transform(m);
    const double limit = distance_m * distance_m;
    Mask out(m.spec());
    for (std::size_t i = 0; i < d2.size(); ++i) {
        out.set(i, d2[i] <= limit);
    }
    return out;
}

namespace {

// Nearest source index for each target cell, or npos where the target cell
// centre lies outside the source extent (half a cell beyond the outer
// centres).
std::vector<std::size_t> nearest_indices(const GridSpec& src, const GridSpec& tgt) {
    tgt.validate();
    src.validate();
    const double half = src.cell_size / 2.0;
    const double x_min = src.origin_x - half;
    const double x_max = src.origin_x + (static_cast<double>(src.n_cols) - 1) * src.cell_size + half;
    const double y_min = src.origin_y - half;
    const double y_max = src.origin_y + (static_cast<double>(src.n_rows) - 1) * src.cell_size + half;

    constexpr auto npos = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> map(tgt.size(), npos);
    bool any = false;
    for (std::size_t r = 0; r < tgt.n_rows; ++r) {
        const double y = tgt.cell_y(r);
        for (std::size_t c = 0; c < tgt.n_cols; ++c) {
            const double x = tgt.cell_x(c);
            if (x < x_min || x > x_max || y < y_min || y > y_max) continue;
            long sc = std::lround((x - src.origin_x) / src.cell_size);
            long sr_from_bottom = std::lround((y - src.origin_y) / src.cell_size);
            sc = std::clamp<long>(sc, 0, static_cast<long>(src.n_cols) - 1);
            sr_from_bottom = std::clamp<long>(sr_from_bottom, 0, static_cast<long>(src.n_rows) - 1);
            const std::size_t sr = src.n_rows - 1 - static_cast<std::size_t>(sr_from_bottom);
            map[tgt.index(r, c)] = src.index(sr, static_cast<std::size_t>(sc));
            any = true;
        }
    }
    if (!any) {
        throw InvalidInputError("resample_nearest: target does not overlap source extent");
    }
    return map;
}

constexpr auto kNpos = std::numeric_limits<std::size_t>::max();

}  // namespace

NumericGrid resample_nearest(const NumericGrid& g, const GridSpec& target) {
    const auto map = nearest_indices(g.spec(), target);
    NumericGrid out(target, g.nodata());
    out.set_nodata(g.nodata());
    for (std::size_t i = 0; i < map.size(); ++i) {
        if (map[i] != kNpos) out[i] = g[map[i]];
    }
    return out;
}

Mask resample_nearest(const Mask& g, const GridSpec& target) {
    const auto map = nearest_indices(g.spec(), target);
    Mask out(target);
    for (std::size_t i = 0; i < map.size(); ++i) {
        if (map[i] != kNpos) out.set(i, g.get(map[i]));
    }
    return out;
}

CategoricalGrid resample_nearest(const CategoricalGrid& g, const GridSpec& target) {
    const auto map = nearest_indices(g.spec(), target);
    CategoricalGrid out(target);
    for (std::size_t i = 0; i < map.size(); ++i) {
        if (map[i] != kNpos) out.set(i, g.get(map[i]));
    }
    for (const auto& [code, label] : g.legend()) out.define(code, label);
    return out;
}

}  // namespace vre
