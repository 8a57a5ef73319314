#include "vre/fixture.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace vre {

namespace {

// splitmix64; uniforms derive from raw engine output so layers do not
// depend on library distribution internals.
std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double lattice_value(std::uint64_t seed, long gx, long gy) {
    const std::uint64_t h = mix(seed ^ mix(static_cast<std::uint64_t>(gx) * 0x517cc1b727220a95ULL ^
                                           static_cast<std::uint64_t>(gy) + 0x2545F4914F6CDD1DULL));
    return static_cast<double>(h >> 11) * (1.0 / 9007199254740992.0);
}

}  // namespace

NumericGrid value_noise(const GridSpec& spec, std::uint64_t seed, std::size_t lattice_step) {
    spec.validate();
    if (lattice_step < 1) lattice_step = 1;
    NumericGrid out(spec);
    const double step = static_cast<double>(lattice_step);
    for (std::size_t r = 0; r < spec.n_rows; ++r) {
        const double fy = static_cast<double>(r) / step;
        const long gy = static_cast<long>(std::floor(fy));
        const double ty = fy - static_cast<double>(gy);
        for (std::size_t c = 0; c < spec.n_cols; ++c) {
            const double fx = static_cast<double>(c) / step;
            const long gx = static_cast<long>(std::floor(fx));
            const double tx = fx - static_cast<double>(gx);
            const double v00 = lattice_value(seed, gx, gy);
            const double v10 = lattice_value(seed, gx + 1, gy);
            const double v01 = lattice_value(seed, gx, gy + 1);
            const double v11 = lattice_value(seed, gx + 1, gy + 1);
            const double a = v00 + (v10 - v00) * tx;
            const double b = v01 + (v11 - v01) * tx;
            out.at(r, c) = a + (b - a) * ty;
        }
    }
    return out;
}

SyntheticFixture generate_fixture(const GridSpec& spec, std::uint64_t seed) {
    spec.validate();
    SyntheticFixture fx;
    fx.spec = spec;

    const NumericGrid n_elev = value_noise(spec, mix(seed ^ 1), 16);
    const NumericGrid n_elev_fine = value_noise(spec, mix(seed ^ 2), 4);
    const NumericGrid n_irr = value_noise(spec, mix(seed ^ 3), 32);
    const NumericGrid n_wind = value_noise(spec, mix(seed ^ 4), 24);
    const NumericGrid n_scenic = value_noise(spec, mix(seed ^ 5), 12);
    const NumericGrid n_votes = value_noise(spec, mix(seed ^ 6), 2);
    const NumericGrid n_land = value_noise(spec, mix(seed ^ 7), 8);
    const NumericGrid n_ag = value_noise(spec, mix(seed ^ 8), 10);
    const NumericGrid n_prot = value_noise(spec, mix(seed ^ 9), 20);

    fx.dem = NumericGrid(spec);
    fx.irradiance_wm2 = NumericGrid(spec);
    fx.v10_ms = NumericGrid(spec);
    fx.scenicness = NumericGrid(spec);
    fx.votes = NumericGrid(spec);
    fx.latitude = NumericGrid(spec);
    fx.landuse = CategoricalGrid(spec);
    fx.ag_grades = AgGradeGrid(spec);
    fx.osm_positive = Mask(spec);
    fx.osm_negative = Mask(spec);
    fx.clc_positive = Mask(spec);
    fx.protected_areas = Mask(spec);
    fx.region_grid = CategoricalGrid(spec);

    const double nr = static_cast<double>(spec.n_rows);

    for (std::size_t r = 0; r < spec.n_rows; ++r) {
        // row 0 is north; latitude decreases southwards across a GB-like band
        const double north_frac = 1.0 - static_cast<double>(r) / std::max(1.0, nr - 1.0);
        for (std::size_t c = 0; c < spec.n_cols; ++c) {
            const std::size_t i = spec.index(r, c);

            fx.dem[i] = 650.0 * n_elev[i] * n_elev[i] + 60.0 * n_elev_fine[i];
            // mean power density; sunnier in the south
            fx.irradiance_wm2[i] = 100.0 + 30.0 * (1.0 - north_frac) + 15.0 * n_irr[i];
            // windier in the north and at elevation
            fx.v10_ms[i] = 4.0 + 4.5 * n_wind[i] + 2.0 * north_frac + fx.dem[i] / 400.0;
            // scenic uplands
            fx.scenicness[i] =
                std::clamp(1.0 + 9.0 * (0.55 * n_scenic[i] + 0.45 * n_elev[i]), 1.0, 10.0);
            fx.votes[i] = std::floor(n_votes[i] * 12.0);  // 0..11, some below 3
            fx.latitude[i] = 50.0 + 8.0 * north_frac;

            int code;
            const double u = n_land[i];
            if (u < 0.06) {
                code = 111;
            } else if (u < 0.14) {
                code = 112;
            } else if (u < 0.18) {
                code = 121;
            } else if (u < 0.42) {
                code = 211;
            } else if (u < 0.62) {
                code = 231;
            } else if (u < 0.74) {
                code = 311;
            } else if (u < 0.92) {
                code = 321;
            } else {
                code = 333;
            }
            fx.landuse.set(i, code);

            if (code == 211 || code == 231) {
                fx.ag_grades.set(i, 1 + static_cast<int>(std::floor(n_ag[i] * 5.0)) % 5);
            }

            const bool urban = code == 111 || code == 112 || code == 121;
            fx.osm_negative.set(i, urban);
            fx.osm_positive.set(i, !urban && u >= 0.18 && u < 0.30);
            fx.clc_positive.set(i, code == 211 || code == 231 || code == 321 || code == 333);
            fx.protected_areas.set(i, n_prot[i] > 0.88);
        }
    }

    fx.landuse.define(111, "continuous urban fabric");
    fx.landuse.define(112, "discontinuous urban fabric");
    fx.landuse.define(121, "industrial or commercial units");
    fx.landuse.define(211, "arable land");
    fx.landuse.define(231, "pasture");
    fx.landuse.define(311, "forest");
    fx.landuse.define(321, "natural grassland");
    fx.landuse.define(333, "sparsely vegetated");

    // Regions tile the grid in blocks of roughly equal size.
    const std::size_t blocks_x = std::max<std::size_t>(1, spec.n_cols / 25);
    const std::size_t blocks_y = std::max<std::size_t>(1, spec.n_rows / 25);
    const std::size_t bw = (spec.n_cols + blocks_x - 1) / blocks_x;
    const std::size_t bh = (spec.n_rows + blocks_y - 1) / blocks_y;
    const double cell_km2 = spec.cell_area() / 1e6;
    std::vector<long> cells_per_region(blocks_x * blocks_y, 0);
    for (std::size_t r = 0; r < spec.n_rows; ++r) {
        for (std::size_t c = 0; c < spec.n_cols; ++c) {
            const std::size_t rid = (r / bh) * blocks_x + (c / bw);
            fx.region_grid.set(spec.index(r, c), static_cast<int>(rid));
            ++cells_per_region[rid];
        }
    }
    for (std::size_t rid = 0; rid < cells_per_region.size(); ++rid) {
        char code[16];
        std::snprintf(code, sizeof(code), "E%08lu",
                      static_cast<unsigned long>(rid % 1000000 + 7000001));
        fx.region_grid.define(static_cast<int>(rid), code);
        LARegion region;
        region.code = code;
        region.name = "Synthetic LA " + std::to_string(rid + 1);
        region.area_km2 = static_cast<double>(cells_per_region[rid]) * cell_km2;
        fx.la_table.add(std::move(region));
    }

    return fx;
}

}  // namespace vre
