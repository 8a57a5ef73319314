#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "vre/errors.hpp"
#include "vre/grid.hpp"

using namespace vre;
using testsup::Rng;
using testsup::make_spec;
using testsup::random_mask;

TEST_CASE("GridSpec validation and alignment") {
    GridSpec s = make_spec(4, 5, 100.0);
    CHECK_NOTHROW(s.validate());

    GridSpec bad = s;
    bad.cell_size = 0.0;
    CHECK_THROWS_AS(bad.validate(), InvalidInputError);
    bad = s;
    bad.n_rows = 0;
    CHECK_THROWS_AS(bad.validate(), InvalidInputError);

    GridSpec other = s;
    CHECK(s.aligned_with(other));
    other.origin_x = 50.0;
    CHECK_FALSE(s.aligned_with(other));
    CHECK_THROWS_AS(require_aligned(s, other, "test"), AlignmentError);
}

TEST_CASE("GridSpec cell coordinates: row 0 is north") {
    GridSpec s = make_spec(3, 2, 10.0);
    s.origin_x = 100.0;
    s.origin_y = 200.0;
    CHECK(s.cell_x(0) == doctest::Approx(100.0));
    CHECK(s.cell_x(1) == doctest::Approx(110.0));
    CHECK(s.cell_y(2) == doctest::Approx(200.0));  // bottom row
    CHECK(s.cell_y(0) == doctest::Approx(220.0));  // top row
}

TEST_CASE("compute_slope: flat DEM gives zero everywhere") {
    NumericGrid dem(make_spec(8, 8, 1.0), 100.0);
    const NumericGrid slope = compute_slope(dem);
    for (std::size_t i = 0; i < slope.size(); ++i) {
        CHECK(slope[i] == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("compute_slope: unit plane gives 45 degrees in the interior") {
    GridSpec s = make_spec(10, 10, 1.0);
    NumericGrid dem(s);
    for (std::size_t r = 0; r < s.n_rows; ++r) {
        for (std::size_t c = 0; c < s.n_cols; ++c) {
            dem.at(r, c) = static_cast<double>(c) * 1.0;  // z = x
        }
    }
    const NumericGrid slope = compute_slope(dem);
    for (std::size_t r = 1; r + 1 < s.n_rows; ++r) {
        for (std::size_t c = 1; c + 1 < s.n_cols; ++c) {
            CHECK(slope.at(r, c) == doctest::Approx(45.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("compute_slope: plane at the 15-degree PV boundary") {
    GridSpec s = make_spec(10, 10, 1.0);
    NumericGrid dem(s);
    const double k = std::tan(15.0 * M_PI / 180.0);
    for (std::size_t r = 0; r < s.n_rows; ++r) {
        for (std::size_t c = 0; c < s.n_cols; ++c) {
            dem.at(r, c) = static_cast<double>(c) * k;
        }
    }
    const NumericGrid slope = compute_slope(dem);
    CHECK(slope.at(5, 5) == doctest::Approx(15.0).epsilon(1e-6));
}

TEST_CASE("compute_slope: nodata propagates through the 3x3 window") {
    GridSpec s = make_spec(5, 5, 1.0);
    NumericGrid dem(s, 10.0);
    dem.at(2, 2) = dem.nodata();
    const NumericGrid slope = compute_slope(dem);
    for (std::size_t r = 1; r <= 3; ++r) {
        for (std::size_t c = 1; c <= 3; ++c) {
            CHECK(slope.is_nodata(s.index(r, c)));
        }
    }
    CHECK_FALSE(slope.is_nodata(s.index(0, 0)));
}

TEST_CASE("compute_slope invariances on random DEMs") {
    Rng rng(99);
    GridSpec s = make_spec(12, 12, 30.0);
    NumericGrid dem(s);
    for (std::size_t i = 0; i < dem.size(); ++i) dem[i] = rng.uniform(0.0, 400.0);

    SUBCASE("adding a constant leaves slope unchanged") {
        NumericGrid shifted = dem;
        for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] += 123.456;
        const NumericGrid a = compute_slope(dem);
        const NumericGrid b = compute_slope(shifted);
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-9));
        }
    }

    SUBCASE("z-scaling by k scales tan(slope) by k") {
        const double k = 2.5;
        NumericGrid scaled = dem;
        for (std::size_t i = 0; i < scaled.size(); ++i) scaled[i] *= k;
        const NumericGrid a = compute_slope(dem);
        const NumericGrid b = compute_slope(scaled);
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double ta = std::tan(a[i] * M_PI / 180.0);
            const double tb = std::tan(b[i] * M_PI / 180.0);
            CHECK(tb == doctest::Approx(k * ta).epsilon(1e-9));
        }
    }
}

namespace {

// O(N^2) all-pairs oracle for buffer_mask.
Mask brute_force_buffer(const Mask& m, double distance) {
    const GridSpec& s = m.spec();
    Mask out(s);
    const double d2 = distance * distance;
    for (std::size_t r = 0; r < s.n_rows; ++r) {
        for (std::size_t c = 0; c < s.n_cols; ++c) {
            bool hit = false;
            for (std::size_t rr = 0; rr < s.n_rows && !hit; ++rr) {
                for (std::size_t cc = 0; cc < s.n_cols; ++cc) {
                    if (!m.at(rr, cc)) continue;
                    const double dx = (static_cast<double>(cc) - static_cast<double>(c)) * s.cell_size;
                    const double dy = (static_cast<double>(rr) - static_cast<double>(r)) * s.cell_size;
                    if (dx * dx + dy * dy <= d2) {
                        hit = true;
                        break;
                    }
                }
            }
            out.set(s.index(r, c), hit);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("buffer_mask: identity at distance zero, empty stays empty") {
    Rng rng(5);
    GridSpec s = make_spec(16, 16, 100.0);
    const Mask m = random_mask(rng, s, 0.3);
    const Mask same = buffer_mask(m, 0.0);
    for (std::size_t i = 0; i < m.size(); ++i) CHECK(same.get(i) == m.get(i));

    const Mask empty(s);
    const Mask still_empty = buffer_mask(empty, 5000.0);
    CHECK(still_empty.count() == 0);

    CHECK_THROWS_AS(buffer_mask(m, -1.0), InvalidInputError);
}

TEST_CASE("buffer_mask: single seed at 350 m on a 100 m grid covers 37 cells") {
    GridSpec s = make_spec(15, 15, 100.0);
    Mask m(s);
    m.set(s.index(7, 7), true);
    const Mask b = buffer_mask(m, 350.0);
    CHECK(b.count() == 37);
    // the disk is exactly the lattice points with dx^2+dy^2 <= 3.5^2
    for (long r = 0; r < 15; ++r) {
        for (long c = 0; c < 15; ++c) {
            const long dx = c - 7, dy = r - 7;
            const bool inside = dx * dx + dy * dy <= 12;  // floor(3.5^2)
            CHECK(b.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) == inside);
        }
    }
}

TEST_CASE("buffer_mask matches the all-pairs oracle on random 32x32 masks") {
    Rng rng(17);
    for (int trial = 0; trial < 12; ++trial) {
        GridSpec s = make_spec(32, 32, 100.0);
        const Mask m = random_mask(rng, s, rng.uniform(0.02, 0.4));
        const double d = rng.uniform(0.0, 800.0);
        const Mask fast = buffer_mask(m, d);
        const Mask slow = brute_force_buffer(m, d);
        for (std::size_t i = 0; i < fast.size(); ++i) CHECK(fast.get(i) == slow.get(i));
    }
}

TEST_CASE("buffer_mask is monotone in distance and extensive") {
    Rng rng(31);
    GridSpec s = make_spec(20, 20, 50.0);
    const Mask m = random_mask(rng, s, 0.1);
    const Mask b1 = buffer_mask(m, 100.0);
    const Mask b2 = buffer_mask(m, 250.0);
    CHECK(m.subset_of(b1));
    CHECK(b1.subset_of(b2));
}

TEST_CASE("mask set algebra") {
    Rng rng(7);
    GridSpec s = make_spec(8, 8, 10.0);
    const Mask a = random_mask(rng, s);
    const Mask b = random_mask(rng, s);
    const Mask u = a.unite(b);
    const Mask i = a.intersect(b);
    const Mask d = a.subtract(b);
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(u.get(k) == (a.get(k) || b.get(k)));
        CHECK(i.get(k) == (a.get(k) && b.get(k)));
        CHECK(d.get(k) == (a.get(k) && !b.get(k)));
    }
    CHECK(i.subset_of(a));
    CHECK(d.subset_of(a));
}

TEST_CASE("resample_nearest: identity on the same spec") {
    Rng rng(13);
    GridSpec s = make_spec(6, 7, 100.0);
    NumericGrid g(s);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = rng.uniform(0.0, 10.0);
    const NumericGrid out = resample_nearest(g, s);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(out[i] == g[i]);
}

TEST_CASE("resample_nearest: 2x2 upsampled to half cell size replicates blocks") {
    GridSpec src = make_spec(2, 2, 100.0);
    NumericGrid g(src);
    g.at(0, 0) = 1.0;
    g.at(0, 1) = 2.0;
    g.at(1, 0) = 3.0;
    g.at(1, 1) = 4.0;

    GridSpec tgt = make_spec(4, 4, 50.0);
    tgt.origin_x = src.origin_x - 25.0;
    tgt.origin_y = src.origin_y - 25.0;
    const NumericGrid out = resample_nearest(g, tgt);
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            CHECK(out.at(r, c) == g.at(r / 2, c / 2));
        }
    }
}

TEST_CASE("resample_nearest: disjoint target is an error") {
    GridSpec src = make_spec(4, 4, 100.0);
    NumericGrid g(src, 1.0);
    GridSpec tgt = make_spec(4, 4, 100.0);
    tgt.origin_x = 1e6;
    tgt.origin_y = 1e6;
    CHECK_THROWS_AS(resample_nearest(g, tgt), InvalidInputError);
}

TEST_CASE("resample_nearest is idempotent onto the same target") {
    Rng rng(23);
    GridSpec src = make_spec(9, 9, 100.0);
    NumericGrid g(src);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = rng.uniform(-5.0, 5.0);
    GridSpec tgt = make_spec(5, 5, 171.0);
    const NumericGrid once = resample_nearest(g, tgt);
    const NumericGrid twice = resample_nearest(once, tgt);
    for (std::size_t i = 0; i < once.size(); ++i) CHECK(once[i] == twice[i]);
}

TEST_CASE("CategoricalGrid legend validation") {
    GridSpec s = make_spec(2, 2, 1.0);
    CategoricalGrid g(s);
    g.set(std::size_t{0}, 111);
    CHECK_THROWS_AS(g.validate_legend(), DataError);
    g.define(111, "urban");
    CHECK_NOTHROW(g.validate_legend());
}
