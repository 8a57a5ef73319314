#pragma once

#include <cstdint>
#include <vector>

#include "vre/exclusion.hpp"
#include "vre/grid.hpp"
#include "vre/regions.hpp"

namespace vre {

/// A complete synthetic regional dataset. Generation is a pure function of
/// (spec, seed); identical inputs give identical layers on every run.
struct SyntheticFixture {
    GridSpec spec;
    NumericGrid dem;
    NumericGrid irradiance_wm2;
    NumericGrid v10_ms;
    NumericGrid scenicness;
    NumericGrid votes;
    NumericGrid latitude;  // degrees per cell, south-to-north gradient
    CategoricalGrid landuse;
    AgGradeGrid ag_grades;
    Mask osm_positive;
    Mask osm_negative;
    Mask clc_positive;
    Mask protected_areas;
    CategoricalGrid region_grid;  // ids index la_table.regions()
    LATable la_table;
};

SyntheticFixture generate_fixture(const GridSpec& spec, std::uint64_t seed);

/// Portable deterministic value-noise field in [0,1]: coarse random lattice
/// bilinearly interpolated. Independent of library RNG distributions.
NumericGrid value_noise(const GridSpec& spec, std::uint64_t seed, std::size_t lattice_step);

}  // namespace vre
