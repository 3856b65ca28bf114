#pragma once

#include <string>
#include <vector>

#include "wavese/core.hpp"
#include "wavese/potential.hpp"

namespace wavese {

// CSV layout: header "a,b,re,im", one row per node with 17 significant digits,
// outer loop over scales ascending, inner over b ascending.
void write_field_csv(const WaveletField& field, const std::string& path);
void write_field_csv(const PotentialField& field, const std::string& path);

// "WVS1" binary: magic, little-endian u64 n_scales and n_positions, scale
// values, b values, then coefficients as interleaved little-endian doubles
// (re, im), row-major scales x positions.
void write_field_wvs1(const WaveletField& field, const std::string& path);
void write_field_wvs1(const PotentialField& field, const std::string& path);

struct Wvs1Data {
    std::vector<double> scales;
    std::vector<double> positions;
    std::vector<cplx> coefficients; // row-major scales x positions
};

Wvs1Data read_wvs1(const std::string& path);

} // namespace wavese
