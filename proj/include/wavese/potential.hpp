#pragma once

#include "wavese/core.hpp"
#include "wavese/wavelet.hpp"

namespace wavese {

/// Built-in potential models W(x).
struct PotentialModel {
    enum class Kind { zero, constant, harmonic, gaussian_barrier };

    Kind kind = Kind::zero;
    double v0 = 0.0;     // constant, gaussian_barrier
    double omega = 0.0;  // harmonic
    double width = 1.0;  // gaussian_barrier
    double center = 0.0; // gaussian_barrier

    static PotentialModel zero() { return {}; }
    static PotentialModel constant(double v0);
    static PotentialModel harmonic(double omega);
    static PotentialModel gaussian_barrier(double v0, double width, double center);

    void validate() const;

    double value(double x, const PhysicalParams& params) const;
};

/// W(a,b) on a scale-position grid, kept complex: the packet's phase makes the
/// transform complex even for real W(x).
struct PotentialField {
    ScalePositionGrid grid;
    std::vector<cplx> values;
    PotentialModel source;

    void validate() const;

    cplx& at(std::size_t j, std::size_t i) { return values[j * grid.n_positions() + i]; }
    const cplx& at(std::size_t j, std::size_t i) const {
        return values[j * grid.n_positions() + i];
    }

    // Hermiticity diagnostic: largest |Im W(a,b)| over the grid.
    double max_imag() const;
};

std::vector<double> evaluate_potential(const PotentialModel& m, const SpatialGrid& grid,
                                       const PhysicalParams& params);

// W(a,b) = c_eff^{-1} Int a^{-1/2} conj(v0((x-b)/a)) W(x) dx, quadrature over a
// window of +-12 a delta_x around b + a x_bar with scale-adapted spacing.
PotentialField potential_cwt(const PotentialModel& m, const MinimalPacketWavelet& w,
                             const ScalePositionGrid& grid, const FrameCalibration& c,
                             const PhysicalParams& params);

} // namespace wavese
