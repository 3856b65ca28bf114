#pragma once

#include "wavese/core.hpp"

namespace wavese {

/// Infrared-cutoff admissibility constant of a minimal packet.
/// c_v(k_min) = 2 pi Int_{k_min}^{k_max} |vhat(k)|^2 / k dk (positive-frequency
/// convention). The uncorrected Gaussian packet has vhat(0) != 0, so the
/// integral diverges logarithmically as k_min -> 0: divergent is always true.
struct AdmissibilityReport {
    double c_v_cutoff = 0.0;
    double k_min = 0.0;
    double k_max = 0.0;
    bool divergent = true;
};

/// Effective normalization constant for a truncated, discretized (a,b) grid,
/// so that the round trip forward -> inverse is unbiased for in-band states.
struct FrameCalibration {
    double c_eff = 1.0;
    ScalePositionGrid grid;
    MinimalPacketWavelet wavelet;
};

// Samples of v0 on the grid. Fails if the grid cuts more than ~1e-9 of the
// packet's tail mass (the [x_bar - 6 dx, x_bar + 6 dx] window must fit).
WaveFunction evaluate_wavelet(const MinimalPacketWavelet& w, const PhysicalParams& params,
                              const SpatialGrid& grid);

// U(a,b) v0: samples of a^{-1/2} v0((x-b)/a). Unitary, so the L2 norm is 1.
WaveFunction apply_affine(const MinimalPacketWavelet& w, double a, double b,
                          const PhysicalParams& params, const SpatialGrid& grid);

// C(a,b) = Int a^{-1/2} conj(v0((x-b)/a)) psi(x) dx for every grid node.
WaveletField forward_cwt(const WaveFunction& psi, const MinimalPacketWavelet& w,
                         const ScalePositionGrid& grid, const PhysicalParams& params);

// psi(x) = c_eff^{-1} Sum a^{-1/2} v0((x-b)/a) C(a,b) dmu(a,b).
WaveFunction inverse_cwt(const WaveletField& field, const MinimalPacketWavelet& w,
                         const FrameCalibration& c, const PhysicalParams& params,
                         const SpatialGrid& out_grid);

AdmissibilityReport admissibility_constant(const MinimalPacketWavelet& w,
                                           const PhysicalParams& params, double k_min,
                                           double k_max);

// Cross-check of admissibility_constant: direct quadrature of
// Int Int |<v|U(a,b)|v>|^2 da db / a^2 over a in [a_lo, a_hi] (log-spaced) with
// the overlap evaluated in closed form. Matches the Fourier form on the
// truncation [a_lo * k0, a_hi * k0] with k0 = p/hbar.
double admissibility_group_integral(const MinimalPacketWavelet& w, const PhysicalParams& params,
                                    double a_lo, double a_hi);

// Determines c_eff = <unnormalized reconstruction, probe> / <probe, probe>.
// Fails if the probe's coefficients do not decay below the leakage threshold
// at the grid boundary.
FrameCalibration calibrate_frame(const MinimalPacketWavelet& w, const ScalePositionGrid& grid,
                                 const PhysicalParams& params, const WaveFunction& probe);

// Closed-form overlap <v0 | U(a,b) v0>, used by the group-integral oracle.
cplx affine_self_overlap(const MinimalPacketWavelet& w, const PhysicalParams& params, double a,
                         double b);

} // namespace wavese
