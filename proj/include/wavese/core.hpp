#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "wavese/errors.hpp"

namespace wavese {

using cplx = std::complex<double>;

/// hbar and particle mass, carried explicitly through every propagator.
struct PhysicalParams {
    double hbar = 1.0;
    double mass = 1.0;

    void validate() const;
};

/// Uniform spatial grid on [x_min, x_max] including both endpoints.
struct SpatialGrid {
    double x_min = 0.0;
    double x_max = 1.0;
    std::size_t n_points = 8;

    void validate() const;

    double dx() const { return (x_max - x_min) / static_cast<double>(n_points - 1); }
    double point(std::size_t i) const { return x_min + static_cast<double>(i) * dx(); }

    // Trapezoid quadrature weight of node i.
    double weight(std::size_t i) const {
        return (i == 0 || i + 1 == n_points) ? 0.5 * dx() : dx();
    }

    std::vector<double> points() const;

    bool operator==(const SpatialGrid&) const = default;
};

/// Geometrically spaced scales a crossed with a uniform position grid b.
///
/// The scale axis is split into n_scales cells of equal log-width covering
/// [a_min, a_max]. The node of each cell is placed so that the midpoint-rule
/// weight d(ln a)/a_node reproduces the exact cell integral of da/a^2; the
/// nodes still form a geometric progression with ratio exp(d_ln_a).
struct ScalePositionGrid {
    double a_min = 0.25;
    double a_max = 8.0;
    std::size_t n_scales = 32;
    SpatialGrid positions;

    void validate() const;

    double d_ln_a() const;
    double scale(std::size_t j) const;
    std::vector<double> scales() const;

    // Invariant-measure weight of cell (j, i): d(ln a) * w_b / a,
    // equivalent to da db / a^2.
    double measure_weight(std::size_t j, std::size_t i) const {
        return d_ln_a() * positions.weight(i) / scale(j);
    }

    std::size_t n_positions() const { return positions.n_points; }

    bool operator==(const ScalePositionGrid&) const = default;
};

/// Gaussian packet saturating the uncertainty relation:
///   v0(x) = [2 pi (dx)^2]^{-1/4} exp(-(x - x_bar)^2 / (4 dx^2) + i p x / hbar).
/// p is a momentum (the phase carries 1/hbar).
struct MinimalPacketWavelet {
    double delta_x = 1.0;
    double p = 0.0;
    double x_bar = 0.0;

    void validate() const;

    cplx value(double x, const PhysicalParams& params) const;

    // Unitary-convention Fourier transform, analytically known:
    //   vhat(k) = sqrt(2) dx [2 pi dx^2]^{-1/4} exp(-dx^2 (k - p/hbar)^2 - i (k - p/hbar) x_bar).
    cplx spectrum(double k, const PhysicalParams& params) const;
};

/// Complex samples of psi on a uniform spatial grid.
struct WaveFunction {
    SpatialGrid grid;
    std::vector<cplx> values;

    void validate() const;
};

/// Complex coefficients <v;a,b|psi> on a (scale x position) grid, row-major.
struct WaveletField {
    ScalePositionGrid grid;
    std::vector<cplx> coefficients;

    void validate() const;

    cplx& at(std::size_t j, std::size_t i) { return coefficients[j * grid.n_positions() + i]; }
    const cplx& at(std::size_t j, std::size_t i) const {
        return coefficients[j * grid.n_positions() + i];
    }
};

double l2_norm(const WaveFunction& psi);

// Conjugate-linear in the first argument.
cplx inner_product(const WaveFunction& phi, const WaveFunction& psi);

// Delta-mu weighted coefficient norm sqrt(sum |C|^2 dmu).
double field_norm(const WaveletField& field);

} // namespace wavese
