#pragma once

// Test-only oracles, independent of the library's transform code paths:
// closed-form free-packet evolution, Gaussian moment integrals, and a generic
// trapezoid quadrature against arbitrary integrands.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "wavese/core.hpp"

namespace oracle {

using wavese::cplx;

// Closed-form free evolution of the minimal packet
// psi0(x) = (2 pi s^2)^{-1/4} exp(-x^2/(4 s^2) + i k0 x) centered at 0.
inline cplx free_packet(double x, double t, double s, double k0, double hbar, double mass) {
    const cplx alpha(s * s, hbar * t / (2.0 * mass));
    const double v = hbar * k0 / mass;
    const cplx amp = std::pow(2.0 * s * s / std::numbers::pi, 0.25) /
                     std::sqrt(2.0 * std::numbers::pi) * std::sqrt(std::numbers::pi / alpha);
    const double u = x - v * t;
    return amp * std::exp(-u * u / (4.0 * alpha) +
                          cplx(0.0, k0 * x - hbar * k0 * k0 * t / (2.0 * mass)));
}

// Trapezoid quadrature of f over the grid points.
inline cplx quadrature(const wavese::SpatialGrid& g, const std::function<cplx(double)>& f) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < g.n_points; ++i) acc += f(g.point(i)) * g.weight(i);
    return acc;
}

// Moments of conj(v0): Int u^n conj(v0(u)) du for n = 0, 1, 2, in closed form.
// conj(v0(u)) = N exp(-(u - mu)^2/(4 s^2) + c0) with mu = x_bar - 2 i k0 s^2.
struct PacketMoments {
    cplx m0, m1, m2;
};

inline PacketMoments conj_packet_moments(double s, double k0, double x_bar) {
    const double n = std::pow(2.0 * std::numbers::pi * s * s, -0.25);
    const cplx mu(x_bar, -2.0 * k0 * s * s);
    const cplx c0 = (mu * mu - x_bar * x_bar) / (4.0 * s * s);
    const cplx m0 = n * 2.0 * s * std::sqrt(std::numbers::pi) * std::exp(c0);
    return {m0, mu * m0, (mu * mu + 2.0 * s * s) * m0};
}

inline double rel_l2_error(const wavese::WaveFunction& got, const wavese::WaveFunction& want) {
    wavese::WaveFunction diff = got;
    for (std::size_t i = 0; i < diff.values.size(); ++i) diff.values[i] -= want.values[i];
    return wavese::l2_norm(diff) / wavese::l2_norm(want);
}

} // namespace oracle
