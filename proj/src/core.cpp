#include "wavese/core.hpp"

#include <cmath>
#include <numbers>

namespace wavese {

void PhysicalParams::validate() const {
    if (!(hbar > 0.0)) throw ConfigError("physical.hbar must be > 0");
    if (!(mass > 0.0)) throw ConfigError("physical.mass must be > 0");
}

void SpatialGrid::validate() const {
    if (!(x_min < x_max)) throw ConfigError("spatial grid: x_min must be < x_max");
    if (n_points < 8) throw ConfigError("spatial grid: n_points must be >= 8");
}

std::vector<double> SpatialGrid::points() const {
    std::vector<double> xs(n_points);
    for (std::size_t i = 0; i < n_points; ++i) xs[i] = point(i);
    return xs;
}

void ScalePositionGrid::validate() const {
    if (!(a_min > 0.0 && a_min < a_max))
        throw ConfigError("scale grid: need 0 < a_min < a_max");
    if (n_scales < 1) throw ConfigError("scale grid: n_scales must be >= 1");
    positions.validate();
}

double ScalePositionGrid::d_ln_a() const {
    return std::log(a_max / a_min) / static_cast<double>(n_scales);
}

double ScalePositionGrid::scale(std::size_t j) const {
    // Node of cell [a_min e^{j d}, a_min e^{(j+1) d}] chosen so that
    // d / a_node = 1/a_lo - 1/a_hi, the exact integral of da/a^2 over the cell.
    const double d = d_ln_a();
    const double a_lo = a_min * std::exp(static_cast<double>(j) * d);
    return a_lo * d * std::exp(d) / std::expm1(d);
}

std::vector<double> ScalePositionGrid::scales() const {
    std::vector<double> as(n_scales);
    for (std::size_t j = 0; j < n_scales; ++j) as[j] = scale(j);
    return as;
}

void MinimalPacketWavelet::validate() const {
    if (!(delta_x > 0.0)) throw ConfigError("wavelet: delta_x must be > 0");
}

cplx MinimalPacketWavelet::value(double x, const PhysicalParams& params) const {
    const double s2 = delta_x * delta_x;
    const double norm = std::pow(2.0 * std::numbers::pi * s2, -0.25);
    const double u = x - x_bar;
    return norm * std::exp(cplx(-u * u / (4.0 * s2), p * x / params.hbar));
}

cplx MinimalPacketWavelet::spectrum(double k, const PhysicalParams& params) const {
    const double s2 = delta_x * delta_x;
    const double norm = std::numbers::sqrt2 * delta_x *
                        std::pow(2.0 * std::numbers::pi * s2, -0.25);
    const double q = k - p / params.hbar;
    return norm * std::exp(cplx(-s2 * q * q, -q * x_bar));
}

void WaveFunction::validate() const {
    grid.validate();
    if (values.size() != grid.n_points)
        throw ConfigError("wave function: values length must equal grid n_points");
}

void WaveletField::validate() const {
    grid.validate();
    if (coefficients.size() != grid.n_scales * grid.n_positions())
        throw ConfigError("wavelet field: coefficient array shape must match grid");
}

double l2_norm(const WaveFunction& psi) {
    double acc = 0.0;
    for (std::size_t i = 0; i < psi.values.size(); ++i)
        acc += std::norm(psi.values[i]) * psi.grid.weight(i);
    return std::sqrt(acc);
}

cplx inner_product(const WaveFunction& phi, const WaveFunction& psi) {
    if (!(phi.grid == psi.grid))
        throw PreconditionError("inner_product: incompatible grids");
    cplx acc = 0.0;
    for (std::size_t i = 0; i < phi.values.size(); ++i)
        acc += std::conj(phi.values[i]) * psi.values[i] * phi.grid.weight(i);
    return acc;
}

double field_norm(const WaveletField& field) {
    double acc = 0.0;
    for (std::size_t j = 0; j < field.grid.n_scales; ++j)
        for (std::size_t i = 0; i < field.grid.n_positions(); ++i)
            acc += std::norm(field.at(j, i)) * field.grid.measure_weight(j, i);
    return std::sqrt(acc);
}

} // namespace wavese
