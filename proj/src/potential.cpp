#include "wavese/potential.hpp"

#include <cmath>
#include <numbers>

#include "wavese/threading.hpp"

namespace wavese {

PotentialModel PotentialModel::constant(double v0) {
    PotentialModel m;
    m.kind = Kind::constant;
    m.v0 = v0;
    return m;
}

PotentialModel PotentialModel::harmonic(double omega) {
    PotentialModel m;
    m.kind = Kind::harmonic;
    m.omega = omega;
    return m;
}

PotentialModel PotentialModel::gaussian_barrier(double v0, double width, double center) {
    PotentialModel m;
    m.kind = Kind::gaussian_barrier;
    m.v0 = v0;
    m.width = width;
    m.center = center;
    return m;
}

void PotentialModel::validate() const {
    if (kind == Kind::harmonic && omega < 0.0)
        throw ConfigError("potential: harmonic omega must be >= 0");
    if (kind == Kind::gaussian_barrier && !(width > 0.0))
        throw ConfigError("potential: gaussian_barrier width must be > 0");
}

double PotentialModel::value(double x, const PhysicalParams& params) const {
    switch (kind) {
        case Kind::zero: return 0.0;
        case Kind::constant: return v0;
        case Kind::harmonic: return 0.5 * params.mass * omega * omega * x * x;
        case Kind::gaussian_barrier: {
            const double u = (x - center) / width;
            return v0 * std::exp(-u * u);
        }
    }
    return 0.0;
}

void PotentialField::validate() const {
    grid.validate();
    if (values.size() != grid.n_scales * grid.n_positions())
        throw ConfigError("potential field: value array shape must match grid");
}

double PotentialField::max_imag() const {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v.imag()));
    return m;
}

std::vector<double> evaluate_potential(const PotentialModel& m, const SpatialGrid& grid,
                                       const PhysicalParams& params) {
    m.validate();
    grid.validate();
    std::vector<double> out(grid.n_points);
    for (std::size_t i = 0; i < grid.n_points; ++i) out[i] = m.value(grid.point(i), params);
    return out;
}

PotentialField potential_cwt(const PotentialModel& m, const MinimalPacketWavelet& w,
                             const ScalePositionGrid& grid, const FrameCalibration& c,
                             const PhysicalParams& params) {
    m.validate();
    w.validate();
    grid.validate();
    if (!(grid == c.grid))
        throw PreconditionError("potential_cwt: grid does not match calibration grid");

    const double s2 = w.delta_x * w.delta_x;
    const double norm = std::pow(2.0 * std::numbers::pi * s2, -0.25);
    const double k0 = w.p / params.hbar;
    const double inv_c = 1.0 / c.c_eff;

    PotentialField field{grid, std::vector<cplx>(grid.n_scales * grid.n_positions()), m};
    parallel_rows(grid.n_scales, [&](std::size_t j) {
        const double a = grid.scale(j);
        const double pref = norm / std::sqrt(a);
        // Scale-adapted quadrature: the model is analytic, so sample it on a
        // local window rather than on the b grid.
        const double half_width = 12.0 * a * w.delta_x;
        const std::size_t n_q = 512; // 12 * 2 * (512/24) samples per a*delta_x
        const double h = 2.0 * half_width / static_cast<double>(n_q);
        for (std::size_t l = 0; l < grid.n_positions(); ++l) {
            const double center = grid.positions.point(l) + a * w.x_bar;
            const double b = grid.positions.point(l);
            cplx acc = 0.0;
            for (std::size_t i = 0; i <= n_q; ++i) {
                const double x = center - half_width + static_cast<double>(i) * h;
                const double xi = (x - b) / a;
                const double u = xi - w.x_bar;
                const double g = std::exp(-u * u / (4.0 * s2)) * m.value(x, params);
                const double ph = -k0 * xi; // conjugated analysis
                const double wq = (i == 0 || i == n_q) ? 0.5 : 1.0;
                acc += wq * g * cplx(std::cos(ph), std::sin(ph));
            }
            field.at(j, l) = inv_c * pref * h * acc;
        }
    });
    return field;
}

} // namespace wavese
