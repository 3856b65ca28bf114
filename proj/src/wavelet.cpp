#include "wavese/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "wavese/threading.hpp"

namespace wavese {

namespace {

constexpr double kWindowSigmas = 14.0; // exp(-14^2/4) ~ 5e-22, below rounding
constexpr double kMinSamplesPerScale = 4.0;
constexpr double kLeakageThreshold = 1e-4;

void check_support(const SpatialGrid& grid, double center, double half_width,
                   const char* what) {
    if (center - half_width < grid.x_min || center + half_width > grid.x_max) {
        std::ostringstream msg;
        msg << what << ": support [" << center - half_width << ", " << center + half_width
            << "] does not fit grid [" << grid.x_min << ", " << grid.x_max
            << "]; tail mass above 1e-9 would be truncated";
        throw PreconditionError(msg.str());
    }
}

void check_resolution(double a, double delta_x, double dx) {
    if (a * delta_x / dx < kMinSamplesPerScale) {
        std::ostringstream msg;
        msg << "scale a = " << a << " under-resolved: " << a * delta_x / dx
            << " samples per a*delta_x (need >= " << kMinSamplesPerScale << ")";
        throw PreconditionError(msg.str());
    }
}

// Index window [i_lo, i_hi] of grid points with |x - center| <= half_width.
std::pair<std::size_t, std::size_t> index_window(const SpatialGrid& grid, double center,
                                                 double half_width) {
    const double dx = grid.dx();
    const double lo = (center - half_width - grid.x_min) / dx;
    const double hi = (center + half_width - grid.x_min) / dx;
    const std::size_t i_lo = lo <= 0.0 ? 0 : static_cast<std::size_t>(std::ceil(lo));
    const std::size_t i_hi =
        hi >= static_cast<double>(grid.n_points - 1)
            ? grid.n_points - 1
            : static_cast<std::size_t>(std::floor(hi));
    return {i_lo, i_hi};
}

} // namespace

WaveFunction evaluate_wavelet(const MinimalPacketWavelet& w, const PhysicalParams& params,
                              const SpatialGrid& grid) {
    w.validate();
    grid.validate();
    check_support(grid, w.x_bar, 6.0 * w.delta_x, "evaluate_wavelet");
    WaveFunction psi{grid, std::vector<cplx>(grid.n_points)};
    for (std::size_t i = 0; i < grid.n_points; ++i)
        psi.values[i] = w.value(grid.point(i), params);
    return psi;
}

WaveFunction apply_affine(const MinimalPacketWavelet& w, double a, double b,
                          const PhysicalParams& params, const SpatialGrid& grid) {
    w.validate();
    grid.validate();
    if (!(a > 0.0)) throw PreconditionError("apply_affine: scale a must be > 0");
    check_support(grid, b + a * w.x_bar, 6.0 * a * w.delta_x, "apply_affine");
    const double pref = 1.0 / std::sqrt(a);
    WaveFunction psi{grid, std::vector<cplx>(grid.n_points)};
    for (std::size_t i = 0; i < grid.n_points; ++i)
        psi.values[i] = pref * w.value((grid.point(i) - b) / a, params);
    return psi;
}

WaveletField forward_cwt(const WaveFunction& psi, const MinimalPacketWavelet& w,
                         const ScalePositionGrid& grid, const PhysicalParams& params) {
    psi.validate();
    grid.validate();
    w.validate();
    const SpatialGrid& xg = psi.grid;
    const double dx = xg.dx();
    const double s2 = w.delta_x * w.delta_x;
    const double norm = std::pow(2.0 * std::numbers::pi * s2, -0.25);
    const double k0 = w.p / params.hbar;
    for (std::size_t j = 0; j < grid.n_scales; ++j)
        check_resolution(grid.scale(j), w.delta_x, dx);

    WaveletField field{grid, std::vector<cplx>(grid.n_scales * grid.n_positions())};
    parallel_rows(grid.n_scales, [&](std::size_t j) {
        const double a = grid.scale(j);
        const double pref = norm / std::sqrt(a);
        const double half_width = kWindowSigmas * a * w.delta_x;
        for (std::size_t l = 0; l < grid.n_positions(); ++l) {
            const double b = grid.positions.point(l);
            const auto [i_lo, i_hi] = index_window(xg, b + a * w.x_bar, half_width);
            cplx acc = 0.0;
            for (std::size_t i = i_lo; i <= i_hi && i < xg.n_points; ++i) {
                const double xi = (xg.point(i) - b) / a;
                const double u = xi - w.x_bar;
                const double g = pref * std::exp(-u * u / (4.0 * s2)) * xg.weight(i);
                const double ph = -k0 * xi; // conjugated analysis
                acc += g * cplx(std::cos(ph), std::sin(ph)) * psi.values[i];
            }
            field.at(j, l) = acc;
        }
    });
    return field;
}

namespace {

WaveFunction inverse_cwt_unnormalized(const WaveletField& field, const MinimalPacketWavelet& w,
                                      const PhysicalParams& params, const SpatialGrid& out_grid) {
    const ScalePositionGrid& grid = field.grid;
    const double s2 = w.delta_x * w.delta_x;
    const double norm = std::pow(2.0 * std::numbers::pi * s2, -0.25);
    const double k0 = w.p / params.hbar;

    std::vector<std::vector<cplx>> partial(grid.n_scales);
    parallel_rows(grid.n_scales, [&](std::size_t j) {
        std::vector<cplx> row(out_grid.n_points, cplx(0.0));
        const double a = grid.scale(j);
        const double pref = norm / std::sqrt(a);
        const double half_width = kWindowSigmas * a * w.delta_x;
        for (std::size_t l = 0; l < grid.n_positions(); ++l) {
            const cplx coeff = field.at(j, l) * grid.measure_weight(j, l);
            if (coeff == cplx(0.0)) continue;
            const double b = grid.positions.point(l);
            const auto [i_lo, i_hi] = index_window(out_grid, b + a * w.x_bar, half_width);
            for (std::size_t i = i_lo; i <= i_hi && i < out_grid.n_points; ++i) {
                const double xi = (out_grid.point(i) - b) / a;
                const double u = xi - w.x_bar;
                const double g = pref * std::exp(-u * u / (4.0 * s2));
                const double ph = k0 * xi;
                row[i] += g * cplx(std::cos(ph), std::sin(ph)) * coeff;
            }
        }
        partial[j] = std::move(row);
    });

    WaveFunction out{out_grid, std::vector<cplx>(out_grid.n_points, cplx(0.0))};
    for (std::size_t j = 0; j < grid.n_scales; ++j) // fixed row order
        for (std::size_t i = 0; i < out_grid.n_points; ++i) out.values[i] += partial[j][i];
    return out;
}

} // namespace

WaveFunction inverse_cwt(const WaveletField& field, const MinimalPacketWavelet& w,
                         const FrameCalibration& c, const PhysicalParams& params,
                         const SpatialGrid& out_grid) {
    field.validate();
    w.validate();
    out_grid.validate();
    if (!(field.grid == c.grid))
        throw PreconditionError("inverse_cwt: field grid does not match calibration grid");
    WaveFunction out = inverse_cwt_unnormalized(field, w, params, out_grid);
    const double inv_c = 1.0 / c.c_eff;
    for (auto& v : out.values) v *= inv_c;
    return out;
}

AdmissibilityReport admissibility_constant(const MinimalPacketWavelet& w,
                                           const PhysicalParams& params, double k_min,
                                           double k_max) {
    w.validate();
    if (!(k_min > 0.0 && k_min < k_max))
        throw PreconditionError("admissibility_constant: need 0 < k_min < k_max");
    const double k0 = w.p / params.hbar;
    if (k_max < k0 + 4.0 / w.delta_x)
        throw PreconditionError(
            "admissibility_constant: k_max must cover the packet's spectral support "
            "(k_max >= p/hbar + 4/delta_x)");

    // Integrate |vhat|^2 / k dk = |vhat(e^s)|^2 ds on a log axis; the step must
    // resolve the Gaussian peak near ln k0.
    double step = 2e-3;
    if (k0 > 0.0) step = std::min(step, 1.0 / (2.0 * w.delta_x * k0) / 64.0);
    const double s_lo = std::log(k_min), s_hi = std::log(k_max);
    const std::size_t n = std::max<std::size_t>(64, static_cast<std::size_t>((s_hi - s_lo) / step) + 1);
    const double h = (s_hi - s_lo) / static_cast<double>(n);
    double acc = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        const double k = std::exp(s_lo + static_cast<double>(i) * h);
        const double f = std::norm(w.spectrum(k, params));
        acc += (i == 0 || i == n) ? 0.5 * f : f;
    }
    AdmissibilityReport report;
    report.c_v_cutoff = 2.0 * std::numbers::pi * acc * h;
    report.k_min = k_min;
    report.k_max = k_max;
    report.divergent = true; // Gaussian spectrum is strictly positive at k = 0
    return report;
}

cplx affine_self_overlap(const MinimalPacketWavelet& w, const PhysicalParams& params, double a,
                         double b) {
    const double s2 = w.delta_x * w.delta_x;
    const double k0 = w.p / params.hbar;
    const double c = b + a * w.x_bar;
    const double A = (1.0 + 1.0 / (a * a)) / (4.0 * s2);
    const cplx B(w.x_bar / (2.0 * s2) + c / (2.0 * a * a * s2), k0 * (1.0 / a - 1.0));
    const cplx C(-w.x_bar * w.x_bar / (4.0 * s2) - c * c / (4.0 * a * a * s2), -k0 * b / a);
    const double n2 = 1.0 / std::sqrt(2.0 * std::numbers::pi * s2); // squared prefactor
    return n2 / std::sqrt(a) * std::sqrt(std::numbers::pi / A) * std::exp(B * B / (4.0 * A) + C);
}

double admissibility_group_integral(const MinimalPacketWavelet& w, const PhysicalParams& params,
                                    double a_lo, double a_hi) {
    w.validate();
    if (!(a_lo > 0.0 && a_lo < a_hi))
        throw PreconditionError("admissibility_group_integral: need 0 < a_lo < a_hi");
    // Midpoint rule in ln a, trapezoid in b; |<v|U(a,b)|v>|^2 is a smooth
    // Gaussian in b of width ~ sqrt(2(1+a^2)) * delta_x.
    const std::size_t n_a =
        std::max<std::size_t>(64, static_cast<std::size_t>(std::log(a_hi / a_lo) * 256.0));
    const double ha = std::log(a_hi / a_lo) / static_cast<double>(n_a);
    double total = 0.0;
    for (std::size_t ja = 0; ja < n_a; ++ja) {
        const double a = a_lo * std::exp((static_cast<double>(ja) + 0.5) * ha);
        const double b_center = w.x_bar * (1.0 - a);
        const double b_half = 14.0 * std::sqrt(1.0 + a * a) * w.delta_x;
        const std::size_t n_b = 1200;
        const double hb = 2.0 * b_half / static_cast<double>(n_b);
        double row = 0.0;
        for (std::size_t jb = 0; jb <= n_b; ++jb) {
            const double b = b_center - b_half + static_cast<double>(jb) * hb;
            const double f = std::norm(affine_self_overlap(w, params, a, b));
            row += (jb == 0 || jb == n_b) ? 0.5 * f : f;
        }
        total += row * hb * ha / a; // d(ln a) db / a  ==  da db / a^2
    }
    return total;
}

FrameCalibration calibrate_frame(const MinimalPacketWavelet& w, const ScalePositionGrid& grid,
                                 const PhysicalParams& params, const WaveFunction& probe) {
    probe.validate();
    const WaveletField coeffs = forward_cwt(probe, w, grid, params);

    double peak = 0.0, boundary = 0.0;
    const std::size_t ns = grid.n_scales, np = grid.n_positions();
    for (std::size_t j = 0; j < ns; ++j)
        for (std::size_t i = 0; i < np; ++i) {
            const double m = std::abs(coeffs.at(j, i));
            peak = std::max(peak, m);
            if (j == 0 || j + 1 == ns || i == 0 || i + 1 == np)
                boundary = std::max(boundary, m);
        }
    if (peak <= 0.0) throw PreconditionError("calibrate_frame: probe has zero coefficients");
    const double leakage = boundary / peak;
    if (leakage > kLeakageThreshold) {
        std::ostringstream msg;
        msg << "calibrate_frame: probe coefficients leak off-grid (boundary/peak ratio "
            << leakage << " > " << kLeakageThreshold << ")";
        throw PreconditionError(msg.str());
    }

    const WaveFunction recon = inverse_cwt_unnormalized(coeffs, w, params, probe.grid);
    const cplx ratio = inner_product(recon, probe) / inner_product(probe, probe);
    FrameCalibration cal;
    cal.c_eff = ratio.real();
    cal.grid = grid;
    cal.wavelet = w;
    if (!(cal.c_eff > 0.0))
        throw PreconditionError("calibrate_frame: non-positive effective constant");
    return cal;
}

} // namespace wavese
