#include "wavese/evolution.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include <fftw3.h>

#include "wavese/threading.hpp"

namespace wavese {

void EvolutionConfig::validate() const {
    if (!(dt > 0.0)) throw ConfigError("evolution.dt must be > 0");
    if (n_steps < 1) throw ConfigError("evolution.n_steps must be >= 1");
}

namespace {

constexpr double kBoundaryMassLimit = 1e-9;
constexpr std::size_t kBoundaryBand = 8;

void check_boundary_leak(const WaveFunction& psi, std::size_t step) {
    const std::size_t n = psi.grid.n_points;
    double tail = 0.0, total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double m = std::norm(psi.values[i]) * psi.grid.weight(i);
        total += m;
        if (i < kBoundaryBand || i + kBoundaryBand >= n) tail += m;
    }
    if (total > 0.0 && tail / total > kBoundaryMassLimit) {
        std::ostringstream msg;
        msg << "evolve_reference: boundary leak at step " << step << " (tail mass fraction "
            << tail / total << " > " << kBoundaryMassLimit << ")";
        throw PreconditionError(msg.str());
    }
}

std::mutex g_fftw_mutex; // FFTW plan creation is not thread-safe

WaveFunction evolve_split_step(WaveFunction psi, const std::vector<double>& pot,
                               const PhysicalParams& params, const EvolutionConfig& cfg) {
    const std::size_t n = psi.grid.n_points;
    const double dx = psi.grid.dx();
    const double period = static_cast<double>(n) * dx;
    const double hbar = params.hbar;

    std::vector<cplx> v_half(n), v_full(n), t_full(n);
    for (std::size_t i = 0; i < n; ++i) {
        v_half[i] = std::exp(cplx(0.0, -pot[i] * cfg.dt / (2.0 * hbar)));
        v_full[i] = v_half[i] * v_half[i];
    }
    for (std::size_t j = 0; j < n; ++j) {
        const double m = (2 * j <= n) ? static_cast<double>(j)
                                      : static_cast<double>(j) - static_cast<double>(n);
        const double k = 2.0 * std::numbers::pi * m / period;
        t_full[j] = std::exp(cplx(0.0, -hbar * k * k * cfg.dt / (2.0 * params.mass)));
    }

    fftw_plan fwd, bwd;
    std::vector<cplx> buf(n);
    {
        std::lock_guard<std::mutex> lock(g_fftw_mutex);
        auto* p = reinterpret_cast<fftw_complex*>(buf.data());
        fwd = fftw_plan_dft_1d(static_cast<int>(n), p, p, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_1d(static_cast<int>(n), p, p, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    const double inv_n = 1.0 / static_cast<double>(n);

    buf = psi.values;
    // Strang: V/2 (T V)^{n-1} T V/2, with adjacent half-steps fused.
    for (std::size_t i = 0; i < n; ++i) buf[i] *= v_half[i];
    for (std::size_t step = 0; step < cfg.n_steps; ++step) {
        fftw_execute(fwd);
        for (std::size_t i = 0; i < n; ++i) buf[i] *= t_full[i];
        fftw_execute(bwd);
        const bool last = (step + 1 == cfg.n_steps);
        for (std::size_t i = 0; i < n; ++i) buf[i] *= inv_n * (last ? v_half[i] : v_full[i]);
        psi.values = buf;
        check_boundary_leak(psi, step + 1);
    }

    {
        std::lock_guard<std::mutex> lock(g_fftw_mutex);
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
    }
    return psi;
}

WaveFunction evolve_crank_nicolson(WaveFunction psi, const std::vector<double>& pot,
                                   const PhysicalParams& params, const EvolutionConfig& cfg) {
    const std::size_t n = psi.grid.n_points;
    const double dx = psi.grid.dx();
    const double hbar = params.hbar;
    const double t_coef = -hbar * hbar / (2.0 * params.mass * dx * dx);
    const cplx itheta(0.0, cfg.dt / (2.0 * hbar));

    // A = I + i theta H, B = I - i theta H; A psi^{n+1} = B psi^n.
    const cplx off_a = itheta * t_coef;
    const cplx off_b = -off_a;
    std::vector<cplx> diag_a(n), diag_b(n);
    for (std::size_t i = 0; i < n; ++i) {
        const cplx h_diag = -2.0 * t_coef + pot[i];
        diag_a[i] = 1.0 + itheta * h_diag;
        diag_b[i] = 1.0 - itheta * h_diag;
    }

    // Thomas elimination coefficients for the constant matrix A.
    std::vector<cplx> c_prime(n);
    c_prime[0] = off_a / diag_a[0];
    for (std::size_t i = 1; i < n; ++i)
        c_prime[i] = off_a / (diag_a[i] - off_a * c_prime[i - 1]);

    std::vector<cplx> rhs(n), d_prime(n);
    for (std::size_t step = 0; step < cfg.n_steps; ++step) {
        const auto& u = psi.values;
        for (std::size_t i = 0; i < n; ++i) {
            cplx r = diag_b[i] * u[i];
            if (i > 0) r += off_b * u[i - 1];
            if (i + 1 < n) r += off_b * u[i + 1];
            rhs[i] = r;
        }
        d_prime[0] = rhs[0] / diag_a[0];
        for (std::size_t i = 1; i < n; ++i)
            d_prime[i] = (rhs[i] - off_a * d_prime[i - 1]) / (diag_a[i] - off_a * c_prime[i - 1]);
        psi.values[n - 1] = d_prime[n - 1];
        for (std::size_t i = n - 1; i-- > 0;)
            psi.values[i] = d_prime[i] - c_prime[i] * psi.values[i + 1];
        check_boundary_leak(psi, step + 1);
    }
    return psi;
}

} // namespace

WaveFunction evolve_reference(const WaveFunction& psi, const PotentialModel& m,
                              const PhysicalParams& params, const EvolutionConfig& cfg) {
    psi.validate();
    m.validate();
    params.validate();
    cfg.validate();
    check_boundary_leak(psi, 0);
    const std::vector<double> pot = evaluate_potential(m, psi.grid, params);
    switch (cfg.method) {
        case PropagatorMethod::split_step_spectral:
            return evolve_split_step(psi, pot, params, cfg);
        case PropagatorMethod::crank_nicolson:
            return evolve_crank_nicolson(psi, pot, params, cfg);
    }
    throw ConfigError("evolve_reference: unknown method");
}

cplx kinetic_symbol_exact(double xi, double a, const MinimalPacketWavelet& w,
                          const PhysicalParams& params) {
    if (!(a > 0.0)) throw PreconditionError("kinetic_symbol_exact: scale a must be > 0");
    const double s2 = w.delta_x * w.delta_x;
    const cplx log_deriv(-(xi - w.x_bar) / (2.0 * s2), w.p / params.hbar);
    const double pref = params.hbar * params.hbar / (2.0 * params.mass * a * a);
    return pref * (1.0 / (2.0 * s2) - log_deriv * log_deriv);
}

double free_dispersion(double a, const MinimalPacketWavelet& w, const PhysicalParams& params) {
    const double s2 = w.delta_x * w.delta_x;
    return w.p * w.p / (2.0 * params.mass * a * a) +
           params.hbar * params.hbar / (4.0 * params.mass * a * a * s2);
}

namespace {

std::pair<std::size_t, std::size_t> locate_node(const ScalePositionGrid& grid, double a,
                                                double b) {
    const double dla = grid.d_ln_a();
    for (std::size_t j = 0; j < grid.n_scales; ++j) {
        if (std::abs(std::log(a / grid.scale(j))) < 1e-9 * dla) {
            const double db = grid.positions.dx();
            const double idx = (b - grid.positions.x_min) / db;
            const auto i = static_cast<std::size_t>(std::llround(idx));
            if (i < grid.n_positions() && std::abs(idx - static_cast<double>(i)) < 1e-6)
                return {j, i};
            break;
        }
    }
    std::ostringstream msg;
    msg << "dispersion_phase: (a, b) = (" << a << ", " << b << ") is not a field grid node";
    throw PreconditionError(msg.str());
}

} // namespace

cplx dispersion_phase(double a, double b, const MinimalPacketWavelet& w,
                      const PhysicalParams& params, const PotentialField& wf) {
    const auto [j, i] = locate_node(wf.grid, a, b);
    return free_dispersion(a, w, params) + wf.at(j, i);
}

WaveletField evolve_wavelet_diagonal(const WaveletField& field, const PotentialField& wf,
                                     const MinimalPacketWavelet& w, const PhysicalParams& params,
                                     double t) {
    field.validate();
    wf.validate();
    if (!(field.grid == wf.grid))
        throw PreconditionError("evolve_wavelet_diagonal: field and potential grids differ");
    WaveletField out = field;
    const cplx minus_i_t(0.0, -t / params.hbar);
    parallel_rows(field.grid.n_scales, [&](std::size_t j) {
        const double e_free = free_dispersion(field.grid.scale(j), w, params);
        for (std::size_t i = 0; i < field.grid.n_positions(); ++i)
            out.at(j, i) = field.at(j, i) * std::exp(minus_i_t * (e_free + wf.at(j, i)));
    });
    return out;
}

double wavelet_evolution_residual(const WaveFunction& psi0, const PotentialModel& m,
                                  const MinimalPacketWavelet& w, const ScalePositionGrid& grid,
                                  const FrameCalibration& cal, const PhysicalParams& params,
                                  const EvolutionConfig& ref_cfg, double t) {
    if (t < 0.0) throw PreconditionError("wavelet_evolution_residual: t must be >= 0");
    const WaveletField field0 = forward_cwt(psi0, w, grid, params);
    const PotentialField wf = potential_cwt(m, w, grid, cal, params);
    const WaveletField diag = evolve_wavelet_diagonal(field0, wf, w, params, t);

    WaveFunction psi_t = psi0;
    if (t > 0.0) {
        EvolutionConfig cfg = ref_cfg;
        cfg.n_steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(t / ref_cfg.dt)));
        cfg.dt = t / static_cast<double>(cfg.n_steps);
        psi_t = evolve_reference(psi0, m, params, cfg);
    }
    const WaveletField ref = forward_cwt(psi_t, w, grid, params);

    WaveletField diff = ref;
    for (std::size_t i = 0; i < diff.coefficients.size(); ++i)
        diff.coefficients[i] -= diag.coefficients[i];
    const double denom = field_norm(ref);
    return denom > 0.0 ? field_norm(diff) / denom : field_norm(diff);
}

} // namespace wavese
