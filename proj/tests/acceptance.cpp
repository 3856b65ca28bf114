// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
// the process exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "wavese/evolution.hpp"
#include "wavese/io.hpp"
#include "wavese/scenario.hpp"
#include "wavese/wavelet.hpp"

using namespace wavese;

namespace {

const PhysicalParams kUnit{1.0, 1.0};
int g_failures = 0;

void report(int index, const char* name, bool pass, const std::string& detail) {
    std::printf("[%d] %-28s %s  (%s)\n", index, name, pass ? "PASS" : "FAIL", detail.c_str());
    if (!pass) ++g_failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// --- 1: round trip on the default grids -----------------------------------

void criterion_roundtrip() {
    const auto t0 = std::chrono::steady_clock::now();
    const MinimalPacketWavelet w{1.0, 5.0, 0.0};
    const SpatialGrid xg{-40.0, 40.0, 2048};
    const ScalePositionGrid grid{0.25, 8.0, 32, xg};
    const WaveFunction probe = evaluate_wavelet(w, kUnit, xg);
    const FrameCalibration cal = calibrate_frame(w, grid, kUnit, probe);
    const WaveletField field = forward_cwt(probe, w, grid, kUnit);
    const WaveFunction recon = inverse_cwt(field, w, cal, kUnit, xg);
    const double err = oracle::rel_l2_error(recon, probe);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(1, "round_trip", err <= 1e-2 && seconds <= 60.0,
           "rel_err=" + fmt(err) + " time=" + fmt(seconds) + "s");
}

// --- 2: Parseval with one shared calibration -------------------------------

void criterion_parseval() {
    const MinimalPacketWavelet w{1.0, 5.0, 0.0};
    const SpatialGrid xg{-40.0, 40.0, 2048};
    const ScalePositionGrid grid{0.25, 8.0, 32, xg};
    const FrameCalibration cal = calibrate_frame(w, grid, kUnit, evaluate_wavelet(w, kUnit, xg));

    double worst = 0.0;
    for (double p : {3.0, 5.0, 8.0}) {
        const MinimalPacketWavelet probe_w{1.0, p, 0.0};
        const WaveFunction probe = evaluate_wavelet(probe_w, kUnit, xg);
        const WaveletField field = forward_cwt(probe, w, grid, kUnit);
        const double energy = field_norm(field) * field_norm(field) / cal.c_eff;
        const double target = l2_norm(probe) * l2_norm(probe);
        worst = std::max(worst, std::abs(energy - target) / target);
    }
    report(2, "parseval", worst <= 0.02, "worst_rel_dev=" + fmt(worst));
}

// --- 3: affine covariance ---------------------------------------------------

void criterion_covariance() {
    const MinimalPacketWavelet w{1.0, 5.0, 0.0};
    // odd point count puts b = 0 on a node and makes dx dyadic
    const SpatialGrid xg{-40.0, 40.0, 2049};
    const ScalePositionGrid grid{0.25, 8.0, 32, xg};
    const double dx = xg.dx();

    // translation by 128 grid steps (shift the samples; psi's off-grid tail is ~e^-400)
    const std::size_t shift = 128;
    (void)dx;
    const WaveFunction psi = evaluate_wavelet(MinimalPacketWavelet{1.0, 5.0, 0.0}, kUnit, xg);
    WaveFunction shifted{xg, std::vector<cplx>(xg.n_points, cplx(0.0))};
    for (std::size_t i = shift; i < xg.n_points; ++i)
        shifted.values[i] = psi.values[i - shift];
    const WaveletField base = forward_cwt(psi, w, grid, kUnit);
    const WaveletField moved = forward_cwt(shifted, w, grid, kUnit);
    double trans_dev = 0.0;
    for (std::size_t j = 0; j < grid.n_scales; ++j)
        for (std::size_t i = shift; i < grid.n_positions(); ++i)
            trans_dev = std::max(trans_dev, std::abs(moved.at(j, i) - base.at(j, i - shift)));

    // dilation by m log-cells: U(a0, 0) psi has C'(a, 0) = C(a / a0, 0)
    const std::size_t m = 4;
    const double a0 = std::exp(static_cast<double>(m) * grid.d_ln_a());
    const MinimalPacketWavelet probe{1.0, 5.0, 0.0};
    const MinimalPacketWavelet dilated{probe.delta_x * a0, probe.p / a0, 0.0};
    const WaveletField c_base = forward_cwt(evaluate_wavelet(probe, kUnit, xg), w, grid, kUnit);
    const WaveletField c_dil = forward_cwt(evaluate_wavelet(dilated, kUnit, xg), w, grid, kUnit);
    const std::size_t center = (grid.n_positions() - 1) / 2; // b = 0
    double dil_dev = 0.0;
    for (std::size_t j = m; j < grid.n_scales; ++j)
        dil_dev = std::max(dil_dev, std::abs(c_dil.at(j, center) - c_base.at(j - m, center)));

    report(3, "affine_covariance", trans_dev <= 1e-10 && dil_dev <= 1e-6,
           "translation=" + fmt(trans_dev) + " dilation=" + fmt(dil_dev));
}

// --- 4: admissibility divergence law and the group-integral cross-check -----

void criterion_admissibility() {
    const MinimalPacketWavelet w{1.0, 2.0, 0.0}; // p dx / hbar = 2
    const double k_max = w.p / kUnit.hbar + 6.0 / w.delta_x;
    const double k_min = 1e-6;
    const double c1 = admissibility_constant(w, kUnit, k_min, k_max).c_v_cutoff;
    const double c2 = admissibility_constant(w, kUnit, k_min / 2.0, k_max).c_v_cutoff;
    const double spectrum0 = std::sqrt(2.0 / std::numbers::pi) * w.delta_x *
                             std::exp(-2.0 * std::pow(w.p * w.delta_x / kUnit.hbar, 2));
    const double expected = 2.0 * std::numbers::pi * spectrum0 * std::numbers::ln2;
    const double law_dev = std::abs((c2 - c1) - expected) / expected;

    const double a_lo = 5e-4, a_hi = 4.0;
    const double k0 = w.p / kUnit.hbar;
    const double group = admissibility_group_integral(w, kUnit, a_lo, a_hi);
    const double fourier =
        admissibility_constant(w, kUnit, a_lo * k0, a_hi * k0).c_v_cutoff;
    const double match_dev = std::abs(group - fourier) / fourier;

    report(4, "admissibility", law_dev <= 0.01 && match_dev <= 0.02,
           "halving_law=" + fmt(law_dev) + " group_vs_fourier=" + fmt(match_dev));
}

// --- 5: reference propagator oracles ----------------------------------------

void criterion_reference_propagator() {
    // free packet against the closed form at t = 1
    const SpatialGrid xg{-40.0, 40.0, 2048};
    WaveFunction psi0{xg, std::vector<cplx>(xg.n_points)};
    WaveFunction want{xg, std::vector<cplx>(xg.n_points)};
    for (std::size_t i = 0; i < xg.n_points; ++i) {
        psi0.values[i] = oracle::free_packet(xg.point(i), 0.0, 1.0, 5.0, 1.0, 1.0);
        want.values[i] = oracle::free_packet(xg.point(i), 1.0, 1.0, 5.0, 1.0, 1.0);
    }
    const WaveFunction got = evolve_reference(
        psi0, PotentialModel::zero(), kUnit, {0.01, 100, PropagatorMethod::split_step_spectral});
    const double free_err = oracle::rel_l2_error(got, want);

    // harmonic ground state over one period (psi picks up the factor -1)
    const SpatialGrid hg{-12.0, 12.0, 1024};
    const MinimalPacketWavelet gs{std::sqrt(0.5), 0.0, 0.0};
    const WaveFunction phi0 = evaluate_wavelet(gs, kUnit, hg);
    const double period = 2.0 * std::numbers::pi;
    const WaveFunction phi1 =
        evolve_reference(phi0, PotentialModel::harmonic(1.0), kUnit,
                         {period / 16384.0, 16384, PropagatorMethod::split_step_spectral});
    WaveFunction minus = phi0;
    for (auto& v : minus.values) v = -v;
    const double gs_err = oracle::rel_l2_error(phi1, minus);
    double dens_dev = 0.0;
    for (std::size_t i = 0; i < hg.n_points; ++i)
        dens_dev = std::max(dens_dev,
                            std::abs(std::norm(phi1.values[i]) - std::norm(phi0.values[i])));

    // second-order convergence under dt halving
    const SpatialGrid cg{-14.0, 14.0, 1024};
    const MinimalPacketWavelet coh{std::sqrt(0.5), 0.0, 2.0};
    const WaveFunction chi0 = evaluate_wavelet(coh, kUnit, cg);
    auto run = [&](double dt, std::size_t n) {
        return evolve_reference(chi0, PotentialModel::harmonic(1.0), kUnit,
                                {dt, n, PropagatorMethod::split_step_spectral});
    };
    const WaveFunction ref = run(1.0 / 2048.0, 2048);
    const double ratio =
        oracle::rel_l2_error(run(0.02, 50), ref) / oracle::rel_l2_error(run(0.01, 100), ref);

    report(5, "reference_propagator",
           free_err <= 1e-6 && gs_err <= 1e-6 && dens_dev <= 1e-8 && ratio >= 3.0 && ratio <= 5.0,
           "free=" + fmt(free_err) + " ground=" + fmt(gs_err) + " density=" + fmt(dens_dev) +
               " ratio=" + fmt(ratio));
}

// --- 6: exact kinetic symbol -------------------------------------------------

void criterion_kinetic_symbol() {
    double worst_fd = 0.0;
    for (double xi_off : {-2.0, -1.0, 0.0, 1.0, 2.0})
        for (double a : {0.3, 0.7, 1.0, 2.0, 5.0})
            for (double p : {0.0, 1.0, 2.0, 5.0, 10.0}) {
                const MinimalPacketWavelet w{1.0, p, 0.2};
                const double b = 0.7;
                const double xi = w.x_bar + xi_off * w.delta_x;
                const double x = b + a * xi;
                const double h = 3e-3 * w.delta_x * a;
                auto atom = [&](double xx) {
                    return w.value((xx - b) / a, kUnit) / std::sqrt(a);
                };
                auto second_fd = [&](double hh) {
                    return (atom(x + hh) - 2.0 * atom(x) + atom(x - hh)) / (hh * hh);
                };
                const cplx second = (4.0 * second_fd(h / 2.0) - second_fd(h)) / 3.0;
                const cplx k_fd = -0.5 * second / atom(x);
                const cplx k = kinetic_symbol_exact(xi, a, w, kUnit);
                worst_fd = std::max(worst_fd, std::abs(k_fd - k) / std::abs(k));
            }

    double worst_red = 0.0;
    for (double a : {0.25, 1.0, 3.0})
        for (double p : {0.0, 2.0, 7.0}) {
            const MinimalPacketWavelet w{0.8, p, -0.3};
            const PhysicalParams params{1.1, 0.9};
            const cplx k = kinetic_symbol_exact(w.x_bar, a, w, params);
            const double expect = free_dispersion(a, w, params);
            worst_red = std::max(worst_red, std::abs(k - cplx(expect)) / expect);
        }

    report(6, "kinetic_symbol", worst_fd <= 1e-7 && worst_red <= 1e-14,
           "fd=" + fmt(worst_fd) + " reduction=" + fmt(worst_red));
}

// --- 7: quasiclassical diagonal evolution ------------------------------------

void criterion_diagonal_evolution() {
    const MinimalPacketWavelet w{1.0, 5.0, 0.0}; // p dx / hbar = 5
    const SpatialGrid xg{-40.0, 40.0, 2049};
    const ScalePositionGrid grid{0.25, 8.0, 32, xg};
    const std::size_t j0 = 16, i0 = (grid.n_positions() - 1) / 2; // b = 0
    const double a0 = grid.scale(j0);
    const double b0 = xg.point(i0);

    const WaveFunction psi0 = apply_affine(w, a0, b0, kUnit, xg);
    const double energy = free_dispersion(a0, w, kUnit);
    const double t_max = 0.1 * kUnit.hbar / energy;

    const WaveFunction psi_t =
        evolve_reference(psi0, PotentialModel::zero(), kUnit,
                         {t_max / 64.0, 64, PropagatorMethod::split_step_spectral});
    const cplx c0 = forward_cwt(psi0, w, grid, kUnit).at(j0, i0);
    const cplx ct = forward_cwt(psi_t, w, grid, kUnit).at(j0, i0);
    const double measured_phase = -std::arg(ct / c0);
    const double predicted_phase = energy * t_max / kUnit.hbar;
    const double phase_dev = std::abs(measured_phase - predicted_phase) / predicted_phase;

    const FrameCalibration cal = calibrate_frame(w, grid, kUnit, psi0);
    const EvolutionConfig ref_cfg{t_max / 64.0, 64, PropagatorMethod::split_step_spectral};
    const double r0 = wavelet_evolution_residual(psi0, PotentialModel::zero(), w, grid, cal,
                                                 kUnit, ref_cfg, 0.0);
    bool monotone = (r0 == 0.0);
    double prev = r0;
    for (double t : {t_max / 2.0, t_max, 2.0 * t_max}) {
        const double r = wavelet_evolution_residual(psi0, PotentialModel::zero(), w, grid, cal,
                                                    kUnit, ref_cfg, t);
        monotone = monotone && r >= prev - 1e-12;
        prev = r;
    }

    report(7, "diagonal_evolution", phase_dev <= 0.05 && monotone,
           "phase_dev=" + fmt(phase_dev) + std::string(monotone ? " residual_monotone"
                                                                : " residual_not_monotone"));
}

// --- 8: threaded determinism via the CLI -------------------------------------

std::string read_bytes(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) return {};
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion_determinism() {
#ifndef WAVESE_CLI_PATH
    report(8, "determinism", false, "cli path not configured");
#else
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "wavese_acceptance_det";
    fs::remove_all(dir);
    fs::create_directories(dir);
    {
        std::ofstream cfg(dir / "scenario.json");
        cfg << R"({
            "spatial_grid": {"x_min": -30.0, "x_max": 30.0, "n_points": 1024},
            "scale_grid": {"a_min": 0.3, "a_max": 6.0, "n_scales": 16},
            "pipeline": "transform_roundtrip"
        })";
    }
    auto run_once = [&](int threads, const char* out) {
        const std::string cmd = std::string(WAVESE_CLI_PATH) + " --threads " +
                                std::to_string(threads) + " run " +
                                (dir / "scenario.json").string() + " --output-dir " +
                                (dir / out).string() + " > /dev/null";
        return std::system(cmd.c_str());
    };
    const int rc1 = run_once(1, "a");
    const int rc2 = run_once(7, "b");
    const std::string bytes1 = read_bytes(dir / "a" / "coefficients.wvs1");
    const std::string bytes2 = read_bytes(dir / "b" / "coefficients.wvs1");
    const bool ok = rc1 == 0 && rc2 == 0 && !bytes1.empty() && bytes1 == bytes2;
    report(8, "determinism", ok,
           "rc=" + std::to_string(rc1) + "/" + std::to_string(rc2) +
               " bytes=" + std::to_string(bytes1.size()) +
               (bytes1 == bytes2 ? " identical" : " differ"));
#endif
}

} // namespace

int main() {
    criterion_roundtrip();
    criterion_parseval();
    criterion_covariance();
    criterion_admissibility();
    criterion_reference_propagator();
    criterion_kinetic_symbol();
    criterion_diagonal_evolution();
    criterion_determinism();
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
