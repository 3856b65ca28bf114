#pragma once

#include "wavese/core.hpp"
#include "wavese/potential.hpp"
#include "wavese/wavelet.hpp"

namespace wavese {

enum class PropagatorMethod { split_step_spectral, crank_nicolson };

struct EvolutionConfig {
    double dt = 0.005;
    std::size_t n_steps = 200;
    PropagatorMethod method = PropagatorMethod::split_step_spectral;

    void validate() const;
};

// x-space reference propagator for i hbar dpsi/dt = [-hbar^2/2m d^2/dx^2 + W] psi.
// split_step_spectral: Strang splitting with the kinetic factor in Fourier
// space (periodic box). crank_nicolson: Cayley form with tridiagonal solve and
// homogeneous Dirichlet boundaries. Both require the tail mass at the box
// boundary to stay below 1e-9 throughout.
WaveFunction evolve_reference(const WaveFunction& psi, const PotentialModel& m,
                              const PhysicalParams& params, const EvolutionConfig& cfg);

// Exact local kinetic symbol of the wavelet-transformed equation:
//   K(xi, a) = hbar^2/(2 m a^2) [ 1/(2 dx^2) - (i p/hbar - (xi - x_bar)/(2 dx^2))^2 ],
// the value of (-hbar^2/2m d^2/dx^2) applied to the affine atom, divided by the
// atom itself, at xi = (x - b)/a. At xi = x_bar it reduces to
// p^2/(2 m a^2) + hbar^2/(4 m a^2 dx^2).
cplx kinetic_symbol_exact(double xi, double a, const MinimalPacketWavelet& w,
                          const PhysicalParams& params);

// Near-center kinetic energy p^2/(2 m a^2) + hbar^2/(4 m a^2 dx^2).
double free_dispersion(double a, const MinimalPacketWavelet& w, const PhysicalParams& params);

// E(a,b) = p^2/(2 m a^2) + hbar^2/(4 m a^2 dx^2) + W(a,b) at a field grid node.
// (a,b) must match a node exactly; no interpolation.
cplx dispersion_phase(double a, double b, const MinimalPacketWavelet& w,
                      const PhysicalParams& params, const PotentialField& wf);

// C(a,b;t) = exp(-i E(a,b) t / hbar) C(a,b;0) nodewise; exact solution of the
// decoupled diagonal ODE, no time-stepping error.
WaveletField evolve_wavelet_diagonal(const WaveletField& field, const PotentialField& wf,
                                     const MinimalPacketWavelet& w, const PhysicalParams& params,
                                     double t);

// Relative dmu-weighted L2 distance between forward_cwt(evolve_reference(psi0, t))
// and evolve_wavelet_diagonal(forward_cwt(psi0), t).
double wavelet_evolution_residual(const WaveFunction& psi0, const PotentialModel& m,
                                  const MinimalPacketWavelet& w, const ScalePositionGrid& grid,
                                  const FrameCalibration& cal, const PhysicalParams& params,
                                  const EvolutionConfig& ref_cfg, double t);

} // namespace wavese
