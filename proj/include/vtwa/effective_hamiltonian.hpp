/// @file effective_hamiltonian.hpp
/// @brief Optimal classical generator for a Gaussian Wigner ansatz of the
/// quartic oscillator, its residual checks, and the phase-space velocity
/// fields used by the propagators.

#ifndef VTWA_EFFECTIVE_HAMILTONIAN_HPP
#define VTWA_EFFECTIVE_HAMILTONIAN_HPP

#include "vtwa/phase_space.hpp"
#include "vtwa/poly_gauss.hpp"

namespace vtwa {

/// The widths of `state` are frozen at their initial values; its centroid
/// supplies the (x0, p0) that enter the effective Hamiltonian.
struct EffectiveParams {
    QuarticModel model;
    GaussianWignerState state;
};

/// Correction H_c with the arbitrary u(Q) term set to zero:
///   H_c = g x^2/(48 sp^2) (18 - x(3x - 4x0)/sx^2 - 6 (p - p0)^2/sp^2).
PolyGauss build_Hc(const EffectiveParams& params);

/// Closed form of H + H_c, assembled term by term from its own expression
/// so that the H + H_c identity is a real check.
PolyGauss build_H_eff(const EffectiveParams& params);

/// {{H_c, f}, f} + (g/4) {x d^3f/dp^3, f}, relative to its largest term.
double hc_equation_residual(const EffectiveParams& params);
double hc_equation_residual(const EffectiveParams& params, const PolyGauss& hc);

/// Relative mismatch of {{H_eff, f}, f} against {{H, f}_M, f}.
double el_residual(const EffectiveParams& params);
double el_residual(const EffectiveParams& params, const PolyGauss& h_eff);

/// {H_eff, f} - {H, f}_M. Vanishes identically for the Gaussian ansatz.
PolyGauss jump_distribution(const EffectiveParams& params);
PolyGauss jump_distribution(const EffectiveParams& params, const PolyGauss& h_eff);

/// Phase-space velocity (dH/dp, -dH/dx) of an arbitrary k = 0 generator.
PhasePoint symplectic_velocity(const PolyGauss& hamiltonian, PhasePoint pt);

/// Hamilton's equations of the true quartic H.
PhasePoint twa_rhs(const QuarticModel& model, PhasePoint pt);

/// Characteristics of H_eff with the instantaneous centroid.
PhasePoint vtwa_rhs(const EffectiveParams& params, PhasePoint centroid, PhasePoint pt);

/// Motion of the ansatz centroid; coincides with vtwa_rhs at pt = centroid.
PhasePoint centroid_rhs(const EffectiveParams& params, PhasePoint centroid);

}  // namespace vtwa

#endif  // VTWA_EFFECTIVE_HAMILTONIAN_HPP
