#pragma once

#include "dbmd/params.hpp"

namespace dbmd {

/// State-modulated barrier parameters. All linear in the internal state q.
struct EffectiveBarriers {
  double d_eff;      // tunnel barrier width [m]
  double phi_t_eff;  // tunnel barrier height [eV]
  double phi_b_eff;  // Schottky barrier height [eV]
  double n_eff;      // ideality factor
};

/// d_eff = d_0(1+lambda_d q), phi_t_eff = phi_t(1+lambda_t q),
/// phi_b_eff = phi_b0(1+lambda_b q), n_eff = n_0(1+lambda_n q).
/// Throws degenerate_state_error if any result is non-positive.
EffectiveBarriers effective_barriers(double q, const DeviceParams& params);

/// Simmons tunnel current through the Al2O3 barrier [A]. The closed form is
/// evaluated at |V_TB| and odd-extended, so I(-V) = -I(V) exactly. Barrier
/// energies enter the exponents in joules. Logs a one-time warning if
/// e|V_TB| exceeds the effective barrier height (outside the
/// intermediate-voltage regime).
double tunnel_current(double V_TB, double q, const DeviceParams& params);

/// Thermionic-emission Schottky diode current [A];
/// I = I_R(expm1(eV/(n_eff kT))) with the reverse saturation current enhanced
/// by exp(alpha_r sqrt(|V|)/kT) for V_SC < 0. Continuous (and zero) at V = 0.
double schottky_current(double V_SC, double q, const DeviceParams& params);

/// Ohmic drop across the electrolyte: V_SE = I * l_SE / (sigma * A_d) [V].
double ohmic_drop(double I, const DeviceParams& params);

}  // namespace dbmd
