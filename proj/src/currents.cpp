#include "dbmd/currents.hpp"

#include <atomic>
#include <cmath>
#include <iostream>

#include "dbmd/constants.hpp"
#include "dbmd/errors.hpp"

namespace dbmd {

EffectiveBarriers effective_barriers(double q, const DeviceParams& p) {
  EffectiveBarriers eb{
      p.d_0 * (1.0 + p.lambda_d * q),
      p.phi_t * (1.0 + p.lambda_t * q),
      p.phi_b0 * (1.0 + p.lambda_b * q),
      p.n_0 * (1.0 + p.lambda_n * q),
  };
  if (!(eb.d_eff > 0) || !(eb.phi_t_eff > 0) || !(eb.phi_b_eff > 0) ||
      !(eb.n_eff > 0)) {
    throw degenerate_state_error(
        "effective barrier parameter non-positive at q = " + std::to_string(q) +
        " (lambda*q <= -1)");
  }
  return eb;
}

double tunnel_current(double V_TB, double q, const DeviceParams& p) {
  const EffectiveBarriers eb = effective_barriers(q, p);
  const double phi_J = eb.phi_t_eff * phys.e;  // barrier height [J]
  const double eV = phys.e * std::abs(V_TB);

  if (eV > phi_J) {
    static std::atomic<bool> warned{false};
    if (!warned.exchange(true)) {
      std::cerr << "warning: |V_TB| = " << std::abs(V_TB)
                << " V exceeds the effective tunnel barrier height ("
                << eb.phi_t_eff << " eV); Simmons intermediate-voltage form "
                   "applied outside its regime\n";
    }
  }

  const double a_coef = 4.0 * pi * p.beta * eb.d_eff * std::sqrt(2.0 * phys.m) / phys.h;
  const double pre =
      phys.e * p.A_d / (2.0 * pi * phys.h * (p.beta * eb.d_eff) * (p.beta * eb.d_eff));
  // phi e^{-A sqrt(phi)} - (phi+eV) e^{-A sqrt(phi+eV)} evaluated without the
  // catastrophic cancellation at eV << phi: with s = sqrt(phi+eV) - sqrt(phi)
  // the difference equals e^{-A sqrt(phi)} (-phi expm1(-A s) - eV e^{-A s}).
  const double sqrt_phi = std::sqrt(phi_J);
  const double s = eV / (std::sqrt(phi_J + eV) + sqrt_phi);
  const double mag = pre * std::exp(-a_coef * sqrt_phi) *
                     (-phi_J * std::expm1(-a_coef * s) -
                      eV * std::exp(-a_coef * s));
  return V_TB < 0 ? -mag : mag;  // odd extension; exactly 0 at V_TB = 0
}

double schottky_current(double V_SC, double q, const DeviceParams& p) {
  const EffectiveBarriers eb = effective_barriers(q, p);
  const double kT_eV = phys.k_B * p.T / phys.e;

  double i_r = p.A_d * phys.A_star * p.T * p.T * std::exp(-eb.phi_b_eff / kT_eV);
  if (V_SC < 0) i_r *= std::exp(p.alpha_r * std::sqrt(-V_SC) / kT_eV);

  double arg = V_SC / (eb.n_eff * kT_eV);
  if (arg > 700.0) arg = 700.0;  // overflow guard; far outside the device range
  return i_r * std::expm1(arg);
}

double ohmic_drop(double I, const DeviceParams& p) {
  return I * p.l_SE / (p.sigma * p.A_d);
}

}  // namespace dbmd
