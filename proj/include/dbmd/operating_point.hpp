#pragma once

#include "dbmd/params.hpp"

namespace dbmd {

/// Converged series-circuit solution for one applied voltage sample.
/// V_SC + V_SE + V_TB == V_device to 1e-12 absolute by construction.
struct OperatingPoint {
  double V_device;  // [V]
  double V_SC;      // Schottky contact drop [V]
  double V_SE;      // electrolyte drop [V]
  double V_TB;      // tunnel barrier drop [V]
  double I;         // series current [A]
  double residual;  // relative KCL error at the solution
  int iterations;
};

/// Current floor keeping the relative KCL residual defined near I = 0 [A].
inline constexpr double kCurrentFloor = 1e-15;

/// Finds V_TB such that the tunnel and Schottky currents agree, with the
/// electrolyte drop folded in as V_SE(I_TB):
///   g(V_TB) = I_TB(V_TB,q) - I_SC(V_device - V_TB - V_SE(I_TB), q).
/// g is strictly monotone on [min(0,V_device), max(0,V_device)], so the root
/// is isolated by bracketing and refined by bisection. V_device = 0 returns
/// the exact all-zero point. Throws convergence_error if no sign change is
/// found after bracket expansion or the residual tolerance is not met within
/// max_iters.
OperatingPoint solve_operating_point(double V_device, double q,
                                     const DeviceParams& params,
                                     double xi_tol = 1e-6,
                                     int max_iters = 200);

}  // namespace dbmd
