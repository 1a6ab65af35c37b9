#include "dbmd/operating_point.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dbmd/currents.hpp"
#include "dbmd/errors.hpp"

namespace dbmd {

namespace {

struct Residual {
  double g;     // I_TB - I_SC
  double I_TB;
  double I_SC;
  double V_SE;

  double relative() const {
    return std::abs(g) /
           std::max({std::abs(I_TB), std::abs(I_SC), kCurrentFloor});
  }
};

Residual eval(double V_TB, double V_device, double q, const DeviceParams& p) {
  Residual r;
  r.I_TB = tunnel_current(V_TB, q, p);
  r.V_SE = ohmic_drop(r.I_TB, p);
  r.I_SC = schottky_current(V_device - V_TB - r.V_SE, q, p);
  r.g = r.I_TB - r.I_SC;
  return r;
}

OperatingPoint make_point(double V_TB, double V_device, const Residual& r,
                          int iterations) {
  OperatingPoint op;
  op.V_device = V_device;
  op.V_TB = V_TB;
  op.I = r.I_TB;
  op.V_SE = r.V_SE;
  op.V_SC = V_device - V_TB - r.V_SE;  // KVL exact by construction
  op.residual = r.relative();
  op.iterations = iterations;
  return op;
}

}  // namespace

OperatingPoint solve_operating_point(double V_device, double q,
                                     const DeviceParams& p, double xi_tol,
                                     int max_iters) {
  if (V_device == 0.0) return {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0};

  effective_barriers(q, p);  // surface a degenerate state before iterating

  // g is strictly increasing in V_TB (tunnel current grows, Schottky drop
  // shrinks), so the root lies between "no tunnel drop" and "all of V_device
  // on the tunnel barrier".
  double lo = std::min(0.0, V_device);
  double hi = std::max(0.0, V_device);
  Residual r_lo = eval(lo, V_device, q, p);
  Residual r_hi = eval(hi, V_device, q, p);

  if (r_lo.g == 0.0) return make_point(lo, V_device, r_lo, 0);
  if (r_hi.g == 0.0) return make_point(hi, V_device, r_hi, 0);

  // The bracket holds for any monotone element laws; expand a few times in
  // case extreme parameters push the root past V_device.
  int expansions = 0;
  while (r_lo.g * r_hi.g > 0.0 && expansions < 8) {
    const double width = hi - lo;
    lo -= 0.5 * width;
    hi += 0.5 * width;
    r_lo = eval(lo, V_device, q, p);
    r_hi = eval(hi, V_device, q, p);
    ++expansions;
  }
  if (r_lo.g * r_hi.g > 0.0)
    throw convergence_error(
        "operating point: no sign change of the KCL residual on the bracket at "
        "V_device = " + std::to_string(V_device),
        std::min(r_lo.relative(), r_hi.relative()));

  const double width_tol = 1e-12;
  double mid = hi;
  Residual r_mid = r_hi;
  int iters = 0;
  for (; iters < max_iters; ++iters) {
    mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;  // bracket exhausted at double precision
    r_mid = eval(mid, V_device, q, p);
    if (r_mid.g == 0.0) break;
    if ((r_mid.g > 0.0) == (r_hi.g > 0.0)) {
      hi = mid;
      r_hi = r_mid;
    } else {
      lo = mid;
      r_lo = r_mid;
    }
    if (hi - lo <= width_tol && r_mid.relative() <= xi_tol) break;
  }

  // Return the bracket endpoint with the smaller residual if it beats the
  // midpoint (happens when the current floor dominates near I = 0).
  Residual best = r_mid;
  double best_v = mid;
  if (r_lo.relative() < best.relative()) { best = r_lo; best_v = lo; }
  if (r_hi.relative() < best.relative()) { best = r_hi; best_v = hi; }

  if (best.relative() > xi_tol)
    throw convergence_error(
        "operating point: residual " + std::to_string(best.relative()) +
        " above tolerance after " + std::to_string(iters) + " iterations at "
        "V_device = " + std::to_string(V_device),
        best.relative());

  return make_point(best_v, V_device, best, iters);
}

}  // namespace dbmd
