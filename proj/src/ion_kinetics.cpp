#include "dbmd/ion_kinetics.hpp"

#include <algorithm>
#include <cmath>

#include "dbmd/constants.hpp"
#include "dbmd/errors.hpp"

namespace dbmd {

double IonEnsemble::d_bar() const {
  double sum = 0.0;
  for (double x : x_mobile) sum += x - x_SC;
  return sum / static_cast<double>(x_mobile.size());
}

void enforce_single_file(std::vector<double>& x, double s_min, double x_lo,
                         double x_hi) {
  const int n = static_cast<int>(x.size());
  if (n == 0) return;
  // Fast path: constraints already hold (to a relative slack well below any
  // physical displacement), leave the positions bit-untouched.
  const double slack = 1e-9 * s_min;
  bool clean = x.front() >= x_lo - slack && x.back() <= x_hi + slack;
  for (int i = 1; clean && i < n; ++i)
    clean = x[i] - x[i - 1] >= s_min - slack;
  if (clean) return;
  // Gap coordinates y_i = x_i - i*s_min must be non-decreasing; project with
  // pool-adjacent-violators (block means), then clamp to the wall bounds.
  static thread_local std::vector<double> mean, weight;
  static thread_local std::vector<int> count;
  mean.clear();
  weight.clear();
  count.clear();
  for (int i = 0; i < n; ++i) {
    double m = x[i] - i * s_min;
    double w = 1.0;
    int c = 1;
    while (!mean.empty() && mean.back() >= m) {
      m = (mean.back() * weight.back() + m * w) / (weight.back() + w);
      w += weight.back();
      c += count.back();
      mean.pop_back();
      weight.pop_back();
      count.pop_back();
    }
    mean.push_back(m);
    weight.push_back(w);
    count.push_back(c);
  }
  const double y_max = x_hi - (n - 1) * s_min;
  int i = 0;
  for (std::size_t b = 0; b < mean.size(); ++b) {
    const double y = std::clamp(mean[b], x_lo, y_max);
    for (int k = 0; k < count[b]; ++k, ++i) x[i] = y + i * s_min;
  }
}

IonEnsemble init_random(const DeviceParams& params, int n_ions, Rng& rng) {
  if (n_ions < 1) throw config_error("n_ions >= 1");
  IonEnsemble e;
  e.l_SE = params.l_SE;
  e.x_lo = params.d;  // nearest interstitial site off each blocking interface
  e.x_hi = params.l_SE - params.d;
  e.s_min = params.d / n_ions;
  if (!(e.x_lo + (n_ions - 1) * e.s_min < e.x_hi))
    throw config_error("ion domain too small: need l_SE > 3*d");
  e.x_mobile.resize(n_ions);
  for (int i = 0; i < n_ions; ++i)
    e.x_mobile[i] = rng.uniform(e.x_lo, e.x_hi);
  // Ions cannot pass each other in single file; keep them sorted and apart.
  std::sort(e.x_mobile.begin(), e.x_mobile.end());
  enforce_single_file(e.x_mobile, e.s_min, e.x_lo, e.x_hi);
  // The fixed counter-ions sit where the mobile ions start: the dispersed
  // (high-resistance) state carries no net local charge.
  e.x_fixed = e.x_mobile;
  // The computational particles jointly carry the full mobile charge implied
  // by the defect density.
  e.sheet_charge_mobile =
      params.z * phys.e * params.n_defect * params.l_SE / n_ions;
  e.sheet_charge_fixed = -e.sheet_charge_mobile;
  e.d_bar_r = e.d_bar();
  return e;
}

double drift_velocity(double E_local, const DeviceParams& params) {
  const double kT = phys.k_B * params.T;
  const double hop_rate =
      params.nu_0 * std::exp(-params.E_A * phys.e / kT);  // E_A: eV -> J
  double a = std::abs(params.z) * phys.e * params.d * E_local / (2.0 * kT);
  a = std::clamp(a, -50.0, 50.0);
  const double sgn = params.z < 0 ? -1.0 : 1.0;
  return sgn * params.d * hop_rate * (std::exp(a) - std::exp(-a));
}

double internal_state(const IonEnsemble& ensemble) {
  return (ensemble.d_bar() - ensemble.d_bar_r) / ensemble.d_bar_r;
}

void push(IonEnsemble& ensemble, const FieldGrid& grid, double dt,
          const DeviceParams& params) {
  for (double& x : ensemble.x_mobile) {
    const double v = drift_velocity(grid.efield_at(x), params);
    x = std::clamp(x + v * dt, ensemble.x_lo, ensemble.x_hi);
  }
  enforce_single_file(ensemble.x_mobile, ensemble.s_min, ensemble.x_lo,
                      ensemble.x_hi);
}

void perturb(IonEnsemble& ensemble, const StochasticConfig& cfg, Rng& rng) {
  if (!cfg.perturbation_enabled || cfg.delta == 0.0) return;
  for (double& x : ensemble.x_mobile) {
    const double r = rng.uniform();
    double moved = x + (r - 0.5) * cfg.delta * x;
    // Reflect at the blocking walls: plain truncation would bias the noise
    // inward and statistically compress the ensemble against the boundary.
    if (moved < ensemble.x_lo) moved = 2.0 * ensemble.x_lo - moved;
    if (moved > ensemble.x_hi) moved = 2.0 * ensemble.x_hi - moved;
    x = std::clamp(moved, ensemble.x_lo, ensemble.x_hi);
  }
  std::sort(ensemble.x_mobile.begin(), ensemble.x_mobile.end());
  enforce_single_file(ensemble.x_mobile, ensemble.s_min, ensemble.x_lo,
                      ensemble.x_hi);
}

}  // namespace dbmd
