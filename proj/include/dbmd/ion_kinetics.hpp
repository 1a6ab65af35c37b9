#pragma once

#include <vector>

#include "dbmd/field_grid.hpp"
#include "dbmd/params.hpp"
#include "dbmd/rng.hpp"

namespace dbmd {

/// Lagrangian ion ensemble in the electrolyte. Mobile ions drift in the mesh
/// field; fixed counter-ions sit at the initial mobile positions and keep the
/// starting arrangement locally neutral. The Schottky contact is at x = 0.
struct IonEnsemble {
  std::vector<double> x_mobile;  // [m], all in [x_lo, x_hi]
  std::vector<double> x_fixed;   // [m], immutable
  double sheet_charge_mobile = 0.0;  // per-particle [C/m^2], negative for z<0
  double sheet_charge_fixed = 0.0;   // = -sheet_charge_mobile
  double d_bar_r = 0.0;          // initial average distance to the contact [m]
  double l_SE = 0.0;             // domain length [m]
  // Mobile ions keep one lattice constant of standoff from each electrode:
  // the interfaces block, and a coordinate exactly on a Dirichlet node would
  // drop its charge out of the field solve.
  double x_lo = 0.0;             // [m]
  double x_hi = 0.0;             // [m]
  // Single-file exclusion: sheets cannot overtake each other, and the fully
  // compressed stack spans one lattice constant. Keeps the accumulation
  // layer resolved instead of collapsing every ion onto one coordinate.
  double s_min = 0.0;            // minimum ion spacing [m], d / n_ions

  static constexpr double x_SC = 0.0;

  /// Average distance of the mobile ions from the Schottky contact [m].
  double d_bar() const;
};

/// Draws n_ions mobile positions i.i.d. uniform on the ion domain
/// (d, l_SE - d); the fixed ions copy the initial mobile positions so the
/// starting charge density vanishes. This dispersed arrangement is the
/// device's high-resistance state.
IonEnsemble init_random(const DeviceParams& params, int n_ions, Rng& rng);

/// Signed hopping drift velocity [m/s] of an ion in local field E [V/m]; the
/// sign follows the electrostatic force z*e*E. The exponent is clamped to
/// +-50 against overflow at unphysical fields.
double drift_velocity(double E_local, const DeviceParams& params);

/// Internal state q = (d_bar - d_bar_r) / d_bar_r.
double internal_state(const IonEnsemble& ensemble);

/// Euler push of every mobile ion in the grid's solved field; positions are
/// clamped to the ion domain [x_lo, x_hi] (blocking electrodes, one lattice
/// constant of standoff). Fixed ions never move.
void push(IonEnsemble& ensemble, const FieldGrid& grid, double dt,
          const DeviceParams& params);

/// Random displacement x -> x + (r-0.5)*delta*x per mobile ion (fresh draw
/// each, ion index ascending), reflected off the ion-domain walls so the
/// noise stays zero-mean near the boundaries. No draws are consumed when the
/// perturbation is disabled or delta == 0.
void perturb(IonEnsemble& ensemble, const StochasticConfig& cfg, Rng& rng);

/// Restores the single-file order with minimum spacing s_min inside
/// [x_lo, x_hi]: isotonic (pool-adjacent-violators) projection of the gap
/// coordinates, which preserves the ensemble mean wherever the walls do not
/// bind. Positions must be kept sorted by the caller between projections.
void enforce_single_file(std::vector<double>& x, double s_min, double x_lo,
                         double x_hi);

}  // namespace dbmd
