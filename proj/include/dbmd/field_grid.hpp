#pragma once

#include <span>
#include <vector>

namespace dbmd {

/// Eulerian 1D grid over the solid-state electrolyte. Charge is deposited
/// with the cloud-in-a-cell linear kernel, the potential solved from the
/// Poisson equation with Dirichlet boundaries, and the field gathered back at
/// particle positions with the same kernel.
class FieldGrid {
 public:
  /// n_nodes >= 3; length is the electrolyte thickness [m]; eps_r the relative
  /// permittivity (uniform).
  FieldGrid(int n_nodes, double length, double eps_r);

  /// Clears rho and deposits the given sheet charges [C/m^2] at positions [m].
  /// Each charge is split linearly between its two bracketing nodes and
  /// converted to volume density by the node cell width (half cells at the
  /// boundaries). Throws out_of_domain_error naming the particle index.
  void deposit(std::span<const double> positions,
               std::span<const double> sheet_charges);

  /// Solves d/dx(eps dphi/dx) = -rho with phi(0)=phi_left, phi(L)=phi_right
  /// by the Thomas algorithm, then fills the per-node field (central
  /// differences inside, one-sided second order at the boundaries).
  void solve_poisson(double phi_left, double phi_right);

  /// Field at x by linear interpolation of the node field [V/m].
  double efield_at(double x) const;

  /// Potential at x by linear interpolation of the node values [V].
  double phi_at(double x) const;

  int n_nodes() const { return n_nodes_; }
  double dx() const { return dx_; }
  double length() const { return length_; }
  double eps() const { return eps_; }
  double node_x(int j) const { return dx_ * j; }
  /// Cell width owned by node j (dx, or dx/2 at the boundaries).
  double cell_width(int j) const;

  const std::vector<double>& rho() const { return rho_; }
  const std::vector<double>& phi() const { return phi_; }
  const std::vector<double>& e_node() const { return e_node_; }

  /// Sum of rho_j * cell_width_j, for charge-conservation checks [C/m^2].
  double total_deposited_charge() const;

 private:
  int n_nodes_;
  double length_;
  double dx_;
  double eps_;  // absolute permittivity [F/m]
  std::vector<double> rho_;     // [C/m^3]
  std::vector<double> phi_;     // [V]
  std::vector<double> e_node_;  // [V/m]
  // Thomas algorithm scratch
  std::vector<double> c_prime_;
  std::vector<double> d_prime_;
};

}  // namespace dbmd
