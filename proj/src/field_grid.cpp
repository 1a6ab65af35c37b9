#include "dbmd/field_grid.hpp"

#include <cassert>
#include <cmath>
#include <string>

#include "dbmd/constants.hpp"
#include "dbmd/errors.hpp"

namespace dbmd {

FieldGrid::FieldGrid(int n_nodes, double length, double eps_r)
    : n_nodes_(n_nodes),
      length_(length),
      dx_(length / (n_nodes - 1)),
      eps_(eps_r * eps0),
      rho_(n_nodes, 0.0),
      phi_(n_nodes, 0.0),
      e_node_(n_nodes, 0.0),
      c_prime_(n_nodes, 0.0),
      d_prime_(n_nodes, 0.0) {
  if (n_nodes < 3) throw config_error("field grid needs n_grid >= 3");
  if (length <= 0 || eps_r <= 0)
    throw config_error("field grid needs positive length and permittivity");
}

double FieldGrid::cell_width(int j) const {
  return (j == 0 || j == n_nodes_ - 1) ? 0.5 * dx_ : dx_;
}

void FieldGrid::deposit(std::span<const double> positions,
                        std::span<const double> sheet_charges) {
  assert(positions.size() == sheet_charges.size());
  std::fill(rho_.begin(), rho_.end(), 0.0);
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const double x = positions[i];
    if (!(x >= 0.0 && x <= length_))
      throw out_of_domain_error("deposit: particle " + std::to_string(i) +
                                " at x = " + std::to_string(x) +
                                " outside [0, l_SE]");
    int j = static_cast<int>(x / dx_);
    if (j >= n_nodes_ - 1) j = n_nodes_ - 2;  // x == length lands on the last cell
    const double f = x / dx_ - j;
    // Linear split, then volume normalization by each node's cell width.
    rho_[j] += sheet_charges[i] * (1.0 - f) / cell_width(j);
    rho_[j + 1] += sheet_charges[i] * f / cell_width(j + 1);
  }
}

double FieldGrid::total_deposited_charge() const {
  double sum = 0.0;
  for (int j = 0; j < n_nodes_; ++j) sum += rho_[j] * cell_width(j);
  return sum;
}

void FieldGrid::solve_poisson(double phi_left, double phi_right) {
  // Interior stencil phi_{j-1} - 2 phi_j + phi_{j+1} = -rho_j dx^2 / eps,
  // Dirichlet rows at both ends; standard Thomas forward sweep.
  const int n = n_nodes_;
  const double rhs_scale = -dx_ * dx_ / eps_;

  phi_[0] = phi_left;
  phi_[n - 1] = phi_right;

  // Eliminate against the known boundary values: j runs 1..n-2.
  // b = -2, a = c = 1.
  c_prime_[1] = 1.0 / -2.0;
  d_prime_[1] = (rhs_scale * rho_[1] - phi_left - (n == 3 ? phi_right : 0.0)) / -2.0;
  for (int j = 2; j <= n - 2; ++j) {
    const double rhs = rhs_scale * rho_[j] - (j == n - 2 ? phi_right : 0.0);
    const double denom = -2.0 - c_prime_[j - 1];
    c_prime_[j] = 1.0 / denom;
    d_prime_[j] = (rhs - d_prime_[j - 1]) / denom;
  }
  phi_[n - 2] = d_prime_[n - 2];
  for (int j = n - 3; j >= 1; --j)
    phi_[j] = d_prime_[j] - c_prime_[j] * phi_[j + 1];

  // E = -dphi/dx: central differences inside, one-sided second order at the
  // boundaries.
  const double inv2dx = 1.0 / (2.0 * dx_);
  e_node_[0] = -(-3.0 * phi_[0] + 4.0 * phi_[1] - phi_[2]) * inv2dx;
  for (int j = 1; j <= n - 2; ++j)
    e_node_[j] = -(phi_[j + 1] - phi_[j - 1]) * inv2dx;
  e_node_[n - 1] = -(3.0 * phi_[n - 1] - 4.0 * phi_[n - 2] + phi_[n - 3]) * inv2dx;
}

double FieldGrid::efield_at(double x) const {
  if (!(x >= 0.0 && x <= length_))
    throw out_of_domain_error("efield_at: x = " + std::to_string(x) +
                              " outside [0, l_SE]");
  int j = static_cast<int>(x / dx_);
  if (j >= n_nodes_ - 1) j = n_nodes_ - 2;
  const double f = x / dx_ - j;
  // Same linear kernel as the deposit.
  return e_node_[j] * (1.0 - f) + e_node_[j + 1] * f;
}

double FieldGrid::phi_at(double x) const {
  if (!(x >= 0.0 && x <= length_))
    throw out_of_domain_error("phi_at: x = " + std::to_string(x) +
                              " outside [0, l_SE]");
  int j = static_cast<int>(x / dx_);
  if (j >= n_nodes_ - 1) j = n_nodes_ - 2;
  const double f = x / dx_ - j;
  return phi_[j] * (1.0 - f) + phi_[j + 1] * f;
}

}  // namespace dbmd
