#pragma once

namespace dbmd {

/// Universal constants used by the element laws. Values are the 2019 SI exact
/// definitions where they exist; A_star is the effective Richardson constant
/// for the Schottky contact.
struct PhysicalConstants {
  double e = 1.602176634e-19;      // elementary charge [C]
  double m = 9.1093837015e-31;     // free electron mass [kg]
  double h = 6.62607015e-34;       // Planck constant [J s]
  double k_B = 1.380649e-23;       // Boltzmann constant [J/K]
  double A_star = 1.20173e6;       // effective Richardson constant [A m^-2 K^-2]
};

inline constexpr PhysicalConstants phys{};

inline constexpr double eps0 = 8.8541878128e-12;  // vacuum permittivity [F/m]
inline constexpr double pi = 3.14159265358979323846;

}  // namespace dbmd
