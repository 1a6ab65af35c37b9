#!/usr/bin/env python3
"""Frozen oracle values for the transport-formula tests.

Evaluates the four closed-form element laws (Simmons tunnel current, thermionic
Schottky current, hopping drift velocity, Ohmic drop) independently of the C++
implementation, at 50-digit precision, and emits a C++ header with randomized
input points plus the expected double-rounded results.

Regenerate with:
    python3 gen_formula_oracle.py > ../oracle_data.hpp
"""

import random

import mpmath as mp

mp.mp.dps = 50

E_CHARGE = mp.mpf("1.602176634e-19")     # [C]
M_ELECTRON = mp.mpf("9.1093837015e-31")  # [kg]
PLANCK = mp.mpf("6.62607015e-34")        # [J s]
K_B = mp.mpf("1.380649e-23")             # [J/K]
A_STAR = mp.mpf("1.20173e6")             # [A m^-2 K^-2]


def tunnel_current(V_TB, q, A_d, d_0, phi_t, beta, lam_d, lam_t):
    """Simmons intermediate-voltage tunnel current, odd-extended in V_TB.

    Barrier quantities enter in joules; phi_t is in eV.
    """
    d_eff = mp.mpf(d_0) * (1 + mp.mpf(lam_d) * mp.mpf(q))
    phi_eff = mp.mpf(phi_t) * (1 + mp.mpf(lam_t) * mp.mpf(q)) * E_CHARGE
    a_coef = 4 * mp.pi * mp.mpf(beta) * d_eff * mp.sqrt(2 * M_ELECTRON) / PLANCK
    pre = E_CHARGE * mp.mpf(A_d) / (2 * mp.pi * PLANCK * (mp.mpf(beta) * d_eff) ** 2)
    ev = E_CHARGE * abs(mp.mpf(V_TB))
    mag = pre * (
        phi_eff * mp.exp(-a_coef * mp.sqrt(phi_eff))
        - (phi_eff + ev) * mp.exp(-a_coef * mp.sqrt(phi_eff + ev))
    )
    return -mag if V_TB < 0 else mag


def schottky_current(V_SC, q, T, A_d, phi_b0, n_0, alpha_r, lam_b, lam_n):
    """Thermionic-emission diode current with reverse-bias sqrt(V) enhancement.

    phi_b0 and alpha_r·sqrt(|V|) are energies in eV.
    """
    V_SC = mp.mpf(V_SC)
    kT_eV = K_B * mp.mpf(T) / E_CHARGE
    phi_eff = mp.mpf(phi_b0) * (1 + mp.mpf(lam_b) * mp.mpf(q))
    n_eff = mp.mpf(n_0) * (1 + mp.mpf(lam_n) * mp.mpf(q))
    i_r = mp.mpf(A_d) * A_STAR * mp.mpf(T) ** 2 * mp.exp(-phi_eff / kT_eV)
    if V_SC < 0:
        i_r *= mp.exp(mp.mpf(alpha_r) * mp.sqrt(-V_SC) / kT_eV)
    return i_r * mp.expm1(V_SC / (n_eff * kT_eV))


def drift_velocity(E, T, d, E_A, nu_0, z):
    """Hopping-theory drift velocity, signed along the electrostatic force z·e·E."""
    kT = K_B * mp.mpf(T)
    p_hop = mp.mpf(nu_0) * mp.exp(-mp.mpf(E_A) * E_CHARGE / kT)
    a = abs(mp.mpf(z)) * E_CHARGE * mp.mpf(d) * mp.mpf(E) / (2 * kT)
    sgn = -1 if z < 0 else 1
    return sgn * mp.mpf(d) * p_hop * (mp.exp(a) - mp.exp(-a))


def ohmic_drop(I, l_SE, sigma, A_d):
    return mp.mpf(I) * mp.mpf(l_SE) / (mp.mpf(sigma) * mp.mpf(A_d))


def lit(x):
    """Exact C++ double literal (hexfloat) for a Python float."""
    return f"{float(x):a}" if False else float(x).hex()


def row(vals):
    return "    {" + ", ".join(lit(v) for v in vals) + "},"


def emit(points, struct, name, fields):
    print(f"struct {struct} {{")
    print(f"  double {', '.join(fields)};")
    print("};")
    print(f"inline constexpr {struct} {name}[] = {{")
    for p in points:
        print(row(p))
    print("};")
    print()


def main():
    rng = random.Random(20240917)

    tunnel_pts = []
    # Reference stack point first, then randomized parameter draws.
    tunnel_pts.append((0.5, 0.0, 6.25e-10, 1.1e-9, 3.2, 1.0, 0.25, 0.25))
    for _ in range(24):
        tunnel_pts.append(
            (
                rng.uniform(-2.0, 2.0),
                rng.uniform(-0.8, 0.5),
                rng.uniform(1e-10, 1e-9),
                rng.uniform(0.8e-9, 1.4e-9),
                rng.uniform(2.5, 3.8),
                rng.uniform(0.8, 1.2),
                rng.uniform(0.0, 0.5),
                rng.uniform(0.0, 0.5),
            )
        )
    tunnel_rows = [p + (tunnel_current(*p),) for p in tunnel_pts]

    schottky_pts = [
        (0.3, 0.0, 300.0, 6.25e-10, 0.98, 4.2, 0.1, 0.25, 0.25),
        (-0.3, 0.0, 300.0, 6.25e-10, 0.98, 4.2, 0.1, 0.25, 0.25),
    ]
    for _ in range(23):
        schottky_pts.append(
            (
                rng.uniform(-1.5, 1.5),
                rng.uniform(-0.8, 0.5),
                rng.uniform(250.0, 350.0),
                rng.uniform(1e-10, 1e-9),
                rng.uniform(0.7, 1.2),
                rng.uniform(2.0, 6.0),
                rng.uniform(0.05, 0.3),
                rng.uniform(0.0, 0.5),
                rng.uniform(-0.5, 0.5),
            )
        )
    schottky_rows = [p + (schottky_current(*p),) for p in schottky_pts]

    drift_pts = [(4e8, 300.0, 2.5e-10, 0.76, 1e12, -2.0)]
    for _ in range(24):
        drift_pts.append(
            (
                rng.uniform(-1.5e9, 1.5e9),
                rng.uniform(250.0, 350.0),
                rng.uniform(1.5e-10, 4e-10),
                rng.uniform(0.5, 1.0),
                rng.uniform(1e11, 1e14),
                rng.choice([-1.0, -2.0]),
            )
        )
    drift_rows = [p + (drift_velocity(*p),) for p in drift_pts]

    ohmic_pts = [(1e-6, 2.5e-9, 1e-4, 6.25e-10)]
    for _ in range(24):
        ohmic_pts.append(
            (
                rng.uniform(-1e-3, 1e-3),
                rng.uniform(1e-9, 5e-9),
                rng.uniform(1e-5, 1e-3),
                rng.uniform(1e-10, 1e-9),
            )
        )
    ohmic_rows = [p + (ohmic_drop(*p),) for p in ohmic_pts]

    print("// Generated by tests/oracles/gen_formula_oracle.py -- do not edit by hand.")
    print("#pragma once")
    print()
    print("namespace oracle {")
    print()
    emit(
        tunnel_rows,
        "TunnelPoint",
        "kTunnelPoints",
        ["V_TB", "q", "A_d", "d_0", "phi_t", "beta", "lambda_d", "lambda_t", "expected"],
    )
    emit(
        schottky_rows,
        "SchottkyPoint",
        "kSchottkyPoints",
        ["V_SC", "q", "T", "A_d", "phi_b0", "n_0", "alpha_r", "lambda_b", "lambda_n", "expected"],
    )
    emit(
        drift_rows,
        "DriftPoint",
        "kDriftPoints",
        ["E", "T", "d", "E_A", "nu_0", "z", "expected"],
    )
    emit(
        ohmic_rows,
        "OhmicPoint",
        "kOhmicPoints",
        ["I", "l_SE", "sigma", "A_d", "expected"],
    )
    print(f"inline constexpr double kThermalEnergy300K = {lit(K_B * 300)};")
    print(f"inline constexpr double kDriftExample4e8 = {lit(drift_rows[0][-1])};")
    print(f"inline constexpr double kTunnelExampleHalfVolt = {lit(tunnel_rows[0][-1])};")
    print(f"inline constexpr double kSchottkyExamplePlus = {lit(schottky_rows[0][-1])};")
    print(f"inline constexpr double kSchottkyExampleMinus = {lit(schottky_rows[1][-1])};")
    print(f"inline constexpr double kOhmicExampleMicroamp = {lit(ohmic_rows[0][-1])};")
    print()
    print("}  // namespace oracle")


if __name__ == "__main__":
    main()
