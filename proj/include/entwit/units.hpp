#pragma once

// Unit conventions.
//
// The library works in natural units throughout: hbar = k_B = mu_B = 1 and
// g = 2. Temperatures are energies, couplings are Pauli-operator (sigma)
// couplings, and the magnetization operator is (1/2) sum_j sigma^z_j.
//
// Physical-unit conversions live only at the CLI boundary:
//   * temperatures:   T[meV] = KB_MEV_PER_K * T[K]
//   * exchange constants quoted for real materials use the spin-1/2
//     convention H = sum J S.S; with sigma = 2 S that maps to a sigma
//     coupling of J/4.

namespace entwit::units {

inline constexpr double kb_mev_per_k = 8.617333e-2;  // Boltzmann constant, meV/K

// sigma = 2 S: an exchange constant J (for H = sum J S.S) equals 4x the
// coupling of the same bond written with Pauli operators.
inline constexpr double sigma_coupling_per_spin_coupling = 0.25;

inline double mev_from_kelvin(double t_kelvin) { return t_kelvin * kb_mev_per_k; }
inline double kelvin_from_mev(double e_mev) { return e_mev / kb_mev_per_k; }

// SI constants for the free-gas formulas in physical mode.
inline constexpr double hbar_si = 1.054571817e-34;  // J s
inline constexpr double kb_si = 1.380649e-23;       // J/K

}  // namespace entwit::units
