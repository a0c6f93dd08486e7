#pragma once

#include <optional>
#include <string>

// Closed-form results for the free Bose gas in a box: mode energies,
// condensation energy, minimum spatially-separable energy, the
// separability transition temperature, its M = N specialization as an
// upper estimate for the BEC critical temperature, and a numerical probe
// of the low-dimension condensate-fraction divergence.
//
// Natural units hbar = k_B = 1 unless stated otherwise.

namespace entwit::bosegas {

struct BoxGasSpec {
    double mass = 1.0;
    double volume = 1.0;  // length^d
    int dimension = 3;
    long long num_particles = 1;
    long long num_regions = 1;
};

void validate(const BoxGasSpec& spec);

/// Riemann zeta for s > 1, via a truncated series with an Euler-Maclaurin
/// tail; absolute accuracy better than 1e-10 over the whole range.
double zeta(double s);

/// E_k = (1/2m) (k pi / L)^2, k = 1, 2, ... for a box of length L.
double mode_energy(int k, double box_length, double mass);

/// N bosons condensed into the box ground mode (1-D): N * E_1.
double condensation_energy(const BoxGasSpec& spec);

/// Least energy of a configuration fully separable over `num_regions`
/// equal segments of a 1-D box: N (1/2m) (pi M / L)^2 = M^2 * E_cond.
double min_separable_energy(const BoxGasSpec& spec, long long num_regions);

struct TransitionReport {
    double t_trans = 0.0;  // separability -> entanglement transition
    double t_crit = 0.0;   // t_trans at M = N (BEC upper estimate)
    double t_bec = 0.0;    // ideal-gas BEC temperature, 0 for d <= 2
    double ratio_crit_over_bec = 0.0;
    bool ratio_infinite = false;  // set when t_bec = 0
};

/// T_trans = (2 pi / (m V^{2/d})) (pi N M^{2/d} / (2 zeta(1 + d/2)))^{2/(2+d)}
/// and friends. t_crit is computed as t_trans at M = N, which coincides
/// with the closed density form. t_bec uses the standard ideal-gas result
/// (2 pi / m)(rho / zeta(d/2))^{2/d} and is 0 for d <= 2 where zeta(d/2)
/// diverges.
TransitionReport transition_temperatures(const BoxGasSpec& spec);

/// Density scaling exponent of t_crit: 2/d (equals 1 in two dimensions).
double homes_scaling_exponent(int dimension);

enum class DivergenceClass { power, logarithmic, convergent };

struct DivergenceProbe {
    double integral_value = 0.0;  // I(epsilon, p_max) at the requested cutoff
    DivergenceClass divergence_class = DivergenceClass::convergent;
    std::optional<double> power_exponent;  // d ln I / d ln eps, power class
    double fit_correlation = 0.0;          // quality of the selected fit
};

/// Integrate p^{d-1} / (e^{p^2/2} - 1) over [epsilon, p_max] (m = k_B T
/// = 1) and classify the small-cutoff behaviour by sampling one decade of
/// epsilon values: a power divergence (slope of log I vs log eps), a
/// logarithmic one (I linear in ln(1/eps)), or convergence (< 1% variation
/// per decade). Ambiguous fits raise std::runtime_error.
DivergenceProbe condensate_fraction_probe(int dimension, double epsilon, double p_max,
                                          int samples);

std::string to_string(DivergenceClass c);

}  // namespace entwit::bosegas
