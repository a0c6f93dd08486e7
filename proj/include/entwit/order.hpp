#pragma once

#include <optional>
#include <vector>

#include "entwit/thermal.hpp"

// Two-point correlation functions on chain thermal states and
// classification of their decay with separation: long-range order
// (constant), quasi order (power law) or exponential disorder.
// All statements refer to the finite window actually sampled; nothing is
// extrapolated to the thermodynamic limit.

namespace entwit {

enum class CorrelatorKind { zz, full_dot };

/// <sigma^z_i sigma^z_j> or <sigma_i . sigma_j> under the thermal state of
/// h_total. `connected` subtracts <sigma^z_i><sigma^z_j> (zz only).
double correlator(const ModelOperators& ops, double temperature, CorrelatorKind kind, int site_i,
                  int site_j, bool connected);

struct CorrelationSeries {
    std::vector<int> separations;  // strictly increasing, >= 1
    std::vector<double> values;
    bool connected = false;
};

/// C(r) for each requested separation, from one diagonalization. Site
/// pairs are centered in open chains and anchored at site 0 in rings.
CorrelationSeries correlation_series(const ModelOperators& ops, double temperature,
                                     CorrelatorKind kind, const std::vector<int>& separations,
                                     bool connected);

enum class DecayClass { lro, power_law, exponential, inconclusive };

struct DecayClassification {
    DecayClass decay_class = DecayClass::inconclusive;
    std::optional<double> eta;  // power-law exponent |eta|, PowerLaw only
    std::optional<double> xi;   // correlation length, Exponential only
    double fit_quality = 0.0;   // 1/(1 + rms log residual) of the chosen fit
    int dropped_zero_values = 0;
    bool alternating_sign = false;  // period-2 sign pattern was factored out
};

/// Least-squares fit of constant / a r^-|eta| / a e^{-r/xi} models to
/// |C(r)| (log-transformed coordinates). A decaying model competes only
/// when it actually decays and improves on the constant fit by at least
/// 10% (otherwise it is the constant in disguise); among the surviving
/// candidates the best residual wins, and a runner-up within 10% makes
/// the call Inconclusive.
DecayClassification classify_decay(const CorrelationSeries& series);

}  // namespace entwit
