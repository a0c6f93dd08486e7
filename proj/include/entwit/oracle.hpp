#pragma once

#include <cstdint>

#include "entwit/witnesses.hpp"

// Brute-force verification layer. Certifies the separable energy bound by
// direct optimization over pure product states (the exchange expectation
// is linear in each site's state, so pure products attain the separable
// extremum), and locates witness sign changes by bisection.

namespace entwit {

struct OracleReport {
    double best_value = 0.0;  // max |<H_ex>| found over product states
    double bound = 0.0;       // claimed separable bound N |J|
    double gap = 0.0;         // bound - best_value
    int restarts_used = 0;
    std::uint64_t seed = 0;
    int unconverged_restarts = 0;  // restarts stopped at the sweep cap
};

/// Maximize |<H_ex>| over product states by coordinate ascent on per-site
/// Bloch vectors (each update aligns a site with its local mean field;
/// planar bonds see only the in-plane components). `restarts` seeded
/// random initializations; deterministic for a fixed seed.
OracleReport max_abs_exchange_over_products(const ModelOperators& ops, int restarts,
                                            std::uint64_t seed);

/// Bisect the witness margin's sign change in [t_lo, t_hi] to relative
/// width 1e-6. The susceptibility witness is evaluated at zero field per
/// its bound. Throws std::runtime_error when the bracket has no sign
/// change (the message states whether both ends are flagged or neither).
double witness_crossing_temperature(const ChainSpec& spec, WitnessId witness_id, double t_lo,
                                    double t_hi);

struct VarianceBoundReport {
    double min_value = 0.0;  // least variance sum found over separable states
    double bound = 0.0;      // N / 2, attained by every pure product state
    int samples_used = 0;
    std::uint64_t seed = 0;
};

/// Brute-force certificate behind the susceptibility witness: sample
/// random separable states (mixtures of product states with arbitrary
/// single-site purity) and minimize sum_alpha Var(M_alpha), evaluated in
/// closed form from the Bloch data. Separability forces the sum to stay
/// at or above N/2; pure products attain it, so min_value reports N/2
/// when the bound is tight and any dip below it would disprove the
/// witness threshold.
VarianceBoundReport min_variance_sum_over_separable(int num_sites, int samples, int max_mixture,
                                                    std::uint64_t seed);

}  // namespace entwit
