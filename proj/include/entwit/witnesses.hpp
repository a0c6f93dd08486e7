#pragma once

#include <string>
#include <vector>

#include "entwit/thermal.hpp"

// Thermodynamic entanglement witnesses and (T, B) phase diagrams.
//
// Both witnesses are sufficient conditions only: a positive margin
// certifies entanglement, a non-positive one decides nothing, so verdicts
// are Entangled / Unknown and never "separable".

namespace entwit {

enum class WitnessId { energy, susceptibility };
enum class Verdict { entangled, unknown };

struct WitnessVerdict {
    WitnessId witness_id = WitnessId::energy;
    double value = 0.0;   // measured combination
    double bound = 0.0;   // separable threshold
    double margin = 0.0;  // positive = entangled
    Verdict verdict = Verdict::unknown;
};

/// Total-energy witness: a fully separable chain obeys |U + B M| <= N |J|
/// (U is the full internal energy <H_total>). margin = |U + B M| - N|J|.
WitnessVerdict energy_witness(double u_total, double field_b, double m, int num_sites, double j);

/// Susceptibility witness: separable states keep the zero-field
/// susceptibility at or above chi_trans = (1/6) g^2 mu_B^2 N / (k_B T);
/// margin = chi_trans - chi.
WitnessVerdict susceptibility_witness(double chi, double temperature, int num_sites,
                                      double g = 2.0);

/// Energy-gap heuristic for the entanglement transition of a gapped
/// alternating chain: T ~ J1 / k_B (returns J1 directly, k_B = 1).
double gap_transition_estimate(double j1);

struct PhaseCell {
    ThermoPoint point;      // evaluated at the cell's (T, B)
    WitnessVerdict energy;  // from <H_ex> at (T, B)
    WitnessVerdict chi;     // from the zero-field powder chi at this T
};

struct PhaseDiagram {
    std::vector<double> t_axis;  // strictly increasing
    std::vector<double> b_axis;  // strictly increasing
    // cells[ib * t_axis.size() + it]
    std::vector<PhaseCell> cells;

    const PhaseCell& at(std::size_t it, std::size_t ib) const {
        return cells[ib * t_axis.size() + it];
    }
};

/// Evaluate both witnesses over a (T, B) grid for the given chain
/// template (its field_b is replaced by each grid value). The
/// susceptibility witness always uses the zero-field powder-averaged
/// chi(T), the quantity its separable bound covers for every model. Cells are independent and evaluated on a small thread
/// pool; the result is deterministic.
PhaseDiagram sweep(const ChainSpec& spec, const std::vector<double>& t_axis,
                   const std::vector<double>& b_axis);

}  // namespace entwit
