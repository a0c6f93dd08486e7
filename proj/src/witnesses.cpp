#include "entwit/witnesses.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace entwit {

WitnessVerdict energy_witness(double u_total, double field_b, double m, int num_sites, double j) {
    if (num_sites < 2) throw std::invalid_argument("energy_witness: num_sites must be >= 2");
    if (j == 0.0 || !std::isfinite(j)) throw std::invalid_argument("energy_witness: J must be nonzero");
    WitnessVerdict v;
    v.witness_id = WitnessId::energy;
    v.value = std::abs(u_total + field_b * m);
    v.bound = num_sites * std::abs(j);
    v.margin = v.value - v.bound;
    v.verdict = v.margin > 0.0 ? Verdict::entangled : Verdict::unknown;
    return v;
}

WitnessVerdict susceptibility_witness(double chi, double temperature, int num_sites, double g) {
    if (!(temperature > 0.0))
        throw std::invalid_argument("susceptibility_witness: temperature must be > 0");
    if (num_sites < 1) throw std::invalid_argument("susceptibility_witness: num_sites must be >= 1");
    WitnessVerdict v;
    v.witness_id = WitnessId::susceptibility;
    v.value = chi;
    v.bound = g * g * num_sites / (6.0 * temperature);  // chi_trans, mu_B = k_B = 1
    v.margin = v.bound - chi;
    v.verdict = v.margin > 0.0 ? Verdict::entangled : Verdict::unknown;
    return v;
}

double gap_transition_estimate(double j1) {
    if (!(j1 > 0.0)) throw std::invalid_argument("gap_transition_estimate: j1 must be > 0");
    return j1;
}

PhaseDiagram sweep(const ChainSpec& spec, const std::vector<double>& t_axis,
                   const std::vector<double>& b_axis) {
    if (t_axis.empty() || b_axis.empty()) throw std::invalid_argument("sweep: empty axis");
    for (std::size_t i = 0; i < t_axis.size(); ++i) {
        if (!(t_axis[i] > 0.0)) throw std::invalid_argument("sweep: temperatures must be > 0");
        if (i && !(t_axis[i] > t_axis[i - 1]))
            throw std::invalid_argument("sweep: t_axis must be strictly increasing");
    }
    for (std::size_t i = 1; i < b_axis.size(); ++i)
        if (!(b_axis[i] > b_axis[i - 1]))
            throw std::invalid_argument("sweep: b_axis must be strictly increasing");

    ChainSpec zero_field = spec;
    zero_field.field_b = 0.0;
    validate(zero_field);
    const GibbsEvaluator ev0(build(zero_field));

    // zero-field chi(T) is shared by every field column
    std::vector<double> chi0(t_axis.size());
    for (std::size_t it = 0; it < t_axis.size(); ++it)
        chi0[it] = ev0.powder_susceptibility(t_axis[it]);

    PhaseDiagram diagram;
    diagram.t_axis = t_axis;
    diagram.b_axis = b_axis;
    diagram.cells.resize(t_axis.size() * b_axis.size());

    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto run_column = [&](std::size_t ib) {
        double at_t = t_axis.front();
        try {
            ChainSpec cell_spec = spec;
            cell_spec.field_b = b_axis[ib];
            const ModelOperators ops = build(cell_spec);
            const GibbsEvaluator ev(ops);
            for (std::size_t it = 0; it < t_axis.size(); ++it) {
                at_t = t_axis[it];
                PhaseCell cell;
                cell.point = ev.point(t_axis[it]);
                const double u_total = cell.point.u - cell_spec.field_b * cell.point.m;
                cell.energy = energy_witness(u_total, cell_spec.field_b, cell.point.m,
                                             spec.num_sites, ops.witness_coupling);
                cell.chi = susceptibility_witness(chi0[it], t_axis[it], spec.num_sites);
                diagram.cells[ib * t_axis.size() + it] = cell;
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) {
                try {
                    std::throw_with_nested(std::runtime_error(
                        "sweep: cell evaluation failed at T = " + std::to_string(at_t) +
                        ", B = " + std::to_string(b_axis[ib])));
                } catch (...) {
                    failure = std::current_exception();
                }
            }
        }
    };

    const unsigned workers =
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                           static_cast<unsigned>(b_axis.size()));
    if (workers <= 1) {
        for (std::size_t ib = 0; ib < b_axis.size(); ++ib) run_column(ib);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t ib = next.fetch_add(1); ib < b_axis.size();
                     ib = next.fetch_add(1))
                    run_column(ib);
            });
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    return diagram;
}

}  // namespace entwit
