#include "entwit/oracle.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace entwit {

namespace {

constexpr int max_sweeps = 10000;
constexpr double ascent_tol = 1e-10;

using Bloch = std::array<double, 3>;

// <H_ex> of the product state with the given Bloch vectors:
//   <sigma_i . sigma_j>           = n_i . n_j        (full bonds)
//   <sx sx + sy sy>               = in-plane dot     (planar bonds)
double product_energy(const std::vector<Bond>& bonds, const std::vector<Bloch>& n) {
    double e = 0.0;
    for (const Bond& b : bonds) {
        double dot = n[b.i][0] * n[b.j][0] + n[b.i][1] * n[b.j][1];
        if (!b.planar) dot += n[b.i][2] * n[b.j][2];
        e += b.coupling * dot;
    }
    return e;
}

// one ascent of sign * <H_ex>; returns the achieved signed objective
double ascend(const std::vector<Bond>& bonds, std::vector<Bloch>& n, double sign,
              bool& converged) {
    const int num_sites = static_cast<int>(n.size());
    std::vector<std::vector<std::pair<int, const Bond*>>> adjacency(num_sites);
    for (const Bond& b : bonds) {
        adjacency[b.i].emplace_back(b.j, &b);
        adjacency[b.j].emplace_back(b.i, &b);
    }

    double prev = sign * product_energy(bonds, n);
    converged = false;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        for (int s = 0; s < num_sites; ++s) {
            Bloch h{0.0, 0.0, 0.0};
            for (const auto& [other, bond] : adjacency[s]) {
                h[0] += bond->coupling * n[other][0];
                h[1] += bond->coupling * n[other][1];
                if (!bond->planar) h[2] += bond->coupling * n[other][2];
            }
            const double norm = std::sqrt(h[0] * h[0] + h[1] * h[1] + h[2] * h[2]);
            if (norm < 1e-300) continue;  // flat direction, keep current vector
            for (int a = 0; a < 3; ++a) n[s][a] = sign * h[a] / norm;
        }
        const double cur = sign * product_energy(bonds, n);
        if (cur - prev < ascent_tol) {
            converged = true;
            return cur;
        }
        prev = cur;
    }
    return prev;
}

}  // namespace

OracleReport max_abs_exchange_over_products(const ModelOperators& ops, int restarts,
                                            std::uint64_t seed) {
    if (restarts < 1)
        throw std::invalid_argument("max_abs_exchange_over_products: restarts must be >= 1");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto random_bloch = [&] {
        // uniform on the sphere
        const double z = 2.0 * unit(rng) - 1.0;
        const double phi = 2.0 * std::numbers::pi * unit(rng);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        return Bloch{r * std::cos(phi), r * std::sin(phi), z};
    };

    OracleReport report;
    report.bound = ops.spec.num_sites * ops.witness_coupling;
    report.seed = seed;
    report.restarts_used = restarts;

    const int num_sites = ops.spec.num_sites;
    for (int r = 0; r < restarts; ++r) {
        std::vector<Bloch> init(num_sites);
        for (auto& v : init) v = random_bloch();
        for (double sign : {+1.0, -1.0}) {
            std::vector<Bloch> n = init;
            bool converged = false;
            const double best = ascend(ops.bonds, n, sign, converged);
            if (!converged) ++report.unconverged_restarts;
            report.best_value = std::max(report.best_value, best);
        }
    }
    report.gap = report.bound - report.best_value;
    return report;
}

VarianceBoundReport min_variance_sum_over_separable(int num_sites, int samples, int max_mixture,
                                                    std::uint64_t seed) {
    if (num_sites < 1)
        throw std::invalid_argument("min_variance_sum_over_separable: num_sites must be >= 1");
    if (samples < 1 || max_mixture < 1)
        throw std::invalid_argument("min_variance_sum_over_separable: need samples, mixture >= 1");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> mixture(1, max_mixture);

    VarianceBoundReport report;
    report.bound = num_sites / 2.0;
    report.samples_used = samples;
    report.seed = seed;
    report.min_value = std::numeric_limits<double>::infinity();

    for (int s = 0; s < samples; ++s) {
        const int k = mixture(rng);
        // mixture accumulators: <M_a> and <M_a^2>
        std::array<double, 3> mom1{0.0, 0.0, 0.0};
        std::array<double, 3> mom2{0.0, 0.0, 0.0};
        double wsum = 0.0;
        std::vector<double> w(k);
        std::vector<std::array<double, 3>> comp1(k), comp2(k);
        for (int i = 0; i < k; ++i) {
            w[i] = -std::log(std::max(unit(rng), 1e-300));
            wsum += w[i];
            std::array<double, 3> m1{0.0, 0.0, 0.0};
            std::array<double, 3> site_var{0.0, 0.0, 0.0};
            for (int site = 0; site < num_sites; ++site) {
                const double z = 2.0 * unit(rng) - 1.0;
                const double phi = 2.0 * std::numbers::pi * unit(rng);
                // half the site draws are pure, the rest genuinely mixed
                const double r = (unit(rng) < 0.5) ? 1.0 : unit(rng);
                const double in_plane = r * std::sqrt(std::max(0.0, 1.0 - z * z));
                const std::array<double, 3> b{in_plane * std::cos(phi), in_plane * std::sin(phi),
                                              r * z};
                for (int a = 0; a < 3; ++a) {
                    m1[a] += 0.5 * b[a];
                    site_var[a] += 0.25 * (1.0 - b[a] * b[a]);
                }
            }
            // independent sites: <M_a^2> = <M_a>^2 + sum_j Var_j
            for (int a = 0; a < 3; ++a) {
                comp1[i][a] = m1[a];
                comp2[i][a] = m1[a] * m1[a] + site_var[a];
            }
        }
        for (int i = 0; i < k; ++i)
            for (int a = 0; a < 3; ++a) {
                mom1[a] += w[i] / wsum * comp1[i][a];
                mom2[a] += w[i] / wsum * comp2[i][a];
            }
        double var_sum = 0.0;
        for (int a = 0; a < 3; ++a) var_sum += mom2[a] - mom1[a] * mom1[a];
        report.min_value = std::min(report.min_value, var_sum);
    }
    return report;
}

double witness_crossing_temperature(const ChainSpec& spec, WitnessId witness_id, double t_lo,
                                    double t_hi) {
    if (!(t_lo > 0.0) || !(t_hi > t_lo))
        throw std::invalid_argument("witness_crossing_temperature: need 0 < t_lo < t_hi");

    ChainSpec eval_spec = spec;
    if (witness_id == WitnessId::susceptibility) eval_spec.field_b = 0.0;
    const ModelOperators ops = build(eval_spec);
    const GibbsEvaluator ev(ops);

    auto margin = [&](double t) {
        if (witness_id == WitnessId::energy) {
            const double u_total = ev.total_energy(t);
            const double m = ev.magnetization(t);
            return energy_witness(u_total, eval_spec.field_b, m, spec.num_sites,
                                  ops.witness_coupling)
                .margin;
        }
        return susceptibility_witness(ev.powder_susceptibility(t), t, spec.num_sites).margin;
    };

    double m_lo = margin(t_lo);
    double m_hi = margin(t_hi);
    if (m_lo == 0.0) return t_lo;
    if (m_hi == 0.0) return t_hi;
    if ((m_lo > 0.0) == (m_hi > 0.0)) {
        throw std::runtime_error(
            m_lo > 0.0
                ? "witness_crossing_temperature: no sign change, witness flags the whole bracket"
                : "witness_crossing_temperature: no sign change, witness flags nowhere in bracket");
    }

    double lo = t_lo, hi = t_hi;
    while ((hi - lo) / (0.5 * (hi + lo)) > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        const double m_mid = margin(mid);
        if (m_mid == 0.0) return mid;
        if ((m_mid > 0.0) == (m_lo > 0.0)) {
            lo = mid;
            m_lo = m_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace entwit
