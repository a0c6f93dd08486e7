#include "entwit/order.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace entwit {

namespace {

rvector zz_diagonal(int num_sites, int site_i, int site_j) {
    const std::size_t dim = std::size_t(1) << num_sites;
    const std::size_t mi = std::size_t(1) << (num_sites - 1 - site_i);
    const std::size_t mj = std::size_t(1) << (num_sites - 1 - site_j);
    rvector d(dim);
    for (std::size_t x = 0; x < dim; ++x) {
        const double zi = (x & mi) ? -1.0 : 1.0;
        const double zj = (x & mj) ? -1.0 : 1.0;
        d(x) = zi * zj;
    }
    return d;
}

rvector z_diagonal(int num_sites, int site) {
    const std::size_t dim = std::size_t(1) << num_sites;
    const std::size_t m = std::size_t(1) << (num_sites - 1 - site);
    rvector d(dim);
    for (std::size_t x = 0; x < dim; ++x) d(x) = (x & m) ? -1.0 : 1.0;
    return d;
}

void require_pair(const ModelOperators& ops, int site_i, int site_j) {
    const int n = ops.spec.num_sites;
    if (site_i == site_j) throw std::invalid_argument("correlator: sites must differ");
    if (site_i < 0 || site_j < 0 || site_i >= n || site_j >= n)
        throw std::invalid_argument("correlator: site index out of range");
}

double evaluate_pair(const GibbsEvaluator& ev, const ModelOperators& ops, double temperature,
                     CorrelatorKind kind, int site_i, int site_j, bool connected) {
    const int n = ops.spec.num_sites;
    double value = ev.average(ev.level_values_diagonal(zz_diagonal(n, site_i, site_j)),
                              temperature);
    if (kind == CorrelatorKind::full_dot)
        value += ev.average(ev.level_values_pair_flip(site_i, site_j), temperature);
    if (connected) {
        const double zi = ev.average(ev.level_values_diagonal(z_diagonal(n, site_i)), temperature);
        const double zj = ev.average(ev.level_values_diagonal(z_diagonal(n, site_j)), temperature);
        value -= zi * zj;
    }
    return value;
}

}  // namespace

double correlator(const ModelOperators& ops, double temperature, CorrelatorKind kind, int site_i,
                  int site_j, bool connected) {
    require_pair(ops, site_i, site_j);
    if (connected && kind != CorrelatorKind::zz)
        throw std::invalid_argument("correlator: connected subtraction is defined for zz only");
    const GibbsEvaluator ev(ops);
    return evaluate_pair(ev, ops, temperature, kind, site_i, site_j, connected);
}

CorrelationSeries correlation_series(const ModelOperators& ops, double temperature,
                                     CorrelatorKind kind, const std::vector<int>& separations,
                                     bool connected) {
    if (separations.empty()) throw std::invalid_argument("correlation_series: empty separations");
    if (connected && kind != CorrelatorKind::zz)
        throw std::invalid_argument("correlation_series: connected subtraction is zz only");
    const int n = ops.spec.num_sites;
    for (std::size_t k = 0; k < separations.size(); ++k) {
        if (separations[k] < 1 || separations[k] > n - 1)
            throw std::invalid_argument("correlation_series: separation out of range");
        if (k && separations[k] <= separations[k - 1])
            throw std::invalid_argument("correlation_series: separations must increase");
    }

    const GibbsEvaluator ev(ops);
    CorrelationSeries series;
    series.separations = separations;
    series.connected = connected;
    series.values.reserve(separations.size());
    const bool ring = ops.spec.boundary == Boundary::periodic;
    for (int r : separations) {
        const int i0 = ring ? 0 : (n - 1 - r) / 2;  // centered pair in open chains
        series.values.push_back(evaluate_pair(ev, ops, temperature, kind, i0, i0 + r, connected));
    }
    return series;
}

namespace {

struct FitScore {
    double rms = 0.0;
    double slope = 0.0;  // of the transformed linear model
};

// least squares of y = a + b x, returning rms residual and b
FitScore fit(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double b = (sxy - sx * sy / n) / (sxx - sx * sx / n);
    const double a = (sy - b * sx) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double res = y[i] - a - b * x[i];
        ss += res * res;
    }
    return FitScore{std::sqrt(ss / n), b};
}

}  // namespace

DecayClassification classify_decay(const CorrelationSeries& series) {
    if (series.separations.size() != series.values.size())
        throw std::invalid_argument("classify_decay: length mismatch");
    if (series.separations.size() < 5)
        throw std::invalid_argument("classify_decay: need at least 5 points");
    for (std::size_t k = 0; k < series.separations.size(); ++k) {
        if (series.separations[k] < 1)
            throw std::invalid_argument("classify_decay: separations must be >= 1");
        if (k && series.separations[k] <= series.separations[k - 1])
            throw std::invalid_argument("classify_decay: separations must increase");
    }

    DecayClassification out;

    std::vector<int> rs;
    std::vector<double> vals;
    for (std::size_t k = 0; k < series.values.size(); ++k) {
        if (series.values[k] == 0.0) {
            ++out.dropped_zero_values;
            continue;
        }
        rs.push_back(series.separations[k]);
        vals.push_back(series.values[k]);
    }
    if (rs.size() < 5)
        throw std::invalid_argument(
            "classify_decay: fewer than 5 nonzero values after dropping " +
            std::to_string(out.dropped_zero_values) + " zeros");

    // factor out a Neel-like period-2 sign pattern when present
    bool uniform = true, alternating = true;
    for (std::size_t k = 0; k < rs.size(); ++k) {
        const double s = vals[k] > 0 ? 1.0 : -1.0;
        const double s0 = vals[0] > 0 ? 1.0 : -1.0;
        if (s != s0) uniform = false;
        if (s != s0 * ((rs[k] - rs[0]) % 2 == 0 ? 1.0 : -1.0)) alternating = false;
    }
    out.alternating_sign = alternating && !uniform;

    std::vector<double> r_lin(rs.size()), r_log(rs.size()), log_c(rs.size());
    for (std::size_t k = 0; k < rs.size(); ++k) {
        r_lin[k] = rs[k];
        r_log[k] = std::log(static_cast<double>(rs[k]));
        log_c[k] = std::log(std::abs(vals[k]));
    }

    // all three models are linear in log|C|: constant, -eta log r, -r/xi
    double mean = 0.0;
    for (double y : log_c) mean += y;
    mean /= log_c.size();
    double ss = 0.0;
    for (double y : log_c) ss += (y - mean) * (y - mean);
    const FitScore s_const{std::sqrt(ss / log_c.size()), 0.0};
    const FitScore s_pow = fit(r_log, log_c);
    const FitScore s_exp = fit(r_lin, log_c);

    const double eta = -s_pow.slope;
    const double inv_xi = -s_exp.slope;

    // a decaying model competes only when it decays and beats the constant
    // fit by at least 10%; otherwise it is the constant in disguise
    struct Candidate {
        DecayClass cls;
        double rms;
    };
    std::vector<Candidate> cand;
    cand.push_back({DecayClass::lro, s_const.rms});
    if (eta > 0.0 && s_pow.rms < 0.9 * s_const.rms)
        cand.push_back({DecayClass::power_law, s_pow.rms});
    if (inv_xi > 0.0 && s_exp.rms < 0.9 * s_const.rms)
        cand.push_back({DecayClass::exponential, s_exp.rms});

    std::size_t best = 0;
    for (std::size_t k = 1; k < cand.size(); ++k)
        if (cand[k].rms < cand[best].rms) best = k;

    if (cand.size() >= 2) {
        double second = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < cand.size(); ++k)
            if (k != best) second = std::min(second, cand[k].rms);
        // scores within 10% of each other cannot be told apart
        if (!(second > 0.0) || (second - cand[best].rms) / second < 0.10) {
            out.decay_class = DecayClass::inconclusive;
            out.fit_quality = 1.0 / (1.0 + cand[best].rms);
            return out;
        }
    }

    out.decay_class = cand[best].cls;
    out.fit_quality = 1.0 / (1.0 + cand[best].rms);
    if (out.decay_class == DecayClass::power_law) out.eta = eta;
    if (out.decay_class == DecayClass::exponential) out.xi = 1.0 / inv_xi;
    return out;
}

}  // namespace entwit
