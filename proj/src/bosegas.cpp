#include "entwit/bosegas.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace entwit::bosegas {

namespace {

constexpr double pi = std::numbers::pi;

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double correlation = 0.0;
};

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    LinearFit f;
    const double vx = sxx - sx * sx / n;
    const double vy = syy - sy * sy / n;
    const double cov = sxy - sx * sy / n;
    f.slope = cov / vx;
    f.intercept = (sy - f.slope * sx) / n;
    f.correlation = (vy > 0.0) ? cov / std::sqrt(vx * vy) : 0.0;
    return f;
}

// adaptive trapezoid with a Richardson error check
template <typename F>
double adapt_step(const F& f, double a, double b, double fa, double fb, double t1, double tol,
                  int depth) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double left = 0.25 * (b - a) * (fa + fm);
    const double right = 0.25 * (b - a) * (fm + fb);
    const double t2 = left + right;
    const double err = (t2 - t1) / 3.0;
    if (std::abs(err) <= tol || depth >= 48) return t2 + err;
    return adapt_step(f, a, m, fa, fm, left, 0.5 * tol, depth + 1) +
           adapt_step(f, m, b, fm, fb, right, 0.5 * tol, depth + 1);
}

template <typename F>
double integrate_adaptive(const F& f, double a, double b, double rel_tol) {
    // coarse composite pass to scale the absolute tolerance
    const int n0 = 512;
    double coarse = 0.5 * (f(a) + f(b));
    for (int i = 1; i < n0; ++i) coarse += f(a + (b - a) * i / n0);
    coarse *= (b - a) / n0;
    const double tol = rel_tol * std::max(std::abs(coarse), 1e-300);
    const double fa = f(a), fb = f(b);
    return adapt_step(f, a, b, fa, fb, 0.5 * (b - a) * (fa + fb), tol, 0);
}

}  // namespace

void validate(const BoxGasSpec& spec) {
    if (!(spec.mass > 0.0)) throw std::invalid_argument("BoxGasSpec: mass must be > 0");
    if (!(spec.volume > 0.0)) throw std::invalid_argument("BoxGasSpec: volume must be > 0");
    if (spec.dimension < 1) throw std::invalid_argument("BoxGasSpec: dimension must be >= 1");
    if (spec.num_particles < 1)
        throw std::invalid_argument("BoxGasSpec: num_particles must be >= 1");
    if (spec.num_regions < 1) throw std::invalid_argument("BoxGasSpec: num_regions must be >= 1");
}

double zeta(double s) {
    if (!(s > 1.0)) throw std::invalid_argument("zeta: defined here for s > 1 only");
    // truncated series plus Euler-Maclaurin tail at K; the next omitted
    // term is below 1e-15 for every s > 1
    const int K = 64;
    double sum = 0.0;
    for (int n = 1; n < K; ++n) sum += std::pow(n, -s);
    const double k = K;
    double tail = std::pow(k, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(k, -s);
    tail += s / 12.0 * std::pow(k, -s - 1.0);
    tail -= s * (s + 1.0) * (s + 2.0) / 720.0 * std::pow(k, -s - 3.0);
    tail += s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) / 30240.0 * std::pow(k, -s - 5.0);
    return sum + tail;
}

double mode_energy(int k, double box_length, double mass) {
    if (k < 1) throw std::invalid_argument("mode_energy: mode index must be >= 1");
    if (!(box_length > 0.0) || !(mass > 0.0))
        throw std::invalid_argument("mode_energy: box_length and mass must be > 0");
    const double q = k * pi / box_length;
    return q * q / (2.0 * mass);
}

double condensation_energy(const BoxGasSpec& spec) {
    validate(spec);
    if (spec.dimension != 1)
        throw std::invalid_argument("condensation_energy: closed form is one-dimensional");
    return static_cast<double>(spec.num_particles) * mode_energy(1, spec.volume, spec.mass);
}

double min_separable_energy(const BoxGasSpec& spec, long long num_regions) {
    if (num_regions < 1)
        throw std::invalid_argument("min_separable_energy: num_regions must be >= 1");
    // squeezing into M equal segments scales the ground mode by M each:
    // N (1/2m)(pi M / L)^2 = M^2 * E_cond
    const double m = static_cast<double>(num_regions);
    return m * m * condensation_energy(spec);
}

TransitionReport transition_temperatures(const BoxGasSpec& spec) {
    validate(spec);
    const double d = spec.dimension;
    const double n = static_cast<double>(spec.num_particles);
    const double v = spec.volume;

    auto t_trans_at = [&](double regions) {
        const double prefactor = 2.0 * pi / (spec.mass * std::pow(v, 2.0 / d));
        const double inner = pi * n * std::pow(regions, 2.0 / d) / (2.0 * zeta(1.0 + d / 2.0));
        return prefactor * std::pow(inner, 2.0 / (2.0 + d));
    };

    TransitionReport rep;
    rep.t_trans = t_trans_at(static_cast<double>(spec.num_regions));
    rep.t_crit = t_trans_at(n);
    if (spec.dimension > 2) {
        const double rho = n / v;
        rep.t_bec = 2.0 * pi / spec.mass * std::pow(rho / zeta(d / 2.0), 2.0 / d);
        rep.ratio_crit_over_bec = rep.t_crit / rep.t_bec;
    } else {
        // zeta(d/2) diverges at d <= 2: no ideal-gas BEC
        rep.t_bec = 0.0;
        rep.ratio_infinite = true;
    }
    return rep;
}

double homes_scaling_exponent(int dimension) {
    if (dimension < 1) throw std::invalid_argument("homes_scaling_exponent: dimension must be >= 1");
    return 2.0 / dimension;
}

DivergenceProbe condensate_fraction_probe(int dimension, double epsilon, double p_max,
                                          int samples) {
    if (dimension < 1) throw std::invalid_argument("condensate_fraction_probe: dimension >= 1");
    if (!(epsilon > 0.0) || !(epsilon < p_max))
        throw std::invalid_argument("condensate_fraction_probe: need 0 < epsilon < p_max");
    if (samples < 4) throw std::invalid_argument("condensate_fraction_probe: samples must be >= 4");

    auto integrand = [dimension](double p) {
        return std::pow(p, dimension - 1) / std::expm1(0.5 * p * p);
    };

    // one decade of lower cutoffs, log spaced
    std::vector<double> eps(samples), integral(samples);
    for (int i = 0; i < samples; ++i) {
        eps[i] = epsilon * std::pow(10.0, static_cast<double>(i) / (samples - 1));
        integral[i] = integrate_adaptive(integrand, eps[i], p_max, 1e-8);
    }

    DivergenceProbe probe;
    probe.integral_value = integral.front();

    const double rel_var = std::abs(integral.front() - integral.back()) /
                           std::max(std::abs(integral.back()), 1e-300);
    if (rel_var < 0.01) {
        probe.divergence_class = DivergenceClass::convergent;
        probe.fit_correlation = 1.0 - rel_var;
        return probe;
    }

    std::vector<double> log_eps(samples), log_i(samples), inv_log_eps(samples);
    for (int i = 0; i < samples; ++i) {
        if (!(integral[i] > 0.0))
            throw std::runtime_error("condensate_fraction_probe: non-positive integral sample");
        log_eps[i] = std::log(eps[i]);
        log_i[i] = std::log(integral[i]);
        inv_log_eps[i] = -log_eps[i];  // ln(1/eps)
    }
    const LinearFit loglog = fit_line(log_eps, log_i);
    const LinearFit loglin = fit_line(inv_log_eps, integral);

    if (std::abs(loglog.slope) >= 0.3 && std::abs(loglog.correlation) >= 0.999) {
        probe.divergence_class = DivergenceClass::power;
        probe.power_exponent = loglog.slope;
        probe.fit_correlation = std::abs(loglog.correlation);
        return probe;
    }
    if (std::abs(loglog.slope) < 0.3 && loglin.correlation >= 0.999 && loglin.slope > 0.0) {
        probe.divergence_class = DivergenceClass::logarithmic;
        probe.fit_correlation = loglin.correlation;
        return probe;
    }
    throw std::runtime_error(
        "condensate_fraction_probe: cutoff scan matches neither a power, a logarithm nor a "
        "convergent integral");
}

std::string to_string(DivergenceClass c) {
    switch (c) {
        case DivergenceClass::power: return "power";
        case DivergenceClass::logarithmic: return "logarithmic";
        case DivergenceClass::convergent: return "convergent";
    }
    return "unknown";
}

}  // namespace entwit::bosegas
