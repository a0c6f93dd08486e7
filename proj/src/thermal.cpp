#include "entwit/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

namespace entwit {

namespace {

constexpr double g_factor = 2.0;
constexpr double c_rel_step = 1e-4;

void require_temperature(double t) {
    if (!(t > 0.0)) throw std::invalid_argument("temperature must be > 0");
}

}  // namespace

GibbsEvaluator::GibbsEvaluator(const ModelOperators& ops) {
    const cmatrix& h = ops.h_total.matrix();
    const Eigen::Index dim = h.rows();
    num_sites_ = ops.spec.num_sites;
    field_b_ = ops.spec.field_b;

    const rvector mag = ops.magnetization.matrix().diagonal().real();

    // group basis states by magnetization (values are exact multiples of 1/2)
    std::map<double, std::vector<std::int32_t>> groups;
    for (Eigen::Index b = 0; b < dim; ++b) groups[mag(b)].push_back(static_cast<std::int32_t>(b));

    sector_of_.assign(dim, 0);
    pos_in_sector_.assign(dim, 0);
    std::vector<Sector> sectors;
    sectors.reserve(groups.size());
    for (auto& [m_value, basis] : groups) {
        Sector s;
        s.m_value = m_value;
        s.basis = std::move(basis);
        sectors.push_back(std::move(s));
    }

    // H must vanish between different sectors, otherwise fall back to one block
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    bool blocked = true;
    {
        std::vector<std::int32_t> sec(dim);
        for (std::size_t si = 0; si < sectors.size(); ++si)
            for (std::int32_t b : sectors[si].basis) sec[b] = static_cast<std::int32_t>(si);
        for (Eigen::Index c = 0; c < dim && blocked; ++c)
            for (Eigen::Index r = 0; r < dim; ++r)
                if (sec[r] != sec[c] && std::abs(h(r, c)) > 1e-12 * scale) {
                    blocked = false;
                    break;
                }
    }
    if (!blocked) {
        Sector whole;
        whole.m_value = 0.0;
        whole.basis.resize(dim);
        for (Eigen::Index b = 0; b < dim; ++b) whole.basis[b] = static_cast<std::int32_t>(b);
        sectors.clear();
        sectors.push_back(std::move(whole));
    }

    Eigen::Index total_levels = 0;
    for (std::size_t si = 0; si < sectors.size(); ++si) {
        Sector& s = sectors[si];
        const Eigen::Index sd = static_cast<Eigen::Index>(s.basis.size());
        for (Eigen::Index p = 0; p < sd; ++p) {
            sector_of_[s.basis[p]] = static_cast<std::int32_t>(si);
            pos_in_sector_[s.basis[p]] = static_cast<std::int32_t>(p);
        }
        cmatrix block(sd, sd);
        for (Eigen::Index c = 0; c < sd; ++c)
            for (Eigen::Index r = 0; r < sd; ++r) block(r, c) = h(s.basis[r], s.basis[c]);
        s.real = block.imag().cwiseAbs().maxCoeff() <= 1e-14 * scale;
        if (s.real) {
            Eigen::SelfAdjointEigenSolver<rmatrix> es(block.real());
            if (es.info() != Eigen::Success)
                throw std::runtime_error("GibbsEvaluator: eigensolver did not converge");
            s.energies = es.eigenvalues();
            s.vectors_real = es.eigenvectors();
        } else {
            Eigen::SelfAdjointEigenSolver<cmatrix> es(block);
            if (es.info() != Eigen::Success)
                throw std::runtime_error("GibbsEvaluator: eigensolver did not converge");
            s.energies = es.eigenvalues();
            s.vectors_cplx = es.eigenvectors();
        }
        total_levels += sd;
    }

    level_energy_.resize(total_levels);
    Eigen::Index at = 0;
    for (const Sector& s : sectors) {
        const Eigen::Index sd = static_cast<Eigen::Index>(s.basis.size());
        level_energy_.segment(at, sd) = s.energies;
        at += sd;
    }
    e0_ = level_energy_.minCoeff();
    blocked_ = blocked;
    sectors_ = std::move(sectors);

    level_m_ = level_values_diagonal(mag);
    level_m2_ = level_values_diagonal(mag.cwiseProduct(mag));

    if (blocked_) {
        // <M_x^2> = (1/4)[N + sum_{i<j} <sx_i sx_j + sy_i sy_j>]; M_x and
        // M_y shift magnetization sectors, so their first moments vanish
        // level by level and the two second moments coincide
        level_mx2_ = rvector::Constant(total_levels, num_sites_ / 4.0);
        for (int i = 0; i < num_sites_; ++i)
            for (int j = i + 1; j < num_sites_; ++j)
                level_mx2_ += 0.25 * level_values_pair_flip(i, j);
    }
}

double GibbsEvaluator::powder_susceptibility(double temperature) const {
    if (!blocked_)
        throw std::runtime_error(
            "powder_susceptibility: needs a magnetization-conserving Hamiltonian");
    const rvector w = weights(temperature);
    const double m1 = w.dot(level_m_);
    const double var_z = w.dot(level_m2_) - m1 * m1;
    const double var_x = w.dot(level_mx2_);
    return g_factor * g_factor * (var_z + 2.0 * var_x) / (3.0 * temperature);
}

rvector GibbsEvaluator::weights(double temperature) const {
    require_temperature(temperature);
    rvector w = ((level_energy_.array() - e0_) / -temperature).exp();
    const double z = w.sum();
    if (!std::isfinite(z) || z <= 0.0)
        throw std::runtime_error("GibbsEvaluator: non-finite partition sum");
    return w / z;
}

double GibbsEvaluator::average(const rvector& level_values, double temperature) const {
    if (level_values.size() != level_energy_.size())
        throw std::invalid_argument("GibbsEvaluator::average: level-value size mismatch");
    return weights(temperature).dot(level_values);
}

double GibbsEvaluator::total_energy(double temperature) const {
    return weights(temperature).dot(level_energy_);
}

double GibbsEvaluator::magnetization(double temperature) const {
    return weights(temperature).dot(level_m_);
}

double GibbsEvaluator::exchange_energy(double temperature) const {
    const rvector w = weights(temperature);
    return w.dot(level_energy_) + field_b_ * w.dot(level_m_);
}

double GibbsEvaluator::susceptibility(double temperature) const {
    const rvector w = weights(temperature);
    const double m1 = w.dot(level_m_);
    const double m2 = w.dot(level_m2_);
    return g_factor * g_factor * (m2 - m1 * m1) / temperature;
}

double GibbsEvaluator::heat_capacity(double temperature) const {
    const double dt = c_rel_step * temperature;
    return (total_energy(temperature + dt) - total_energy(temperature - dt)) / (2.0 * dt);
}

rvector GibbsEvaluator::level_values_diagonal(const rvector& full_diagonal) const {
    if (full_diagonal.size() != static_cast<Eigen::Index>(sector_of_.size()))
        throw std::invalid_argument("level_values_diagonal: diagonal has wrong dimension");
    rvector out(level_energy_.size());
    Eigen::Index at = 0;
    for (const Sector& s : sectors_) {
        const Eigen::Index sd = static_cast<Eigen::Index>(s.basis.size());
        rvector d(sd);
        for (Eigen::Index p = 0; p < sd; ++p) d(p) = full_diagonal(s.basis[p]);
        for (Eigen::Index k = 0; k < sd; ++k) {
            if (s.real)
                out(at + k) = s.vectors_real.col(k).cwiseAbs2().dot(d);
            else
                out(at + k) = s.vectors_cplx.col(k).cwiseAbs2().dot(d);
        }
        at += sd;
    }
    return out;
}

rvector GibbsEvaluator::level_values_pair_flip(int site_i, int site_j) const {
    if (site_i == site_j) throw std::invalid_argument("level_values_pair_flip: i == j");
    if (site_i < 0 || site_j < 0 || site_i >= num_sites_ || site_j >= num_sites_)
        throw std::invalid_argument("level_values_pair_flip: site out of range");
    if (site_i > site_j) std::swap(site_i, site_j);  // (i, j) and (j, i) bit-identical
    const std::size_t mi = std::size_t(1) << (num_sites_ - 1 - site_i);
    const std::size_t mj = std::size_t(1) << (num_sites_ - 1 - site_j);

    rvector out = rvector::Zero(level_energy_.size());
    Eigen::Index at = 0;
    for (std::size_t si = 0; si < sectors_.size(); ++si) {
        const Sector& s = sectors_[si];
        const Eigen::Index sd = static_cast<Eigen::Index>(s.basis.size());
        // unordered flip pairs inside this sector, visited from the (1,0) side
        std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
        for (Eigen::Index p = 0; p < sd; ++p) {
            const std::size_t b = static_cast<std::size_t>(s.basis[p]);
            if ((b & mi) && !(b & mj)) {
                const std::size_t partner = b ^ mi ^ mj;
                if (sector_of_[partner] == static_cast<std::int32_t>(si))
                    pairs.emplace_back(static_cast<std::int32_t>(p), pos_in_sector_[partner]);
            }
        }
        for (Eigen::Index k = 0; k < sd; ++k) {
            double acc = 0.0;
            if (s.real) {
                const auto v = s.vectors_real.col(k);
                for (const auto& [p, q] : pairs) acc += 4.0 * v(p) * v(q);
            } else {
                const auto v = s.vectors_cplx.col(k);
                for (const auto& [p, q] : pairs) acc += 4.0 * std::real(std::conj(v(q)) * v(p));
            }
            out(at + k) = acc;
        }
        at += sd;
    }
    return out;
}

ThermoPoint GibbsEvaluator::point(double temperature) const {
    require_temperature(temperature);
    ThermoPoint p;
    p.temperature = temperature;
    p.field_b = field_b_;
    const rvector w = weights(temperature);
    const double m1 = w.dot(level_m_);
    const double m2 = w.dot(level_m2_);
    p.m = m1;
    p.u = w.dot(level_energy_) + field_b_ * m1;
    p.chi = g_factor * g_factor * (m2 - m1 * m1) / temperature;
    p.c = heat_capacity(temperature);
    return p;
}

ThermoPoint observables(const ModelOperators& ops, double temperature) {
    return GibbsEvaluator(ops).point(temperature);
}

double energy_from_heat_capacity(const ModelOperators& ops, double t_lo, double t_hi, int steps) {
    if (!(t_lo > 0.0) || !(t_hi > t_lo))
        throw std::invalid_argument("energy_from_heat_capacity: need 0 < t_lo < t_hi");
    if (steps < 1) throw std::invalid_argument("energy_from_heat_capacity: steps must be >= 1");
    GibbsEvaluator ev(ops);
    const double dt = (t_hi - t_lo) / steps;
    double acc = 0.5 * (ev.heat_capacity(t_lo) + ev.heat_capacity(t_hi));
    for (int i = 1; i < steps; ++i) acc += ev.heat_capacity(t_lo + i * dt);
    return acc * dt;
}

namespace {

// ln|1 + sign*e^a| and the sign of the factor, overflow-safe
struct LogFactor {
    double log_abs;
    double sign;
    bool zero;
};

LogFactor log1p_signed_exp(double a, double sign) {
    if (sign > 0) {
        if (a > 0) return {a + std::log1p(std::exp(-a)), 1.0, false};
        return {std::log1p(std::exp(a)), 1.0, false};
    }
    const double x = std::exp(a);
    if (x == 1.0) return {0.0, 0.0, true};
    if (a > 0) return {a + std::log1p(-std::exp(-a)), -1.0, false};
    return {std::log1p(-x), 1.0, false};
}

struct SectorSums {
    double log_w = 0.0;
    double sign = 1.0;
    bool zero = false;
    double g_sum = 0.0;    // sum_k g_k,            g_k = s x_k / (1 + s x_k)
    double gx_sum = 0.0;   // sum_k 4J cos(k) g_k
    double g2_sum = 0.0;   // sum_k g_k^2
    double ge_sum = 0.0;   // sum_k eps_k g_k
};

SectorSums sector_sums(const std::vector<double>& ks, double j, double b, double beta,
                       double sigma) {
    SectorSums out;
    for (double k : ks) {
        const double band = 4.0 * j * std::cos(k);
        const double eps = band + b;
        const LogFactor f = log1p_signed_exp(-beta * eps, sigma);
        if (f.zero) {
            out.zero = true;
            return out;
        }
        out.log_w += f.log_abs;
        out.sign *= f.sign;
        // g = s x / (1 + s x) = s / (e^{beta eps} + s), stable both ways
        double g;
        const double be = beta * eps;
        if (be > 0)
            g = sigma * std::exp(-be) / (1.0 + sigma * std::exp(-be));
        else
            g = sigma / (std::exp(be) + sigma);
        out.g_sum += g;
        out.gx_sum += band * g;
        out.g2_sum += g * g;
        out.ge_sum += eps * g;
    }
    return out;
}

struct RingAverages {
    double n_occ;   // <N_f>
    double n2_occ;  // <N_f^2>
    double u_ex;    // <sum 4J cos k n_k>
};

RingAverages xx_ring_averages(double j, double b, double beta, int n) {
    std::vector<double> ap(n), pp(n);
    for (int m = 0; m < n; ++m) {
        ap[m] = 2.0 * std::numbers::pi * (m + 0.5) / n;
        pp[m] = 2.0 * std::numbers::pi * m / n;
    }
    // Z' = W_ap(+) + W_ap(-) + W_p(+) - W_p(-)
    const SectorSums s1 = sector_sums(ap, j, b, beta, +1.0);
    const SectorSums s2 = sector_sums(ap, j, b, beta, -1.0);
    const SectorSums s3 = sector_sums(pp, j, b, beta, +1.0);
    const SectorSums s4 = sector_sums(pp, j, b, beta, -1.0);
    const SectorSums* secs[4] = {&s1, &s2, &s3, &s4};
    const double outer[4] = {1.0, 1.0, 1.0, -1.0};

    double lmax = -std::numeric_limits<double>::infinity();
    for (const SectorSums* s : secs)
        if (!s->zero) lmax = std::max(lmax, s->log_w);

    double z = 0.0, n1 = 0.0, n2 = 0.0, ux = 0.0;
    for (int i = 0; i < 4; ++i) {
        const SectorSums& s = *secs[i];
        if (s.zero) continue;
        const double w = outer[i] * s.sign * std::exp(s.log_w - lmax);
        z += w;
        n1 += w * s.g_sum;
        n2 += w * (s.g_sum * s.g_sum - s.g2_sum + s.g_sum);
        ux += w * s.gx_sum;
    }
    // catastrophic parity cancellation would leave no significant digits
    if (!(std::abs(z) > 1e-12))
        throw std::runtime_error(
            "xx_thermo_free_fermion: parity-projected momentum sum lost all precision; "
            "increase num_modes or temperature");
    return RingAverages{n1 / z, n2 / z, ux / z};
}

}  // namespace

ThermoPoint xx_thermo_free_fermion(double j, double b, double temperature, int num_modes) {
    require_temperature(temperature);
    if (num_modes < 2) throw std::invalid_argument("xx_thermo_free_fermion: num_modes must be >= 2");
    if (!std::isfinite(j) || !std::isfinite(b))
        throw std::invalid_argument("xx_thermo_free_fermion: non-finite parameters");

    const double beta = 1.0 / temperature;
    const int n = num_modes;
    const RingAverages a = xx_ring_averages(j, b, beta, n);

    ThermoPoint p;
    p.temperature = temperature;
    p.field_b = b;
    p.u = a.u_ex / n;                  // <H_ex>/N = sum_k 4J cos k <n_k> / N
    p.m = 0.5 - a.n_occ / n;           // M/N = 1/2 - <N_f>/N
    const double var = a.n2_occ - a.n_occ * a.n_occ;  // Var(M) = Var(N_f)
    p.chi = g_factor * g_factor * var / (n * temperature);

    // per-site heat capacity by the same centered difference as observables()
    const double dt = c_rel_step * temperature;
    const RingAverages hi = xx_ring_averages(j, b, 1.0 / (temperature + dt), n);
    const RingAverages lo = xx_ring_averages(j, b, 1.0 / (temperature - dt), n);
    // <H_total>/N = <sum eps n>/N - B/2 ; <sum eps n> = u_ex + B <N_f>
    const double e_hi = (hi.u_ex + b * hi.n_occ) / n - b / 2.0;
    const double e_lo = (lo.u_ex + b * lo.n_occ) / n - b / 2.0;
    p.c = (e_hi - e_lo) / (2.0 * dt);
    return p;
}

}  // namespace entwit
