#include "entwit/models.hpp"

#include <cmath>
#include <stdexcept>

namespace entwit {

namespace {

std::vector<Bond> bond_list(const ChainSpec& spec) {
    std::vector<Bond> bonds;
    const int n = spec.num_sites;
    const int last = (spec.boundary == Boundary::periodic) ? n : n - 1;
    for (int j = 0; j < last; ++j) {
        Bond b;
        b.i = j;
        b.j = (j + 1) % n;
        switch (spec.model) {
            case ChainModel::xxx:
                b.coupling = spec.j;
                b.planar = false;
                break;
            case ChainModel::xx:
                b.coupling = spec.j;
                b.planar = true;
                break;
            case ChainModel::alternating:
                b.coupling = (j % 2 == 0) ? spec.j1 : spec.j2;
                b.planar = false;
                break;
        }
        bonds.push_back(b);
    }
    return bonds;
}

}  // namespace

void validate(const ChainSpec& spec) {
    if (spec.num_sites < 2 || spec.num_sites > max_sites)
        throw std::invalid_argument("ChainSpec: num_sites must be in [2, 12]");
    if (!std::isfinite(spec.field_b)) throw std::invalid_argument("ChainSpec: field not finite");
    switch (spec.model) {
        case ChainModel::xxx:
        case ChainModel::xx:
            if (!std::isfinite(spec.j)) throw std::invalid_argument("ChainSpec: coupling not finite");
            break;
        case ChainModel::alternating:
            if (spec.num_sites % 2 != 0)
                throw std::invalid_argument("ChainSpec: alternating chain needs even num_sites");
            if (!std::isfinite(spec.j1) || !std::isfinite(spec.j2))
                throw std::invalid_argument("ChainSpec: coupling not finite");
            if (!(spec.j1 > 0.0) || spec.j2 < 0.0)
                throw std::invalid_argument("ChainSpec: alternating needs j1 > 0 and j2 >= 0");
            break;
    }
}

ModelOperators build(const ChainSpec& spec) {
    validate(spec);
    const int n = spec.num_sites;
    const std::size_t dim = std::size_t(1) << n;
    const auto bonds = bond_list(spec);

    // Hamiltonians of these models are real in the sigma_z product basis:
    //   sigma^z_i sigma^z_j        -> diagonal, z_i z_j
    //   sigma^x sigma^x + sy sy    -> amplitude 2 between |..01..> and |..10..>
    rmatrix hex = rmatrix::Zero(dim, dim);
    rvector mag_diag(dim);
    for (std::size_t x = 0; x < dim; ++x) {
        double diag = 0.0;
        double mz = 0.0;
        for (int s = 0; s < n; ++s) mz += ((x >> (n - 1 - s)) & 1U) ? -0.5 : 0.5;
        mag_diag(x) = mz;
        for (const Bond& b : bonds) {
            const std::size_t mi = std::size_t(1) << (n - 1 - b.i);
            const std::size_t mj = std::size_t(1) << (n - 1 - b.j);
            const bool zi = x & mi;
            const bool zj = x & mj;
            if (!b.planar) diag += b.coupling * (zi == zj ? 1.0 : -1.0);
            if (zi != zj) hex(x ^ mi ^ mj, x) += 2.0 * b.coupling;
        }
        hex(x, x) += diag;
    }

    cmatrix hexc = hex.cast<complex_t>();
    cmatrix magc = cmatrix::Zero(dim, dim);
    magc.diagonal() = mag_diag.cast<complex_t>();
    cmatrix htot = hexc - spec.field_b * magc;

    double jw = 0.0;
    if (spec.model == ChainModel::alternating)
        jw = std::max(std::abs(spec.j1), std::abs(spec.j2));
    else
        jw = std::abs(spec.j);

    return ModelOperators{spec,
                          bonds,
                          HermitianOperator(std::move(hexc)),
                          HermitianOperator(std::move(magc)),
                          HermitianOperator(std::move(htot)),
                          jw};
}

GapResult spectral_gap(const ModelOperators& ops) {
    const cmatrix& m = ops.h_total.matrix();
    const double mscale = std::max(1.0, m.cwiseAbs().maxCoeff());
    rvector e;
    if (m.imag().cwiseAbs().maxCoeff() <= 1e-14 * mscale) {
        Eigen::SelfAdjointEigenSolver<rmatrix> es(m.real(), Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("spectral_gap: eigensolver did not converge");
        e = es.eigenvalues();
    } else {
        Eigen::SelfAdjointEigenSolver<cmatrix> es(m, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("spectral_gap: eigensolver did not converge");
        e = es.eigenvalues();
    }
    const double gap = e(1) - e(0);
    const double scale = std::max(1.0, std::abs(e(0)));
    if (gap <= 1e-9 * scale) return GapResult{0.0, true};
    return GapResult{gap, false};
}

}  // namespace entwit
