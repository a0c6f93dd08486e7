#include "entwit/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace entwit {

namespace {

double max_abs(const cmatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void require_hermitian(const cmatrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() < 1)
        throw std::invalid_argument(std::string(what) + ": matrix must be square, dim >= 1");
    const double scale = std::max(max_abs(m), 1.0);
    const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (!(dev <= hermiticity_tol * scale))
        throw std::invalid_argument(std::string(what) + ": not Hermitian (max |H - H^+| = " +
                                    std::to_string(dev) + ")");
}

// site bit of a big-endian basis index
inline int site_bit(std::size_t index, int site, int num_sites) {
    return static_cast<int>((index >> (num_sites - 1 - site)) & 1U);
}

}  // namespace

HermitianOperator::HermitianOperator(cmatrix entries) : entries_(std::move(entries)) {
    require_hermitian(entries_, "HermitianOperator");
}

DensityMatrix::DensityMatrix(cmatrix entries) : entries_(std::move(entries)) {
    require_hermitian(entries_, "DensityMatrix");
    const double tr_dev = std::abs(entries_.trace() - complex_t(1.0, 0.0));
    if (!(tr_dev <= trace_tol))
        throw std::invalid_argument("DensityMatrix: trace != 1 (deviation " +
                                    std::to_string(tr_dev) + ")");
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<cmatrix> es(entries_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

const cmatrix& pauli_x() {
    static const cmatrix m = [] {
        cmatrix p(2, 2);
        p << 0, 1, 1, 0;
        return p;
    }();
    return m;
}

const cmatrix& pauli_y() {
    static const cmatrix m = [] {
        cmatrix p(2, 2);
        p << complex_t(0, 0), complex_t(0, -1), complex_t(0, 1), complex_t(0, 0);
        return p;
    }();
    return m;
}

const cmatrix& pauli_z() {
    static const cmatrix m = [] {
        cmatrix p(2, 2);
        p << 1, 0, 0, -1;
        return p;
    }();
    return m;
}

const cmatrix& pauli_id() {
    static const cmatrix m = cmatrix::Identity(2, 2);
    return m;
}

HermitianOperator embed_local(const HermitianOperator& op, int site, int num_sites) {
    if (op.dim() != 2) throw std::invalid_argument("embed_local: local operator must be 2x2");
    if (num_sites < 1 || num_sites > max_sites)
        throw std::invalid_argument("embed_local: num_sites out of range [1, 12]");
    if (site < 0 || site >= num_sites)
        throw std::invalid_argument("embed_local: site index out of range");

    const std::size_t dim = std::size_t(1) << num_sites;
    const cmatrix& local = op.matrix();
    cmatrix out = cmatrix::Zero(dim, dim);
    const std::size_t mask = std::size_t(1) << (num_sites - 1 - site);
    for (std::size_t col = 0; col < dim; ++col) {
        const int b = (col & mask) ? 1 : 0;
        // rows differing from col anywhere outside `site` vanish
        out(col, col) = local(b, b);
        out(col ^ mask, col) = local(1 - b, b);
    }
    return HermitianOperator(std::move(out));
}

SpectralDecomposition eigh(const HermitianOperator& h) {
    const cmatrix& m = h.matrix();
    const double scale = std::max(max_abs(m), 1.0);

    SpectralDecomposition out;
    if (m.imag().cwiseAbs().maxCoeff() <= 1e-14 * scale) {
        // real-symmetric fast path (all chain Hamiltonians land here)
        Eigen::SelfAdjointEigenSolver<rmatrix> es(m.real());
        if (es.info() != Eigen::Success)
            throw std::runtime_error("eigh: real symmetric eigensolver did not converge");
        out.eigenvalues = es.eigenvalues();
        out.eigenvectors = es.eigenvectors().cast<complex_t>();
    } else {
        Eigen::SelfAdjointEigenSolver<cmatrix> es(m);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("eigh: Hermitian eigensolver did not converge");
        out.eigenvalues = es.eigenvalues();
        out.eigenvectors = es.eigenvectors();
    }
    return out;
}

DensityMatrix thermal_state(const SpectralDecomposition& spec, double temperature) {
    if (!(temperature > 0.0)) throw std::invalid_argument("thermal_state: temperature must be > 0");

    const rvector& e = spec.eigenvalues;
    const double e0 = e.minCoeff();
    rvector w = ((e.array() - e0) / -temperature).exp();
    const double z = w.sum();
    if (!std::isfinite(z) || z <= 0.0)
        throw std::runtime_error("thermal_state: non-finite partition sum");
    w /= z;

    cmatrix rho = spec.eigenvectors * w.asDiagonal() * spec.eigenvectors.adjoint();
    // round-off symmetrization keeps the Hermiticity invariant at large dim
    rho = (rho + rho.adjoint().eval()) / 2.0;
    if (!rho.allFinite()) throw std::runtime_error("thermal_state: non-finite density matrix");
    return DensityMatrix(std::move(rho));
}

double expectation(const DensityMatrix& rho, const HermitianOperator& obs) {
    if (rho.dim() != obs.dim())
        throw std::invalid_argument("expectation: dimension mismatch");
    // tr(rho A) = sum_ij rho_ij A_ji
    const complex_t val = rho.matrix().cwiseProduct(obs.matrix().transpose()).sum();
    const double tol = 1e-10 * std::max(1.0, std::abs(val.real()));
    if (std::abs(val.imag()) > tol)
        throw std::runtime_error("expectation: non-vanishing imaginary part " +
                                 std::to_string(val.imag()));
    return val.real();
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep_sites,
                            int num_sites) {
    if (num_sites < 1 || num_sites > max_sites)
        throw std::invalid_argument("partial_trace: num_sites out of range");
    if (rho.dim() != (Eigen::Index(1) << num_sites))
        throw std::invalid_argument("partial_trace: state dimension != 2^num_sites");
    if (keep_sites.empty()) throw std::invalid_argument("partial_trace: empty site set");

    std::vector<int> keep = keep_sites;
    std::sort(keep.begin(), keep.end());
    if (std::adjacent_find(keep.begin(), keep.end()) != keep.end())
        throw std::invalid_argument("partial_trace: duplicate site index");
    if (keep.front() < 0 || keep.back() >= num_sites)
        throw std::invalid_argument("partial_trace: site index out of range");

    std::vector<int> traced;
    for (int s = 0; s < num_sites; ++s)
        if (!std::binary_search(keep.begin(), keep.end(), s)) traced.push_back(s);

    const int nk = static_cast<int>(keep.size());
    const int nt = static_cast<int>(traced.size());
    const std::size_t dk = std::size_t(1) << nk;
    const std::size_t dt = std::size_t(1) << nt;

    // assemble a full-space index from kept-subspace and traced-subspace indices
    auto full_index = [&](std::size_t k_idx, std::size_t t_idx) {
        std::size_t idx = 0;
        for (int a = 0; a < nk; ++a)
            if ((k_idx >> (nk - 1 - a)) & 1U) idx |= std::size_t(1) << (num_sites - 1 - keep[a]);
        for (int a = 0; a < nt; ++a)
            if ((t_idx >> (nt - 1 - a)) & 1U) idx |= std::size_t(1) << (num_sites - 1 - traced[a]);
        return idx;
    };

    const cmatrix& full = rho.matrix();
    cmatrix out = cmatrix::Zero(dk, dk);
    for (std::size_t a = 0; a < dk; ++a)
        for (std::size_t b = 0; b < dk; ++b) {
            complex_t acc = 0.0;
            for (std::size_t t = 0; t < dt; ++t) acc += full(full_index(a, t), full_index(b, t));
            out(a, b) = acc;
        }
    return DensityMatrix(std::move(out));
}

double concurrence(const DensityMatrix& rho) {
    if (rho.dim() != 4) throw std::invalid_argument("concurrence: state must be two qubits");

    cmatrix yy(4, 4);
    yy.setZero();
    yy(0, 3) = -1;
    yy(1, 2) = 1;
    yy(2, 1) = 1;
    yy(3, 0) = -1;

    // the sqrt-eigenvalues of rho (yy) rho* (yy) are the singular values of
    // sqrt(rho)^T (yy) sqrt(rho); the SVD route avoids square-rooting noise
    Eigen::SelfAdjointEigenSolver<cmatrix> es(rho.matrix());
    if (es.info() != Eigen::Success)
        throw std::runtime_error("concurrence: eigensolver did not converge");
    rvector w = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const cmatrix root = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();

    Eigen::JacobiSVD<cmatrix> svd(root.transpose() * yy * root);
    const rvector s = svd.singularValues();  // descending
    return std::max(0.0, s(0) - s(1) - s(2) - s(3));
}

double negativity(const DensityMatrix& rho, const std::vector<int>& party_a, int num_sites) {
    if (num_sites < 1 || num_sites > max_sites)
        throw std::invalid_argument("negativity: num_sites out of range");
    if (rho.dim() != (Eigen::Index(1) << num_sites))
        throw std::invalid_argument("negativity: state dimension != 2^num_sites");
    if (party_a.empty() || static_cast<int>(party_a.size()) >= num_sites)
        throw std::invalid_argument("negativity: partition must be a nonempty proper subset");

    std::size_t a_mask = 0;
    for (int s : party_a) {
        if (s < 0 || s >= num_sites) throw std::invalid_argument("negativity: site out of range");
        const std::size_t bit = std::size_t(1) << (num_sites - 1 - s);
        if (a_mask & bit) throw std::invalid_argument("negativity: duplicate site in partition");
        a_mask |= bit;
    }

    const std::size_t dim = rho.dim();
    const cmatrix& full = rho.matrix();
    cmatrix pt(dim, dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) {
            // transpose the A-subsystem indices, keep B
            const std::size_t rr = (r & ~a_mask) | (c & a_mask);
            const std::size_t cc = (c & ~a_mask) | (r & a_mask);
            pt(rr, cc) = full(r, c);
        }

    Eigen::SelfAdjointEigenSolver<cmatrix> es(pt, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("negativity: eigensolver did not converge");
    double neg = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()(i) < 0.0) neg -= es.eigenvalues()(i);
    return neg;
}

}  // namespace entwit
