#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

// Operator algebra on finite-dimensional qubit Hilbert spaces: tensor
// embedding, Hermitian spectral decomposition, Gibbs states, expectation
// values, partial trace/transpose and two-qubit entanglement measures.
//
// Conventions (fixed project-wide):
//   * big-endian site order: site 0 is the most significant bit of a basis
//     index, so |b_0 b_1 ... b_{N-1}> has index sum_j b_j 2^{N-1-j}
//   * |0> is the sigma_z = +1 eigenstate
// Dense diagonalization is capped at 12 sites (dim 4096).

namespace entwit {

using complex_t = std::complex<double>;
using cmatrix = Eigen::MatrixXcd;
using cvector = Eigen::VectorXcd;
using rvector = Eigen::VectorXd;
using rmatrix = Eigen::MatrixXd;

inline constexpr int max_sites = 12;
inline constexpr double hermiticity_tol = 1e-12;  // relative to max |entry|
inline constexpr double trace_tol = 1e-10;
inline constexpr double unitarity_tol = 1e-10;
inline constexpr double reconstruction_tol = 1e-9;

/// Dense Hermitian operator. The constructor enforces H = H^dagger to
/// hermiticity_tol relative to the largest entry magnitude.
class HermitianOperator {
public:
    explicit HermitianOperator(cmatrix entries);

    const cmatrix& matrix() const { return entries_; }
    Eigen::Index dim() const { return entries_.rows(); }

private:
    cmatrix entries_;
};

/// Eigensystem of a Hermitian operator: ascending eigenvalues and the
/// unitary matrix of column eigenvectors.
struct SpectralDecomposition {
    rvector eigenvalues;
    cmatrix eigenvectors;
};

/// Unit-trace positive-semidefinite Hermitian matrix. Hermiticity and
/// trace are checked on construction; positivity is guaranteed by the
/// constructing operations and asserted in the test suite.
class DensityMatrix {
public:
    explicit DensityMatrix(cmatrix entries);

    const cmatrix& matrix() const { return entries_; }
    Eigen::Index dim() const { return entries_.rows(); }

    /// Smallest eigenvalue; used by tests to pin the positivity invariant.
    double min_eigenvalue() const;

private:
    cmatrix entries_;
};

// Single-qubit Pauli matrices (2x2).
const cmatrix& pauli_x();
const cmatrix& pauli_y();
const cmatrix& pauli_z();
const cmatrix& pauli_id();

/// identity x ... x op x ... x identity with the 2x2 `op` at `site`.
HermitianOperator embed_local(const HermitianOperator& op, int site, int num_sites);

/// Full spectral decomposition. Eigenvalues ascend; V diag(w) V^dagger
/// reconstructs the input to reconstruction_tol (relative Frobenius).
/// Real-symmetric inputs are routed through the real solver.
SpectralDecomposition eigh(const HermitianOperator& h);

/// Gibbs state exp(-H/T)/Z at temperature T > 0 (k_B = 1). Weights are
/// computed from ground-shifted eigenvalues so no exponential overflows.
DensityMatrix thermal_state(const SpectralDecomposition& spec, double temperature);

/// tr(rho A). The imaginary residue must vanish (asserted, then dropped).
double expectation(const DensityMatrix& rho, const HermitianOperator& obs);

/// Reduced state on `keep_sites` (ascending site indices) of an
/// num_sites-qubit state.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep_sites,
                            int num_sites);

/// Wootters two-qubit concurrence: max(0, l1 - l2 - l3 - l4) with l_i the
/// descending square-root eigenvalues of rho (sy x sy) rho* (sy x sy).
double concurrence(const DensityMatrix& rho);

/// Sum of |negative eigenvalues| of the partial transpose taken over
/// `party_a` (a nonempty proper subset of sites).
double negativity(const DensityMatrix& rho, const std::vector<int>& party_a, int num_sites);

}  // namespace entwit
