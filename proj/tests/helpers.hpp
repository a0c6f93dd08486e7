#pragma once

#include <random>

#include "entwit/core.hpp"

// shared generators for the hand-rolled property tests

namespace entwit::testing {

inline cmatrix random_hermitian(int dim, std::mt19937& rng) {
    std::normal_distribution<double> g;
    cmatrix a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = complex_t(g(rng), g(rng));
    return (a + a.adjoint()) / 2.0;
}

// Ginibre-induced random mixed state
inline DensityMatrix random_density(int dim, std::mt19937& rng) {
    std::normal_distribution<double> g;
    cmatrix a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = complex_t(g(rng), g(rng));
    cmatrix rho = a * a.adjoint();
    rho /= rho.trace();
    return DensityMatrix(std::move(rho));
}

inline cvector random_qubit(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double theta = std::acos(2.0 * u(rng) - 1.0);
    const double phi = 2.0 * std::numbers::pi * u(rng);
    cvector q(2);
    q(0) = std::cos(theta / 2.0);
    q(1) = std::polar(std::sin(theta / 2.0), phi);
    return q;
}

inline cvector kron_vec(const cvector& a, const cvector& b) {
    cvector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        for (Eigen::Index j = 0; j < b.size(); ++j) out(i * b.size() + j) = a(i) * b(j);
    return out;
}

inline cvector random_product_state(int num_sites, std::mt19937& rng) {
    cvector psi = random_qubit(rng);
    for (int s = 1; s < num_sites; ++s) psi = kron_vec(psi, random_qubit(rng));
    return psi;
}

inline DensityMatrix pure_state(const cvector& psi) {
    return DensityMatrix((psi * psi.adjoint() / psi.squaredNorm()).eval());
}

inline cvector singlet() {
    cvector psi = cvector::Zero(4);
    psi(1) = 1.0 / std::sqrt(2.0);
    psi(2) = -1.0 / std::sqrt(2.0);
    return psi;
}

inline cmatrix kron(const cmatrix& a, const cmatrix& b) {
    cmatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// sigma_i . sigma_j on two qubits, built from raw tensor products
inline cmatrix dot_coupling() {
    return kron(pauli_x(), pauli_x()) + kron(pauli_y(), pauli_y()) + kron(pauli_z(), pauli_z());
}

}  // namespace entwit::testing
