#pragma once

#include <vector>

#include "entwit/core.hpp"

// Spin-chain Hamiltonians: dimer / XXX / XX / alternating J1-J2 chains,
// the magnetization operator M = (1/2) sum_j sigma^z_j, and the total
// Hamiltonian H = H_ex - B M.
//
// Sign convention: H_ex = +J sum sigma.sigma with J > 0 antiferromagnetic,
// so the two-site ground state is the singlet (spectrum -3J, J, J, J).

namespace entwit {

enum class ChainModel { xxx, xx, alternating };
enum class Boundary { open, periodic };

struct ChainSpec {
    int num_sites = 2;
    ChainModel model = ChainModel::xxx;
    double j = 1.0;        // xxx / xx coupling
    double j1 = 0.0;       // alternating: strong (even) bonds
    double j2 = 0.0;       // alternating: weak (odd) bonds, may be 0
    double field_b = 0.0;  // Zeeman field, energy units
    Boundary boundary = Boundary::open;
};

/// Throws std::invalid_argument when the spec violates its invariants
/// (site count 2..12, finite couplings, alternating needs even N and
/// j1 > 0, j2 >= 0).
void validate(const ChainSpec& spec);

struct Bond {
    int i = 0;
    int j = 0;
    double coupling = 0.0;
    bool planar = false;  // true: sx.sx + sy.sy only (XX model)
};

struct ModelOperators {
    ChainSpec spec;
    std::vector<Bond> bonds;
    HermitianOperator h_exchange;     // energy units
    HermitianOperator magnetization;  // dimensionless, diagonal
    HermitianOperator h_total;        // h_exchange - field_b * magnetization
    double witness_coupling = 0.0;    // |J|, or max(j1, j2) for alternating
};

/// Build all operators for a chain spec. A periodic chain places a bond
/// (j, j+1 mod N) for every j, so the N = 2 ring carries a doubled bond.
ModelOperators build(const ChainSpec& spec);

struct GapResult {
    double value = 0.0;
    bool ground_degenerate = false;  // value is reported as 0 when set
};

/// E1 - E0 of h_total. A degenerate ground level (relative splitting
/// below 1e-9) is reported as gap 0 with the flag set.
GapResult spectral_gap(const ModelOperators& ops);

}  // namespace entwit
