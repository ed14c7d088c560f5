#pragma once

#include <vector>

#include "dqm/propagator.hpp"

namespace dqm {

struct SpectrumSlice {
    std::vector<double> energies;      // ascending
    std::vector<WaveFunction> states;  // normalised, same order
};

/// Lowest eigenpairs of the discrete Hamiltonian on a hard-wall grid (the
/// matrix is plain symmetric tridiagonal there). Backed by LAPACK.
SpectrumSlice lowest_eigenstates(const Hamiltonian1D& h, int count, double t = 0.0);

/// All eigenvalues of the discrete Hamiltonian, ascending. Hard-wall grids
/// only; periodic operators are cyclic and handled elsewhere.
std::vector<double> eigenvalues(const Hamiltonian1D& h, double t = 0.0);

}  // namespace dqm
