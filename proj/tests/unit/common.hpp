// common.hpp - shared fixtures for the unit tests

#pragma once

#include <random>

#include "entsurv/lindblad.hpp"
#include "entsurv/models.hpp"
#include "oracles.hpp"

namespace fixture {

inline constexpr double kHalfPi = 1.5707963267948966;

// Random qubit GKSL spec with one to three Lindblad operators.
inline entsurv::lindblad::LindbladSpec random_spec(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.1, 2.0);
    std::uniform_int_distribution<int> count(1, 3);
    entsurv::lindblad::LindbladSpec spec;
    spec.hamiltonian = oracle::random_hermitian(rng, 2);
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
        spec.lindblad_ops.push_back(0.5 * oracle::random_matrix(rng, 2));
    }
    spec.gamma = u(rng);
    spec.omega = u(rng);
    return spec;
}

// Random density matrix from a Gaussian Ginibre matrix.
inline oracle::Mat random_state(std::mt19937_64& rng, int d) {
    const oracle::Mat g = oracle::random_matrix(rng, d);
    oracle::Mat rho = g * g.adjoint();
    return rho / rho.trace();
}

inline entsurv::lindblad::SuperOp phase_flip(double kappa, double theta = kHalfPi, double gamma = 1.0) {
    return entsurv::lindblad::build_generator(entsurv::models::phase_flip_spec({kappa, theta, 0.0}, gamma));
}

inline entsurv::lindblad::SuperOp gad(double n, double kappa = 0.0, double theta = kHalfPi, double gamma = 1.0) {
    return entsurv::lindblad::build_generator(entsurv::models::gad_spec({n, kappa, theta}, gamma));
}

inline entsurv::lindblad::SuperOp depolarizing(double kappa = 0.0, double gamma = 1.0) {
    return entsurv::lindblad::build_generator(entsurv::models::depolarizing_spec(kappa, kHalfPi, gamma));
}

} // namespace fixture
