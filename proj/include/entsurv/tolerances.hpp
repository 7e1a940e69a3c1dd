// tolerances.hpp - every numeric threshold used by the library and its tests

#pragma once

namespace entsurv {

struct Tolerances {
    // qmat
    double hermitian_flag = 1e-12;       // Hermitian-flagged matrices
    double hermitian_input = 1e-10;      // herm_eigvals precondition
    double unitary = 1e-12;
    double eigvec_condition_max = 1e5;   // above this matexp falls back to Pade
    double kernel_relative = 1e-9;       // zero singular value, relative to ||gen||
    double zero_eigenvalue = 1e-9;
    double jacobi_offdiag = 1e-15;       // relative off-diagonal norm at convergence

    // lindblad / entanglement
    double trace_preservation = 1e-10;
    double choi_negative = -1e-8;        // Choi eigenvalue below this means not CPt
    double fixed_point_det = 1e-9;       // det(rho_bar) above this certifies ESD

    // est solver
    double horizon_rescaled = 50.0;      // default horizon in units of 1/gamma
    int bracket_points = 256;
    double bisection_relative = 1e-10;
    double newton_step_relative = 1e-6;  // central difference step, relative to t
    double crossing_floor = 1e-12;       // root-function values below this are not a crossing
    double tail_decade = 10.0;           // divergence fit uses [horizon / tail_decade, horizon]

    // models
    double critical_series_window = 1e-5; // |1 - 16 kappa^2| below this uses the Taylor form
    double lambert_residual = 1e-12;

    // gaussian
    double symmetric = 1e-12;
    double cpt_margin = 1e-10;
    double class_degenerate = 1e-10;     // |k^2 - 1| below this is treated as class B
    double critical_angle = 1e-6;        // |cos 2 theta| below this uses series / quadrature
    double quadrature = 1e-10;
};

inline constexpr Tolerances kTol{};

} // namespace entsurv
