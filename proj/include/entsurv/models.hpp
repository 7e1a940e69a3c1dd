// models.hpp - qubit model catalog: generators, closed forms, perturbative series
//
// tau is always the rescaled time gamma * t.

#pragma once

#include <array>
#include <optional>

#include "entsurv/lindblad.hpp"
#include "entsurv/qmat.hpp"

namespace entsurv::models {

// Driving direction n = (sin theta cos phi, sin theta sin phi, cos theta).
struct PhaseFlipParams {
    double kappa = 0.0;
    double theta = 1.5707963267948966;
    double phi = 0.0;
};

struct GadParams {
    double n_mean = 0.0;
    double kappa = 0.0;
    double theta = 1.5707963267948966;
};

qmat::ComplexMatrix driving_hamiltonian(double theta, double phi = 0.0);

// H = n.sigma, L = Z / sqrt 2.
lindblad::LindbladSpec phase_flip_spec(const PhaseFlipParams& p, double gamma = 1.0);
// H = n.sigma, L1 = sqrt(N+1) sigma_-, L2 = sqrt(N) sigma_+.
lindblad::LindbladSpec gad_spec(const GadParams& p, double gamma = 1.0);
// H = n.sigma, L = {X, Y, Z} / 2.
lindblad::LindbladSpec depolarizing_spec(double kappa, double theta = 1.5707963267948966,
                                         double gamma = 1.0);

// ---- phase flip, theta = pi/2 ----------------------------------------------

// sinh(z)/z as a function of z^2, continued to sin(|z|)/|z| for z^2 < 0.
double sinhc_of_square(double z_squared);

// Q_kappa(tau) = sqrt((cosh^2(tau sqrt(1 - 16 k^2)) - 16 k^2) / (1 - 16 k^2)).
double pf_q(double kappa, double tau);
// S_kappa(tau) = sinh(tau sqrt(1 - 16 k^2)) / sqrt(1 - 16 k^2).
double pf_s(double kappa, double tau);

double pf_negativity(double kappa, double tau);
// Partial-transpose spectrum of the Choi state, ascending.
std::array<double, 4> pf_spectrum(double kappa, double tau);

// cosh(tau) - 2 - (cosh(tau sqrt(1 - 16 k^2)) - 16 k^2) / (1 - 16 k^2); the
// survival time is its smallest positive zero.
double pf_est_residual(double kappa, double tau);
// Smallest positive zero of pf_est_residual, empty when there is none
// below tau_max (kappa = 0 never crosses).
std::optional<double> pf_est_root(double kappa, double tau_max = 200.0);

struct Bounds {
    double lower = 0.0;
    double upper = 0.0; // +inf at kappa = 1/4
};
// Valid for kappa >= 1/4.
Bounds pf_bounds(double kappa);

enum class SeriesRegime { Small, Critical, Large };

// Leading small-kappa term W(1 / (2 kappa^2)).
double pf_small_kappa_leading(double kappa);
// First correction tau_1(kappa) from the deformed small-kappa equation.
double pf_small_kappa_correction(double kappa);

struct CriticalCoefficients {
    double tau0 = 0.0; // root of cosh(tau) - 1 - tau^2/2 = 2
    double tau1 = 0.0;
    double tau2 = 0.0;
};
const CriticalCoefficients& pf_critical_coefficients();

// Oscillatory first correction around arccosh(3).
double pf_large_kappa_correction(double kappa);

/// Regime approximation of the rescaled survival time.
///
/// Small (kappa <= 0.05): W(1/(2 kappa^2)) + tau_1(kappa).
/// Critical (|kappa - 1/4| <= 0.05): tau0 + tau1 d + tau2 d^2, d = kappa - 1/4.
/// Large (kappa >= 5): arccosh(3) + the oscillatory correction.
/// Throws RangeError outside the window.
double pf_series(double kappa, SeriesRegime regime);

// Principal branch, x >= 0.
double lambert_w(double x);

// ---- generalized amplitude damping, kappa = 0 -------------------------------

// A_N(tau) = sqrt(1/2 + (4N(N+1) + cosh((2N+1) tau)) / (2 (2N+1)^2)).
double gad_a(double n_mean, double tau);
double gad_negativity(double n_mean, double tau);
std::array<double, 4> gad_spectrum(double n_mean, double tau);
// Empty at N = 0, where the survival time diverges.
std::optional<double> gad_est_dissipative(double n_mean);

// ---- depolarizing ------------------------------------------------------------

double depolarizing_est();
double depolarizing_negativity(double tau);
// max |[H-part, D]| for the depolarizing dissipator and Hamiltonian h.
double depolarizing_commutator_norm(const qmat::ComplexMatrix& h);

} // namespace entsurv::models
