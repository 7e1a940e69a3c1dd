// gaussian.hpp - one-mode Gaussian bosonic channels
//
// A channel maps Weyl operators as W_xi -> W_{F xi} exp(-xi^T G xi / 2).
// CPt: G - (i/2)(J - F^T J F) >= 0 with J the symplectic form.

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "entsurv/est.hpp"

namespace entsurv::gaussian {

using Matrix2 = Eigen::Matrix2d;

struct GaussianChannel {
    Matrix2 f = Matrix2::Identity();
    Matrix2 g = Matrix2::Zero();
    // Exact det F when the producer knows it; the product of two large entries cancels otherwise.
    std::optional<double> det_f;
};

// ch.det_f if set, else the determinant of ch.f.
double det_f(const GaussianChannel& ch);

Matrix2 symplectic_form();

// Throws ContractError if g is not symmetric.
void validate(const GaussianChannel& ch);

// Smallest eigenvalue of the Hermitian matrix G - (i/2)(J - F^T J F).
double cpt_margin(const GaussianChannel& ch);
bool is_cpt(const GaussianChannel& ch);

// W_xi -> first -> second. F = F2 F1, G = G1 + F1^T G2 F1.
GaussianChannel compose(const GaussianChannel& first, const GaussianChannel& second);

enum class ChannelClass { A, B1, B2, C, D };
std::string_view to_string(ChannelClass c);

struct Classification {
    ChannelClass cls = ChannelClass::B2;
    double k = 1.0;
    double q = 0.0;
    std::string warning; // set when |k^2 - 1| is within the degeneracy tolerance
};

/// Normal form from the sign of det F (F^T J F = det(F) J for one mode).
Classification classify(const GaussianChannel& ch);

/// A and D are always EB, B1 never; B2 iff q >= 1; C iff q >= min(1, k^2).
bool is_eb(const GaussianChannel& ch);
bool is_eb(const Classification& c);

// q - min(1, k^2) for classes B2 / C, the class-based EB margin.
double eb_class_margin(const Classification& c);

// det(G - (i/2)(J + F^T J F)) = det G - ((1 + det F) / 2)^2.
double eb_determinant(const GaussianChannel& ch);

// ---- driven thermal damping model ------------------------------------------

struct GaussianModelParams {
    double n_mean = 0.0;
    double kappa = 0.0;
    double theta = 0.0;
    double gamma = 1.0;
};

void validate(const GaussianModelParams& p);

// First-moment drift in units of gamma:
// [[-1/2 + k sin th, -k cos th], [k cos th, -1/2 - k sin th]].
Matrix2 drift(const GaussianModelParams& p);

/// F_t = exp(gamma t drift), G_t = (2N+1) gamma int_0^t F_s^T F_s ds.
///
/// Closed form; for |cos 2 theta| below Tolerances::critical_angle the three
/// scalar integrals are done by Gauss-Kronrod quadrature instead.
GaussianChannel model_fg(const GaussianModelParams& p, double t);

struct EstCoefficients {
    double a = 0.0;
    double b = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double b_infinity = 0.0; // alpha / beta
};

// Coefficients with gamma1 = N + 1, gamma2 = N (units of gamma).
EstCoefficients est_coefficients(double n_mean, double kappa, double theta);

/// cosh(tau) - a cos(2 tau kappa sqrt(cos 2 theta)) - b, continued to cosh
/// for cos 2 theta < 0; at theta = pi/4 the critical form is used.
double coefficient_residual(const GaussianModelParams& p, double tau);

// Rescaled survival time from the coefficient equation, used as an oracle.
std::optional<double> coefficient_root(const GaussianModelParams& p, double tau_max = 50.0);

/// Survival time from the first zero of eb_determinant(model_fg(p, t)).
/// The model never has a divergent survival time, so the result is Finite or
/// MaxHorizonExceeded.
est::EstResult gaussian_est(const GaussianModelParams& p, const est::SolveOptions& options = {});

// Same search on the class-based margin instead of the determinant.
est::EstResult gaussian_est_class_based(const GaussianModelParams& p,
                                        const est::SolveOptions& options = {});

// ln((4N + 3) / (4N + 1)).
double gaussian_est_dissipative(double n_mean);

// arccosh(alpha / beta), the kappa -> infinity limit for theta < pi/4.
double gaussian_asymptote(double n_mean, double theta);

enum class GaussianRegime { SmallKappa, LargeKappaLowTheta, LargeKappaHighTheta };

/// Regime approximation of the rescaled survival time.
///
/// SmallKappa (kappa <= 0.05): T0 - kappa^2 (2N+1)(1 - cos 2th)(4/((4N+3)(4N+1)) - T0^2).
/// LargeKappaLowTheta (kappa >= 5, theta < pi/4): oscillatory correction around
/// the asymptote. LargeKappaHighTheta (kappa >= 5, theta > pi/4): decaying
/// arccosh form. Throws RangeError outside the window or at theta = pi/4.
double gaussian_series(const GaussianModelParams& p, GaussianRegime regime);

} // namespace entsurv::gaussian
