// models.cpp - phase-flip, generalized amplitude damping and depolarizing catalog

#include "entsurv/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "entsurv/errors.hpp"
#include "entsurv/est.hpp"
#include "entsurv/tolerances.hpp"

namespace entsurv::models {

using qmat::Complex;
using qmat::ComplexMatrix;

ComplexMatrix driving_hamiltonian(double theta, double phi) {
    return std::sin(theta) * std::cos(phi) * qmat::pauli_x() +
           std::sin(theta) * std::sin(phi) * qmat::pauli_y() + std::cos(theta) * qmat::pauli_z();
}

lindblad::LindbladSpec phase_flip_spec(const PhaseFlipParams& p, double gamma) {
    if (!(p.kappa >= 0.0)) {
        throw ContractError("phase_flip_spec: kappa must be non-negative");
    }
    lindblad::LindbladSpec spec;
    spec.hamiltonian = driving_hamiltonian(p.theta, p.phi);
    spec.lindblad_ops = {qmat::pauli_z() / std::sqrt(2.0)};
    spec.gamma = gamma;
    spec.omega = p.kappa * gamma;
    return spec;
}

lindblad::LindbladSpec gad_spec(const GadParams& p, double gamma) {
    if (!(p.kappa >= 0.0) || !(p.n_mean >= 0.0)) {
        throw ContractError("gad_spec: kappa and N must be non-negative");
    }
    lindblad::LindbladSpec spec;
    spec.hamiltonian = driving_hamiltonian(p.theta);
    spec.lindblad_ops = {std::sqrt(p.n_mean + 1.0) * qmat::sigma_minus()};
    if (p.n_mean > 0.0) {
        spec.lindblad_ops.push_back(std::sqrt(p.n_mean) * qmat::sigma_plus());
    }
    spec.gamma = gamma;
    spec.omega = p.kappa * gamma;
    return spec;
}

lindblad::LindbladSpec depolarizing_spec(double kappa, double theta, double gamma) {
    if (!(kappa >= 0.0)) {
        throw ContractError("depolarizing_spec: kappa must be non-negative");
    }
    lindblad::LindbladSpec spec;
    spec.hamiltonian = driving_hamiltonian(theta);
    spec.lindblad_ops = {0.5 * qmat::pauli_x(), 0.5 * qmat::pauli_y(), 0.5 * qmat::pauli_z()};
    spec.gamma = gamma;
    spec.omega = kappa * gamma;
    return spec;
}

double sinhc_of_square(double z2) {
    if (std::abs(z2) < 1e-2) {
        return 1.0 + z2 / 6.0 * (1.0 + z2 / 20.0 * (1.0 + z2 / 42.0 * (1.0 + z2 / 72.0 * (1.0 + z2 / 110.0))));
    }
    if (z2 > 0.0) {
        const double z = std::sqrt(z2);
        return std::sinh(z) / z;
    }
    const double z = std::sqrt(-z2);
    return std::sin(z) / z;
}

namespace {

double eps_of(double kappa) {
    return 1.0 - 16.0 * kappa * kappa;
}

} // namespace

double pf_q(double kappa, double tau) {
    const double s = tau * sinhc_of_square(tau * tau * eps_of(kappa));
    return std::sqrt(1.0 + s * s);
}

double pf_s(double kappa, double tau) {
    return tau * sinhc_of_square(tau * tau * eps_of(kappa));
}

double pf_negativity(double kappa, double tau) {
    const double h = 0.5 * tau;
    return 0.5 * std::exp(-h) * std::max(pf_q(kappa, h) - std::sinh(h), 0.0);
}

std::array<double, 4> pf_spectrum(double kappa, double tau) {
    const double h = 0.5 * tau;
    const double pre = 0.5 * std::exp(-h);
    const double q = pf_q(kappa, h);
    const double s = pf_s(kappa, h);
    std::array<double, 4> out{pre * (std::sinh(h) - q), pre * (std::sinh(h) + q),
                              pre * (std::cosh(h) - s), pre * (std::cosh(h) + s)};
    std::sort(out.begin(), out.end());
    return out;
}

double pf_est_residual(double kappa, double tau) {
    // (cosh(tau r) - 16 k^2) / (1 - 16 k^2) = 1 + (tau^2 / 2) sinhc(tau r / 2)^2
    const double s = sinhc_of_square(0.25 * tau * tau * eps_of(kappa));
    return std::cosh(tau) - 3.0 - 0.5 * tau * tau * s * s;
}

std::optional<double> pf_est_root(double kappa, double tau_max) {
    est::SolveOptions options;
    options.bracket_points = 2048;
    const auto crossing =
        est::first_crossing([kappa](double tau) { return pf_est_residual(kappa, tau) / std::cosh(tau); }, tau_max,
                            options);
    if (!crossing.found) {
        return std::nullopt;
    }
    return crossing.t;
}

Bounds pf_bounds(double kappa) {
    if (!(kappa >= 0.25)) {
        throw RangeError("pf_bounds: requires kappa >= 1/4, got " + std::to_string(kappa));
    }
    Bounds out;
    out.lower = std::acosh(3.0);
    const double k2 = 16.0 * kappa * kappa;
    out.upper = k2 == 1.0 ? std::numeric_limits<double>::infinity()
                          : std::acosh(2.0 - (1.0 + k2) / (1.0 - k2));
    return out;
}

double pf_small_kappa_leading(double kappa) {
    if (!(kappa > 0.0)) {
        throw RangeError("pf_small_kappa_leading: kappa must be positive");
    }
    return lambert_w(1.0 / (2.0 * kappa * kappa));
}

double pf_small_kappa_correction(double kappa) {
    const double w = pf_small_kappa_leading(kappa);
    const double eps = eps_of(kappa);
    const double deformed = (std::cosh(w * std::sqrt(eps)) - 16.0 * kappa * kappa) / eps;
    return (2.0 + deformed - std::cosh(w)) / ((1.0 + w) * std::exp(w));
}

const CriticalCoefficients& pf_critical_coefficients() {
    static const CriticalCoefficients coefficients = [] {
        CriticalCoefficients c;
        double t = 2.5;
        for (int i = 0; i < 50; ++i) {
            const double step = (std::cosh(t) - 3.0 - 0.5 * t * t) / (std::sinh(t) - t);
            t -= step;
            if (std::abs(step) < 1e-16 * t) {
                break;
            }
        }
        const double s = std::sinh(t);
        const double ch = std::cosh(t);
        const double t2 = t * t;
        const double t3 = t2 * t;
        const double t4 = t2 * t2;
        c.tau0 = t;
        c.tau1 = -t4 / (3.0 * (s - t));
        const double num = 5.0 * t4 * ch + 27.0 * t4 - 24.0 * t3 * s - 8.0 * t2 * s * s + 60.0 * t2 -
                           120.0 * t * s + 60.0 * s * s;
        c.tau2 = t4 * num / (90.0 * std::pow(t - s, 3));
        return c;
    }();
    return coefficients;
}

double pf_large_kappa_correction(double kappa) {
    const double t_inf = std::acosh(3.0);
    const double m = 16.0 * kappa * kappa - 1.0;
    return (1.0 - std::cos(t_inf * std::sqrt(m))) / (2.0 * std::sqrt(2.0) * m);
}

double pf_series(double kappa, SeriesRegime regime) {
    switch (regime) {
    case SeriesRegime::Small:
        if (!(kappa > 0.0 && kappa <= 0.05)) {
            throw RangeError("pf_series: small-kappa regime needs 0 < kappa <= 0.05");
        }
        return pf_small_kappa_leading(kappa) + pf_small_kappa_correction(kappa);
    case SeriesRegime::Critical: {
        if (!(std::abs(kappa - 0.25) <= 0.05)) {
            throw RangeError("pf_series: critical regime needs |kappa - 1/4| <= 0.05");
        }
        const auto& c = pf_critical_coefficients();
        const double d = kappa - 0.25;
        return c.tau0 + d * (c.tau1 + d * c.tau2);
    }
    case SeriesRegime::Large:
        if (!(kappa >= 5.0)) {
            throw RangeError("pf_series: large-kappa regime needs kappa >= 5");
        }
        return std::acosh(3.0) + pf_large_kappa_correction(kappa);
    }
    throw RangeError("pf_series: unknown regime");
}

double gad_a(double n_mean, double tau) {
    const double m = 2.0 * n_mean + 1.0;
    return std::sqrt(0.5 + (4.0 * n_mean * (n_mean + 1.0) + std::cosh(m * tau)) / (2.0 * m * m));
}

double gad_negativity(double n_mean, double tau) {
    const double h = 0.5 * (2.0 * n_mean + 1.0) * tau;
    return 0.5 * std::exp(-h) * std::max(gad_a(n_mean, tau) - std::sinh(h), 0.0);
}

std::array<double, 4> gad_spectrum(double n_mean, double tau) {
    const double m = 2.0 * n_mean + 1.0;
    const double x = std::exp(-m * tau);
    const double p = (n_mean + 1.0) / m;
    const double h = 0.5 * m * tau;
    const double pre = 0.5 * std::exp(-h);
    const double a = gad_a(n_mean, tau);
    std::array<double, 4> out{0.5 * (p + (1.0 - p) * x), 0.5 * (1.0 - p + p * x),
                              pre * (std::sinh(h) - a), pre * (std::sinh(h) + a)};
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<double> gad_est_dissipative(double n_mean) {
    if (!(n_mean >= 0.0)) {
        throw ContractError("gad_est_dissipative: N must be non-negative");
    }
    if (n_mean == 0.0) {
        return std::nullopt;
    }
    const double m = 2.0 * n_mean + 1.0;
    return std::acosh(1.0 + m * m / (2.0 * n_mean * (n_mean + 1.0))) / m;
}

double depolarizing_est() {
    return std::log(3.0);
}

double depolarizing_negativity(double tau) {
    const double h = 0.5 * tau;
    return 0.5 * std::exp(-h) * std::max(std::exp(-h) - std::sinh(h), 0.0);
}

double depolarizing_commutator_norm(const ComplexMatrix& h) {
    const ComplexMatrix hp = lindblad::hamiltonian_part(h).matrix;
    const ComplexMatrix d = lindblad::dissipator(depolarizing_spec(0.0).lindblad_ops).matrix;
    return qmat::max_abs(hp * d - d * hp);
}

} // namespace entsurv::models
