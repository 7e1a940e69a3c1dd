// gaussian.cpp - one-mode Gaussian channels and the driven thermal damping model

#include "entsurv/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "entsurv/errors.hpp"
#include "entsurv/models.hpp"
#include "entsurv/tolerances.hpp"

namespace entsurv::gaussian {

using Complex = std::complex<double>;

Matrix2 symplectic_form() {
    Matrix2 j;
    j << 0.0, 1.0, -1.0, 0.0;
    return j;
}

void validate(const GaussianChannel& ch) {
    if ((ch.g - ch.g.transpose()).cwiseAbs().maxCoeff() > kTol.symmetric) {
        throw ContractError("GaussianChannel: G is not symmetric");
    }
}

double cpt_margin(const GaussianChannel& ch) {
    const Matrix2 j = symplectic_form();
    const Eigen::Matrix2cd m =
        ch.g.cast<Complex>() - Complex(0.0, 0.5) * (j - ch.f.transpose() * j * ch.f).cast<Complex>();
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
}

bool is_cpt(const GaussianChannel& ch) {
    return cpt_margin(ch) >= -kTol.cpt_margin;
}

GaussianChannel compose(const GaussianChannel& first, const GaussianChannel& second) {
    GaussianChannel out{second.f * first.f, first.g + first.f.transpose() * second.g * first.f, std::nullopt};
    if (first.det_f && second.det_f) {
        out.det_f = *first.det_f * *second.det_f;
    }
    return out;
}

std::string_view to_string(ChannelClass c) {
    switch (c) {
    case ChannelClass::A:
        return "A";
    case ChannelClass::B1:
        return "B1";
    case ChannelClass::B2:
        return "B2";
    case ChannelClass::C:
        return "C";
    case ChannelClass::D:
        return "D";
    }
    return "?";
}

double det_f(const GaussianChannel& ch) {
    return ch.det_f ? *ch.det_f : ch.f.determinant();
}

Classification classify(const GaussianChannel& ch) {
    validate(ch);
    const double det_f = gaussian::det_f(ch);
    const double det_g = ch.g.determinant();
    const double root_g = std::sqrt(std::max(det_g, 0.0));
    const double tol = kTol.class_degenerate;
    Classification out;
    if (std::abs(det_f) <= tol) {
        out.cls = ChannelClass::A;
        out.k = Eigen::JacobiSVD<Matrix2>(ch.f).singularValues()(0);
        out.q = root_g - 0.5;
    } else if (std::abs(det_f - 1.0) <= tol) {
        const double scale = std::max(1.0, ch.g.trace() * ch.g.trace());
        const bool rank_one = std::abs(det_g) <= tol * scale && std::abs(ch.g.trace()) > tol;
        out.cls = rank_one ? ChannelClass::B1 : ChannelClass::B2;
        out.k = 1.0;
        out.q = rank_one ? 0.0 : root_g;
        if (det_f != 1.0) {
            out.warning = "det F within " + std::to_string(tol) + " of 1, classified as B";
        }
    } else if (det_f > 0.0) {
        out.cls = ChannelClass::C;
        out.k = std::sqrt(det_f);
        out.q = root_g - 0.5 * std::abs(1.0 - det_f);
    } else {
        out.cls = ChannelClass::D;
        out.k = std::sqrt(-det_f);
        out.q = root_g - 0.5 * (1.0 - det_f);
    }
    return out;
}

double eb_class_margin(const Classification& c) {
    switch (c.cls) {
    case ChannelClass::A:
    case ChannelClass::D:
        return 1.0;
    case ChannelClass::B1:
        return -1.0;
    case ChannelClass::B2:
        return c.q - 1.0;
    case ChannelClass::C:
        return c.q - std::min(1.0, c.k * c.k);
    }
    return -1.0;
}

bool is_eb(const Classification& c) {
    return eb_class_margin(c) >= 0.0;
}

bool is_eb(const GaussianChannel& ch) {
    return is_eb(classify(ch));
}

double eb_determinant(const GaussianChannel& ch) {
    const double c = 0.5 * (1.0 + det_f(ch));
    return ch.g.determinant() - c * c;
}

void validate(const GaussianModelParams& p) {
    if (!(p.n_mean >= 0.0) || !(p.kappa >= 0.0) || !(p.gamma > 0.0)) {
        throw ContractError("GaussianModelParams: need N >= 0, kappa >= 0, gamma > 0");
    }
    if (!(p.theta >= 0.0 && p.theta <= 0.5 * M_PI + 1e-12)) {
        throw ContractError("GaussianModelParams: theta must lie in [0, pi/2]");
    }
}

Matrix2 drift(const GaussianModelParams& p) {
    const double s = p.kappa * std::sin(p.theta);
    const double c = p.kappa * std::cos(p.theta);
    Matrix2 k;
    k << -0.5 + s, -c, c, -0.5 - s;
    return k;
}

namespace {

// cosh(z) as a function of z^2, continued to cos.
double cosh_of_square(double z2) {
    return z2 >= 0.0 ? std::cosh(std::sqrt(z2)) : std::cos(std::sqrt(-z2));
}

// int_0^tau exp(p u) du.
Complex exp_integral(Complex p, double tau) {
    const Complex z = p * tau;
    if (std::abs(z) < 0.1) {
        Complex term = 1.0;
        Complex sum = 1.0;
        for (int n = 2; n < 16; ++n) {
            term *= z / static_cast<double>(n);
            sum += term;
        }
        return tau * sum;
    }
    return (std::exp(z) - 1.0) / p;
}

struct Moments {
    double cc = 0.0; // int e^-u C^2
    double ss = 0.0; // int e^-u S^2
    double cs = 0.0; // int e^-u C S
};

// exp(kappa u B) = C(u) I + S(u) B with B^2 = lambda I.
Moments moments_closed(double lambda, double kappa, double tau) {
    const Complex root = std::sqrt(Complex(lambda, 0.0));
    const Complex omega = 2.0 * kappa * root;
    const Complex e_plus = exp_integral(-1.0 + omega, tau);
    const Complex e_minus = exp_integral(-1.0 - omega, tau);
    const double e0 = exp_integral(-1.0, tau).real();
    const double i_cosh = (0.5 * (e_plus + e_minus)).real();
    Moments m;
    m.cc = 0.5 * (e0 + i_cosh);
    m.ss = (i_cosh - e0) / (2.0 * lambda);
    m.cs = (0.5 * (e_plus - e_minus) / (2.0 * root)).real();
    return m;
}

Moments moments_quadrature(double lambda, double kappa, double tau) {
    using boost::math::quadrature::gauss_kronrod;
    auto c_of = [=](double u) { return cosh_of_square(lambda * kappa * kappa * u * u); };
    auto s_of = [=](double u) { return kappa * u * models::sinhc_of_square(lambda * kappa * kappa * u * u); };
    const double tol = kTol.quadrature;
    Moments m;
    m.cc = gauss_kronrod<double, 61>::integrate(
        [&](double u) { return std::exp(-u) * c_of(u) * c_of(u); }, 0.0, tau, 15, tol);
    m.ss = gauss_kronrod<double, 61>::integrate(
        [&](double u) { return std::exp(-u) * s_of(u) * s_of(u); }, 0.0, tau, 15, tol);
    m.cs = gauss_kronrod<double, 61>::integrate(
        [&](double u) { return std::exp(-u) * c_of(u) * s_of(u); }, 0.0, tau, 15, tol);
    return m;
}

} // namespace

GaussianChannel model_fg(const GaussianModelParams& p, double t) {
    validate(p);
    if (!(t >= 0.0)) {
        throw ContractError("model_fg: t must be non-negative");
    }
    const double tau = p.gamma * t;
    const double st = std::sin(p.theta);
    const double ct = std::cos(p.theta);
    const double lambda = -std::cos(2.0 * p.theta);
    Matrix2 b;
    b << st, -ct, ct, -st;

    const double y = p.kappa * tau;
    const double c_tau = cosh_of_square(lambda * y * y);
    const double s_tau = y * models::sinhc_of_square(lambda * y * y);
    GaussianChannel out;
    out.f = std::exp(-0.5 * tau) * (c_tau * Matrix2::Identity() + s_tau * b);
    out.det_f = std::exp(-tau); // tr b = 0

    if (tau == 0.0) {
        out.g.setZero();
        return out;
    }
    Moments m;
    if (p.kappa == 0.0) {
        m.cc = -std::expm1(-tau);
    } else if (std::abs(lambda) < kTol.critical_angle) {
        m = moments_quadrature(lambda, p.kappa, tau);
    } else {
        m = moments_closed(lambda, p.kappa, tau);
    }
    Matrix2 z;
    z << 1.0, 0.0, 0.0, -1.0;
    Matrix2 x;
    x << 0.0, 1.0, 1.0, 0.0;
    out.g = (2.0 * p.n_mean + 1.0) * ((m.cc + m.ss) * Matrix2::Identity() + 2.0 * st * m.cs * z -
                                      std::sin(2.0 * p.theta) * m.ss * x);
    return out;
}

EstCoefficients est_coefficients(double n_mean, double kappa, double theta) {
    const double g1 = n_mean + 1.0;
    const double g2 = n_mean;
    const double c = std::cos(2.0 * theta);
    EstCoefficients out;
    out.alpha = (g1 * g1 + g2 * g2) * (2.0 + 3.0 * c) + 2.0 * g1 * g2 * (2.0 + c);
    out.beta = (g1 * g1 + g2 * g2) * (2.0 + c) + 2.0 * g1 * g2 * (2.0 + 3.0 * c);
    const double den = (3.0 * g1 + g2) * (g1 + 3.0 * g2) + 4.0 * kappa * kappa * out.beta;
    const double sum2 = (g1 + g2) * (g1 + g2);
    const double sec = 1.0 / c;
    out.a = 2.0 * sum2 * (1.0 - sec) / den;
    out.b = (2.0 * sum2 * sec + (3.0 * g1 * g1 + 2.0 * g1 * g2 + 3.0 * g2 * g2) +
             4.0 * kappa * kappa * out.alpha) /
            den;
    out.b_infinity = out.alpha / out.beta;
    return out;
}

double coefficient_residual(const GaussianModelParams& p, double tau) {
    const double g1 = p.n_mean + 1.0;
    const double g2 = p.n_mean;
    const double c = std::cos(2.0 * p.theta);
    const double sum2 = (g1 + g2) * (g1 + g2);
    const double k2 = p.kappa * p.kappa;
    if (std::abs(c) < kTol.critical_angle) {
        const double num = (g1 - g2) * (g1 - g2) + 4.0 * sum2 + 4.0 * k2 * sum2 * (2.0 + tau * tau);
        const double den = (3.0 * g1 + g2) * (g1 + 3.0 * g2) + 8.0 * k2 * sum2;
        return std::cosh(tau) - num / den;
    }
    // a cos(z) + b regrouped as cos(z) + (1 - cos z) / cos(2 theta) to avoid
    // the cancellation between a and b near theta = pi/4.
    const EstCoefficients co = est_coefficients(p.n_mean, p.kappa, p.theta);
    const double s = models::sinhc_of_square(-tau * tau * k2 * c);
    const double one_minus_cos_over_c = 2.0 * tau * tau * k2 * s * s;
    const double cos_z = 1.0 - c * one_minus_cos_over_c;
    const double den = (3.0 * g1 + g2) * (g1 + 3.0 * g2) + 4.0 * k2 * co.beta;
    const double num = 2.0 * sum2 * (cos_z + one_minus_cos_over_c) +
                       (3.0 * g1 * g1 + 2.0 * g1 * g2 + 3.0 * g2 * g2) + 4.0 * k2 * co.alpha;
    return std::cosh(tau) - num / den;
}

std::optional<double> coefficient_root(const GaussianModelParams& p, double tau_max) {
    validate(p);
    const double sign = coefficient_residual(p, 0.0) < 0.0 ? 1.0 : -1.0;
    est::SolveOptions options;
    options.bracket_points = 1024;
    const auto crossing = est::first_crossing(
        [&](double tau) { return sign * coefficient_residual(p, tau); }, tau_max, options);
    if (!crossing.found) {
        return std::nullopt;
    }
    return crossing.t;
}

namespace {

est::EstResult solve_model(const GaussianModelParams& p, const est::SolveOptions& options,
                           const est::RootFunction& f) {
    const double horizon = options.horizon.value_or(est::default_horizon(p.gamma));
    const auto crossing = est::first_crossing(f, horizon, options);
    est::EstResult out = est::result_from_crossing(crossing, p.gamma);
    if (!crossing.found) {
        out.note = "no EB transition before the horizon";
    }
    return out;
}

} // namespace

est::EstResult gaussian_est(const GaussianModelParams& p, const est::SolveOptions& options) {
    validate(p);
    return solve_model(p, options, [&](double t) { return eb_determinant(model_fg(p, t)); });
}

est::EstResult gaussian_est_class_based(const GaussianModelParams& p, const est::SolveOptions& options) {
    validate(p);
    return solve_model(p, options,
                       [&](double t) { return eb_class_margin(classify(model_fg(p, t))); });
}

double gaussian_est_dissipative(double n_mean) {
    if (!(n_mean >= 0.0)) {
        throw ContractError("gaussian_est_dissipative: N must be non-negative");
    }
    return std::log((4.0 * n_mean + 3.0) / (4.0 * n_mean + 1.0));
}

double gaussian_asymptote(double n_mean, double theta) {
    if (!(std::cos(2.0 * theta) > kTol.critical_angle)) {
        throw RangeError("gaussian_asymptote: needs theta < pi/4");
    }
    const EstCoefficients co = est_coefficients(n_mean, 1.0, theta);
    return std::acosh(co.b_infinity);
}

double gaussian_series(const GaussianModelParams& p, GaussianRegime regime) {
    validate(p);
    const double n = p.n_mean;
    const double c = std::cos(2.0 * p.theta);
    const double m = 2.0 * n + 1.0;
    switch (regime) {
    case GaussianRegime::SmallKappa: {
        if (!(p.kappa <= 0.05)) {
            throw RangeError("gaussian_series: small-kappa regime needs kappa <= 0.05");
        }
        const double t0 = gaussian_est_dissipative(n);
        return t0 - p.kappa * p.kappa * m * (1.0 - c) * (4.0 / ((4.0 * n + 3.0) * (4.0 * n + 1.0)) - t0 * t0);
    }
    case GaussianRegime::LargeKappaLowTheta: {
        if (!(p.kappa >= 5.0)) {
            throw RangeError("gaussian_series: large-kappa regime needs kappa >= 5");
        }
        if (!(c > kTol.critical_angle)) {
            throw RangeError("gaussian_series: low-theta branch needs theta < pi/4");
        }
        const EstCoefficients co = est_coefficients(n, p.kappa, p.theta);
        const double t_inf = std::acosh(co.b_infinity);
        return t_inf + (co.a * std::cos(2.0 * p.kappa * std::sqrt(c) * t_inf) + co.b - std::cosh(t_inf)) /
                           std::sinh(t_inf);
    }
    case GaussianRegime::LargeKappaHighTheta: {
        if (!(p.kappa >= 5.0)) {
            throw RangeError("gaussian_series: large-kappa regime needs kappa >= 5");
        }
        if (!(c < -kTol.critical_angle)) {
            throw RangeError("gaussian_series: high-theta branch needs theta > pi/4");
        }
        const double arg = 4.0 * p.kappa * p.kappa * c * c / (m * m * (1.0 - c));
        if (arg < 1.0) {
            throw RangeError("gaussian_series: kappa too small for the high-theta asymptotic form");
        }
        return std::acosh(arg) / (2.0 * p.kappa * std::sqrt(-c));
    }
    }
    throw RangeError("gaussian_series: unknown regime");
}

} // namespace entsurv::gaussian
