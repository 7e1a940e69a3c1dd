// oracles.hpp - independent reference implementations used only by the tests

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <random>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat basis(int d, int i, int j) {
    Mat e = Mat::Zero(d, d);
    e(i, j) = 1.0;
    return e;
}

inline Eigen::VectorXcd stack_columns(const Mat& m) {
    Eigen::VectorXcd v(m.size());
    int k = 0;
    for (int c = 0; c < m.cols(); ++c) {
        for (int r = 0; r < m.rows(); ++r) {
            v(k++) = m(r, c);
        }
    }
    return v;
}

inline Mat unstack(const Eigen::VectorXcd& v, int d) {
    Mat m(d, d);
    int k = 0;
    for (int c = 0; c < d; ++c) {
        for (int r = 0; r < d; ++r) {
            m(r, c) = v(k++);
        }
    }
    return m;
}

// Superoperator matrix of an arbitrary linear map, column by column.
inline Mat superop_of(const std::function<Mat(const Mat&)>& map, int d) {
    Mat out(d * d, d * d);
    for (int c = 0; c < d; ++c) {
        for (int r = 0; r < d; ++r) {
            out.col(c * d + r) = stack_columns(map(basis(d, r, c)));
        }
    }
    return out;
}

// gamma sum_j (L rho L^+ - {L^+ L, rho}/2) - i omega [H, rho], applied directly.
inline Mat gksl(const Mat& h, const std::vector<Mat>& ls, double gamma, double omega) {
    const int d = static_cast<int>(h.rows());
    return superop_of(
        [&](const Mat& rho) {
            Mat out = Complex(0.0, -omega) * (h * rho - rho * h);
            for (const Mat& l : ls) {
                const Mat ldl = l.adjoint() * l;
                out += gamma * (l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl));
            }
            return out;
        },
        d);
}

inline Mat expm(const Mat& m, double t) {
    const Mat scaled = t * m;
    return scaled.exp();
}

// (Phi x id)(|Omega><Omega|) with |Omega> = sum_i |i>|i> / sqrt d.
inline Mat choi(const Mat& channel, int d) {
    Eigen::VectorXcd omega = Eigen::VectorXcd::Zero(d * d);
    for (int i = 0; i < d; ++i) {
        omega(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
    }
    const Mat proj = omega * omega.adjoint();
    // Apply Phi to the A blocks: proj = sum_{ij} E_ij (A) x block_ij (B).
    Mat out = Mat::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            Mat block_b(d, d);
            for (int b = 0; b < d; ++b) {
                for (int bp = 0; bp < d; ++bp) {
                    block_b(b, bp) = proj(i * d + b, j * d + bp);
                }
            }
            const Mat image = unstack(channel * stack_columns(basis(d, i, j)), d);
            out += Eigen::kroneckerProduct(image, block_b).eval();
        }
    }
    return out;
}

// Transpose of the B factor via the block decomposition.
inline Mat partial_transpose_b(const Mat& rho, int d) {
    Mat out = Mat::Zero(d * d, d * d);
    for (int a = 0; a < d; ++a) {
        for (int ap = 0; ap < d; ++ap) {
            const Mat block = rho.block(a * d, ap * d, d, d);
            out.block(a * d, ap * d, d, d) = block.transpose();
        }
    }
    return out;
}

inline Eigen::VectorXd eigvalsh(const Mat& m) {
    const Mat h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

inline double negativity(const Mat& channel, int d = 2) {
    const Eigen::VectorXd ev = eigvalsh(partial_transpose_b(choi(channel, d), d));
    double n = 0.0;
    for (int i = 0; i < ev.size(); ++i) {
        n += 0.5 * (std::abs(ev(i)) - ev(i));
    }
    return n;
}

inline double min_pt_eigenvalue(const Mat& channel, int d = 2) {
    return eigvalsh(partial_transpose_b(choi(channel, d), d))(0);
}

// First sign change of f on a uniform grid, refined by plain bisection.
inline std::optional<double> first_root(const std::function<double(double)>& f, double lo, double hi,
                                        int grid = 4000) {
    double a = lo;
    double fa = f(a);
    for (int i = 1; i <= grid; ++i) {
        const double b = lo + (hi - lo) * i / grid;
        const double fb = f(b);
        if ((fa < 0.0) != (fb < 0.0)) {
            double x0 = a, x1 = b;
            for (int k = 0; k < 200 && x1 - x0 > 1e-15 * x1; ++k) {
                const double m = 0.5 * (x0 + x1);
                if ((f(m) < 0.0) == (fa < 0.0)) {
                    x0 = m;
                } else {
                    x1 = m;
                }
            }
            return 0.5 * (x0 + x1);
        }
        a = b;
        fa = fb;
    }
    return std::nullopt;
}

// Composite Simpson rule.
template <class F>
auto simpson(const F& f, double a, double b, int intervals = 2000) {
    const double h = (b - a) / intervals;
    using Value = std::decay_t<decltype(f(a))>;
    Value sum = f(a) + f(b);
    for (int i = 1; i < intervals; ++i) {
        sum = sum + (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    }
    return Value((h / 3.0) * sum);
}

inline Mat random_matrix(std::mt19937_64& rng, int d) {
    std::normal_distribution<double> n(0.0, 1.0);
    Mat m(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            m(i, j) = Complex(n(rng), n(rng));
        }
    }
    return m;
}

inline Mat random_hermitian(std::mt19937_64& rng, int d) {
    const Mat m = random_matrix(rng, d);
    return 0.5 * (m + m.adjoint());
}

// QR of a Gaussian matrix with the phase fix, Haar distributed.
inline Mat random_unitary(std::mt19937_64& rng, int d) {
    const Mat m = random_matrix(rng, d);
    Eigen::HouseholderQR<Mat> qr(m);
    Mat q = qr.householderQ() * Mat::Identity(d, d);
    const Mat r = qr.matrixQR();
    for (int i = 0; i < d; ++i) {
        const Complex diag = r(i, i);
        q.col(i) *= diag / std::abs(diag);
    }
    return q;
}

} // namespace oracle
