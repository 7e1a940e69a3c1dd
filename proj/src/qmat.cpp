// qmat.cpp - dense kernels: exponential, Jacobi eigensolver, determinant, kernel

#include "entsurv/qmat.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "entsurv/errors.hpp"
#include "entsurv/tolerances.hpp"

namespace entsurv::qmat {

ComplexMatrix identity(std::size_t n) {
    return ComplexMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

ComplexMatrix pauli_y() {
    ComplexMatrix m(2, 2);
    m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

ComplexMatrix sigma_minus() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return m;
}

ComplexMatrix sigma_plus() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(1, 0) = 1.0;
    return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexVector vec(const ComplexMatrix& m) {
    return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvec(const ComplexVector& v, std::size_t rows) {
    const auto r = static_cast<Eigen::Index>(rows);
    if (r == 0 || v.size() % r != 0) {
        throw DimensionError("unvec: length " + std::to_string(v.size()) +
                             " is not a multiple of " + std::to_string(rows));
    }
    return Eigen::Map<const ComplexMatrix>(v.data(), r, v.size() / r);
}

// vec(A X B) = (B^T kron A) vec(X) for column stacking.
ComplexMatrix left_multiplication(const ComplexMatrix& a) {
    return kron(identity(static_cast<std::size_t>(a.cols())), a);
}

ComplexMatrix right_multiplication(const ComplexMatrix& b) {
    return kron(b.transpose(), identity(static_cast<std::size_t>(b.rows())));
}

ComplexMatrix sandwich(const ComplexMatrix& a, const ComplexMatrix& b) {
    return kron(b.transpose(), a);
}

double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& m) {
    return max_abs(m - m.adjoint());
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    return m.rows() == m.cols() && hermiticity_defect(m) < tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
    return m.rows() == m.cols() &&
           max_abs(m.adjoint() * m - identity(static_cast<std::size_t>(m.rows()))) < tol;
}

void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw DimensionError(std::string(what) + ": expected a non-empty square matrix, got " +
                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

ComplexMatrix expm_pade(const ComplexMatrix& m) {
    require_square(m, "expm_pade");
    static constexpr std::array<double, 14> b = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
        1187353796428800.0,  129060195264000.0,   10559470521600.0,
        670442572800.0,      33522128640.0,       1323241920.0,
        40840800.0,          960960.0,            16380.0,
        182.0,               1.0};
    constexpr double theta13 = 5.371920351148152;

    const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm1 > theta13) {
        squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm1 / theta13))));
    }
    const ComplexMatrix a = m / std::ldexp(1.0, squarings);
    const auto n = static_cast<std::size_t>(m.rows());
    const ComplexMatrix id = identity(n);
    const ComplexMatrix a2 = a * a;
    const ComplexMatrix a4 = a2 * a2;
    const ComplexMatrix a6 = a4 * a2;

    const ComplexMatrix u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 +
                                  b[5] * a4 + b[3] * a2 + b[1] * id;
    const ComplexMatrix u = a * u_inner;
    const ComplexMatrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 +
                            b[4] * a4 + b[2] * a2 + b[0] * id;

    ComplexMatrix r = (v - u).partialPivLu().solve(v + u);
    for (int k = 0; k < squarings; ++k) {
        r = r * r;
    }
    return r;
}

Propagator::Propagator(ComplexMatrix gen) : gen_(std::move(gen)) {
    require_square(gen_, "matexp");
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(gen_, true);
    if (solver.info() != Eigen::Success) {
        condition_ = std::numeric_limits<double>::infinity();
        return;
    }
    const ComplexMatrix& vecs = solver.eigenvectors();
    Eigen::JacobiSVD<ComplexMatrix> svd(vecs);
    const auto& sv = svd.singularValues();
    const double smallest = sv(sv.size() - 1);
    condition_ = smallest > 0.0 ? sv(0) / smallest : std::numeric_limits<double>::infinity();
    if (condition_ < kTol.eigvec_condition_max) {
        diagonal_route_ = true;
        eigenvalues_ = solver.eigenvalues();
        eigenvectors_ = vecs;
        eigenvectors_inv_ = vecs.partialPivLu().inverse();
    }
}

ComplexMatrix Propagator::at(double t) const {
    if (!diagonal_route_) {
        return expm_pade(t * gen_);
    }
    ComplexVector phases(eigenvalues_.size());
    for (Eigen::Index i = 0; i < eigenvalues_.size(); ++i) {
        phases(i) = std::exp(t * eigenvalues_(i));
    }
    return eigenvectors_ * phases.asDiagonal() * eigenvectors_inv_;
}

ComplexMatrix matexp(const ComplexMatrix& m, double t) {
    return Propagator(m).at(t);
}

HermitianSpectrum herm_eigen(const ComplexMatrix& m) {
    require_square(m, "herm_eigvals");
    if (!is_hermitian(m, kTol.hermitian_input)) {
        throw ContractError("herm_eigvals: input is not Hermitian (defect " +
                            std::to_string(hermiticity_defect(m)) + ")");
    }
    const Eigen::Index n = m.rows();
    ComplexMatrix a = 0.5 * (m + m.adjoint());
    ComplexMatrix v = ComplexMatrix::Identity(n, n);

    const double scale = std::max(a.norm(), std::numeric_limits<double>::min());
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                off += std::norm(a(p, q));
            }
        }
        if (std::sqrt(2.0 * off) <= kTol.jacobi_offdiag * scale) {
            break;
        }
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double r = std::abs(a(p, q));
                if (r == 0.0) {
                    continue;
                }
                // Phase the (p, q) element real, then apply a real rotation.
                const Complex phase = a(p, q) / r;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double zeta = (aqq - app) / (2.0 * r);
                const double tan_rot = (zeta >= 0.0 ? 1.0 : -1.0) /
                                       (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + tan_rot * tan_rot);
                const double s = tan_rot * c;
                // Rotation J: J_pp = c, J_pq = s, J_qp = -s conj(phase), J_qq = c conj(phase).
                const Complex jpp = c;
                const Complex jpq = s;
                const Complex jqp = -s * std::conj(phase);
                const Complex jqq = c * std::conj(phase);
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * jpp + akq * jqp;
                    a(k, q) = akp * jpq + akq * jqq;
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * jpp + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * jqq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
        return a(i, i).real() < a(j, j).real();
    });
    HermitianSpectrum out{RealVector(n), ComplexMatrix(n, n)};
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto src = order[static_cast<std::size_t>(i)];
        out.values(i) = a(src, src).real();
        out.vectors.col(i) = v.col(src);
    }
    return out;
}

RealVector herm_eigvals(const ComplexMatrix& m) {
    return herm_eigen(m).values;
}

Complex det(const ComplexMatrix& m) {
    require_square(m, "det");
    return m.partialPivLu().determinant();
}

namespace {

struct KernelSvd {
    Eigen::JacobiSVD<ComplexMatrix> svd;
    std::size_t dimension = 0;
};

KernelSvd kernel_svd(const ComplexMatrix& gen) {
    require_square(gen, "kernel");
    KernelSvd out{Eigen::JacobiSVD<ComplexMatrix>(gen, Eigen::ComputeFullV), 0};
    const auto& sv = out.svd.singularValues();
    const double threshold = kTol.kernel_relative * sv(0);
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) <= threshold) {
            ++out.dimension;
        }
    }
    return out;
}

} // namespace

std::size_t kernel_dimension(const ComplexMatrix& gen) {
    return kernel_svd(gen).dimension;
}

ComplexMatrix null_fixed_point(const ComplexMatrix& gen) {
    const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(gen.rows()))));
    if (d * d != static_cast<std::size_t>(gen.rows())) {
        throw DimensionError("null_fixed_point: generator size " + std::to_string(gen.rows()) +
                             " is not a perfect square");
    }
    const KernelSvd k = kernel_svd(gen);
    if (k.dimension == 0) {
        throw ContractError("null_fixed_point: generator has no zero eigenvalue");
    }
    if (k.dimension > 1) {
        throw MultiplicityError("null_fixed_point: kernel has dimension " +
                                std::to_string(k.dimension) + " (multiple stationary states)");
    }
    const ComplexMatrix& v = k.svd.matrixV();
    ComplexMatrix rho = unvec(v.col(v.cols() - 1), d);
    const Complex tr = rho.trace();
    if (std::abs(tr) < kTol.zero_eigenvalue) {
        throw ContractError("null_fixed_point: kernel vector is traceless");
    }
    rho /= tr;
    rho = (0.5 * (rho + rho.adjoint())).eval();
    if (herm_eigvals(rho)(0) < -kTol.zero_eigenvalue) {
        throw ContractError("null_fixed_point: stationary operator is not positive semidefinite");
    }
    return rho;
}

} // namespace entsurv::qmat
