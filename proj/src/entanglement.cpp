// entanglement.cpp - Choi-Jamiolkowski construction and PPT quantities

#include "entsurv/entanglement.hpp"

#include <cmath>
#include <string>

#include "entsurv/errors.hpp"
#include "entsurv/tolerances.hpp"

namespace entsurv::entanglement {

ChoiState maximally_entangled(std::size_t d) {
    return choi_unchecked(qmat::identity(d * d), d);
}

ChoiState choi_unchecked(const ComplexMatrix& channel, std::size_t d) {
    const auto n = static_cast<Eigen::Index>(d);
    if (channel.rows() != n * n || channel.cols() != n * n) {
        throw DimensionError("choi: channel is " + std::to_string(channel.rows()) + "x" +
                             std::to_string(channel.cols()) + ", expected " +
                             std::to_string(n * n) + "x" + std::to_string(n * n));
    }
    ComplexMatrix rho = ComplexMatrix::Zero(n * n, n * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            // Column j*d + i of the channel is vec(Phi(E_ij)).
            const ComplexMatrix image = qmat::unvec(channel.col(j * n + i), d);
            for (Eigen::Index a = 0; a < n; ++a) {
                for (Eigen::Index ap = 0; ap < n; ++ap) {
                    rho(a * n + i, ap * n + j) += image(a, ap);
                }
            }
        }
    }
    rho /= static_cast<double>(d);
    return {rho, d};
}

ChoiState choi(const ComplexMatrix& channel, std::size_t d) {
    ChoiState out = choi_unchecked(channel, d);
    const ComplexMatrix herm = 0.5 * (out.matrix + out.matrix.adjoint());
    const double lowest = qmat::herm_eigvals(herm)(0);
    if (lowest < kTol.choi_negative) {
        throw ContractError("choi: channel is not completely positive (Choi eigenvalue " +
                            std::to_string(lowest) + ")");
    }
    return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, std::size_t d) {
    const auto n = static_cast<Eigen::Index>(d);
    if (rho.rows() != n * n || rho.cols() != n * n) {
        throw DimensionError("partial_transpose: expected a " + std::to_string(n * n) +
                             "-dimensional bipartite operator");
    }
    ComplexMatrix out(n * n, n * n);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
            for (Eigen::Index ap = 0; ap < n; ++ap) {
                for (Eigen::Index bp = 0; bp < n; ++bp) {
                    out(a * n + b, ap * n + bp) = rho(a * n + bp, ap * n + b);
                }
            }
        }
    }
    return out;
}

namespace {

qmat::RealVector pt_spectrum(const ChoiState& rho) {
    ComplexMatrix pt = partial_transpose(rho.matrix, rho.dim);
    pt = (0.5 * (pt + pt.adjoint())).eval();
    return qmat::herm_eigvals(pt);
}

} // namespace

PptReport ppt(const ChoiState& rho) {
    const qmat::RealVector ev = pt_spectrum(rho);
    PptReport out;
    out.min_eigenvalue = ev(0);
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        out.negativity += 0.5 * (std::abs(ev(i)) - ev(i));
    }
    out.separability_exact = rho.dim == 2;
    return out;
}

double negativity(const ChoiState& rho) {
    return ppt(rho).negativity;
}

double min_pt_eigenvalue(const ChoiState& rho) {
    return pt_spectrum(rho)(0);
}

EsdReport esd_criterion(const lindblad::SuperOp& gen) {
    EsdReport out;
    try {
        ComplexMatrix fixed = qmat::null_fixed_point(gen.matrix);
        out.fixed_point_det = qmat::det(fixed).real();
        out.fixed_point = std::move(fixed);
    } catch (const MultiplicityError& e) {
        out.reason = e.what();
        return out;
    } catch (const ContractError& e) {
        out.reason = e.what();
        return out;
    }
    if (out.fixed_point_det > kTol.fixed_point_det) {
        out.verdict = EsdVerdict::FiniteCertified;
        out.reason = "unique mixed stationary state";
    } else {
        out.reason = "stationary state is pure";
    }
    return out;
}

} // namespace entsurv::entanglement
