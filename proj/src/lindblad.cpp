// lindblad.cpp - generator assembly, gauge fixing, conjugation, scaling

#include "entsurv/lindblad.hpp"

#include <cmath>
#include <string>

#include "entsurv/errors.hpp"
#include "entsurv/tolerances.hpp"

namespace entsurv::lindblad {

using qmat::Complex;

std::optional<double> LindbladSpec::kappa() const {
    if (gamma == 0.0) {
        return std::nullopt;
    }
    return omega / gamma;
}

void LindbladSpec::validate() const {
    qmat::require_square(hamiltonian, "LindbladSpec.hamiltonian");
    if (!qmat::is_hermitian(hamiltonian, kTol.hermitian_flag)) {
        throw ContractError("LindbladSpec: Hamiltonian is not Hermitian");
    }
    for (const auto& l : lindblad_ops) {
        if (l.rows() != hamiltonian.rows() || l.cols() != hamiltonian.cols()) {
            throw DimensionError("LindbladSpec: Lindblad operator is " + std::to_string(l.rows()) +
                                 "x" + std::to_string(l.cols()) + ", Hamiltonian is " +
                                 std::to_string(hamiltonian.rows()) + "x" +
                                 std::to_string(hamiltonian.cols()));
        }
    }
    if (!(gamma >= 0.0) || !(omega >= 0.0)) {
        throw ContractError("LindbladSpec: gamma and omega must be non-negative");
    }
}

SuperOp dissipator(const std::vector<ComplexMatrix>& lindblad_ops) {
    if (lindblad_ops.empty()) {
        throw DimensionError("dissipator: no Lindblad operators");
    }
    const auto d = static_cast<std::size_t>(lindblad_ops.front().rows());
    ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(d * d),
                                            static_cast<Eigen::Index>(d * d));
    for (const auto& l : lindblad_ops) {
        const ComplexMatrix ldl = l.adjoint() * l;
        out += qmat::sandwich(l, l.adjoint()) - 0.5 * qmat::left_multiplication(ldl) -
               0.5 * qmat::right_multiplication(ldl);
    }
    return {out, d};
}

SuperOp hamiltonian_part(const ComplexMatrix& h) {
    const Complex minus_i(0.0, -1.0);
    return {minus_i * (qmat::left_multiplication(h) - qmat::right_multiplication(h)),
            static_cast<std::size_t>(h.rows())};
}

SuperOp build_generator(const LindbladSpec& spec) {
    spec.validate();
    const std::size_t d = spec.dim();
    ComplexMatrix gen = spec.omega * hamiltonian_part(spec.hamiltonian).matrix;
    if (!spec.lindblad_ops.empty()) {
        gen += spec.gamma * dissipator(spec.lindblad_ops).matrix;
    }
    return {gen, d};
}

LindbladSpec gauge_fix(const LindbladSpec& spec) {
    spec.validate();
    const auto d = static_cast<double>(spec.dim());
    LindbladSpec out = spec;
    ComplexMatrix shift = ComplexMatrix::Zero(spec.hamiltonian.rows(), spec.hamiltonian.cols());
    bool shifted = false;
    for (std::size_t j = 0; j < spec.lindblad_ops.size(); ++j) {
        const ComplexMatrix& l = spec.lindblad_ops[j];
        const Complex c = -l.trace() / d;
        if (c == Complex(0.0, 0.0)) {
            continue;
        }
        out.lindblad_ops[j] = l + c * qmat::identity(spec.dim());
        shift += std::conj(c) * l - c * l.adjoint();
        shifted = true;
    }
    if (!shifted || qmat::max_abs(shift) == 0.0) {
        return out;
    }
    // shift / (2i) is Hermitian since shift is anti-Hermitian.
    ComplexMatrix correction = shift / Complex(0.0, 2.0);
    correction = (0.5 * (correction + correction.adjoint())).eval();
    if (spec.omega > 0.0) {
        out.hamiltonian = spec.hamiltonian + (spec.gamma / spec.omega) * correction;
    } else {
        out.omega = spec.gamma;
        out.hamiltonian = correction;
    }
    return out;
}

ComplexMatrix unitary_superop(const ComplexMatrix& u) {
    return qmat::sandwich(u, u.adjoint());
}

SuperOp conjugate(const SuperOp& gen, const ComplexMatrix& u) {
    qmat::require_square(u, "conjugate");
    if (static_cast<std::size_t>(u.rows()) != gen.dim) {
        throw DimensionError("conjugate: unitary is " + std::to_string(u.rows()) +
                             "-dimensional, generator acts on dimension " + std::to_string(gen.dim));
    }
    if (!qmat::is_unitary(u, kTol.unitary)) {
        throw ContractError("conjugate: matrix is not unitary");
    }
    const ComplexMatrix sup = unitary_superop(u);
    // The inverse of a unitary conjugation superoperator is its adjoint.
    return {sup.adjoint() * gen.matrix * sup, gen.dim};
}

SuperOp scale(const SuperOp& gen, double q) {
    if (!(q > 0.0)) {
        throw ContractError("scale: factor must be positive, got " + std::to_string(q));
    }
    return {q * gen.matrix, gen.dim};
}

double trace_defect(const SuperOp& gen) {
    const auto d = static_cast<Eigen::Index>(gen.dim);
    Eigen::RowVectorXcd functional = Eigen::RowVectorXcd::Zero(d * d);
    for (Eigen::Index i = 0; i < d; ++i) {
        functional(i * d + i) = 1.0;
    }
    const Eigen::RowVectorXcd image = functional * gen.matrix;
    return image.size() == 0 ? 0.0 : image.cwiseAbs().maxCoeff();
}

} // namespace entsurv::lindblad
