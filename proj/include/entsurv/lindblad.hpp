// lindblad.hpp - GKSL generators as superoperator matrices
//
// L[rho] = gamma * D[rho] - i omega [H, rho], with
// D[rho] = sum_j (L_j rho L_j^dag - 1/2 {L_j^dag L_j, rho}).
// Matrices act on column-stacked rho (basis E00, E10, E01, E11 for a qubit).

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "entsurv/qmat.hpp"

namespace entsurv::lindblad {

using qmat::ComplexMatrix;

struct LindbladSpec {
    ComplexMatrix hamiltonian;
    std::vector<ComplexMatrix> lindblad_ops;
    double gamma = 1.0;
    double omega = 0.0;

    // omega / gamma; empty when gamma == 0.
    std::optional<double> kappa() const;
    std::size_t dim() const { return static_cast<std::size_t>(hamiltonian.rows()); }

    // Throws DimensionError / ContractError when the invariants do not hold.
    void validate() const;
};

struct SuperOp {
    ComplexMatrix matrix;
    std::size_t dim = 2; // d, the matrix is d^2 x d^2
};

SuperOp dissipator(const std::vector<ComplexMatrix>& lindblad_ops);
// The superoperator -i [H, .].
SuperOp hamiltonian_part(const ComplexMatrix& h);

SuperOp build_generator(const LindbladSpec& spec);

/// Shift every Lindblad operator to be traceless and compensate in H.
///
/// L_j -> L_j + c_j with c_j = -Tr(L_j) / d, and
/// H -> H + (gamma / omega) / (2i) * sum_j (c_j^* L_j - c_j L_j^dag).
/// When omega == 0 and the shift is non-zero the compensating Hamiltonian is
/// carried with omega = gamma so that the generator stays unchanged.
LindbladSpec gauge_fix(const LindbladSpec& spec);

// rho -> U rho U^dag.
ComplexMatrix unitary_superop(const ComplexMatrix& u);

// U^-1 o gen o U for the conjugation U[rho] = u rho u^dag.
SuperOp conjugate(const SuperOp& gen, const ComplexMatrix& u);

SuperOp scale(const SuperOp& gen, double q);

// max_k |sum_i gen(i_diag, k)|: how far the trace functional is from
// annihilating the generator.
double trace_defect(const SuperOp& gen);

} // namespace entsurv::lindblad
