// entanglement.hpp - Choi states, partial transpose, negativity, ESD criterion

#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "entsurv/lindblad.hpp"
#include "entsurv/qmat.hpp"

namespace entsurv::entanglement {

using qmat::ComplexMatrix;

// (Phi kron id)[|Omega><Omega|], a d^2 x d^2 density matrix. The channel acts
// on the first tensor slot (A), the reference system is the second (B).
struct ChoiState {
    ComplexMatrix matrix;
    std::size_t dim = 2;
};

ChoiState maximally_entangled(std::size_t d = 2);

/// Choi state of a channel given as a d^2 x d^2 matrix on column-stacked
/// operators: rho_AB = (1/d) sum_ij Phi(E_ij) kron E_ij.
///
/// Throws ContractError when the result has an eigenvalue below
/// Tolerances::choi_negative (the map is not completely positive).
ChoiState choi(const ComplexMatrix& channel, std::size_t d = 2);

// Same construction without the positivity check.
ChoiState choi_unchecked(const ComplexMatrix& channel, std::size_t d = 2);

// Transpose on the B tensor factor.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, std::size_t d = 2);

struct PptReport {
    double negativity = 0.0;
    double min_eigenvalue = 0.0;
    // PPT is equivalent to separability only for d = 2; for larger d the
    // zero-negativity time is an upper bound on the survival time.
    bool separability_exact = true;
};

PptReport ppt(const ChoiState& rho);

// (1/2) sum (|lambda| - lambda) over the partial-transpose spectrum.
double negativity(const ChoiState& rho);
double min_pt_eigenvalue(const ChoiState& rho);

enum class EsdVerdict { FiniteCertified, Inconclusive };

struct EsdReport {
    EsdVerdict verdict = EsdVerdict::Inconclusive;
    std::optional<ComplexMatrix> fixed_point;
    double fixed_point_det = 0.0;
    std::string reason;
};

/// A unique mixed stationary state forces a finite survival time; a pure one
/// (or several stationary states) leaves the question open.
EsdReport esd_criterion(const lindblad::SuperOp& gen);

} // namespace entsurv::entanglement
