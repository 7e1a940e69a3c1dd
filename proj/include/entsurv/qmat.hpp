// qmat.hpp - small dense complex linear algebra for qubit operators and superoperators
//
// Matrices here are at most 16x16. Superoperators act on column-stacked
// density matrices, so the elementary basis is ordered E00, E10, E01, E11.

#pragma once

#include <complex>
#include <cstddef>
#include <optional>

#include <Eigen/Dense>

namespace entsurv::qmat {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Eigenvalues ascending, eigenvectors as matching columns.
struct HermitianSpectrum {
    RealVector values;
    ComplexMatrix vectors;
};

// Pauli matrices and ladder operators in the computational basis {|0>, |1>}.
ComplexMatrix identity(std::size_t n);
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
// Lowers |1> to |0>: |0><1|.
ComplexMatrix sigma_minus();
// Raises |0> to |1>: |1><0|.
ComplexMatrix sigma_plus();

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Column-stacking vectorisation and its inverse.
ComplexVector vec(const ComplexMatrix& m);
ComplexMatrix unvec(const ComplexVector& v, std::size_t rows);

// Superoperator matrices for rho -> a rho and rho -> rho b.
ComplexMatrix left_multiplication(const ComplexMatrix& a);
ComplexMatrix right_multiplication(const ComplexMatrix& b);
// rho -> a rho b.
ComplexMatrix sandwich(const ComplexMatrix& a, const ComplexMatrix& b);

double max_abs(const ComplexMatrix& m);
double hermiticity_defect(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol);
bool is_unitary(const ComplexMatrix& m, double tol);

void require_square(const ComplexMatrix& m, const char* what);

/// exp(t * m).
///
/// Uses the eigendecomposition of m when its eigenvector matrix is well
/// conditioned (condition number below Tolerances::eigvec_condition_max) and
/// scaling-and-squaring with a degree-13 Pade approximant otherwise.
ComplexMatrix matexp(const ComplexMatrix& m, double t);

// Scaling-and-squaring Pade(13) exponential of m, no eigendecomposition.
ComplexMatrix expm_pade(const ComplexMatrix& m);

/// Caches the decomposition of a generator so that exp(t * gen) can be
/// evaluated repeatedly along a time grid.
class Propagator {
public:
    explicit Propagator(ComplexMatrix gen);

    ComplexMatrix at(double t) const;

    const ComplexMatrix& generator() const { return gen_; }
    bool diagonalizable() const { return diagonal_route_; }
    double eigvec_condition() const { return condition_; }

private:
    ComplexMatrix gen_;
    bool diagonal_route_ = false;
    double condition_ = 0.0;
    ComplexVector eigenvalues_;
    ComplexMatrix eigenvectors_;
    ComplexMatrix eigenvectors_inv_;
};

// Hermitian eigensolve by cyclic complex Jacobi rotations.
HermitianSpectrum herm_eigen(const ComplexMatrix& m);
RealVector herm_eigvals(const ComplexMatrix& m);

Complex det(const ComplexMatrix& m);

std::size_t kernel_dimension(const ComplexMatrix& gen);

/// Stationary density matrix of a d^2 x d^2 generator.
///
/// Throws MultiplicityError when the kernel is more than one-dimensional and
/// ContractError when it is empty.
ComplexMatrix null_fixed_point(const ComplexMatrix& gen);

} // namespace entsurv::qmat
