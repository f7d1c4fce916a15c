#pragma once

// Dense complex linear algebra kernel: Hermitian eigendecomposition, matrix
// functions through the spectrum, and antiunitary (conjugate-linear) operators.
// Matrices are small and dense (dim <= a few hundred); everything is a pure
// function of its inputs.

#include <complex>
#include <functional>
#include <string>

#include <Eigen/Dense>

#include "speclab/errors.hpp"

namespace speclab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Default absolute tolerance (max-norm) used by all residual checks.
inline constexpr double kDefaultTol = 1e-10;

inline double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double max_abs(const ComplexVector& v) {
    return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

inline bool is_square(const ComplexMatrix& m) { return m.rows() == m.cols(); }

// ‖m − m†‖_max; zero for exactly Hermitian input.
inline double hermiticity_residual(const ComplexMatrix& m) {
    return max_abs(ComplexMatrix(m - m.adjoint()));
}

// ‖u†u − 1‖_max
inline double unitarity_residual(const ComplexMatrix& u) {
    return max_abs(ComplexMatrix(u.adjoint() * u -
                                 ComplexMatrix::Identity(u.cols(), u.cols())));
}

inline void require_square_finite(const ComplexMatrix& m, const std::string& what) {
    if (!is_square(m))
        throw DimensionMismatch(what + ": matrix is not square (" +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ")");
    if (!m.allFinite())
        throw InvalidParams(what + ": matrix has non-finite entries");
}

// Antiunitary operator v ↦ u · conj(v).  The unitary part is stored
// explicitly and the conjugation is implicit, so J² and JMJ⁻¹ stay one-liners.
struct AntiUnitaryOp {
    ComplexMatrix u;

    Eigen::Index dim() const { return u.rows(); }

    static AntiUnitaryOp identity(Eigen::Index n) {
        return AntiUnitaryOp{ComplexMatrix::Identity(n, n)};
    }
};

struct EigenDecomposition {
    RealVector eigenvalues;  // ascending
    ComplexMatrix vectors;   // orthonormal columns, M = V diag(λ) V†
};

// Hermitian eigendecomposition.  Requires ‖m − m†‖_max ≤ tol.
inline EigenDecomposition eigh(const ComplexMatrix& m, double tol = kDefaultTol) {
    require_square_finite(m, "eigh");
    const double herm = hermiticity_residual(m);
    if (herm > tol)
        throw NotHermitian("eigh: hermiticity residual " + std::to_string(herm) +
                           " exceeds tolerance " + std::to_string(tol));
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
    if (solver.info() != Eigen::Success)
        throw NoConvergence("eigh: eigensolver failed to converge");
    return EigenDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

// f applied through the spectrum: V diag(f(λᵢ)) V†.
inline ComplexMatrix matrix_function(const ComplexMatrix& m,
                                     const std::function<double(double)>& f,
                                     double tol = kDefaultTol) {
    const EigenDecomposition ed = eigh(m, tol);
    RealVector fv(ed.eigenvalues.size());
    for (Eigen::Index i = 0; i < fv.size(); ++i) fv(i) = f(ed.eigenvalues(i));
    return ed.vectors * fv.asDiagonal() * ed.vectors.adjoint();
}

// J v = u · conj(v)
inline ComplexVector apply_antiunitary(const AntiUnitaryOp& j, const ComplexVector& v) {
    if (v.size() != j.dim())
        throw DimensionMismatch("apply_antiunitary: vector size " + std::to_string(v.size()) +
                                " does not match operator dimension " + std::to_string(j.dim()));
    return j.u * v.conjugate();
}

// Linear matrix of the conjugation J M J⁻¹ = u · conj(M) · u†.
inline ComplexMatrix antiunitary_conjugate(const AntiUnitaryOp& j, const ComplexMatrix& m) {
    return j.u * m.conjugate() * j.u.adjoint();
}

// J² as a linear matrix: u · conj(u).  Equals ε·1 for a real structure.
inline ComplexMatrix antiunitary_squared(const AntiUnitaryOp& j) {
    return j.u * j.u.conjugate();
}

} // namespace speclab
