#pragma once

// Shared helpers for the test suites.

#include <vector>

#include <speclab/linalg.hpp>
#include <speclab/rng.hpp>
#include <speclab/triple.hpp>

namespace testutil {

using speclab::Complex;
using speclab::ComplexMatrix;
using speclab::ComplexVector;

// Wraps a Hermitian matrix as a structurally valid triple for action-level
// tests that only touch d (trivial grading and real structure, KO 0).
inline speclab::FiniteSpectralTriple wrap_dirac(const ComplexMatrix& d) {
    speclab::FiniteSpectralTriple t;
    t.hilbert_dim = d.rows();
    t.d = d;
    t.gamma = ComplexMatrix::Identity(d.rows(), d.cols());
    t.j = speclab::AntiUnitaryOp::identity(d.rows());
    t.algebra_gens = {ComplexMatrix::Identity(d.rows(), d.cols())};
    t.ko_dim = 0;
    return t;
}

inline speclab::FiniteSpectralTriple diag_triple(std::initializer_list<double> eigs) {
    ComplexMatrix d = ComplexMatrix::Zero(Eigen::Index(eigs.size()), Eigen::Index(eigs.size()));
    Eigen::Index i = 0;
    for (double e : eigs) d(i, i) = e, ++i;
    return wrap_dirac(d);
}

inline double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = double(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace testutil
