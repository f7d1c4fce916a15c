#pragma once

// Deterministic sampling utilities.  mt19937_64 output is standardized, and
// the uniform/normal transforms are hand-rolled, so a given seed produces the
// same stream on every platform and standard library.

#include <cmath>
#include <cstdint>
#include <random>

#include "speclab/linalg.hpp"

namespace speclab {

class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

    // Uniform on [0, 1), 53-bit resolution.
    double u01() { return double(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

    // Standard normal via Box–Muller; the paired draw is cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = u01();
        while (u1 <= 0.0) u1 = u01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u01();
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    Complex complex_normal() {
        const double re = normal();
        const double im = normal();
        return Complex(re, im);
    }

  private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// GUE-style random Hermitian matrix with O(1) entries.
inline ComplexMatrix random_hermitian(RandomStream& rng, Eigen::Index n) {
    ComplexMatrix a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = rng.complex_normal();
    return (a + a.adjoint()) / 2.0;
}

inline ComplexVector random_complex_vector(RandomStream& rng, Eigen::Index n) {
    ComplexVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.complex_normal();
    return v;
}

// Haar-random unitary via QR of a complex Gaussian matrix, with the phase
// convention that makes the factorization unique.
inline ComplexMatrix random_unitary(RandomStream& rng, Eigen::Index n) {
    ComplexMatrix a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = rng.complex_normal();
    Eigen::HouseholderQR<ComplexMatrix> qr(a);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < n; ++i) {
        const Complex rii = r(i, i);
        if (std::abs(rii) > 0.0) q.col(i) *= rii / std::abs(rii);
    }
    return q;
}

} // namespace speclab
