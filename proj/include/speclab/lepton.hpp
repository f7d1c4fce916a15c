#pragma once

// One-generation lepton-sector toy model: the finite spectral triple with an
// optional sterile state, the SU(2)×U(1) gauge action on doublets, the
// gauge-invariant pairing H^TσL, Majorana and dimension-5 terms, and the
// v²/Λ neutrino mass estimate.
//
// Hilbert space basis: particles (ν_L, e_L, e_R[, N]) followed by their
// conjugates in the same order.  J swaps the two sectors and conjugates;
// the grading is −1 on left-handed particles and flips sign on conjugates,
// which realizes the KO-dimension 6 sign table (+1, +1, −1).

#include <cmath>
#include <optional>
#include <utility>

#include "speclab/linalg.hpp"
#include "speclab/rng.hpp"
#include "speclab/triple.hpp"

namespace speclab {

// Left-handed lepton doublet L = (ν, e_L).
struct LeptonDoublet {
    Complex nu;
    Complex e;
};

// Higgs doublet H = (H⁺, H⁰).
struct HiggsDoublet {
    Complex h_plus;
    Complex h_zero;
};

// Gauge group element: h ∈ SU(2), z ∈ U(1).
struct GaugeElement {
    ComplexMatrix h;  // 2×2
    Complex z;
};

struct LeptonModelParams {
    double y_e = 1.0;             // electron Yukawa
    double y_nu = 0.0;            // neutrino Yukawa (needs the sterile state)
    double v_gev = 246.0;         // Higgs vacuum expectation value
    bool include_sterile = false; // add the noninteracting fermion N
    double m_r_gev = 0.0;         // sterile Majorana mass, for see-saw comparison
    double kappa = 1.0;           // coefficient of the dimension-5 term
    double lambda_gev = 1e15;     // cutoff scale for the mass estimate
};

inline void validate(const LeptonModelParams& p) {
    if (!(p.v_gev > 0.0)) throw InvalidParams("lepton params: v_gev must be positive");
    if (p.y_e < 0.0) throw InvalidParams("lepton params: y_e must be nonnegative");
    if (p.y_nu != 0.0 && !p.include_sterile)
        throw InvalidParams("lepton params: y_nu requires include_sterile");
    if (p.m_r_gev != 0.0 && !p.include_sterile)
        throw InvalidParams("lepton params: m_r_gev requires include_sterile");
}

// Basis offsets within one sector.
namespace lepton_basis {
inline constexpr Eigen::Index nu_L = 0;
inline constexpr Eigen::Index e_L = 1;
inline constexpr Eigen::Index e_R = 2;
inline constexpr Eigen::Index N = 3;
} // namespace lepton_basis

inline Eigen::Index lepton_sector_dim(const LeptonModelParams& p) {
    return p.include_sterile ? 4 : 3;
}

// Builds the finite triple.  D_F = [[S, T],[T†, conj(S)]] with the Yukawa
// block S (e_L↔e_R entry y_e·v, ν_L↔N entry y_nu·v) and the Majorana block
// T (N↔N̄ entry m_R).  The algebra is the two-point space ℂ⊕ℂ: (λ, μ) acts
// as λ on the doublet, μ on e_R, λ̄ on the charged conjugate leptons, and as
// zero on the sterile lines.
inline FiniteSpectralTriple build_lepton_triple(const LeptonModelParams& p) {
    validate(p);
    using namespace lepton_basis;
    const Eigen::Index k = lepton_sector_dim(p);
    const Eigen::Index n = 2 * k;

    ComplexMatrix s = ComplexMatrix::Zero(k, k);
    s(e_L, e_R) = p.y_e * p.v_gev;
    s(e_R, e_L) = p.y_e * p.v_gev;
    ComplexMatrix t = ComplexMatrix::Zero(k, k);
    if (p.include_sterile) {
        s(nu_L, N) = p.y_nu * p.v_gev;
        s(N, nu_L) = p.y_nu * p.v_gev;
        t(N, N) = p.m_r_gev;
    }

    ComplexMatrix d = ComplexMatrix::Zero(n, n);
    d.topLeftCorner(k, k) = s;
    d.topRightCorner(k, k) = t;
    d.bottomLeftCorner(k, k) = t.adjoint();
    d.bottomRightCorner(k, k) = s.conjugate();

    RealVector g = RealVector::Ones(k);  // right-handed +1, left-handed −1
    g(nu_L) = -1.0;
    g(e_L) = -1.0;
    ComplexMatrix gamma = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < k; ++i) {
        gamma(i, i) = g(i);
        gamma(k + i, k + i) = -g(i);
    }

    ComplexMatrix u = ComplexMatrix::Zero(n, n);
    u.topRightCorner(k, k) = ComplexMatrix::Identity(k, k);
    u.bottomLeftCorner(k, k) = ComplexMatrix::Identity(k, k);

    ComplexMatrix gen1 = ComplexMatrix::Zero(n, n);  // π(1, 0)
    gen1(nu_L, nu_L) = 1.0;
    gen1(e_L, e_L) = 1.0;
    gen1(k + e_L, k + e_L) = 1.0;
    gen1(k + e_R, k + e_R) = 1.0;
    ComplexMatrix gen2 = ComplexMatrix::Zero(n, n);  // π(0, 1)
    gen2(e_R, e_R) = 1.0;

    FiniteSpectralTriple triple;
    triple.hilbert_dim = n;
    triple.algebra_gens = {gen1, gen2};
    triple.d = d;
    triple.gamma = gamma;
    triple.j = AntiUnitaryOp{u};
    triple.ko_dim = 6;
    return triple;
}

// Projector onto the states carried by the discrete algebra, i.e. everything
// except the sterile lines N and N̄.  Identity when no sterile state exists.
inline ComplexMatrix lepton_physical_projector(const LeptonModelParams& p) {
    const Eigen::Index k = lepton_sector_dim(p);
    ComplexMatrix proj = ComplexMatrix::Identity(2 * k, 2 * k);
    if (p.include_sterile) {
        proj(lepton_basis::N, lepton_basis::N) = 0.0;
        proj(k + lepton_basis::N, k + lepton_basis::N) = 0.0;
    }
    return proj;
}

// Higgs-direction perturbation of magnitude phi for fluctuate(): shifts every
// Yukawa entry by y·phi on the particle block, so v → v + phi after the
// J-image is added.
inline ComplexMatrix higgs_fluctuation(const LeptonModelParams& p, double phi) {
    using namespace lepton_basis;
    const Eigen::Index k = lepton_sector_dim(p);
    ComplexMatrix a = ComplexMatrix::Zero(2 * k, 2 * k);
    a(e_L, e_R) = p.y_e * phi;
    a(e_R, e_L) = p.y_e * phi;
    if (p.include_sterile) {
        a(nu_L, N) = p.y_nu * phi;
        a(N, nu_L) = p.y_nu * phi;
    }
    return a;
}

inline void validate(const GaugeElement& g, double tol = 1e-10) {
    if (g.h.rows() != 2 || g.h.cols() != 2)
        throw DimensionMismatch("gauge element: h must be 2x2");
    if (unitarity_residual(g.h) > tol || std::abs(g.h.determinant() - Complex(1.0)) > tol)
        throw NotSU2("gauge element: h is not in SU(2) within tolerance");
    if (std::abs(std::abs(g.z) - 1.0) > tol)
        throw InvalidParams("gauge element: |z| must be 1");
}

// L ↦ h L z̄,  H ↦ h H z
inline std::pair<LeptonDoublet, HiggsDoublet> gauge_transform(const LeptonDoublet& l,
                                                              const HiggsDoublet& hd,
                                                              const GaugeElement& g) {
    validate(g);
    const Complex zc = std::conj(g.z);
    LeptonDoublet lt{(g.h(0, 0) * l.nu + g.h(0, 1) * l.e) * zc,
                     (g.h(1, 0) * l.nu + g.h(1, 1) * l.e) * zc};
    HiggsDoublet ht{(g.h(0, 0) * hd.h_plus + g.h(0, 1) * hd.h_zero) * g.z,
                    (g.h(1, 0) * hd.h_plus + g.h(1, 1) * hd.h_zero) * g.z};
    return {lt, ht};
}

// σ is fixed to the second Pauli matrix [[0, −i],[i, 0]].
inline ComplexMatrix pauli_sigma2() {
    ComplexMatrix s(2, 2);
    s << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return s;
}

// H^T σ L = i(H⁰ν − H⁺e); with a sterile amplitude n it becomes ⟨n| H^TσL⟩.
inline Complex invariant_term(const HiggsDoublet& hd, const LeptonDoublet& l,
                              std::optional<Complex> n = std::nullopt) {
    const Complex val =
        Complex(0, 1) * (hd.h_zero * l.nu - hd.h_plus * l.e);
    return n ? std::conj(*n) * val : val;
}

// ‖σ h σ⁻¹ − conj(h)‖_max — the intertwining identity behind the invariance.
inline double check_intertwine(const ComplexMatrix& h, double tol = 1e-10) {
    if (h.rows() != 2 || h.cols() != 2)
        throw DimensionMismatch("check_intertwine: h must be 2x2");
    if (unitarity_residual(h) > tol || std::abs(h.determinant() - Complex(1.0)) > tol)
        throw NotSU2("check_intertwine: h is not in SU(2) within tolerance");
    const ComplexMatrix sigma = pauli_sigma2();
    return max_abs(ComplexMatrix(sigma * h * sigma - h.conjugate()));  // σ⁻¹ = σ
}

// Majorana mass term m·⟨Cψ_L|ψ_L⟩ + h.c. = 2m·Re⟨Cψ_L|ψ_L⟩.
inline double majorana_term(double m, const ComplexVector& psi_l, const AntiUnitaryOp& c) {
    if (psi_l.size() != c.dim())
        throw DimensionMismatch("majorana_term: state dimension does not match C");
    const ComplexVector cpsi = apply_antiunitary(c, psi_l);
    return 2.0 * m * cpsi.dot(psi_l).real();
}

// Dimension-5 term κ·(conj(C e_L)·H⁺ − conj(C ν)·H⁰)·(H⁺ e_L − H⁰ ν) with
// c-number amplitudes; c acts on the doublet (pure conjugation by default).
inline Complex weinberg_term(const LeptonModelParams& p, const LeptonDoublet& l,
                             const HiggsDoublet& hd, const AntiUnitaryOp& c) {
    if (c.dim() != 2)
        throw DimensionMismatch("weinberg_term: charge conjugation must act on the 2-dim doublet");
    ComplexVector lv(2);
    lv << l.nu, l.e;
    const ComplexVector cl = apply_antiunitary(c, lv);
    const Complex first = std::conj(cl(1)) * hd.h_plus - std::conj(cl(0)) * hd.h_zero;
    const Complex second = hd.h_plus * l.e - hd.h_zero * l.nu;
    return p.kappa * first * second;
}

// κ·v²/Λ in eV.  v and Λ in GeV, strictly positive; κ ≥ 0 (κ = 0 gives a
// vanishing mass).  1 GeV = 10⁹ eV.
inline double neutrino_mass_estimate(double kappa, double v_gev, double lambda_gev) {
    if (kappa < 0.0 || !(v_gev > 0.0) || !(lambda_gev > 0.0))
        throw NonPositiveInput("neutrino_mass_estimate: v and lambda must be positive, kappa >= 0");
    return kappa * v_gev * v_gev / lambda_gev * 1e9;
}

// Haar-distributed SU(2) element (normalized quaternion from four unit
// normals) with an independent uniform U(1) phase.
inline GaugeElement sample_su2(RandomStream& rng) {
    double q[4];
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (double& qi : q) {
            qi = rng.normal();
            norm2 += qi * qi;
        }
    } while (norm2 == 0.0);
    const double inv = 1.0 / std::sqrt(norm2);
    const double a = q[0] * inv, b = q[1] * inv, c = q[2] * inv, d = q[3] * inv;
    ComplexMatrix h(2, 2);
    h << Complex(a, b), Complex(c, d), Complex(-c, d), Complex(a, -b);
    const double phase = 2.0 * M_PI * rng.u01();
    return GaugeElement{h, std::polar(1.0, phase)};
}

inline GaugeElement sample_su2(std::uint64_t seed) {
    RandomStream rng(seed);
    return sample_su2(rng);
}

} // namespace speclab
