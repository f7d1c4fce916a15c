#pragma once

// Finite spectral triples: the (algebra, D, γ, J) bundle, the KO-dimension
// sign table, numerical axiom verification and internal fluctuations of D.

#include <optional>
#include <string>
#include <vector>

#include "speclab/linalg.hpp"

namespace speclab {

// Commutation signs of the real structure: J² = ε, JD = ε′DJ, Jγ = ε″γJ.
struct SignTable {
    int eps = +1;
    int eps_prime = +1;
    int eps_dprime = +1;
};

// Default sign table per even KO-dimension mod 8.  The table is convention
// data; callers may override it in check_axioms.
inline SignTable sign_table(int ko_dim) {
    const int k = ((ko_dim % 8) + 8) % 8;
    if (k % 2 != 0)
        throw UnsupportedKODimension("sign_table: odd KO-dimension " + std::to_string(ko_dim) +
                                     " is not supported");
    switch (k) {
        case 0: return SignTable{+1, +1, +1};
        case 2: return SignTable{-1, +1, -1};
        case 4: return SignTable{-1, +1, +1};
        default: return SignTable{+1, +1, -1};  // KO 6
    }
}

// A finite geometry: represented algebra generators, Dirac operator d,
// grading gamma and real structure j on a hilbert_dim-dimensional space.
struct FiniteSpectralTriple {
    Eigen::Index hilbert_dim = 0;
    std::vector<ComplexMatrix> algebra_gens;
    ComplexMatrix d;
    ComplexMatrix gamma;
    AntiUnitaryOp j;
    int ko_dim = 0;
};

struct AxiomCheck {
    std::string name;
    double residual = 0.0;
    bool pass = false;
    std::string worst;  // offending generator pair, when applicable
};

struct AxiomReport {
    std::vector<AxiomCheck> checks;
    double tol = kDefaultTol;
    bool pass = false;

    const AxiomCheck* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }

    double residual(const std::string& name) const {
        const AxiomCheck* c = find(name);
        return c ? c->residual : -1.0;
    }
};

namespace detail {

// Generators plus products of generators up to word length `depth`.
// Checking the order conditions on this set suffices when the generators
// algebraically generate the algebra (the conditions are bilinear).
inline std::vector<std::pair<ComplexMatrix, std::string>>
generator_words(const std::vector<ComplexMatrix>& gens, int depth) {
    std::vector<std::pair<ComplexMatrix, std::string>> words;
    for (std::size_t i = 0; i < gens.size(); ++i)
        words.emplace_back(gens[i], "a" + std::to_string(i));
    std::size_t level_begin = 0, level_end = words.size();
    for (int d = 2; d <= depth; ++d) {
        for (std::size_t w = level_begin; w < level_end; ++w)
            for (std::size_t i = 0; i < gens.size(); ++i)
                words.emplace_back(ComplexMatrix(words[w].first * gens[i]),
                                   words[w].second + "*a" + std::to_string(i));
        level_begin = level_end;
        level_end = words.size();
    }
    return words;
}

} // namespace detail

// Checks every axiom the triple is expected to satisfy and reports one
// residual per axiom.  Violations are report entries, never exceptions.
// Order-zero/one conditions run over all pairs drawn from generator words of
// length ≤ product_depth.
inline AxiomReport check_axioms(const FiniteSpectralTriple& t, double tol = kDefaultTol,
                                int product_depth = 2,
                                std::optional<SignTable> signs = std::nullopt) {
    const SignTable st = signs ? *signs : sign_table(t.ko_dim);
    const Eigen::Index n = t.d.rows();
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);

    AxiomReport report;
    report.tol = tol;
    auto add = [&](const std::string& name, double res, const std::string& worst = "") {
        report.checks.push_back(AxiomCheck{name, res, res <= tol, worst});
    };

    add("dirac_hermitian", hermiticity_residual(t.d));
    add("gamma_hermitian", hermiticity_residual(t.gamma));
    add("gamma_squared", max_abs(ComplexMatrix(t.gamma * t.gamma - id)));
    add("gamma_dirac_anticommute", max_abs(ComplexMatrix(t.gamma * t.d + t.d * t.gamma)));

    {
        double worst_res = 0.0;
        std::string worst;
        for (std::size_t i = 0; i < t.algebra_gens.size(); ++i) {
            const double r =
                max_abs(ComplexMatrix(t.gamma * t.algebra_gens[i] - t.algebra_gens[i] * t.gamma));
            if (r >= worst_res) { worst_res = r; worst = "a" + std::to_string(i); }
        }
        add("algebra_gamma_commute", worst_res, worst);
    }

    add("j_unitary", unitarity_residual(t.j.u));
    add("j_squared", max_abs(ComplexMatrix(antiunitary_squared(t.j) - double(st.eps) * id)));
    // JD = ε′DJ  ⇔  u·conj(D) = ε′·D·u
    add("j_dirac_commute",
        max_abs(ComplexMatrix(t.j.u * t.d.conjugate() - double(st.eps_prime) * t.d * t.j.u)));
    // Jγ = ε″γJ  ⇔  u·conj(γ) = ε″·γ·u
    add("j_gamma_commute",
        max_abs(ComplexMatrix(t.j.u * t.gamma.conjugate() - double(st.eps_dprime) * t.gamma * t.j.u)));

    {
        const auto words = detail::generator_words(t.algebra_gens, product_depth);
        double worst0 = 0.0, worst1 = 0.0;
        std::string who0, who1;
        for (const auto& [a, aname] : words) {
            const ComplexMatrix da = t.d * a - a * t.d;
            for (const auto& [b, bname] : words) {
                // J b* J⁻¹ = u · bᵀ · u†
                const ComplexMatrix bo = antiunitary_conjugate(t.j, b.adjoint());
                const double r0 = max_abs(ComplexMatrix(a * bo - bo * a));
                const double r1 = max_abs(ComplexMatrix(da * bo - bo * da));
                if (r0 >= worst0) { worst0 = r0; who0 = "[" + aname + ", " + bname + "]"; }
                if (r1 >= worst1) { worst1 = r1; who1 = "[[D," + aname + "], " + bname + "]"; }
            }
        }
        add("order_zero", worst0, who0);
        add("order_one", worst1, who1);
    }

    report.pass = true;
    for (const auto& c : report.checks) report.pass = report.pass && c.pass;
    return report;
}

// Internal fluctuation D → D + a + ε′·J a J⁻¹ for Hermitian a.
inline FiniteSpectralTriple fluctuate(const FiniteSpectralTriple& t, const ComplexMatrix& a,
                                      double tol = kDefaultTol) {
    require_square_finite(a, "fluctuate");
    if (a.rows() != t.d.rows())
        throw DimensionMismatch("fluctuate: perturbation dimension " + std::to_string(a.rows()) +
                                " does not match Dirac dimension " + std::to_string(t.d.rows()));
    const double herm = hermiticity_residual(a);
    if (herm > tol)
        throw NotHermitian("fluctuate: perturbation is not Hermitian (residual " +
                           std::to_string(herm) + ")");
    const SignTable st = sign_table(t.ko_dim);
    FiniteSpectralTriple out = t;
    out.d = t.d + a + double(st.eps_prime) * antiunitary_conjugate(t.j, a);
    return out;
}

} // namespace speclab
