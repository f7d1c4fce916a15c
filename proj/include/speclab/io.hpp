#pragma once

// Config-file formats shared between the library and the CLI.
//
// Matrix literal: {"dim": n, "entries": [[re, im], ...]} — row-major list of
// n² [re, im] pairs.  Cutoff: {"kind": "...", "params": [...]}.  Triple:
// named sections d, gamma, j_unitary, generators[], ko_dim.  Lepton model
// parameters: flat section with keys y_e, y_nu, v_gev, include_sterile,
// m_r_gev, kappa, lambda_gev.

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "speclab/action.hpp"
#include "speclab/lepton.hpp"
#include "speclab/linalg.hpp"
#include "speclab/triple.hpp"

namespace speclab {

using nlohmann::json;

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigParseError("cannot open config file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigParseError("config file '" + path + "': " + e.what());
    }
}

namespace ioconf {

inline const json& require_key(const json& j, const std::string& key, const std::string& ctx) {
    if (!j.is_object())
        throw ConfigParseError(ctx + ": expected an object");
    auto it = j.find(key);
    if (it == j.end())
        throw ConfigParseError(ctx + ": missing key '" + key + "'");
    return *it;
}

inline double number(const json& j, const std::string& ctx) {
    if (!j.is_number())
        throw ConfigParseError(ctx + ": expected a number");
    return j.get<double>();
}

inline std::int64_t integer(const json& j, const std::string& ctx) {
    if (!j.is_number_integer())
        throw ConfigParseError(ctx + ": expected an integer");
    return j.get<std::int64_t>();
}

inline bool boolean(const json& j, const std::string& ctx) {
    if (!j.is_boolean())
        throw ConfigParseError(ctx + ": expected a boolean");
    return j.get<bool>();
}

inline Complex complex_pair(const json& j, const std::string& ctx) {
    if (!j.is_array() || j.size() != 2)
        throw ConfigParseError(ctx + ": expected an [re, im] pair");
    return Complex(number(j[0], ctx + "[0]"), number(j[1], ctx + "[1]"));
}

} // namespace ioconf

inline ComplexMatrix parse_matrix(const json& j, const std::string& ctx) {
    const auto dim = ioconf::integer(ioconf::require_key(j, "dim", ctx), ctx + ".dim");
    if (dim <= 0)
        throw ConfigParseError(ctx + ".dim: must be positive");
    const json& entries = ioconf::require_key(j, "entries", ctx);
    if (!entries.is_array() || std::int64_t(entries.size()) != dim * dim)
        throw ConfigParseError(ctx + ".entries: expected " + std::to_string(dim * dim) +
                               " [re, im] pairs (row-major)");
    ComplexMatrix m(dim, dim);
    for (std::int64_t r = 0; r < dim; ++r)
        for (std::int64_t c = 0; c < dim; ++c)
            m(r, c) = ioconf::complex_pair(entries[std::size_t(r * dim + c)],
                                           ctx + ".entries[" + std::to_string(r * dim + c) + "]");
    if (!m.allFinite())
        throw ConfigParseError(ctx + ".entries: non-finite entry");
    return m;
}

inline json matrix_to_json(const ComplexMatrix& m) {
    json entries = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            entries.push_back({m(r, c).real(), m(r, c).imag()});
    return json{{"dim", m.rows()}, {"entries", entries}};
}

inline ComplexVector parse_complex_vector(const json& j, const std::string& ctx) {
    if (!j.is_array())
        throw ConfigParseError(ctx + ": expected an array of [re, im] pairs");
    ComplexVector v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        v(Eigen::Index(i)) = ioconf::complex_pair(j[i], ctx + "[" + std::to_string(i) + "]");
    return v;
}

inline CutoffFunction parse_cutoff(const json& j, const std::string& ctx) {
    const json& kind = ioconf::require_key(j, "kind", ctx);
    if (!kind.is_string())
        throw ConfigParseError(ctx + ".kind: expected a string");
    const std::string k = kind.get<std::string>();
    CutoffFunction f;
    if (k == "sharp") f.kind = CutoffKind::sharp;
    else if (k == "gaussian") f.kind = CutoffKind::gaussian;
    else if (k == "polynomial-decay") f.kind = CutoffKind::polynomial_decay;
    else if (k == "polynomial") f.kind = CutoffKind::polynomial;
    else
        throw ConfigParseError(ctx + ".kind: unknown cutoff kind '" + k + "'");
    if (j.contains("params")) {
        const json& params = j["params"];
        if (!params.is_array())
            throw ConfigParseError(ctx + ".params: expected an array of numbers");
        for (std::size_t i = 0; i < params.size(); ++i)
            f.params.push_back(ioconf::number(params[i], ctx + ".params[" + std::to_string(i) + "]"));
    }
    return f;
}

inline json cutoff_to_json(const CutoffFunction& f) {
    return json{{"kind", to_string(f.kind)}, {"params", f.params}};
}

inline LeptonModelParams parse_lepton_params(const json& j, const std::string& ctx) {
    if (!j.is_object())
        throw ConfigParseError(ctx + ": expected an object");
    LeptonModelParams p;
    for (const auto& [key, val] : j.items()) {
        if (key == "y_e") p.y_e = ioconf::number(val, ctx + ".y_e");
        else if (key == "y_nu") p.y_nu = ioconf::number(val, ctx + ".y_nu");
        else if (key == "v_gev") p.v_gev = ioconf::number(val, ctx + ".v_gev");
        else if (key == "include_sterile") p.include_sterile = ioconf::boolean(val, ctx + ".include_sterile");
        else if (key == "m_r_gev") p.m_r_gev = ioconf::number(val, ctx + ".m_r_gev");
        else if (key == "kappa") p.kappa = ioconf::number(val, ctx + ".kappa");
        else if (key == "lambda_gev") p.lambda_gev = ioconf::number(val, ctx + ".lambda_gev");
        else
            throw ConfigParseError(ctx + ": unknown key '" + key + "'");
    }
    return p;
}

inline FiniteSpectralTriple parse_triple(const json& j, const std::string& ctx) {
    FiniteSpectralTriple t;
    t.d = parse_matrix(ioconf::require_key(j, "d", ctx), ctx + ".d");
    t.gamma = parse_matrix(ioconf::require_key(j, "gamma", ctx), ctx + ".gamma");
    t.j.u = parse_matrix(ioconf::require_key(j, "j_unitary", ctx), ctx + ".j_unitary");
    const json& gens = ioconf::require_key(j, "generators", ctx);
    if (!gens.is_array())
        throw ConfigParseError(ctx + ".generators: expected an array of matrices");
    for (std::size_t i = 0; i < gens.size(); ++i)
        t.algebra_gens.push_back(
            parse_matrix(gens[i], ctx + ".generators[" + std::to_string(i) + "]"));
    t.ko_dim = int(ioconf::integer(ioconf::require_key(j, "ko_dim", ctx), ctx + ".ko_dim"));
    t.hilbert_dim = t.d.rows();
    return t;
}

inline json triple_to_json(const FiniteSpectralTriple& t) {
    json gens = json::array();
    for (const auto& g : t.algebra_gens) gens.push_back(matrix_to_json(g));
    return json{{"d", matrix_to_json(t.d)},
                {"gamma", matrix_to_json(t.gamma)},
                {"j_unitary", matrix_to_json(t.j.u)},
                {"generators", gens},
                {"ko_dim", t.ko_dim}};
}

} // namespace speclab
