#pragma once

#include <string>

#include <json.hpp>

#include "trigl1/l1approx.hpp"
#include "trigl1/piecewise.hpp"

namespace trigl1 {

// PiecewisePolynomial wire form: {"breakpoints": [...], "pieces": [[...], ...]}
// with round-trip-exact decimal doubles.
inline nlohmann::json to_json(const PiecewisePolynomial& f) {
    nlohmann::json j;
    j["breakpoints"] = f.breakpoints();
    j["pieces"] = f.pieces();
    return j;
}

inline PiecewisePolynomial piecewise_from_json(const nlohmann::json& j) {
    return PiecewisePolynomial(j.at("breakpoints").get<std::vector<double>>(),
                               j.at("pieces").get<std::vector<std::vector<double>>>());
}

inline nlohmann::json to_json(const TrigPoly& t) {
    nlohmann::json j;
    j["degree_bound"] = t.degree_bound;
    j["a0"] = t.a0;
    j["cos"] = t.a;
    j["sin"] = t.b;
    return j;
}

inline TrigPoly trigpoly_from_json(const nlohmann::json& j) {
    TrigPoly t(j.at("degree_bound").get<int>());
    t.a0 = j.at("a0").get<double>();
    t.a = j.at("cos").get<std::vector<double>>();
    t.b = j.at("sin").get<std::vector<double>>();
    return t;
}

inline nlohmann::json to_json(const SignPattern& p) {
    return nlohmann::json{{"frequency", p.frequency}, {"shift", p.shift}, {"sign", p.sign}};
}

inline nlohmann::json to_json(const ApproxResult& r) {
    nlohmann::json j;
    j["n"] = r.n;
    j["k"] = r.k;
    j["h"] = r.h;
    j["alpha"] = r.alpha;
    j["primal_value"] = r.primal_value;
    j["approximant"] = to_json(r.approximant);
    j["dual_lower"] = r.dual_lower;
    j["witness"] = to_json(r.witness);
    j["theorem_upper"] = r.theorem_upper;
    j["gap"] = r.gap;
    j["certified"] = r.certified;
    j["grid_size"] = r.grid_size;
    j["solver"] = {{"m_schedule", r.m_schedule},
                   {"grid_value", r.grid_value},
                   {"discretization_error", r.discretization_error},
                   {"lp_gap", r.lp_gap},
                   {"lp_iterations", r.lp_iterations},
                   {"lp_converged", r.lp_converged}};
    return j;
}

}  // namespace trigl1
