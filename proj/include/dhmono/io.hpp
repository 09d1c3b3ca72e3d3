#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "dhmono/curve.hpp"
#include "dhmono/homology.hpp"

namespace dhmono {

// JSON wire formats: scalars are arrays of "num/den" strings of length
// deg(Phi_n), matrices arrays of rows, group elements integer quadruples.

inline nlohmann::json scalar_to_json(const CycScalar& s) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& q : s.coeffs()) a.push_back(rat_to_string(q));
    return a;
}

inline CycScalar scalar_from_json(const CyclotomicField* f, const nlohmann::json& j) {
    if (!j.is_array() || static_cast<int>(j.size()) != f->degree())
        throw std::invalid_argument("scalar needs deg(Phi_n) coefficient strings");
    CycScalar s = CycScalar::zero(f);
    for (int k = 0; k < f->degree(); ++k)
        s += CycScalar::from_rat(f, rat_from_string(j[static_cast<std::size_t>(k)].get<std::string>())) *
             CycScalar::zeta_pow(f, k);
    return s;
}

inline nlohmann::json matrix_to_json(const CycMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m.at(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

// representations serialize as maps generator-name -> matrix
inline nlohmann::json rep_to_json(const OrbitRep& rep) {
    return {{"sigma", matrix_to_json(rep.sigma_matrix())},
            {"a", matrix_to_json(rep.a_matrix())},
            {"alpha", matrix_to_json(rep.alpha_matrix())}};
}

inline nlohmann::json dihedral_schrodinger_to_json(int n) {
    return {{"sigma", matrix_to_json(dihedral_schrodinger_matrix(dh_sigma(n)))},
            {"a", matrix_to_json(dihedral_schrodinger_matrix(dh_a(n)))},
            {"alpha", matrix_to_json(dihedral_schrodinger_matrix(dh_alpha(n)))}};
}

inline nlohmann::json element_to_json(const DihedralElement& d) {
    return {{"eps", d.eps}, {"lambda", d.h.lambda}, {"a", d.h.a}, {"alpha", d.h.alpha}};
}

inline DihedralElement element_from_json(int n, const nlohmann::json& j) {
    return DihedralElement(j.at("eps").get<int>(),
                           HeisenbergElement(n, j.at("lambda").get<long>(), j.at("a").get<long>(),
                                             j.at("alpha").get<long>()));
}

inline nlohmann::json config_to_json(const BranchConfig& cfg) {
    nlohmann::json j{{"g", cfg.g}, {"n", cfg.n}};
    if (!cfg.preset.empty()) j["preset"] = cfg.preset;
    nlohmann::json passing = nlohmann::json::array();
    for (const auto& p : cfg.passing) passing.push_back(element_to_json(p));
    j["passing"] = std::move(passing);
    return j;
}

inline BranchConfig config_from_json(const nlohmann::json& j) {
    int g = j.at("g").get<int>();
    int n = j.at("n").get<int>();
    if (j.contains("preset")) return preset_config(g, n, j.at("preset").get<std::string>());
    std::vector<DihedralElement> passing;
    for (const auto& e : j.at("passing")) passing.push_back(element_from_json(n, e));
    return make_config(g, n, std::move(passing));
}

inline nlohmann::json cycle_to_json(const TwistedCycle& x) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : x.terms) {
        nlohmann::json vec = nlohmann::json::array();
        for (const auto& w : t.w) vec.push_back(scalar_to_json(w));
        terms.push_back({{"i", t.loop.i}, {"j", t.loop.j}, {"vector", std::move(vec)}});
    }
    return terms;
}

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

} // namespace dhmono
