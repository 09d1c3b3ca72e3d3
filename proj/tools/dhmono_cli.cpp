// Command-line driver: builds the branch-point configuration, runs the
// certificate pipeline per character orbit, and emits machine-readable
// reports and matrix dumps. Progress goes to stderr; stdout stays parseable.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dhmono/density.hpp"
#include "dhmono/io.hpp"
#include "dhmono/parallel.hpp"

using namespace dhmono;

namespace {

struct RunSpec {
    int genus = 6;
    int n = 3;
    std::string preset = "irr";
    std::string config_path;
    std::vector<std::string> orbit_flags;
    std::string orbits_mode = "all";
    std::string checks = "all";
    std::uint64_t seed = 0;
    std::string format = "json";
    int max_word_length = 4;
    std::string out_path;
};

const std::set<std::string> kAllChecks = {"dimensions", "span",        "irreducible",
                                          "closure",    "separation",  "no-characters",
                                          "open-orbit", "noncompact"};

std::set<std::string> parse_checks(const std::string& arg) {
    std::set<std::string> out;
    std::stringstream ss(arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        if (tok == "all") return kAllChecks;
        if (!kAllChecks.count(tok))
            throw CLI::ValidationError("--checks", "unknown check '" + tok + "'");
        out.insert(tok);
    }
    if (out.empty()) throw CLI::ValidationError("--checks", "no checks selected");
    return out;
}

BranchConfig resolve_config(const RunSpec& spec) {
    if (!spec.config_path.empty()) {
        BranchConfig cfg = config_from_json(load_json_file(spec.config_path));
        if (cfg.identity_warning)
            std::cerr << "warning: fewer than two identity branch cuts; the preset guarantees may not apply\n";
        return cfg;
    }
    return preset_config(spec.genus, spec.n, spec.preset);
}

std::vector<CharOrbit> resolve_orbits(const RunSpec& spec, const BranchConfig& cfg) {
    if (spec.orbit_flags.empty()) return nontrivial_orbits(cfg.n);
    std::vector<CharOrbit> out;
    for (const auto& s : spec.orbit_flags) {
        int b = 0, c = 0;
        if (std::sscanf(s.c_str(), "%d,%d", &b, &c) != 2)
            throw CLI::ValidationError("--orbit", "expected 'b,c', got '" + s + "'");
        CharOrbit u(cfg.n, b, c);
        if (u.is_trivial())
            throw CLI::ValidationError("--orbit", "the trivial orbit has no two-dimensional system");
        out.push_back(u);
    }
    return out;
}

void emit(const RunSpec& spec, const nlohmann::json& doc, const std::string& csv) {
    std::string payload = spec.format == "csv" ? csv : doc.dump(2) + "\n";
    if (spec.out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(spec.out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + spec.out_path);
        out << payload;
    }
}

std::string certs_to_csv(const std::vector<Certificate>& certs) {
    std::string csv = "check,orbit,status,seed,runtime_ms\n";
    for (const auto& c : certs) {
        std::string orbit = c.params.contains("orbit") ? c.params["orbit"].get<std::string>() : "";
        csv += c.check + "," + orbit + "," + to_string(c.status) + "," + std::to_string(c.seed) +
               "," + std::to_string(c.runtime_ms) + "\n";
    }
    return csv;
}

int cmd_report(const RunSpec& spec) {
    BranchConfig cfg = resolve_config(spec);
    std::vector<CharOrbit> orbits = resolve_orbits(spec, cfg);
    std::set<std::string> checks = parse_checks(spec.checks);
    bool want_factors = checks.count("closure") || checks.count("no-characters") ||
                        checks.count("open-orbit");

    std::vector<Certificate> certs;
    if (checks.count("dimensions")) {
        std::cerr << "[dhmono] dimension bookkeeping...\n";
        certs.push_back(dimension_certificate(cfg));
    }

    struct OrbitOut {
        std::vector<Certificate> certs;
        std::shared_ptr<FactorSystem> factor;
    };
    std::vector<OrbitOut> slots(orbits.size());
    parallel_for(orbits.size(), [&](std::size_t idx) {
        const CharOrbit& u = orbits[idx];
        OrbitOut out;
        OrbitContext ctx(cfg, u);
        if (checks.count("span")) out.certs.push_back(span_certificate(ctx));
        HomologyBasis hb = build_basis(ctx);
        if (checks.count("irreducible") && hb.complete)
            out.certs.push_back(
                irreducibility_certificate(ctx, hb, derive_seed(spec.seed, idx)));
        if (want_factors) {
            auto fs = std::make_shared<FactorSystem>(build_factor(cfg, u));
            if (checks.count("closure"))
                out.certs.push_back(lie_closure_certificate(cfg, u.label(), fs->closure, fs->basis.gram));
            if (checks.count("no-characters"))
                out.certs.push_back(no_characters_proxy(cfg, u.label(), fs->closure, fs->basis.gram));
            out.factor = std::move(fs);
        }
        std::cerr << "[dhmono] orbit " << u.label() << " done\n";
        slots[idx] = std::move(out);
    });
    for (auto& s : slots) certs.insert(certs.end(), s.certs.begin(), s.certs.end());

    if (checks.count("separation")) {
        std::cerr << "[dhmono] component separation...\n";
        for (std::size_t a = 0; a < orbits.size(); ++a)
            for (std::size_t b = a + 1; b < orbits.size(); ++b)
                certs.push_back(component_separation(cfg, orbits[a], orbits[b]));
    }

    if (checks.count("closure") || checks.count("no-characters") || checks.count("open-orbit")) {
        std::cerr << "[dhmono] trivial factor...\n";
        FactorSystem triv = build_factor(cfg, CharOrbit(cfg.n, 0, 0));
        if (checks.count("closure"))
            certs.push_back(lie_closure_certificate(cfg, "trivial", triv.closure, triv.basis.gram));
        if (checks.count("no-characters"))
            certs.push_back(no_characters_proxy(cfg, "trivial", triv.closure, triv.basis.gram));
        if (checks.count("open-orbit")) {
            std::cerr << "[dhmono] open orbit rank check...\n";
            std::vector<FactorSystem> factors;
            factors.push_back(std::move(triv));
            bool complete_set = orbits.size() == nontrivial_orbits(cfg.n).size();
            for (std::size_t idx = 0; idx < orbits.size(); ++idx)
                factors.push_back(slots[idx].factor ? *slots[idx].factor
                                                    : build_factor(cfg, orbits[idx]));
            if (!complete_set)
                for (const CharOrbit& u : nontrivial_orbits(cfg.n)) {
                    bool have = false;
                    for (const auto& v : orbits) have = have || v == u;
                    if (!have) factors.push_back(build_factor(cfg, u));
                }
            certs.push_back(open_orbit_certificate(cfg, derive_seed(spec.seed, 0xA11), &factors));
        }
    }

    if (checks.count("noncompact")) {
        std::cerr << "[dhmono] eigenvalue-modulus search...\n";
        certs.push_back(
            noncompactness_search(cfg, spec.max_word_length, derive_seed(spec.seed, 0x21C)));
    }

    bool any_fail = false, any_inconclusive = false;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : certs) {
        any_fail = any_fail || c.status == CertStatus::Fail;
        any_inconclusive = any_inconclusive || c.status == CertStatus::Inconclusive;
        arr.push_back(c.to_json());
    }
    nlohmann::json orbits_json = nlohmann::json::array();
    for (const auto& u : orbits) orbits_json.push_back(u.label());
    nlohmann::json doc{{"spec",
                        {{"genus", cfg.g},
                         {"n", cfg.n},
                         {"preset", cfg.preset},
                         {"orbits", orbits_json},
                         {"seed", spec.seed},
                         {"max_word_length", spec.max_word_length}}},
                       {"config", config_to_json(cfg)},
                       {"certificates", arr},
                       {"status", any_fail ? "FAIL" : (any_inconclusive ? "INCONCLUSIVE" : "PASS")}};
    emit(spec, doc, certs_to_csv(certs));
    return any_fail ? 1 : 0;
}

int cmd_matrices(const RunSpec& spec) {
    BranchConfig cfg = resolve_config(spec);
    std::vector<CharOrbit> orbits = resolve_orbits(spec, cfg);

    nlohmann::json doc{{"config", config_to_json(cfg)}};
    std::string csv = "matrix,row,col,coefficients...\n";
    auto csv_matrix = [&](const std::string& name, const CycMatrix& m) {
        for (int r = 0; r < m.rows(); ++r)
            for (int c = 0; c < m.cols(); ++c) {
                csv += name + "," + std::to_string(r) + "," + std::to_string(c);
                for (const auto& q : m.at(r, c).coeffs()) csv += "," + rat_to_string(q);
                csv += "\n";
            }
    };

    nlohmann::json all_orbits = nlohmann::json::array();
    for (const CharOrbit& u : orbits) {
        std::cerr << "[dhmono] matrices for orbit " << u.label() << "\n";
        OrbitContext ctx(cfg, u);
        nlohmann::json j{{"orbit", u.label()}};

        nlohmann::json passing = nlohmann::json::array();
        auto mats = passing_matrices(cfg, u);
        for (std::size_t k = 0; k < mats.size(); ++k) {
            passing.push_back(matrix_to_json(mats[k]));
            csv_matrix("P" + std::to_string(k + 1) + "(" + u.label() + ")", mats[k]);
        }
        j["passing"] = std::move(passing);
        j["w_u"] = rep_to_json(OrbitRep(u));

        nlohmann::json loops = nlohmann::json::object();
        for (int i = 1; i <= cfg.points(); ++i)
            for (int jj = i + 1; jj <= cfg.points(); ++jj) {
                const MonodromyClass& mc = ctx.monodromy(i, jj);
                std::string key = LoopSpec{i, jj}.label();
                loops[key] = {{"events", CurveDiagram::get(cfg.g).loop(i, jj).events},
                              {"class", to_string(mc.kind)},
                              {"monodromy", matrix_to_json(mc.matrix)}};
                csv_matrix("M" + key + "(" + u.label() + ")", mc.matrix);
            }
        j["loops"] = std::move(loops);

        HomologyBasis hb = build_basis(ctx);
        if (hb.complete) {
            j["gram"] = matrix_to_json(hb.gram);
            csv_matrix("gram(" + u.label() + ")", hb.gram);
            nlohmann::json dd = nlohmann::json::object(), aa = nlohmann::json::object();
            CycMatrix id = CycMatrix::identity(ctx.field(), static_cast<int>(hb.cycles.size()));
            for (int i = 1; i <= cfg.points(); ++i)
                for (int jj = i + 1; jj <= cfg.points(); ++jj) {
                    if (ctx.monodromy(i, jj).kind == MonodromyKind::Rotation) continue;
                    TwistOperator op = dehn_twist_matrix(ctx, hb, i, jj, 2);
                    std::string key = "(" + std::to_string(i) + "," + std::to_string(jj) + ",2," +
                                      u.label() + ")";
                    dd[key] = matrix_to_json(op.matrix);
                    aa[key] = matrix_to_json(op.matrix - id);
                    csv_matrix("D" + key, op.matrix);
                }
            j["dehn_twists"] = std::move(dd);
            j["nilpotents"] = std::move(aa);
        }
        all_orbits.push_back(std::move(j));
    }
    doc["orbits"] = std::move(all_orbits);
    emit(spec, doc, csv);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact certificates for dihedral-Heisenberg monodromy on hyperelliptic curves"};
    app.require_subcommand(1);

    RunSpec spec;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--genus", spec.genus, "genus of the curve (>= 6 for presets)");
        cmd->add_option("--n", spec.n, "order of the Heisenberg group (odd, >= 3)");
        cmd->add_option("--preset", spec.preset, "irr | span | span-bc-equal")
            ->check(CLI::IsMember({"irr", "span", "span-bc-equal"}));
        cmd->add_option("--config", spec.config_path, "JSON file with a custom configuration");
        cmd->add_option("--orbit", spec.orbit_flags, "character orbit 'b,c' (repeatable)");
        cmd->add_option("--orbits", spec.orbits_mode, "'all' = every nontrivial orbit")
            ->check(CLI::IsMember({"all"}));
        cmd->add_option("--seed", spec.seed, "seed recorded in every certificate");
        cmd->add_option("--format", spec.format, "json | csv")
            ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--out", spec.out_path, "output path (default stdout)");
    };

    CLI::App* report = app.add_subcommand("report", "run certificates and write a report");
    add_common(report);
    report->add_option("--checks", spec.checks,
                       "comma list: dimensions,span,irreducible,closure,separation,"
                       "no-characters,open-orbit,noncompact or 'all'");
    report->add_option("--max-word-length", spec.max_word_length,
                       "budget for the eigenvalue-modulus search");

    CLI::App* matrices = app.add_subcommand("matrices", "dump passing/monodromy/twist matrices");
    add_common(matrices);

    try {
        app.parse(argc, argv);
        if (report->parsed()) return cmd_report(spec);
        if (matrices->parsed()) return cmd_matrices(spec);
        return 2;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
