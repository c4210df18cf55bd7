#pragma once

#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "expr.hpp"
#include "io.hpp"
#include "ma.hpp"

namespace blowup3 {

// Stable exit-code contract shared by all subcommands.
enum ExitCode : int {
    kExitOk = 0,
    kExitConditionFailed = 1,
    kExitInputError = 2,
    kExitTypeError = 3,
};

/// Bad input (missing file, malformed JSON, unknown name): exit 2.
struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline bool file_exists(const std::string& path) {
    std::ifstream f(path);
    return f.good();
}

}  // namespace detail

/// Resolves a --model value: an existing file path wins, otherwise a
/// built-in name (P3 | X | Z).
inline VarietyModel load_model_spec(const std::string& spec, bool enforce_validation = true) {
    if (detail::file_exists(spec)) {
        try {
            return model_from_json(Json::parse(read_file(spec)), enforce_validation);
        } catch (const std::exception& e) {
            throw CliError("invalid model file '" + spec + "': " + e.what());
        }
    }
    if (is_builtin_model(spec)) return builtin_model(spec);
    throw CliError("no such model file or built-in model: " + spec);
}

/// Resolves a --map value against user-supplied models (by model name) and
/// the built-ins.
inline PseudoIsoModel load_map_spec(const std::string& spec,
                                    const std::vector<VarietyModel>& models) {
    auto find_model = [&](const std::string& name) -> VarietyModel {
        for (const auto& m : models)
            if (m.name() == name) return m;
        if (is_builtin_model(name)) return builtin_model(name);
        throw CliError("map references model '" + name + "'; pass it with --model");
    };
    if (detail::file_exists(spec)) {
        try {
            const Json j = Json::parse(read_file(spec));
            VarietyModel src = find_model(j.at("source").get<std::string>());
            VarietyModel tgt = find_model(j.at("target").get<std::string>());
            return map_from_json(j, std::move(src), std::move(tgt));
        } catch (const CliError&) {
            throw;
        } catch (const std::exception& e) {
            throw CliError("invalid map file '" + spec + "': " + e.what());
        }
    }
    if (is_builtin_map(spec)) return builtin_map(spec);
    throw CliError("no such map file or built-in map: " + spec);
}

// ---------------------------------------------------------------------------
// builtin
// ---------------------------------------------------------------------------

inline int cmd_builtin(const std::string& name, const std::optional<std::string>& out_path,
                       std::ostream& out, std::ostream& err) {
    std::string text;
    try {
        text = builtin_file(name);
    } catch (const std::exception&) {
        err << "error: unknown built-in '" << name << "' (expected P3, X, Z or JX)\n";
        return kExitInputError;
    }
    if (out_path) {
        std::ofstream f(*out_path, std::ios::binary);
        if (!f) {
            err << "error: cannot write " << *out_path << "\n";
            return kExitInputError;
        }
        f << text;
    } else {
        out << text;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

inline int cmd_eval(const std::string& expr_text, const std::optional<std::string>& model_spec,
                    const std::optional<std::string>& map_spec, bool json_output,
                    std::ostream& out, std::ostream& err) {
    try {
        std::vector<VarietyModel> models;
        if (model_spec) models.push_back(load_model_spec(*model_spec));
        std::optional<PseudoIsoModel> map;
        if (map_spec) map = load_map_spec(*map_spec, models);
        // Expressions are evaluated on the map's source when a map is given.
        const VarietyModel model = map       ? map->source()
                                   : !models.empty() ? models.front()
                                                     : builtin_model("X");
        const Evaluator ev(model, map ? &*map : nullptr);
        const EvalValue v = ev.eval(expr_text);
        if (json_output)
            out << canonical_dump(ev.to_json(v));
        else
            out << ev.format(v) << "\n";
        return kExitOk;
    } catch (const EvalTypeError& e) {
        err << "type error: " << e.what() << "\n";
        return kExitTypeError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

inline int cmd_analyze(const std::string& map_spec, const std::vector<std::string>& model_specs,
                       const std::string& theta_text, bool json_output, std::ostream& out,
                       std::ostream& err) {
    try {
        std::vector<VarietyModel> models;
        for (const auto& spec : model_specs) models.push_back(load_model_spec(spec));
        const PseudoIsoModel map = load_map_spec(map_spec, models);
        const VarietyModel& y = map.target();

        H11Class theta;
        try {
            theta = parse_h11(y, theta_text);
        } catch (const std::exception& e) {
            err << "error: bad --theta literal: " << e.what() << "\n";
            return kExitInputError;
        }

        const auto residuals = condition_c_residual(map, theta);
        const bool holds = condition_c_holds(residuals);
        const auto kernel = condition_c_kernel(map);
        const H11Class pulled = map.pullback11(theta);
        const Rat mass = ma_total_mass(map, theta);
        const NefVerdict nef = nef_check(y, theta);
        std::optional<DefectReport> defect;
        if (map.has_m22()) defect = pullback_product_defect(map, theta, theta);

        if (json_output) {
            Json j;
            j["map"] = map.name();
            j["source"] = map.source().name();
            j["target"] = y.name();
            j["theta"] = vec_to_json(theta.c);
            j["theta_text"] = format_h11(y, theta);
            j["pullback"] = vec_to_json(pulled.c);
            Json res = Json::array();
            for (const auto& [name, value] : residuals)
                res.push_back(Json{{"curve", name}, {"value", rat_str(value)}});
            j["condition_c"] = Json{{"holds", holds}, {"residuals", std::move(res)}};
            Json ker = Json::array();
            for (const auto& k : kernel) ker.push_back(vec_to_json(k.c));
            j["kernel"] = std::move(ker);
            if (defect)
                j["defect"] = Json{{"available", true},
                                   {"class", vec_to_json(defect->defect_class.c)},
                                   {"vanishes", defect->vanishes}};
            else
                j["defect"] = Json{{"available", false}};
            j["total_mass"] = rat_str(mass);
            Json nj = Json{{"is_nef_on_generators", nef.is_nef_on_generators}};
            if (nef.witness)
                nj["witness"] = Json{{"curve", nef.witness->first},
                                     {"value", rat_str(nef.witness->second)}};
            j["nef"] = std::move(nj);
            j["exit"] = holds ? kExitOk : kExitConditionFailed;
            out << canonical_dump(j);
        } else {
            out << "map " << map.name() << ": " << map.source().name() << " -> " << y.name()
                << "\n";
            out << "theta = " << format_h11(y, theta) << "\n";
            out << "pullback = " << format_h11(map.source(), pulled) << "\n";
            out << "condition (C) residuals:\n";
            for (const auto& [name, value] : residuals)
                out << "  " << name << ": " << rat_str(value) << "\n";
            out << "condition (C): " << (holds ? "holds" : "fails") << "\n";
            out << "condition (C) kernel (dim " << kernel.size() << "):\n";
            for (const auto& k : kernel) out << "  " << format_h11(y, k) << "\n";
            if (defect)
                out << "pullback-product defect(theta, theta) = "
                    << format_h22(map.source(), defect->defect_class)
                    << (defect->vanishes ? "  [vanishes]" : "") << "\n";
            else
                out << "pullback-product defect: unavailable (map carries no m22)\n";
            out << "total mass = " << rat_str(mass) << "\n";
            out << "nef on declared generators: " << (nef.is_nef_on_generators ? "yes" : "no");
            if (nef.witness)
                out << "  (witness " << nef.witness->first << ": " << rat_str(nef.witness->second)
                    << ")";
            out << "\n";
        }
        return holds ? kExitOk : kExitConditionFailed;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

inline int cmd_validate(const std::vector<std::string>& model_specs,
                        const std::vector<std::string>& map_specs, std::ostream& out,
                        std::ostream& err) {
    bool all_pass = true;
    try {
        std::vector<VarietyModel> models;
        for (const auto& spec : model_specs) {
            const VarietyModel m = load_model_spec(spec, /*enforce_validation=*/false);
            const ValidationReport rep = m.validate();
            out << "model " << m.name() << ":\n";
            for (const auto& c : rep.checks) {
                out << "  " << (c.pass ? "ok  " : "FAIL") << " " << c.name;
                if (!c.pass) out << ": " << c.detail;
                out << "\n";
            }
            all_pass = all_pass && rep.all_pass();
            models.push_back(m);
        }
        for (const auto& spec : map_specs) {
            if (!detail::file_exists(spec) && is_builtin_map(spec)) {
                out << "map " << spec << ":\n  ok   invariants\n";
                continue;
            }
            try {
                const Json j = detail::file_exists(spec)
                                   ? Json::parse(read_file(spec))
                                   : throw CliError("no such map file or built-in map: " + spec);
                auto find_model = [&](const std::string& name) -> VarietyModel {
                    for (const auto& m : models)
                        if (m.name() == name) return m;
                    return builtin_model(name);
                };
                const PseudoIsoModel f =
                    map_from_json(j, find_model(j.at("source").get<std::string>()),
                                  find_model(j.at("target").get<std::string>()));
                out << "map " << f.name() << ":\n  ok   invariants\n";
            } catch (const nlohmann::json::exception& e) {
                throw CliError("invalid map file '" + spec + "': " + e.what());
            } catch (const std::invalid_argument& e) {
                out << "map " << spec << ":\n  FAIL invariants: " << e.what() << "\n";
                all_pass = false;
            }
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return all_pass ? kExitOk : kExitConditionFailed;
}

// ---------------------------------------------------------------------------
// reproduce-paper
// ---------------------------------------------------------------------------

namespace detail {

struct ReproduceCheck {
    std::string name;
    std::function<std::string()> run;  // empty string = pass, else diff text
};

inline RatVector rv(std::initializer_list<long long> xs) {
    RatVector v;
    for (long long x : xs) v.push_back(Rat(x));
    return v;
}

}  // namespace detail

/// Rebuilds the reference example — the four-point blowup X of P^3 and the
/// lifted Cremona involution — and asserts every number the construction
/// pins down: the 25 pairing entries, both pullback matrices, the involution
/// identities, the Condition (C) kernel and its fixed nef class, the -3
/// total mass, the nef verdicts and the pullback-product defects. Exits 0
/// only if every assertion holds; mismatches are printed entry by entry.
inline int cmd_reproduce_paper(const std::optional<std::string>& model_spec,
                               const std::optional<std::string>& map_spec, std::ostream& out,
                               std::ostream& err) {
    VarietyModel x = projective3();  // placeholder, replaced below
    PseudoIsoModel jx = identity_map(x);
    try {
        x = model_spec ? load_model_spec(*model_spec) : standard_x();
        if (map_spec) {
            jx = load_map_spec(*map_spec, {x});
        } else if (model_spec) {
            jx = PseudoIsoModel("JX", x, x, standard_jx().m11(), std::nullopt, true,
                                standard_jx().indeterminacy_forward(),
                                standard_jx().indeterminacy_backward());
        } else {
            jx = standard_jx();
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }

    const std::vector<std::string> h11_labels{"H", "E0", "E1", "E2", "E3"};
    const std::vector<std::string> h22_labels{"H2", "L0", "L1", "L2", "L3"};
    using detail::rv;
    const RatMatrix expected_m11(5, 5,
                                 [] {
                                     RatVector v;
                                     for (auto row : {rv({3, 1, 1, 1, 1}), rv({-2, 0, -1, -1, -1}),
                                                      rv({-2, -1, 0, -1, -1}), rv({-2, -1, -1, 0, -1}),
                                                      rv({-2, -1, -1, -1, 0})})
                                         v.insert(v.end(), row.begin(), row.end());
                                     return v;
                                 }());
    const RatMatrix expected_m22(5, 5,
                                 [] {
                                     RatVector v;
                                     for (auto row : {rv({3, 2, 2, 2, 2}), rv({-1, 0, -1, -1, -1}),
                                                      rv({-1, -1, 0, -1, -1}), rv({-1, -1, -1, 0, -1}),
                                                      rv({-1, -1, -1, -1, 0})})
                                         v.insert(v.end(), row.begin(), row.end());
                                     return v;
                                 }());

    std::vector<detail::ReproduceCheck> checks;

    checks.push_back({"basis labels", [&]() -> std::string {
        if (x.h11_basis() != h11_labels) return "H^{1,1} basis differs from (H, E0..E3)";
        if (x.h22_basis() != h22_labels) return "H^{2,2} basis differs from (H2, L0..L3)";
        return "";
    }});

    checks.push_back({"pairing table (25 entries)", [&]() -> std::string {
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j) {
                const Rat expected = i == j ? (i == 0 ? Rat(1) : Rat(-1)) : Rat(0);
                if (x.pairing_matrix()(i, j) != expected)
                    return "pairing[" + h11_labels[i] + "][" + h22_labels[j] + "]: expected " +
                           rat_str(expected) + ", got " + rat_str(x.pairing_matrix()(i, j));
            }
        return "";
    }});

    checks.push_back({"divisor pullback matrix", [&]() -> std::string {
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j)
                if (jx.m11()(i, j) != expected_m11(i, j))
                    return "m11[" + h11_labels[i] + "][" + h11_labels[j] + "]: expected " +
                           rat_str(expected_m11(i, j)) + ", got " + rat_str(jx.m11()(i, j));
        return "";
    }});

    checks.push_back({"curve pullback matrix (duality)", [&]() -> std::string {
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j)
                if (jx.m22()(i, j) != expected_m22(i, j))
                    return "m22[" + h22_labels[i] + "][" + h22_labels[j] + "]: expected " +
                           rat_str(expected_m22(i, j)) + ", got " + rat_str(jx.m22()(i, j));
        return "";
    }});

    checks.push_back({"involution squares to identity", [&]() -> std::string {
        if (jx.m11() * jx.m11() != RatMatrix::identity(5)) return "m11^2 != identity";
        if (jx.m22() * jx.m22() != RatMatrix::identity(5)) return "m22^2 != identity";
        return "";
    }});

    checks.push_back({"condition (C) kernel", [&]() -> std::string {
        const auto kernel = condition_c_kernel(jx);
        if (kernel.size() != 1) return "kernel dimension " + std::to_string(kernel.size()) + ", expected 1";
        if (kernel[0].c != rv({2, -1, -1, -1, -1}))
            return "kernel generator " + format_h11(x, kernel[0]) + ", expected 2H - E0 - E1 - E2 - E3";
        return "";
    }});

    checks.push_back({"fixed class 2H-E0-E1-E2-E3", [&]() -> std::string {
        const H11Class eta(rv({2, -1, -1, -1, -1}));
        if (jx.pullback11(eta) != eta) return "pullback moves the class";
        return "";
    }});

    checks.push_back({"pullback of H-E0", [&]() -> std::string {
        const H11Class got = jx.pullback11(H11Class(rv({1, -1, 0, 0, 0})));
        if (got.c != rv({2, -2, -1, -1, -1}))
            return "got " + format_h11(x, got) + ", expected 2H - 2E0 - E1 - E2 - E3";
        return "";
    }});

    checks.push_back({"total mass of H-E0", [&]() -> std::string {
        const Rat mass = ma_total_mass(jx, H11Class(rv({1, -1, 0, 0, 0})));
        if (mass != -3) return "got " + rat_str(mass) + ", expected -3";
        return "";
    }});

    checks.push_back({"nef verdicts", [&]() -> std::string {
        const NefVerdict eta_v = nef_check(x, H11Class(rv({2, -1, -1, -1, -1})));
        if (!eta_v.is_nef_on_generators) {
            std::string det = "2H-E0-E1-E2-E3 not nef on generators";
            if (eta_v.witness)
                det += " (witness " + eta_v.witness->first + ": " + rat_str(eta_v.witness->second) + ")";
            return det;
        }
        const NefVerdict e0_v = nef_check(x, H11Class(rv({0, 1, 0, 0, 0})));
        if (e0_v.is_nef_on_generators) return "E0 reported nef";
        if (!e0_v.witness || e0_v.witness->first != "L0" || e0_v.witness->second != -1)
            return "E0 witness is not (L0, -1)";
        return "";
    }});

    checks.push_back({"pullback-product defects", [&]() -> std::string {
        const H11Class eta(rv({2, -1, -1, -1, -1}));
        for (std::size_t i = 0; i < 5; ++i) {
            const DefectReport rep = pullback_product_defect(jx, eta, x.basis11(i));
            if (!rep.vanishes)
                return "defect(2H-E0-E1-E2-E3, " + h11_labels[i] + ") = " +
                       format_h22(x, rep.defect_class) + ", expected 0";
        }
        const DefectReport hh = pullback_product_defect(jx, x.basis11(0), x.basis11(0));
        if (hh.defect_class.c != rv({6, -3, -3, -3, -3}))
            return "defect(H, H) = " + format_h22(x, hh.defect_class) +
                   ", expected 6H2 - 3L0 - 3L1 - 3L2 - 3L3";
        return "";
    }});

    bool all_ok = true;
    for (const auto& check : checks) {
        std::string diff;
        try {
            diff = check.run();
        } catch (const std::exception& e) {
            diff = std::string("exception: ") + e.what();
        }
        if (diff.empty()) {
            out << "ok   " << check.name << "\n";
        } else {
            out << "FAIL " << check.name << ": " << diff << "\n";
            all_ok = false;
        }
    }
    out << (all_ok ? "all checks passed" : "some checks FAILED") << "\n";
    return all_ok ? kExitOk : kExitConditionFailed;
}

}  // namespace blowup3
