#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <blowup3/cli.hpp>

int main(int argc, char** argv) {
    CLI::App app{
        "blowup3 — exact cohomology calculator for iterated blowups of P^3 and "
        "pseudo-isomorphisms between them"};
    app.require_subcommand(1);

    std::string builtin_name;
    std::optional<std::string> builtin_out;
    CLI::App* builtin = app.add_subcommand("builtin", "write a built-in model or map file");
    builtin->add_option("name", builtin_name, "P3 | X | Z | JX")->required();
    builtin->add_option("-o,--output", builtin_out, "output path (default: stdout)");

    std::string eval_expr;
    std::optional<std::string> eval_model, eval_map;
    bool eval_json = false;
    CLI::App* eval = app.add_subcommand("eval", "evaluate a ring expression");
    eval->add_option("expr", eval_expr, "e.g. \"cube(pullback(H-E0))\"")->required();
    eval->add_option("--model", eval_model, "model file or built-in name (default: X)");
    eval->add_option("--map", eval_map, "map file or built-in name (for pullback/pushforward)");
    eval->add_flag("--json", eval_json, "emit JSON");

    std::string analyze_map, analyze_theta;
    std::vector<std::string> analyze_models;
    bool analyze_json = false;
    CLI::App* analyze =
        app.add_subcommand("analyze", "condition (C), defect, mass and nef report for a class");
    analyze->add_option("--map", analyze_map, "map file or built-in name")->required();
    analyze->add_option("--model", analyze_models, "model files needed by the map");
    analyze->add_option("--theta", analyze_theta, "class literal, e.g. \"2H-E0-E1-E2-E3\"")
        ->required();
    analyze->add_flag("--json", analyze_json, "emit JSON");

    std::vector<std::string> validate_models, validate_maps;
    CLI::App* validate = app.add_subcommand("validate", "run model/map invariant checks");
    validate->add_option("--model", validate_models, "model files or built-in names");
    validate->add_option("--map", validate_maps, "map files or built-in names");

    std::optional<std::string> rp_model, rp_map;
    CLI::App* reproduce = app.add_subcommand(
        "reproduce-paper", "recompute and assert the reference Cremona-example numbers");
    reproduce->add_option("--model", rp_model, "check this model file instead of the built-in X");
    reproduce->add_option("--map", rp_map, "check this map file instead of the built-in JX");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return blowup3::kExitInputError;
    }

    if (*builtin) return blowup3::cmd_builtin(builtin_name, builtin_out, std::cout, std::cerr);
    if (*eval)
        return blowup3::cmd_eval(eval_expr, eval_model, eval_map, eval_json, std::cout, std::cerr);
    if (*analyze)
        return blowup3::cmd_analyze(analyze_map, analyze_models, analyze_theta, analyze_json,
                                    std::cout, std::cerr);
    if (*validate) {
        if (validate_models.empty() && validate_maps.empty()) {
            std::cerr << "error: validate needs --model and/or --map\n";
            return blowup3::kExitInputError;
        }
        return blowup3::cmd_validate(validate_models, validate_maps, std::cout, std::cerr);
    }
    if (*reproduce) return blowup3::cmd_reproduce_paper(rp_model, rp_map, std::cout, std::cerr);
    return blowup3::kExitInputError;
}
