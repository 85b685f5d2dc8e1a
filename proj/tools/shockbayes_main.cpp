#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "shockbayes/cli.hpp"
#include "shockbayes/errors.hpp"

namespace {

int exit_code(shockbayes::ErrorCategory cat) {
    switch (cat) {
        case shockbayes::ErrorCategory::config: return 2;
        case shockbayes::ErrorCategory::data: return 3;
        case shockbayes::ErrorCategory::numerical: return 4;
    }
    return 1;
}

void print_error_record(const std::string& kind, int code, const std::string& what) {
    nlohmann::json j;
    j["error"] = kind;
    j["exit_code"] = code;
    j["message"] = what;
    std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian calibration of linear shock Hugoniot models"};
    app.require_subcommand(1);

    shockbayes::RunConfig cfg;
    std::string config_path;
    std::string prior_path;
    std::string rho0_str, e0_str;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file (flags win)");
        sub->add_option("--data", cfg.data_path, "input CSV of (up, us) pairs");
        sub->add_option("--material", cfg.material, "material label");
        sub->add_option("--degree", cfg.degree, "polynomial degree (default 1)");
        sub->add_option("--seed", cfg.seed, "random seed (default 0)");
        sub->add_option("--samples", cfg.samples, "posterior sample count");
        sub->add_option("--resamples", cfg.resamples, "bootstrap resample count B");
        sub->add_option("--level", cfg.level, "probability level (default 0.95)");
        sub->add_option("--rho0", rho0_str, "initial density override, g/cm^3");
        sub->add_option("--p0", cfg.p0, "initial pressure, GPa (default 1e-4)");
        sub->add_option("--e0", e0_str, "initial specific energy, kJ/g");
        sub->add_option("--up-grid", cfg.up_grid_size, "up grid size (default 200)");
        sub->add_option("--v-grid", cfg.v_grid_size, "volume grid size (default 200)");
        sub->add_option("--prior", prior_path, "JSON NIG prior file");
        sub->add_option("--out-dir", cfg.out_dir, "output directory");
        sub->add_option("--format", cfg.format, "table format: csv | json");
        sub->add_flag("--dedupe", cfg.dedupe, "drop exact duplicate (up, us) rows");
        sub->add_flag("--drop-max-up", cfg.drop_max_up,
                      "also analyze with the max-up point removed");
        sub->add_flag("--emit-svg", cfg.emit_svg, "emit SVG plots next to the CSVs");
        sub->add_flag("--parametric", cfg.parametric_bootstrap,
                      "parametric (Gaussian-fit) bootstrap");
    };

    for (const std::string& name : shockbayes::subcommands())
        add_common(app.add_subcommand(name));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        shockbayes::RunConfig final_cfg;
        if (!config_path.empty()) shockbayes::apply_config_file(final_cfg, config_path);
        // flags override config-file values wherever the user set them
        auto* sub = app.get_subcommands().front();
        auto passed = [&](const std::string& flag) {
            return sub->count(flag) > 0;
        };
        if (passed("--data")) final_cfg.data_path = cfg.data_path;
        if (passed("--material")) final_cfg.material = cfg.material;
        if (passed("--degree")) final_cfg.degree = cfg.degree;
        if (passed("--seed")) final_cfg.seed = cfg.seed;
        if (passed("--samples")) final_cfg.samples = cfg.samples;
        if (passed("--resamples")) final_cfg.resamples = cfg.resamples;
        if (passed("--level")) final_cfg.level = cfg.level;
        if (passed("--p0")) final_cfg.p0 = cfg.p0;
        if (passed("--up-grid")) final_cfg.up_grid_size = cfg.up_grid_size;
        if (passed("--v-grid")) final_cfg.v_grid_size = cfg.v_grid_size;
        if (passed("--out-dir")) final_cfg.out_dir = cfg.out_dir;
        if (passed("--format")) final_cfg.format = cfg.format;
        if (passed("--dedupe")) final_cfg.dedupe = cfg.dedupe;
        if (passed("--drop-max-up")) final_cfg.drop_max_up = cfg.drop_max_up;
        if (passed("--emit-svg")) final_cfg.emit_svg = cfg.emit_svg;
        if (passed("--parametric"))
            final_cfg.parametric_bootstrap = cfg.parametric_bootstrap;
        if (!rho0_str.empty()) final_cfg.rho0 = std::stod(rho0_str);
        if (!e0_str.empty()) final_cfg.e0 = std::stod(e0_str);
        if (!prior_path.empty()) final_cfg.prior_path = prior_path;
        return shockbayes::run(sub->get_name(), final_cfg);
    } catch (const shockbayes::Error& e) {
        int code = exit_code(e.category());
        print_error_record(e.kind(), code, e.what());
        return code;
    } catch (const std::exception& e) {
        print_error_record("InternalError", 1, e.what());
        return 1;
    }
}
