#include "shockbayes/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "shockbayes/bootstrap.hpp"
#include "shockbayes/dataset.hpp"
#include "shockbayes/errors.hpp"
#include "shockbayes/hugoniot.hpp"
#include "shockbayes/report.hpp"
#include "shockbayes/svg.hpp"
#include "shockbayes/validation.hpp"

namespace shockbayes {

using nlohmann::json;

void RunConfig::validate() const {
    if (data_path.empty()) throw ConfigError("--data is required");
    if (degree < 1) throw ConfigError("--degree must be >= 1");
    if (!(level > 0.0) || !(level < 1.0)) throw ConfigError("--level must be in (0, 1)");
    if (samples < 1) throw ConfigError("--samples must be >= 1");
    if (resamples < 1) throw ConfigError("--resamples must be >= 1");
    if (up_grid_size < 2 || v_grid_size < 2)
        throw ConfigError("grid sizes must be >= 2");
    if (format != "csv" && format != "json")
        throw ConfigError("--format must be csv or json");
    if (rho0 && !(*rho0 > 0.0)) throw ConfigError("--rho0 must be positive");
    if (p0 < 0.0) throw ConfigError("--p0 must be non-negative");
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file " + path);
    json j;
    try {
        f >> j;
    } catch (const std::exception& e) {
        throw ConfigError("config file is not valid JSON: " + std::string(e.what()));
    }
    auto get = [&](const char* k, auto& slot) {
        if (j.contains(k)) slot = j.at(k).get<std::decay_t<decltype(slot)>>();
    };
    get("data", cfg.data_path);
    get("material", cfg.material);
    get("degree", cfg.degree);
    get("seed", cfg.seed);
    get("samples", cfg.samples);
    get("resamples", cfg.resamples);
    get("level", cfg.level);
    if (j.contains("rho0")) cfg.rho0 = j.at("rho0").get<double>();
    get("p0", cfg.p0);
    if (j.contains("e0")) cfg.e0 = j.at("e0").get<double>();
    get("up_grid_size", cfg.up_grid_size);
    get("v_grid_size", cfg.v_grid_size);
    if (j.contains("prior")) cfg.prior_path = j.at("prior").get<std::string>();
    get("out_dir", cfg.out_dir);
    get("format", cfg.format);
    get("dedupe", cfg.dedupe);
    get("drop_max_up", cfg.drop_max_up);
    get("emit_svg", cfg.emit_svg);
    get("parametric_bootstrap", cfg.parametric_bootstrap);
}

NIGPrior load_prior(const std::string& path, int degree) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open prior file " + path);
    json j;
    try {
        f >> j;
    } catch (const std::exception& e) {
        throw ConfigError("prior file is not valid JSON: " + std::string(e.what()));
    }
    const std::size_t p = static_cast<std::size_t>(degree) + 1;
    NIGPrior prior;
    try {
        prior.beta0 = j.at("beta0").get<std::vector<double>>();
        auto rows = j.at("sigma0").get<std::vector<std::vector<double>>>();
        std::vector<double> flat;
        for (const auto& r : rows)
            for (double v : r) flat.push_back(v);
        if (rows.size() != p || flat.size() != p * p)
            throw ConfigError("prior sigma0 must be (degree+1) x (degree+1)");
        prior.sigma0 = SymMatrix(p, flat);
        prior.a0 = j.at("a0").get<double>();
        prior.b0 = j.at("b0").get<double>();
    } catch (const json::exception& e) {
        throw ConfigError("prior file is missing fields: " + std::string(e.what()));
    }
    if (prior.beta0.size() != p) throw ConfigError("prior beta0 has wrong length");
    return prior;
}

namespace {

struct RunContext {
    RunConfig cfg;
    ShockDataset ds;
    std::size_t dedupe_removed = 0;
    FitResult fit;
    PosteriorNIG post;
    RngState rng;
    OutputWriter out;

    RunContext(const RunConfig& c, ShockDataset d)
        : cfg(c), ds(std::move(d)), out(c.out_dir) {}
};

std::string table_name(const std::string& stem, const RunConfig& cfg) {
    return stem + (cfg.format == "json" ? ".json" : ".csv");
}

void write_table(RunContext& ctx, const std::string& stem,
                 const std::vector<SummaryRow>& rows) {
    ctx.out.write(table_name(stem, ctx.cfg),
                  ctx.cfg.format == "json" ? rows_to_json(rows) : rows_to_csv(rows));
}

InitialState initial_state(const RunContext& ctx) {
    InitialState init;
    init.p0 = ctx.cfg.p0;
    init.e0 = ctx.cfg.e0;
    if (ctx.cfg.rho0) {
        init.rho0 = *ctx.cfg.rho0;
    } else {
        DatasetSummary s = summarize(ctx.ds);
        if (!s.mean_rho0)
            throw ConfigError(
                "no --rho0 given and the dataset has no rho0 column to average");
        init.rho0 = *s.mean_rho0;
    }
    return init;
}

std::vector<double> default_up_grid(const RunContext& ctx) {
    DatasetSummary s = summarize(ctx.ds);
    return linspace(s.up_min, s.up_max, ctx.cfg.up_grid_size);
}

void do_fit(RunContext& ctx) {
    std::vector<SummaryRow> rows;
    for (std::size_t k = 0; k < ctx.fit.beta_hat.size(); ++k) {
        SummaryRow r;
        r.material = ctx.ds.material;
        r.parameter = coefficient_name(ctx.fit.degree, k);
        r.mean = ctx.fit.beta_hat[k];
        r.sd = std::sqrt(ctx.fit.sigma_scale(k, k));
        r.lo = r.mean;  // point estimate rows carry no interval
        r.hi = r.mean;
        r.units = (ctx.fit.degree == 1 && k == 1) ? "-" : (k == 0 ? "km/s" : "mixed");
        rows.push_back(r);
    }
    write_table(ctx, "fit", rows);
    json j;
    j["material"] = ctx.ds.material;
    j["n"] = ctx.ds.n();
    j["degree"] = ctx.fit.degree;
    j["beta_hat"] = ctx.fit.beta_hat;
    j["s2"] = ctx.fit.s2;
    j["nu"] = ctx.fit.nu;
    j["r2"] = ctx.fit.r2;
    j["dedupe_removed"] = ctx.dedupe_removed;
    ctx.out.write("fit_details.json", j.dump(2) + "\n");
}

void do_posterior(RunContext& ctx) {
    write_table(ctx, "posterior", posterior_table(ctx.ds.material, ctx.post, ctx.cfg.level));
    if (ctx.post.degree == 1) {
        CredibleEllipse e = credible_region_ellipse(ctx.post, ctx.cfg.level);
        std::string csv = "theta,c0,s\n";
        for (int i = 0; i <= 256; ++i) {
            double th = 2.0 * 3.14159265358979323846 * i / 256.0;
            auto [c0, s] = e.boundary(th);
            char buf[96];
            std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g\n", th, c0, s);
            csv += buf;
        }
        ctx.out.write("credible_ellipse.csv", csv);
        if (ctx.cfg.emit_svg)
            ctx.out.write("credible_ellipse.svg",
                          svg_ellipse(e, ctx.ds.material + " credible region"));
    }
    try {
        Sigma2Summary s2 = sigma2_posterior_summary(ctx.post);
        json j;
        j["mean"] = s2.mean;
        j["sd"] = s2.sd;
        ctx.out.write("posterior_sigma2.json", j.dump(2) + "\n");
    } catch (const UndefinedMoment&) {
        // moments undefined for tiny n; the table still stands
    }
}

void do_sample(RunContext& ctx) {
    auto draws = sample_joint(ctx.post, ctx.cfg.samples, ctx.rng);
    ctx.out.write("samples.csv", samples_to_csv(draws, ctx.post.degree));
    if (ctx.cfg.emit_svg) {
        std::vector<double> s_draws(draws.size());
        for (std::size_t i = 0; i < draws.size(); ++i) s_draws[i] = draws[i].beta[1];
        ctx.out.write("samples_s.svg",
                      svg_histogram(s_draws, 60, "s", ctx.ds.material + " slope draws"));
    }
}

void do_hugoniot(RunContext& ctx) {
    InitialState init = initial_state(ctx);
    std::vector<double> grid = default_up_grid(ctx);
    PVSampleResult curves = sample_pv_curves(ctx.post, ctx.cfg.samples, grid, init, ctx.rng);
    PVBand band = pv_band(curves.curves, ctx.cfg.level, ctx.cfg.v_grid_size);
    ctx.out.write("pv_band.csv", pv_band_to_csv(band));
    PVCurve mean_curve = rh_transform(ctx.post.beta_mean, grid, init);
    ctx.out.write("pv_mean_curve.csv", pv_curve_to_csv(mean_curve));
    json j;
    j["rejected"] = curves.rejected;
    j["curves"] = curves.curves.size();
    j["rho0"] = init.rho0;
    j["p0"] = init.p0;
    ctx.out.write("pv_meta.json", j.dump(2) + "\n");
    if (ctx.cfg.emit_svg)
        ctx.out.write("pv_band.svg", svg_pv_band(band, ctx.ds.material + " P-V band"));
}

void do_bands(RunContext& ctx) {
    std::vector<double> grid = default_up_grid(ctx);
    Band cred = band(ctx.post, grid, ctx.cfg.level, BandKind::credible);
    Band pred = band(ctx.post, grid, ctx.cfg.level, BandKind::prediction);
    ctx.out.write("band_credible.csv", band_to_csv(cred));
    ctx.out.write("band_prediction.csv", band_to_csv(pred));
    if (ctx.cfg.emit_svg) {
        ctx.out.write("band_credible.svg",
                      svg_band(cred, "up (km/s)", "us (km/s)",
                               ctx.ds.material + " mean-us credible band"));
        ctx.out.write("band_prediction.svg",
                      svg_band(pred, "up (km/s)", "us (km/s)",
                               ctx.ds.material + " prediction band"));
    }
}

void do_ppc(RunContext& ctx) {
    std::size_t reps = std::min<std::size_t>(ctx.cfg.samples, 20);
    PPCResult r = posterior_predictive_check(ctx.post, ctx.ds, reps, ctx.rng);
    ctx.out.write("ppc.csv", ppc_to_csv(r));
}

void do_bootstrap(RunContext& ctx) {
    BootstrapEnsemble ens =
        ctx.cfg.parametric_bootstrap
            ? bootstrap_ensemble_parametric(ctx.ds, ctx.cfg.degree, ctx.cfg.resamples,
                                            ctx.rng)
            : bootstrap_ensemble(ctx.ds, ctx.cfg.degree, ctx.cfg.resamples, ctx.rng);
    write_table(ctx, "bootstrap", bootstrap_table(ctx.ds.material, ens, ctx.cfg.level));
    ctx.out.write("ensemble.csv", ensemble_to_csv(ens));
    std::vector<double> grid = default_up_grid(ctx);
    BootstrapBands bb = bootstrap_bands(ctx.ds, ens, grid, ctx.cfg.level,
                                        substream(ctx.rng, 0xbbb));
    std::string csv = "up_km_s,mean_km_s,conf_lo,conf_hi,pred_lo,pred_hi\n";
    for (std::size_t i = 0; i < bb.up.size(); ++i) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n",
                      bb.up[i], bb.mean_curve[i], bb.conf_lo[i], bb.conf_hi[i],
                      bb.pred_lo[i], bb.pred_hi[i]);
        csv += buf;
    }
    ctx.out.write("bootstrap_bands.csv", csv);
    if (ctx.cfg.drop_max_up) {
        SensitivityResult sens = sensitivity_drop_max_up(
            ctx.ds, ctx.cfg.degree, ctx.cfg.resamples, 0, substream(ctx.rng, 0xd0b));
        auto full = percentile_summary(sens.ens_full, ctx.cfg.level);
        auto drop = percentile_summary(sens.ens_dropped, ctx.cfg.level);
        SymMatrix cov_f = beta_covariance(sens.post_full);
        SymMatrix cov_d = beta_covariance(sens.post_dropped);
        std::string s = "quantity,full,dropped\n";
        auto row = [&s](const std::string& k, double a, double b) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "%s,%.10g,%.10g\n", k.c_str(), a, b);
            s += buf;
        };
        row("bootstrap_mean_s", full[1].mean, drop[1].mean);
        row("bootstrap_sd_s", full[1].sd, drop[1].sd);
        row("posterior_mean_s", sens.post_full.beta_mean[1],
            sens.post_dropped.beta_mean[1]);
        row("posterior_sd_s", std::sqrt(cov_f(1, 1)), std::sqrt(cov_d(1, 1)));
        ctx.out.write("sensitivity.csv", s);
    }
    if (ctx.cfg.emit_svg) {
        std::vector<double> s_col(ens.B);
        for (std::size_t b = 0; b < ens.B; ++b) s_col[b] = ens.at(b, 1);
        ctx.out.write("bootstrap_s.svg",
                      svg_histogram(s_col, 60, "s", ctx.ds.material +
                                    " bootstrap slope estimates"));
    }
}

void do_validate(RunContext& ctx) {
    GridSpec grid = default_grid(ctx.fit);
    OracleReport rep = grid_posterior_oracle(ctx.ds, grid);
    ctx.out.write("oracle.json", oracle_to_json(rep));
}

void write_manifest(RunContext& ctx, const std::string& subcommand) {
    json j;
    j["schema_version"] = 1;
    j["subcommand"] = subcommand;
    json c;
    c["data"] = ctx.cfg.data_path;
    c["material"] = ctx.ds.material;
    c["degree"] = ctx.cfg.degree;
    c["seed"] = ctx.cfg.seed;
    c["samples"] = ctx.cfg.samples;
    c["resamples"] = ctx.cfg.resamples;
    c["level"] = ctx.cfg.level;
    if (ctx.cfg.rho0) c["rho0"] = *ctx.cfg.rho0;
    c["p0"] = ctx.cfg.p0;
    if (ctx.cfg.e0) c["e0"] = *ctx.cfg.e0;
    c["up_grid_size"] = ctx.cfg.up_grid_size;
    c["v_grid_size"] = ctx.cfg.v_grid_size;
    if (ctx.cfg.prior_path) c["prior"] = *ctx.cfg.prior_path;
    c["format"] = ctx.cfg.format;
    c["dedupe"] = ctx.cfg.dedupe;
    c["drop_max_up"] = ctx.cfg.drop_max_up;
    c["emit_svg"] = ctx.cfg.emit_svg;
    c["parametric_bootstrap"] = ctx.cfg.parametric_bootstrap;
    j["config"] = c;
    j["dedupe_removed"] = ctx.dedupe_removed;
    json files = json::object();
    for (const auto& [name, digest] : ctx.out.digests()) files[name] = digest;
    j["files"] = files;
    std::string bytes = j.dump(2) + "\n";
    std::filesystem::path p = std::filesystem::path(ctx.out.dir()) / "manifest.json";
    std::ofstream f(p, std::ios::binary);
    if (!f) throw ConfigError("cannot write manifest");
    f << bytes;
}

}  // namespace

const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> cmds = {
        "fit", "posterior", "sample", "hugoniot", "bands",
        "ppc", "bootstrap", "validate", "report"};
    return cmds;
}

int run(const std::string& subcommand, const RunConfig& cfg) {
    const auto& cmds = subcommands();
    if (std::find(cmds.begin(), cmds.end(), subcommand) == cmds.end())
        throw ConfigError("unknown subcommand: " + subcommand);
    cfg.validate();
    std::string material = cfg.material;
    if (material.empty())
        material = std::filesystem::path(cfg.data_path).stem().string();
    ShockDataset ds = load_dataset_file(cfg.data_path, material);
    std::size_t removed = 0;
    if (cfg.dedupe) {
        auto [clean, r] = dedupe(ds);
        ds = std::move(clean);
        removed = r;
    }
    RunContext ctx(cfg, std::move(ds));
    ctx.dedupe_removed = removed;
    ctx.rng = RngState{cfg.seed, 0, 0};
    ctx.fit = fit_least_squares(ctx.ds, cfg.degree);
    if (cfg.prior_path) {
        NIGPrior prior = load_prior(*cfg.prior_path, cfg.degree);
        ctx.post = posterior_informative(ctx.ds, cfg.degree, prior);
    } else {
        ctx.post = posterior_noninformative(ctx.fit);
    }

    if (subcommand == "fit") {
        do_fit(ctx);
    } else if (subcommand == "posterior") {
        do_posterior(ctx);
    } else if (subcommand == "sample") {
        do_sample(ctx);
    } else if (subcommand == "hugoniot") {
        do_hugoniot(ctx);
    } else if (subcommand == "bands") {
        do_bands(ctx);
    } else if (subcommand == "ppc") {
        do_ppc(ctx);
    } else if (subcommand == "bootstrap") {
        do_bootstrap(ctx);
    } else if (subcommand == "validate") {
        do_validate(ctx);
    } else {  // report
        do_fit(ctx);
        do_posterior(ctx);
        do_sample(ctx);
        do_hugoniot(ctx);
        do_bands(ctx);
        do_ppc(ctx);
        do_bootstrap(ctx);
        do_validate(ctx);
    }
    write_manifest(ctx, subcommand);
    return 0;
}

}  // namespace shockbayes
