#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "shockbayes/bootstrap.hpp"
#include "shockbayes/dataset.hpp"
#include "shockbayes/errors.hpp"
#include "shockbayes/hugoniot.hpp"
#include "shockbayes/regression.hpp"
#include "shockbayes/special.hpp"
#include "shockbayes/validation.hpp"

namespace py = pybind11;
using namespace shockbayes;

namespace {

PosteriorNIG posterior_for(const ShockDataset& ds, int degree) {
    return posterior_noninformative(fit_least_squares(ds, degree));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bayesian calibration of linear shock Hugoniot models";

    py::register_exception<Error>(m, "ShockBayesError");

    py::class_<ShockDataset>(m, "ShockDataset")
        .def_readonly("material", &ShockDataset::material)
        .def_readonly("up", &ShockDataset::up)
        .def_readonly("us", &ShockDataset::us)
        .def_property_readonly("rho0",
                               [](const ShockDataset& d) {
                                   return d.rho0 ? py::cast(*d.rho0) : py::none();
                               })
        .def_property_readonly("source",
                               [](const ShockDataset& d) {
                                   return d.source ? py::cast(*d.source) : py::none();
                               })
        .def_property_readonly("n", &ShockDataset::n);

    py::class_<FitResult>(m, "FitResult")
        .def_readonly("degree", &FitResult::degree)
        .def_readonly("beta_hat", &FitResult::beta_hat)
        .def_readonly("residuals", &FitResult::residuals)
        .def_readonly("s2", &FitResult::s2)
        .def_readonly("nu", &FitResult::nu)
        .def_readonly("r2", &FitResult::r2);

    py::class_<PosteriorNIG>(m, "PosteriorNIG")
        .def_readonly("degree", &PosteriorNIG::degree)
        .def_readonly("beta_mean", &PosteriorNIG::beta_mean)
        .def_readonly("nu", &PosteriorNIG::nu)
        .def_readonly("a", &PosteriorNIG::a)
        .def_readonly("b", &PosteriorNIG::b)
        .def_property_readonly("scale", [](const PosteriorNIG& p) {
            std::vector<std::vector<double>> rows(p.scale.dim(),
                                                  std::vector<double>(p.scale.dim()));
            for (std::size_t i = 0; i < p.scale.dim(); ++i)
                for (std::size_t j = 0; j < p.scale.dim(); ++j) rows[i][j] = p.scale(i, j);
            return rows;
        });

    m.def("load_dataset", &load_dataset_file, py::arg("path"), py::arg("material") = "");
    m.def("load_dataset_text", [](const std::string& text, const std::string& material) {
        std::istringstream in(text);
        return load_dataset(in, material);
    });
    m.def("dedupe", [](const ShockDataset& ds) { return dedupe(ds); });
    m.def("summarize", [](const ShockDataset& ds) {
        DatasetSummary s = summarize(ds);
        py::dict d;
        d["n"] = s.n;
        d["up_range"] = py::make_tuple(s.up_min, s.up_max);
        d["us_range"] = py::make_tuple(s.us_min, s.us_max);
        d["mean_rho0"] = s.mean_rho0 ? py::cast(*s.mean_rho0) : py::none();
        d["duplicate_count"] = s.duplicate_count;
        return d;
    });

    m.def("fit_least_squares", &fit_least_squares, py::arg("dataset"),
          py::arg("degree") = 1);
    m.def("posterior", &posterior_for, py::arg("dataset"), py::arg("degree") = 1);
    m.def("credible_interval", &credible_interval, py::arg("posterior"),
          py::arg("index"), py::arg("level") = 0.95);
    m.def("posterior_sd", [](const PosteriorNIG& p) {
        SymMatrix cov = beta_covariance(p);
        std::vector<double> sd(p.beta_mean.size());
        for (std::size_t k = 0; k < sd.size(); ++k) sd[k] = std::sqrt(cov(k, k));
        return sd;
    });
    m.def(
        "sample_beta",
        [](const PosteriorNIG& p, std::size_t count, std::uint64_t seed) {
            return sample_beta(p, count, RngState{seed, 0, 0});
        },
        py::arg("posterior"), py::arg("count"), py::arg("seed") = 0);

    m.def(
        "mean_us_band",
        [](const PosteriorNIG& p, const std::vector<double>& grid, double level,
           bool prediction) {
            Band b = band(p, grid, level,
                          prediction ? BandKind::prediction : BandKind::credible);
            py::dict d;
            d["up"] = b.up;
            d["lo"] = b.lo;
            d["hi"] = b.hi;
            d["mean"] = b.mid;
            return d;
        },
        py::arg("posterior"), py::arg("up_grid"), py::arg("level") = 0.95,
        py::arg("prediction") = false);

    m.def(
        "rh_curve",
        [](const std::vector<double>& beta, const std::vector<double>& up_grid,
           double rho0, double p0) {
            PVCurve c = rh_transform(beta, up_grid, InitialState{rho0, p0, {}});
            py::dict d;
            d["up"] = c.up;
            d["us"] = c.us;
            d["v"] = c.v;
            d["p"] = c.p;
            return d;
        },
        py::arg("beta"), py::arg("up_grid"), py::arg("rho0"), py::arg("p0") = 1e-4);

    m.def(
        "pv_band",
        [](const ShockDataset& ds, int degree, std::size_t count, double rho0,
           double level, std::size_t v_grid_size, std::uint64_t seed) {
            PosteriorNIG post = posterior_for(ds, degree);
            DatasetSummary s = summarize(ds);
            auto grid = linspace(s.up_min, s.up_max, 200);
            auto curves = sample_pv_curves(post, count, grid,
                                           InitialState{rho0, 1e-4, {}},
                                           RngState{seed, 0, 0});
            PVBand b = pv_band(curves.curves, level, v_grid_size);
            py::dict d;
            d["v"] = b.v_grid;
            d["p_lo"] = b.p_lo;
            d["p_hi"] = b.p_hi;
            d["rejected"] = curves.rejected;
            return d;
        },
        py::arg("dataset"), py::arg("degree") = 1, py::arg("count") = 10000,
        py::arg("rho0") = 0.0, py::arg("level") = 0.95, py::arg("v_grid_size") = 200,
        py::arg("seed") = 0);

    m.def(
        "bootstrap_summary",
        [](const ShockDataset& ds, int degree, std::size_t B, double level,
           std::uint64_t seed) {
            BootstrapEnsemble ens = bootstrap_ensemble(ds, degree, B, RngState{seed, 0, 0});
            auto rows = percentile_summary(ens, level);
            py::list out;
            for (std::size_t k = 0; k < rows.size(); ++k) {
                py::dict d;
                d["coefficient"] = k;
                d["mean"] = rows[k].mean;
                d["sd"] = rows[k].sd;
                d["lo"] = rows[k].lo;
                d["hi"] = rows[k].hi;
                out.append(d);
            }
            return out;
        },
        py::arg("dataset"), py::arg("degree") = 1, py::arg("B") = 10000,
        py::arg("level") = 0.95, py::arg("seed") = 0);

    m.def("student_t_quantile", &student_t_quantile, py::arg("p"), py::arg("nu"));
    m.def("f_quantile", &f_quantile, py::arg("p"), py::arg("d1"), py::arg("d2"));
}
