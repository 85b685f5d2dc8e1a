#include "shockbayes/report.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "shockbayes/errors.hpp"
#include "shockbayes/special.hpp"

namespace shockbayes {

namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

std::string coefficient_name(int degree, std::size_t index) {
    if (degree == 1) return index == 0 ? "C0" : "S";
    return "C" + std::to_string(index);
}

std::vector<SummaryRow> posterior_table(const std::string& material,
                                        const PosteriorNIG& post, double level) {
    SymMatrix cov = beta_covariance(post);
    std::vector<SummaryRow> rows;
    for (std::size_t k = 0; k < post.beta_mean.size(); ++k) {
        auto [lo, hi] = credible_interval(post, k, level);
        SummaryRow r;
        r.material = material;
        r.parameter = coefficient_name(post.degree, k);
        r.mean = post.beta_mean[k];
        r.sd = std::sqrt(cov(k, k));
        r.lo = lo;
        r.hi = hi;
        r.units = (post.degree == 1 && k == 1) ? "-" : (k == 0 ? "km/s" : "mixed");
        rows.push_back(r);
    }
    return rows;
}

std::vector<SummaryRow> bootstrap_table(const std::string& material,
                                        const BootstrapEnsemble& ens, double level) {
    std::vector<CoefficientSummary> s = percentile_summary(ens, level);
    std::vector<SummaryRow> rows;
    for (std::size_t k = 0; k < s.size(); ++k) {
        SummaryRow r;
        r.material = material;
        r.parameter = coefficient_name(ens.degree, k);
        r.mean = s[k].mean;
        r.sd = s[k].sd;
        r.lo = s[k].lo;
        r.hi = s[k].hi;
        r.units = (ens.degree == 1 && k == 1) ? "-" : (k == 0 ? "km/s" : "mixed");
        rows.push_back(r);
    }
    return rows;
}

std::string rows_to_csv(const std::vector<SummaryRow>& rows) {
    std::string out = "material,parameter,mean,sd,lo,hi,units\n";
    for (const auto& r : rows) {
        out += r.material + ',' + r.parameter + ',' + fmt(r.mean) + ',' + fmt(r.sd) +
               ',' + fmt(r.lo) + ',' + fmt(r.hi) + ',' + r.units + "\n";
    }
    return out;
}

std::string rows_to_json(const std::vector<SummaryRow>& rows) {
    std::string out = "[\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        out += "  {\"material\": \"" + r.material + "\", \"parameter\": \"" +
               r.parameter + "\", \"mean\": " + fmt(r.mean) + ", \"sd\": " + fmt(r.sd) +
               ", \"lo\": " + fmt(r.lo) + ", \"hi\": " + fmt(r.hi) + ", \"units\": \"" +
               r.units + "\"}";
        out += (i + 1 < rows.size()) ? ",\n" : "\n";
    }
    out += "]\n";
    return out;
}

std::string band_to_csv(const Band& b) {
    std::string out = "up_km_s,us_lo_km_s,us_hi_km_s,us_mean_km_s\n";
    for (std::size_t i = 0; i < b.up.size(); ++i)
        out += fmt(b.up[i]) + ',' + fmt(b.lo[i]) + ',' + fmt(b.hi[i]) + ',' +
               fmt(b.mid[i]) + "\n";
    return out;
}

std::string pv_band_to_csv(const PVBand& b) {
    std::string out = b.p_mean ? "v_cm3_g,p_lo_gpa,p_hi_gpa,p_mean_gpa\n"
                               : "v_cm3_g,p_lo_gpa,p_hi_gpa\n";
    for (std::size_t i = 0; i < b.v_grid.size(); ++i) {
        out += fmt(b.v_grid[i]) + ',' + fmt(b.p_lo[i]) + ',' + fmt(b.p_hi[i]);
        if (b.p_mean) out += ',' + fmt((*b.p_mean)[i]);
        out += "\n";
    }
    return out;
}

std::string pv_curve_to_csv(const PVCurve& c) {
    std::string out = c.e ? "up_km_s,us_km_s,v_cm3_g,p_gpa,e_kj_g\n"
                          : "up_km_s,us_km_s,v_cm3_g,p_gpa\n";
    for (std::size_t i = 0; i < c.up.size(); ++i) {
        out += fmt(c.up[i]) + ',' + fmt(c.us[i]) + ',' + fmt(c.v[i]) + ',' + fmt(c.p[i]);
        if (c.e) out += ',' + fmt((*c.e)[i]);
        out += "\n";
    }
    return out;
}

std::string ppc_to_csv(const PPCResult& r) {
    std::string out = "rep,up_km_s,us_actual,us_sim\n";
    for (std::size_t rep = 0; rep < r.simulated.size(); ++rep)
        for (std::size_t i = 0; i < r.up.size(); ++i)
            out += std::to_string(rep) + ',' + fmt(r.up[i]) + ',' + fmt(r.actual[i]) +
                   ',' + fmt(r.simulated[rep][i]) + "\n";
    return out;
}

std::string ensemble_to_csv(const BootstrapEnsemble& e) {
    const std::size_t p = static_cast<std::size_t>(e.degree) + 1;
    std::string out = "b";
    for (std::size_t k = 0; k < p; ++k) {
        out += ',';
        std::string nm = coefficient_name(e.degree, k);
        for (char& ch : nm) ch = static_cast<char>(std::tolower(ch));
        out += nm;
    }
    out += "\n";
    for (std::size_t b = 0; b < e.B; ++b) {
        out += std::to_string(b);
        for (std::size_t k = 0; k < p; ++k) out += ',' + fmt(e.at(b, k));
        out += "\n";
    }
    return out;
}

std::string samples_to_csv(const std::vector<JointDraw>& draws, int degree) {
    const std::size_t p = static_cast<std::size_t>(degree) + 1;
    std::string out;
    for (std::size_t k = 0; k < p; ++k) {
        std::string nm = coefficient_name(degree, k);
        for (char& ch : nm) ch = static_cast<char>(std::tolower(ch));
        out += nm + ",";
    }
    out += "sigma2\n";
    for (const auto& d : draws) {
        for (std::size_t k = 0; k < p; ++k) out += fmt(d.beta[k]) + ',';
        out += fmt(d.sigma2) + "\n";
    }
    return out;
}

std::string oracle_to_json(const OracleReport& rep) {
    auto block = [](const char* name, const OracleMarginal& m) {
        auto rel = [](double a, double b) {
            if (std::isnan(a) || std::isnan(b)) return std::string("null");
            return fmt(std::fabs(a - b) / std::max(1e-300, std::fabs(b)));
        };
        auto val = [](double v) { return std::isnan(v) ? std::string("null") : fmt(v); };
        std::string s = "  \"";
        s += name;
        s += "\": {\"closed_form_mean\": " + val(m.closed_mean) +
             ", \"grid_mean\": " + val(m.grid_mean) +
             ", \"closed_form_sd\": " + val(m.closed_sd) +
             ", \"grid_sd\": " + val(m.grid_sd) +
             ", \"rel_err_mean\": " + rel(m.grid_mean, m.closed_mean) +
             ", \"rel_err_sd\": " + rel(m.grid_sd, m.closed_sd) + "}";
        return s;
    };
    std::string out = "{\n";
    out += block("C0", rep.c0) + ",\n";
    out += block("S", rep.s) + ",\n";
    out += block("sigma2", rep.sigma2) + ",\n";
    out += "  \"boundary_mass\": " + fmt(rep.boundary_mass) + "\n}\n";
    return out;
}

std::string content_digest(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

OutputWriter::OutputWriter(std::string dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw ConfigError("cannot create output directory " + dir_);
}

void OutputWriter::write(const std::string& name, const std::string& bytes) {
    std::filesystem::path p = std::filesystem::path(dir_) / name;
    std::ofstream f(p, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + p.string());
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    digests_[name] = content_digest(bytes);
}

}  // namespace shockbayes
