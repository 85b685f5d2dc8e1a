#include "shockbayes/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "shockbayes/errors.hpp"

namespace shockbayes {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

double parse_number(const std::string& s, std::size_t line_no, std::size_t col) {
    const char* b = s.data();
    const char* e = b + s.size();
    while (b < e && (*b == ' ' || *b == '\t')) ++b;
    while (e > b && (*(e - 1) == ' ' || *(e - 1) == '\t')) --e;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e)
        throw ParseError(line_no, col, "cannot parse number '" + s + "'");
    return v;
}

std::string trim(std::string s) {
    auto notspace = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
    s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
    return s;
}

}  // namespace

void validate_dataset(const ShockDataset& ds) {
    const std::size_t n = ds.n();
    if (ds.us.size() != n) throw ValidationError("up/us length mismatch");
    if (ds.rho0 && ds.rho0->size() != n) throw ValidationError("rho0 length mismatch");
    if (ds.source && ds.source->size() != n) throw ValidationError("source length mismatch");
    if (n < 3) throw ValidationError("dataset needs n >= 3 points, got " + std::to_string(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(ds.up[i]) || !std::isfinite(ds.us[i]))
            throw ValidationError("non-finite value at row " + std::to_string(i + 1));
        if (ds.up[i] < 0.0)
            throw ValidationError("negative particle velocity at row " + std::to_string(i + 1));
        if (!(ds.us[i] > 0.0))
            throw ValidationError("non-positive shock velocity at row " + std::to_string(i + 1));
        if (ds.rho0 && !(std::isfinite((*ds.rho0)[i]) && (*ds.rho0)[i] > 0.0))
            throw ValidationError("invalid initial density at row " + std::to_string(i + 1));
    }
    bool distinct = false;
    for (std::size_t i = 1; i < n; ++i)
        if (ds.up[i] != ds.up[0]) { distinct = true; break; }
    if (!distinct)
        throw ValidationError("all particle velocities identical; need at least two distinct");
}

ShockDataset load_dataset(std::istream& in, const std::string& material) {
    ShockDataset ds;
    ds.material = material;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    bool has_rho0 = false, has_source = false;
    std::vector<double> rho0;
    std::vector<std::string> source;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::vector<std::string> cols = split_csv(line);
        if (!have_header) {
            if (cols.size() < 2 || trim(cols[0]) != "up_km_s" || trim(cols[1]) != "us_km_s")
                throw ParseError(line_no, 1, "header must start with up_km_s,us_km_s");
            std::size_t next = 2;
            if (cols.size() > next && trim(cols[next]) == "rho0_g_cm3") {
                has_rho0 = true;
                ++next;
            }
            if (cols.size() > next && trim(cols[next]) == "source") {
                has_source = true;
                ++next;
            }
            if (cols.size() != next)
                throw ParseError(line_no, next + 1, "unexpected extra header column");
            have_header = true;
            continue;
        }
        std::size_t expect = 2 + (has_rho0 ? 1u : 0u) + (has_source ? 1u : 0u);
        if (cols.size() != expect)
            throw ParseError(line_no, cols.size(),
                             "expected " + std::to_string(expect) + " columns, got " +
                                 std::to_string(cols.size()));
        std::size_t c = 0;
        ds.up.push_back(parse_number(cols[c], line_no, c + 1)); ++c;
        ds.us.push_back(parse_number(cols[c], line_no, c + 1)); ++c;
        if (has_rho0) { rho0.push_back(parse_number(cols[c], line_no, c + 1)); ++c; }
        if (has_source) { source.push_back(trim(cols[c])); ++c; }
    }
    if (!have_header) throw ParseError(line_no, 1, "missing header row");
    if (has_rho0) ds.rho0 = std::move(rho0);
    if (has_source) ds.source = std::move(source);
    validate_dataset(ds);
    return ds;
}

ShockDataset load_dataset_file(const std::string& path, const std::string& material) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot open data file: " + path);
    return load_dataset(f, material);
}

std::pair<ShockDataset, std::size_t> dedupe(const ShockDataset& ds) {
    ShockDataset out;
    out.material = ds.material;
    std::vector<double> rho0;
    std::vector<std::string> source;
    std::map<std::pair<double, double>, bool> seen;
    std::size_t removed = 0;
    for (std::size_t i = 0; i < ds.n(); ++i) {
        auto key = std::make_pair(ds.up[i], ds.us[i]);
        if (seen.count(key)) {
            ++removed;
            continue;
        }
        seen[key] = true;
        out.up.push_back(ds.up[i]);
        out.us.push_back(ds.us[i]);
        if (ds.rho0) rho0.push_back((*ds.rho0)[i]);
        if (ds.source) source.push_back((*ds.source)[i]);
    }
    if (ds.rho0) out.rho0 = std::move(rho0);
    if (ds.source) out.source = std::move(source);
    if (out.n() < 3)
        throw ValidationError("deduplication left fewer than 3 points");
    return {std::move(out), removed};
}

DatasetSummary summarize(const ShockDataset& ds) {
    DatasetSummary s;
    s.n = ds.n();
    s.up_min = *std::min_element(ds.up.begin(), ds.up.end());
    s.up_max = *std::max_element(ds.up.begin(), ds.up.end());
    s.us_min = *std::min_element(ds.us.begin(), ds.us.end());
    s.us_max = *std::max_element(ds.us.begin(), ds.us.end());
    if (ds.rho0) {
        double acc = 0.0;
        for (double v : *ds.rho0) acc += v;
        s.mean_rho0 = acc / static_cast<double>(ds.n());
    }
    std::map<std::pair<double, double>, std::size_t> counts;
    for (std::size_t i = 0; i < ds.n(); ++i) ++counts[{ds.up[i], ds.us[i]}];
    for (const auto& [k, c] : counts)
        if (c > 1) s.duplicate_count += c - 1;
    return s;
}

void serialize_dataset(const ShockDataset& ds, std::ostream& out) {
    out << "up_km_s,us_km_s";
    if (ds.rho0) out << ",rho0_g_cm3";
    if (ds.source) out << ",source";
    out << "\n";
    char buf[64];
    auto fmt = [&buf](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    for (std::size_t i = 0; i < ds.n(); ++i) {
        out << fmt(ds.up[i]) << ',' << fmt(ds.us[i]);
        if (ds.rho0) out << ',' << fmt((*ds.rho0)[i]);
        if (ds.source) out << ',' << (*ds.source)[i];
        out << "\n";
    }
}

}  // namespace shockbayes
