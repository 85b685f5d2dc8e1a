#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "shockbayes/bootstrap.hpp"
#include "shockbayes/hugoniot.hpp"
#include "shockbayes/regression.hpp"
#include "shockbayes/validation.hpp"

namespace shockbayes {

// Table-2/Table-3 style row.
struct SummaryRow {
    std::string material;
    std::string parameter;
    double mean = 0.0;
    double sd = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    std::string units;
};

std::string coefficient_name(int degree, std::size_t index);

std::vector<SummaryRow> posterior_table(const std::string& material,
                                        const PosteriorNIG& post, double level);
std::vector<SummaryRow> bootstrap_table(const std::string& material,
                                        const BootstrapEnsemble& ens, double level);

std::string rows_to_csv(const std::vector<SummaryRow>& rows);
std::string rows_to_json(const std::vector<SummaryRow>& rows);

std::string band_to_csv(const Band& b);                  // us-plane band
std::string pv_band_to_csv(const PVBand& b);             // v_cm3_g,p_lo_gpa,...
std::string pv_curve_to_csv(const PVCurve& c);
std::string ppc_to_csv(const PPCResult& r);
std::string ensemble_to_csv(const BootstrapEnsemble& e);
std::string samples_to_csv(const std::vector<JointDraw>& draws, int degree);
std::string oracle_to_json(const OracleReport& rep);

// FNV-1a 64 content digest, hex.
std::string content_digest(const std::string& bytes);

// Write bytes to dir/name and record the digest.
class OutputWriter {
public:
    explicit OutputWriter(std::string dir);
    void write(const std::string& name, const std::string& bytes);
    const std::map<std::string, std::string>& digests() const { return digests_; }
    const std::string& dir() const { return dir_; }

private:
    std::string dir_;
    std::map<std::string, std::string> digests_;
};

}  // namespace shockbayes
