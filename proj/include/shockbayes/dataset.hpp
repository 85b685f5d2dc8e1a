#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace shockbayes {

// Validated shock-wave / particle-velocity measurements for one material.
// Units repo-wide: velocities km/s, densities g/cm^3, pressures GPa,
// specific volume cm^3/g (1 g/cm^3 * (km/s)^2 = 1 GPa).
struct ShockDataset {
    std::string material;
    std::vector<double> up;                          // particle velocity, km/s
    std::vector<double> us;                          // shock velocity, km/s
    std::optional<std::vector<double>> rho0;         // per-point initial density
    std::optional<std::vector<std::string>> source;  // per-point provenance tag

    std::size_t n() const { return up.size(); }
};

struct DatasetSummary {
    std::size_t n = 0;
    double up_min = 0.0, up_max = 0.0;
    double us_min = 0.0, us_max = 0.0;
    std::optional<double> mean_rho0;
    std::size_t duplicate_count = 0;
};

// Parse the repo CSV format:
//   up_km_s,us_km_s[,rho0_g_cm3][,source]
// UTF-8, LF or CRLF, '#' comment lines ignored. Numbers accept plain decimal
// and scientific notation, dot decimal separator only.
ShockDataset load_dataset(std::istream& in, const std::string& material);
ShockDataset load_dataset_file(const std::string& path, const std::string& material);

// Enforce the dataset invariants; load_dataset calls this. Exposed so
// programmatically built datasets go through the same gate.
void validate_dataset(const ShockDataset& ds);

// Remove exact-equality duplicates on (up, us), keeping first occurrences.
std::pair<ShockDataset, std::size_t> dedupe(const ShockDataset& ds);

DatasetSummary summarize(const ShockDataset& ds);

// Round-trip serialization (full double precision).
void serialize_dataset(const ShockDataset& ds, std::ostream& out);

}  // namespace shockbayes
