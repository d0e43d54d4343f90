#ifndef ISAC_IO_HPP
#define ISAC_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "isac/constellation.hpp"
#include "isac/design.hpp"
#include "isac/gamma.hpp"
#include "isac/sim.hpp"

namespace isac {

inline constexpr const char* kToolVersion = "0.1.0";

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

nlohmann::json constellation_to_json(const Constellation& c);
Constellation constellation_from_json(const nlohmann::json& j);

nlohmann::json mixture_to_json(const GammaMixture& mix, double log_likelihood);
GammaMixture mixture_from_json(const nlohmann::json& j);

nlohmann::json metric_report_to_json(const MetricReport& rep);
nlohmann::json design_result_to_json(const DesignResult& r);

/// Reproducibility sidecar written next to every output file. Re-running the
/// recorded command with the recorded config reproduces the outputs
/// byte-identically.
struct RunManifest {
    std::string command;
    nlohmann::json full_config;
    std::uint64_t seed = 0;
    std::string tool_version = kToolVersion;
    std::string timestamp;
};

nlohmann::json manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& j);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// Two-column CSV (re, im) for a constellation.
std::string constellation_to_csv(const Constellation& c);

/// Single-column CSV, one value per line, with the given header.
std::string column_csv(const std::string& header, const std::vector<double>& values);

std::vector<double> read_column_csv(const std::string& content);

/// Sweep table CSV; bounds columns appear only when present in the rows.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

} // namespace isac

#endif
