#include "isac/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace isac {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

nlohmann::json constellation_to_json(const Constellation& c) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : c.points) pts.push_back({p.real(), p.imag()});
    return nlohmann::json{{"points", pts}, {"avg_power", c.avg_power}};
}

Constellation constellation_from_json(const nlohmann::json& j) {
    std::vector<Symbol> pts;
    for (const auto& p : j.at("points")) pts.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    Constellation c = Constellation::from_points(std::move(pts));
    if (j.contains("avg_power")) {
        const double declared = j.at("avg_power").get<double>();
        if (std::abs(declared - c.avg_power) > 1e-9 * std::max(1.0, std::abs(declared)))
            throw std::invalid_argument("constellation_from_json: avg_power inconsistent");
        c.avg_power = declared;
    }
    return c;
}

nlohmann::json mixture_to_json(const GammaMixture& mix, double log_likelihood) {
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& c : mix.components)
        comps.push_back({{"w", c.w}, {"alpha", c.alpha}, {"beta", c.beta}});
    return nlohmann::json{{"components", comps}, {"log_likelihood", log_likelihood}};
}

GammaMixture mixture_from_json(const nlohmann::json& j) {
    GammaMixture mix;
    for (const auto& c : j.at("components"))
        mix.components.push_back(GammaComponent{c.at("w").get<double>(),
                                                c.at("alpha").get<double>(),
                                                c.at("beta").get<double>()});
    mix.validate();
    return mix;
}

nlohmann::json metric_report_to_json(const MetricReport& rep) {
    return nlohmann::json{{"mi_bits", rep.mi_bits},
                          {"mi_normalized", rep.mi_normalized},
                          {"avg_pd", rep.avg_pd},
                          {"per_point_pd", rep.per_point_pd}};
}

nlohmann::json design_result_to_json(const DesignResult& r) {
    return nlohmann::json{{"alpha_star", r.alpha_star},
                          {"beta_star", r.beta_star},
                          {"objective", r.objective},
                          {"objective_trace", r.objective_trace},
                          {"constellation", constellation_to_json(r.constellation)},
                          {"metrics", metric_report_to_json(r.metrics)}};
}

nlohmann::json manifest_to_json(const RunManifest& m) {
    return nlohmann::json{{"command", m.command},
                          {"full_config", m.full_config},
                          {"seed", m.seed},
                          {"tool_version", m.tool_version},
                          {"timestamp", m.timestamp}};
}

RunManifest manifest_from_json(const nlohmann::json& j) {
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.full_config = j.at("full_config");
    m.seed = j.at("seed").get<std::uint64_t>();
    m.tool_version = j.at("tool_version").get<std::string>();
    m.timestamp = j.value("timestamp", "");
    return m;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string constellation_to_csv(const Constellation& c) {
    std::string out = "re,im\n";
    for (const auto& p : c.points) {
        out += format_double(p.real());
        out += ',';
        out += format_double(p.imag());
        out += '\n';
    }
    return out;
}

std::string column_csv(const std::string& header, const std::vector<double>& values) {
    std::string out = header + "\n";
    for (double v : values) {
        out += format_double(v);
        out += '\n';
    }
    return out;
}

std::vector<double> read_column_csv(const std::string& content) {
    std::vector<double> values;
    std::istringstream in(content);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        char* end = nullptr;
        const double v = std::strtod(line.c_str(), &end);
        if (end == line.c_str()) {
            if (first) {
                first = false;
                continue; // header
            }
            throw std::invalid_argument("read_column_csv: malformed line: " + line);
        }
        first = false;
        values.push_back(v);
    }
    return values;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    const bool with_bounds = !rows.empty() && rows.front().union_bound.has_value();
    std::string out = "ebn0_db,ser,ser_stderr,pd,pd_stderr";
    if (with_bounds) out += ",union_bound,crb_closed,crb_mc";
    out += '\n';
    for (const auto& r : rows) {
        out += format_double(r.ebn0_db);
        out += ',';
        out += format_double(r.ser);
        out += ',';
        out += format_double(r.ser_stderr);
        out += ',';
        out += format_double(r.pd);
        out += ',';
        out += format_double(r.pd_stderr);
        if (with_bounds) {
            out += ',';
            out += format_double(r.union_bound.value());
            out += ',';
            out += format_double(r.crb_closed.value());
            out += ',';
            out += format_double(r.crb_mc.value());
        }
        out += '\n';
    }
    return out;
}

} // namespace isac
