#include "slb/batch.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

#include "slb/report.hpp"

namespace slb {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw Error("cannot write " + path.string());
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Outcome {
    std::optional<nlohmann::json> report;
    std::string error;
};

Outcome evaluate_file(const fs::path& path, const std::string& timestamp) {
    try {
        const Scenario s = parse_scenario(read_file(path));
        return {report_document(s, evaluate_scenario(s), timestamp), {}};
    } catch (const std::exception& e) {
        return {std::nullopt, e.what()};
    }
}

}  // namespace

std::string csv_row(const nlohmann::json& report) {
    const auto& decision = report.at("decision");
    std::string line = csv_field(report.at("scenario").at("meta").at("name").get<std::string>());
    line += "," + csv_number(decision.at("n_sl").at("value").get<double>());
    line += "," + csv_number(decision.at("n_b").at("value").get<double>());
    for (const auto& c : decision.at("conditions")) line += c.at("holds").get<bool>() ? ",true" : ",false";
    line += "," + decision.at("recommendation").get<std::string>();
    return line;
}

BatchResult run_batch(std::span<const fs::path> paths, OutputFormat format, const fs::path& out_dir,
                      const std::string& timestamp) {
    const std::string stamp = timestamp.empty() ? utc_timestamp() : timestamp;

    // evaluate in waves of hardware_concurrency files; collect in input order
    const std::size_t wave = std::max(1u, std::thread::hardware_concurrency());
    BatchResult result;
    for (std::size_t first = 0; first < paths.size(); first += wave) {
        const std::size_t last = std::min(paths.size(), first + wave);
        std::vector<std::future<Outcome>> pending;
        for (std::size_t i = first; i < last; ++i)
            pending.push_back(std::async(std::launch::async, evaluate_file, paths[i], stamp));
        for (std::size_t i = first; i < last; ++i) {
            Outcome o = pending[i - first].get();
            if (o.report) {
                result.inputs.push_back(paths[i]);
                result.reports.push_back(std::move(*o.report));
            } else {
                result.failures.push_back({paths[i], std::move(o.error)});
            }
        }
    }

    if (format == OutputFormat::Csv) {
        result.csv = std::string(kBatchCsvHeader) + "\n";
        for (const auto& r : result.reports) result.csv += csv_row(r) + "\n";
    }

    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        if (format == OutputFormat::Csv) {
            write_file(out_dir / "batch.csv", result.csv);
        } else {
            for (std::size_t i = 0; i < result.reports.size(); ++i)
                write_file(out_dir / (result.inputs[i].stem().string() + ".report.json"),
                           dump_document(result.reports[i]));
        }
    }
    return result;
}

}  // namespace slb
