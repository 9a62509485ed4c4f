#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace slb {

enum class OutputFormat { Json, Csv };

/// Header of the batch CSV table, without the trailing newline.
inline constexpr const char* kBatchCsvHeader =
    "scenario_name,N_sl,N_b,B1,B2,B3,B4,B5,B6,S1,S2,S3,S4,S5,S6,S7,recommendation";

struct BatchFailure {
    std::filesystem::path path;
    std::string message;
};

struct BatchResult {
    std::vector<std::filesystem::path> inputs;   // successful inputs, in input order
    std::vector<nlohmann::json> reports;         // one ReportDocument each
    std::vector<BatchFailure> failures;
    std::string csv;                             // filled for OutputFormat::Csv

    int exit_status() const { return failures.empty() ? 0 : 1; }
};

/// Evaluates every scenario file; a failing file is recorded and the rest
/// still run. When `out_dir` is non-empty, writes <stem>.report.json per
/// scenario (Json) or batch.csv (Csv) there.
BatchResult run_batch(std::span<const std::filesystem::path> paths, OutputFormat format,
                      const std::filesystem::path& out_dir = {},
                      const std::string& timestamp = {});

/// One CSV line (no newline) for a report document.
std::string csv_row(const nlohmann::json& report);

}  // namespace slb
