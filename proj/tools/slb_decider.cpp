// slb-decider: command-line front end for the sale-leaseback / borrow
// decision engine.
//
// Exit status: 0 success, 1 I/O or JSON syntax error, 2 schema or
// validation failure, 3 solver or domain failure.

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slb/analysis.hpp"
#include "slb/batch.hpp"
#include "slb/report.hpp"
#include "slb/scenario.hpp"
#include "slb/service.hpp"

namespace {

enum ExitCode { kOk = 0, kIoError = 1, kValidationFailure = 2, kSolverFailure = 3 };

enum class LogLevel { Error, Info, Debug };

LogLevel log_level() {
    const char* env = std::getenv("SLB_DECIDER_LOG");
    if (!env) return LogLevel::Error;
    const std::string v = env;
    if (v == "debug") return LogLevel::Debug;
    if (v == "info") return LogLevel::Info;
    return LogLevel::Error;
}

void log(LogLevel level, const std::string& msg) {
    static const LogLevel threshold = log_level();
    if (level > threshold) return;
    static constexpr const char* tags[] = {"error", "info", "debug"};
    std::cerr << "[slb-decider " << tags[static_cast<int>(level)] << "] " << msg << "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

slb::Scenario load(const std::string& path) {
    log(LogLevel::Info, "loading " + path);
    return slb::parse_scenario(read_file(path));
}

void print_findings(const std::vector<slb::Finding>& findings) {
    for (const auto& f : findings)
        std::cerr << (f.severity == slb::Severity::Violation ? "violation " : "warning ") << f.path
                  << ": " << f.message << "\n";
}

// Runs a command body and maps the engine's exceptions to exit codes.
template <typename F>
int run_guarded(F&& body) {
    try {
        return body();
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const slb::SyntaxError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const slb::ValidationError& e) {
        print_findings(e.findings());
        return kValidationFailure;
    } catch (const slb::SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidationFailure;
    } catch (const slb::ConfigurationError& e) {
        std::cerr << "error: curves." << e.curve() << ": " << e.what() << "\n";
        return kValidationFailure;
    } catch (const slb::InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidationFailure;
    } catch (const slb::BracketError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kSolverFailure;
    } catch (const slb::SolverError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kSolverFailure;
    } catch (const slb::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kSolverFailure;
    } catch (const slb::CapabilityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kSolverFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoError;
    }
}

slb::ServiceHost* g_host = nullptr;

void on_signal(int) {
    if (g_host) g_host->stop();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sale-leaseback versus new debt decision engine"};
    app.set_version_flag("--version", slb::tool_version());
    app.require_subcommand(1, 1);

    std::string file;
    bool pretty = false;

    auto* evaluate = app.add_subcommand("evaluate", "Full decision report as JSON");
    evaluate->add_option("scenario", file, "Scenario JSON file")->required();
    evaluate->add_flag("--pretty", pretty, "Human-readable table instead of JSON");

    auto* compare = app.add_subcommand("compare", "N_sl against N_b with the condition dashboard");
    compare->add_option("scenario", file, "Scenario JSON file")->required();

    std::string var;
    double lo = 0, hi = 0;
    auto* breakeven = app.add_subcommand("breakeven", "Indifference point N_sl = N_b");
    breakeven->add_option("scenario", file, "Scenario JSON file")->required();
    breakeven->add_option("--var", var, "S, R_ts, monthly_rent or P_dss")->required();
    breakeven->add_option("--lo", lo, "Bracket low end")->required();
    breakeven->add_option("--hi", hi, "Bracket high end")->required();

    double from = 0, to = 0;
    int steps = 0;
    auto* sweep = app.add_subcommand("sweep", "Evaluate over an evenly spaced grid of one parameter");
    sweep->add_option("scenario", file, "Scenario JSON file")->required();
    sweep->add_option("--var", var, "Parameter name or symbol")->required();
    sweep->add_option("--from", from, "First grid value")->required();
    sweep->add_option("--to", to, "Last grid value")->required();
    sweep->add_option("--steps", steps, "Number of grid points")->required()->check(CLI::Range(1, 10001));

    double perturb = 0.10;
    auto* tornado = app.add_subcommand("tornado", "Rank parameters by their effect on N_sl - N_b");
    tornado->add_option("scenario", file, "Scenario JSON file")->required();
    tornado->add_option("--perturb", perturb, "Relative perturbation")->check(CLI::Range(0.0, 1.0));
    tornado->add_flag("--pretty", pretty, "Human-readable table instead of JSON");

    slb::ServeOptions serve_opts;
    auto* serve = app.add_subcommand("serve", "HTTP API on /api/v1");
    serve->add_option("--port", serve_opts.port, "TCP port")->check(CLI::Range(0, 65535));
    serve->add_option("--bind", serve_opts.bind, "Listen address");
    serve->add_option("--cors-origin", serve_opts.cors_origin, "Allowed browser origin");

    auto* validate = app.add_subcommand("validate", "Report validation findings only");
    validate->add_option("scenario", file, "Scenario JSON file")->required();

    std::vector<std::string> batch_files;
    std::string format = "json";
    std::string out_dir;
    auto* run_batch = app.add_subcommand("run-batch", "Evaluate many scenario files");
    run_batch->add_option("scenarios", batch_files, "Scenario JSON files")->required();
    run_batch->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    run_batch->add_option("--out-dir", out_dir, "Directory for report files (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kValidationFailure;
    }

    if (*evaluate) {
        return run_guarded([&] {
            const auto s = load(file);
            const auto ev = slb::evaluate_scenario(s);
            if (pretty) std::cout << slb::render_report(s, ev);
            else std::cout << slb::dump_document(slb::report_document(s, ev, slb::utc_timestamp()));
            return kOk;
        });
    }
    if (*compare) {
        return run_guarded([&] {
            const auto s = load(file);
            std::cout << slb::render_comparison(s, slb::evaluate_scenario(s));
            return kOk;
        });
    }
    if (*breakeven) {
        return run_guarded([&] {
            const auto s = load(file);
            const slb::SolverOptions opts{s.options.breakeven_tolerance, s.options.breakeven_max_iterations};
            const auto result = slb::breakeven(s.deal, var, lo, hi, opts);
            log(LogLevel::Debug, "breakeven converged in " + std::to_string(result.iterations) + " iterations");
            std::cout << slb::dump_document(slb::to_json(result));
            return kOk;
        });
    }
    if (*sweep) {
        return run_guarded([&] {
            const auto s = load(file);
            const auto& spec = slb::find_parameter(var);
            const auto grid = slb::linear_grid(from, to, steps);
            const auto rows = slb::sweep(s.deal, s.curves, s.options.conditions(), var, grid);
            std::cout << slb::dump_document(slb::to_json(rows, spec.name));
            return kOk;
        });
    }
    if (*tornado) {
        return run_guarded([&] {
            const auto s = load(file);
            const auto rows = slb::tornado(s.deal, perturb);
            if (pretty) std::cout << slb::render_tornado(rows);
            else std::cout << slb::dump_document(slb::to_json(rows, perturb));
            return kOk;
        });
    }
    if (*validate) {
        return run_guarded([&] {
            const auto j = slb::parse_json(read_file(file));
            const auto s = slb::scenario_from_json_unvalidated(j);
            const auto findings = slb::validate(s.deal);
            const bool valid = !slb::has_violations(findings);
            std::cout << slb::dump_document({{"valid", valid}, {"findings", slb::to_json(findings)}});
            if (!valid) print_findings(findings);
            return valid ? kOk : kValidationFailure;
        });
    }
    if (*run_batch) {
        return run_guarded([&] {
            std::vector<std::filesystem::path> paths(batch_files.begin(), batch_files.end());
            const auto fmt = format == "csv" ? slb::OutputFormat::Csv : slb::OutputFormat::Json;
            const auto result = slb::run_batch(paths, fmt, out_dir);
            if (out_dir.empty()) {
                if (fmt == slb::OutputFormat::Csv) {
                    std::cout << result.csv;
                } else {
                    nlohmann::json all = nlohmann::json::array();
                    for (const auto& r : result.reports) all.push_back(r);
                    std::cout << slb::dump_document(all);
                }
            }
            for (const auto& f : result.failures) std::cerr << "error: " << f.path.string() << ": " << f.message << "\n";
            log(LogLevel::Info, std::to_string(result.reports.size()) + " reports, " +
                                    std::to_string(result.failures.size()) + " failures");
            return result.exit_status();
        });
    }
    if (*serve) {
        return run_guarded([&] {
            slb::ServiceHost host(slb::DecisionService{}, serve_opts);
            const int port = host.bind();
            g_host = &host;
            std::signal(SIGINT, on_signal);
            std::signal(SIGTERM, on_signal);
            std::cerr << "listening on http://" << serve_opts.bind << ":" << port << "/api/v1\n";
            host.run();
            g_host = nullptr;
            return kOk;
        });
    }
    return kIoError;
}
