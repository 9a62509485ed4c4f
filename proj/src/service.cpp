#include "slb/service.hpp"

#include "slb/analysis.hpp"
#include "slb/report.hpp"

// after Eigen: httplib pulls in resolver headers whose macros clash with it
#include <httplib.h>

namespace slb {

using nlohmann::json;

namespace {

using Response = DecisionService::Response;

Response ok(json result) {
    return {200, dump_document({{"ok", true}, {"result", std::move(result)}})};
}

Response fail(int status, std::string code, std::string message, json path = nullptr,
              json extra = json::object()) {
    json error = {{"code", std::move(code)}, {"message", std::move(message)}, {"path", std::move(path)}};
    error.update(extra);
    return {status, dump_document({{"ok", false}, {"error", error}})};
}

// Maps the engine's exceptions onto status codes and error envelopes.
template <typename F>
Response guarded(F&& body) {
    try {
        return body();
    } catch (const SyntaxError& e) {
        return fail(400, "syntax_error", e.what(), nullptr,
                    {{"line", e.line()}, {"column", e.column()}});
    } catch (const SchemaError& e) {
        return fail(400, "schema_error", e.message(), e.path());
    } catch (const ValidationError& e) {
        std::string path;
        for (const auto& f : e.findings())
            if (f.severity == Severity::Violation) {
                path = f.path;
                break;
            }
        return fail(400, "validation_error", e.what(), path, {{"findings", to_json(e.findings())}});
    } catch (const ConfigurationError& e) {
        return fail(400, "configuration_error", e.what(), "curves." + e.curve());
    } catch (const InvalidInput& e) {
        return fail(400, "invalid_input", e.what());
    } catch (const BracketError& e) {
        return fail(422, "bracket_error", e.what(), nullptr, {{"g_lo", e.g_lo()}, {"g_hi", e.g_hi()}});
    } catch (const SolverError& e) {
        return fail(422, "solver_error", e.what());
    } catch (const DomainError& e) {
        return fail(422, "domain_error", e.what());
    } catch (const CapabilityError& e) {
        return fail(422, "domain_error", e.what());
    } catch (const std::exception& e) {
        return fail(500, "internal_error", e.what());
    }
}

const json& require_object_body(const json& j) {
    if (!j.is_object()) throw SchemaError("$", "expected an object");
    return j;
}

void reject_unknown(const json& j, std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, _] : j.items())
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw SchemaError(key, "unknown field");
}

const json& member(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(key, "required field missing");
    return *it;
}

double number_member(const json& j, const char* key) {
    const json& v = member(j, key);
    if (!v.is_number()) throw SchemaError(key, "expected a number");
    return v.get<double>();
}

std::string string_member(const json& j, const char* key) {
    const json& v = member(j, key);
    if (!v.is_string()) throw SchemaError(key, "expected a string");
    return v.get<std::string>();
}

}  // namespace

DecisionService::DecisionService() : DecisionService(utc_timestamp) {}

DecisionService::DecisionService(Clock clock) : clock_(std::move(clock)) {}

Response DecisionService::handle(std::string_view method, std::string_view path,
                                 std::string_view body) const {
    if (path == "/api/v1/health") {
        if (method != "GET") return fail(405, "method_not_allowed", "use GET");
        return health();
    }
    using Handler = Response (DecisionService::*)(std::string_view) const;
    static const std::pair<std::string_view, Handler> routes[] = {
        {"/api/v1/evaluate", &DecisionService::evaluate},
        {"/api/v1/breakeven", &DecisionService::breakeven},
        {"/api/v1/sweep", &DecisionService::sweep},
        {"/api/v1/tornado", &DecisionService::tornado},
    };
    for (const auto& [route, handler] : routes) {
        if (route != path) continue;
        if (method != "POST") return fail(405, "method_not_allowed", "use POST");
        return (this->*handler)(body);
    }
    return fail(404, "not_found", "no such endpoint: " + std::string(path));
}

Response DecisionService::health() const {
    return {200, dump_document({{"status", "ok"}, {"version", tool_version()}})};
}

Response DecisionService::evaluate(std::string_view body) const {
    return guarded([&] {
        const Scenario s = parse_scenario(body);
        return ok(report_document(s, evaluate_scenario(s), clock_()));
    });
}

Response DecisionService::breakeven(std::string_view body) const {
    return guarded([&] {
        const json j = parse_json(body);
        require_object_body(j);
        reject_unknown(j, {"scenario", "variable", "lo", "hi"});
        const Scenario s = scenario_from_json(member(j, "scenario"), "scenario");
        const SolverOptions opts{s.options.breakeven_tolerance, s.options.breakeven_max_iterations};
        return ok(to_json(slb::breakeven(s.deal, string_member(j, "variable"), number_member(j, "lo"),
                                         number_member(j, "hi"), opts)));
    });
}

Response DecisionService::sweep(std::string_view body) const {
    return guarded([&] {
        const json j = parse_json(body);
        require_object_body(j);
        reject_unknown(j, {"scenario", "variable", "from", "to", "steps", "grid"});
        const Scenario s = scenario_from_json(member(j, "scenario"), "scenario");
        const std::string variable = string_member(j, "variable");
        std::vector<double> grid;
        if (j.contains("grid")) {
            const json& g = j["grid"];
            if (!g.is_array()) throw SchemaError("grid", "expected an array of numbers");
            if (g.size() > kMaxSweepPoints)
                return fail(413, "too_large", "sweep is capped at 10001 grid points", "grid");
            for (std::size_t i = 0; i < g.size(); ++i) {
                if (!g[i].is_number()) throw SchemaError("grid[" + std::to_string(i) + "]", "expected a number");
                grid.push_back(g[i].get<double>());
            }
        } else {
            const json& steps = member(j, "steps");
            if (!steps.is_number_integer()) throw SchemaError("steps", "expected an integer");
            const auto n = steps.get<long long>();
            if (n > static_cast<long long>(kMaxSweepPoints))
                return fail(413, "too_large", "sweep is capped at 10001 grid points", "steps");
            grid = linear_grid(number_member(j, "from"), number_member(j, "to"), static_cast<int>(n));
        }
        find_parameter(variable);
        return ok(to_json(slb::sweep(s.deal, s.curves, s.options.conditions(), variable, grid),
                          find_parameter(variable).name));
    });
}

Response DecisionService::tornado(std::string_view body) const {
    return guarded([&] {
        const json j = parse_json(body);
        require_object_body(j);
        reject_unknown(j, {"scenario", "perturbation"});
        const Scenario s = scenario_from_json(member(j, "scenario"), "scenario");
        const double perturbation = j.contains("perturbation") ? number_member(j, "perturbation") : 0.10;
        return ok(to_json(slb::tornado(s.deal, perturbation), perturbation));
    });
}

struct ServiceHost::Impl {
    Impl(DecisionService s, ServeOptions o) : service(std::move(s)), options(std::move(o)) {}

    DecisionService service;
    ServeOptions options;
    httplib::Server server;
    bool bound = false;
};

ServiceHost::ServiceHost(DecisionService service, ServeOptions options)
    : impl_(std::make_unique<Impl>(std::move(service), std::move(options))) {
    auto& impl = *impl_;
    auto dispatch = [&impl](const httplib::Request& req, httplib::Response& res) {
        const auto out = impl.service.handle(req.method, req.path, req.body);
        res.status = out.status;
        res.set_content(out.body, "application/json");
    };
    impl.server.Get(R"(/api/v1/.*)", dispatch);
    impl.server.Post(R"(/api/v1/.*)", dispatch);
    impl.server.Put(R"(/api/v1/.*)", dispatch);
    impl.server.Delete(R"(/api/v1/.*)", dispatch);
    impl.server.Patch(R"(/api/v1/.*)", dispatch);
    if (!impl.options.cors_origin.empty()) {
        impl.server.set_default_headers({
            {"Access-Control-Allow-Origin", impl.options.cors_origin},
            {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
            {"Access-Control-Allow-Headers", "Content-Type"},
        });
        impl.server.Options(R"(/api/v1/.*)", [](const httplib::Request&, httplib::Response& res) {
            res.status = 204;
        });
    }
}

ServiceHost::~ServiceHost() { stop(); }

int ServiceHost::bind() {
    auto& impl = *impl_;
    int port = impl.options.port;
    if (port == 0) {
        port = impl.server.bind_to_any_port(impl.options.bind);
    } else if (!impl.server.bind_to_port(impl.options.bind, port)) {
        port = -1;
    }
    if (port < 0)
        throw Error("cannot bind " + impl.options.bind + ":" + std::to_string(impl.options.port));
    impl.bound = true;
    return port;
}

void ServiceHost::run() {
    if (!impl_->bound) bind();
    impl_->server.listen_after_bind();
}

void ServiceHost::stop() {
    if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace slb
