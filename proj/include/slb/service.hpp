#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>

namespace slb {

inline constexpr std::size_t kMaxSweepPoints = 10001;

/// Stateless request handler behind the HTTP API. Every call is a pure
/// function of (method, path, body) apart from the report timestamp.
class DecisionService {
public:
    struct Response {
        int status = 200;
        std::string body;
    };

    using Clock = std::function<std::string()>;

    DecisionService();
    explicit DecisionService(Clock clock);

    Response handle(std::string_view method, std::string_view path, std::string_view body) const;

private:
    Response evaluate(std::string_view body) const;
    Response breakeven(std::string_view body) const;
    Response sweep(std::string_view body) const;
    Response tornado(std::string_view body) const;
    Response health() const;

    Clock clock_;
};

struct ServeOptions {
    std::string bind = "127.0.0.1";
    int port = 8080;             // 0 picks a free port
    std::string cors_origin;     // empty: no CORS headers
};

/// Owns an HTTP listener routing /api/v1/* to a DecisionService.
class ServiceHost {
public:
    ServiceHost(DecisionService service, ServeOptions options);
    ~ServiceHost();
    ServiceHost(const ServiceHost&) = delete;
    ServiceHost& operator=(const ServiceHost&) = delete;

    /// Binds the socket and returns the port; throws Error on failure.
    int bind();
    /// Serves until stop(); call bind() first.
    void run();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace slb
