#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include <json.hpp>

#include "liar/adversary.hpp"
#include "liar/game.hpp"
#include "liar/strategy.hpp"

namespace liar::service {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

enum class Mode { MachineAsks, HumanAsks };
enum class Status { InProgress, Won, ResponderCaught, OutOfQuestions, Expired };

const char* to_string(Mode m);
const char* to_string(Status s);

struct ServiceConfig {
    std::uint64_t max_n = std::uint64_t{1} << 20;
    std::size_t max_sessions = 10'000;
    std::chrono::seconds idle_timeout{3600};
    /// Append-only JSON-lines event log; disabled when empty.
    std::filesystem::path event_log;
    std::function<Clock::time_point()> now = [] { return Clock::now(); };
};

struct ApiResponse {
    int status = 200;
    json body;
};

struct Session {
    std::string id;
    Mode mode = Mode::MachineAsks;
    std::uint64_t n = 0;
    unsigned budget = 0;
    GameState state;
    std::optional<StrategyPlan> plan;           // MachineAsks
    std::optional<PlannedQuestion> pending;     // MachineAsks: question awaiting an answer
    std::optional<Responder> responder;         // HumanAsks
    Status status = Status::InProgress;
    std::optional<CandidateId> identified;
    Clock::time_point last_activity;

    std::mutex mutation;                        // held for the duration of one mutation
    mutable std::mutex snapshot_mutex;
    std::shared_ptr<const json> snapshot;
};

/// In-memory session store behind the HTTP API. Every public call returns
/// the HTTP status and JSON body it maps to; the HTTP layer is a thin shim.
///
///   POST /sessions                {mode, n, responder?}
///   POST /sessions/{id}/answer    {value: "yes"|"no"}
///   POST /sessions/{id}/question  {set:[..]} | {range:[lo,hi]} | {bit:i} | {question:"set:1,2"}
///   GET  /sessions/{id}
///
/// Errors are {code, message}.
class SessionService {
public:
    explicit SessionService(ServiceConfig config = {});

    ApiResponse create_session(const json& request);
    ApiResponse post_answer(const std::string& id, const json& request);
    ApiResponse post_question(const std::string& id, const json& request);
    ApiResponse get_session(const std::string& id);

    /// Routes a raw request and writes one event-log line.
    ApiResponse handle(const std::string& method, const std::string& path, const std::string& body);

    /// Marks idle sessions Expired; returns how many changed.
    std::size_t expire_idle();

    std::size_t session_count() const;
    const ServiceConfig& config() const { return config_; }

private:
    std::shared_ptr<Session> find(const std::string& id) const;
    std::string new_id();
    void advance_machine(Session& s);
    void refresh_snapshot(Session& s);
    bool expire_if_idle(Session& s, Clock::time_point now);
    void log_event(const std::string& method, const std::string& path, const json& request,
                   const ApiResponse& response);

    ServiceConfig config_;
    mutable std::shared_mutex sessions_mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::mutex id_mutex_;
    std::uint64_t id_state_;
    std::mutex log_mutex_;
    std::ofstream log_;
    std::uint64_t log_seq_ = 0;
};

/// Renders a machine question for a human: bit predicates in the search
/// phase, explicit real-candidate lists otherwise. Virtual members are only
/// counted.
json render_question(const Question& q, const GameState& state, const std::string& note);

/// FNV-1a over the membership bitmask of q on 1..total, as 16 hex digits.
std::string question_digest(const Question& q, std::uint64_t total);

json summary_json(const StateSummary& s);

/// Blocking HTTP server exposing a SessionService. Optionally serves static
/// files (a browser frontend) from `static_dir`.
class HttpServer {
public:
    HttpServer(SessionService& service, std::filesystem::path static_dir = {});
    ~HttpServer();

    /// Binds to host on `port` (0 picks a free port) and returns the bound port.
    int bind(const std::string& host, int port);
    /// Serves until stop(); call after bind().
    bool listen();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace liar::service
