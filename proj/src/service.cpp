#include "liar/service.hpp"

#include <cstdio>
#include <random>

#include "liar/bounds.hpp"
#include "liar/harness.hpp"
#include "liar/transcript.hpp"

namespace liar::service {

const char* to_string(Mode m) { return m == Mode::MachineAsks ? "machine_asks" : "human_asks"; }

const char* to_string(Status s) {
    switch (s) {
    case Status::InProgress: return "in_progress";
    case Status::Won: return "won";
    case Status::ResponderCaught: return "responder_caught";
    case Status::OutOfQuestions: return "out_of_questions";
    case Status::Expired: return "expired";
    }
    return "unknown";
}

namespace {

ApiResponse error(int status, const std::string& code, const std::string& message) {
    return {status, json{{"code", code}, {"message", message}}};
}

ApiResponse from_game_error(const GameError& e) {
    switch (e.code()) {
    case ErrorCode::LimitExceeded: return error(400, "limit_exceeded", e.what());
    case ErrorCode::UnknownCandidate: return error(400, "out_of_range", e.what());
    case ErrorCode::ParseError: return error(400, "malformed_question", e.what());
    default: return error(400, to_string(e.code()), e.what());
    }
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::uint64_t require_n(const json& request, std::uint64_t max_n) {
    if (!request.contains("n") || !request["n"].is_number_integer())
        throw GameError(ErrorCode::InvalidArgument, "n must be an integer");
    const auto n = request["n"].get<std::int64_t>();
    if (n < 1) throw GameError(ErrorCode::InvalidArgument, "n must be at least 1");
    if (static_cast<std::uint64_t>(n) > max_n)
        throw GameError(ErrorCode::LimitExceeded, "n above this server's cap " + std::to_string(max_n));
    return static_cast<std::uint64_t>(n);
}

ResponderConfig parse_responder(const json& request, std::uint64_t n) {
    if (!request.contains("responder")) return WeightAdversaryConfig{};
    const auto& r = request["responder"];
    const auto type = r.value("type", std::string("adversary"));
    if (type == "adversary") return WeightAdversaryConfig{};
    if (type != "honest") throw GameError(ErrorCode::InvalidArgument, "responder type must be honest or adversary");
    if (!r.contains("x") || !r["x"].is_number_integer())
        throw GameError(ErrorCode::InvalidArgument, "honest responder needs integer x");
    const auto x = r["x"].get<std::int64_t>();
    if (x < 1 || static_cast<std::uint64_t>(x) > n)
        throw GameError(ErrorCode::InvalidArgument, "x must be in 1.." + std::to_string(n));
    HonestConfig cfg{static_cast<CandidateId>(x), std::nullopt};
    if (r.contains("lie_at") && !r["lie_at"].is_null()) {
        if (!r["lie_at"].is_number_integer() || r["lie_at"].get<std::int64_t>() < 1)
            throw GameError(ErrorCode::InvalidArgument, "lie_at must be a positive integer");
        cfg.lie_at = r["lie_at"].get<unsigned>();
    }
    return cfg;
}

CandidateId json_id(const json& v, std::uint64_t n) {
    if (!v.is_number_integer()) throw GameError(ErrorCode::ParseError, "ids must be integers");
    const auto id = v.get<std::int64_t>();
    if (id < 1 || static_cast<std::uint64_t>(id) > n)
        throw GameError(ErrorCode::UnknownCandidate,
                        "id " + std::to_string(id) + " outside 1.." + std::to_string(n));
    return static_cast<CandidateId>(id);
}

Question parse_question(const json& request, std::uint64_t n) {
    const auto limit = static_cast<CandidateId>(n);
    Question q;
    if (request.contains("set")) {
        if (!request["set"].is_array()) throw GameError(ErrorCode::ParseError, "set must be an array");
        std::vector<CandidateId> ids;
        for (const auto& v : request["set"]) ids.push_back(json_id(v, n));
        q = Question::set(std::move(ids));
    } else if (request.contains("range")) {
        const auto& r = request["range"];
        if (!r.is_array() || r.size() != 2) throw GameError(ErrorCode::ParseError, "range must be [lo, hi]");
        q = Question::range(json_id(r[0], n), json_id(r[1], n));
    } else if (request.contains("bit")) {
        if (!request["bit"].is_number_integer() || request["bit"].get<std::int64_t>() < 0 ||
            request["bit"].get<std::int64_t>() >= 32)
            throw GameError(ErrorCode::ParseError, "bit must be an integer in 0..31");
        q = Question::bit(request["bit"].get<unsigned>(), limit);
    } else if (request.contains("question") && request["question"].is_string()) {
        q = Question::parse(request["question"].get<std::string>(), limit);
    } else {
        throw GameError(ErrorCode::ParseError, "question needs one of set, range, bit, question");
    }
    if (q.max_id() > n)
        throw GameError(ErrorCode::UnknownCandidate,
                        "question references ids beyond " + std::to_string(n));
    return q;
}

std::optional<Answer> parse_answer(const json& request) {
    if (!request.contains("value") || !request["value"].is_string()) return std::nullopt;
    auto v = request["value"].get<std::string>();
    for (auto& c : v) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (v == "yes" || v == "y") return Answer::Yes;
    if (v == "no" || v == "n") return Answer::No;
    return std::nullopt;
}

// Terminal status for a finished game: Won only with a real survivor.
void settle(Session& s) {
    if (s.state.real_alive() == 0) {
        s.status = Status::ResponderCaught;
        return;
    }
    if (s.state.is_won()) {
        auto who = s.state.survivor();
        if (who && s.state.is_real_secret(*who)) {
            s.status = Status::Won;
            s.identified = who;
        } else {
            s.status = Status::ResponderCaught;
        }
        return;
    }
    if (s.state.remaining() == 0) s.status = Status::OutOfQuestions;
}

json view(const Session& s) {
    json v{{"id", s.id},
           {"mode", to_string(s.mode)},
           {"n", s.n},
           {"budget", s.budget},
           {"status", to_string(s.status)},
           {"summary", summary_json(s.state.summary())},
           {"questions_asked", s.state.transcript().size()},
           {"questions_remaining", s.state.remaining()},
           {"virtual_pennies", s.state.virtual_count()},
           {"transcript", format_transcript(s.state.transcript())}};
    if (s.identified) v["identified"] = *s.identified;
    if (s.pending) v["question"] = render_question(s.pending->question, s.state, s.pending->note);
    if (s.mode == Mode::HumanAsks) v["target"] = s.budget;
    return v;
}

}  // namespace

json summary_json(const StateSummary& s) {
    json out{{"a", s.a}, {"b", s.b}, {"j", s.j}, {"weight", weight(s)}};
    if (s.j < 64) out["capacity"] = std::uint64_t{1} << s.j;
    return out;
}

std::string question_digest(const Question& q, std::uint64_t total) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    const std::size_t words = (total + 63) / 64;
    for (std::size_t w = 0; w < words; ++w) {
        auto m = q.word_mask(w);
        if (w + 1 == words && total % 64) m &= (std::uint64_t{1} << (total % 64)) - 1;
        for (int byte = 0; byte < 8; ++byte) {
            h ^= (m >> (8 * byte)) & 0xff;
            h *= 0x100000001b3ull;
        }
    }
    return hex64(h);
}

json render_question(const Question& q, const GameState& state, const std::string& note) {
    json out{{"canonical", q.to_string()}, {"digest", question_digest(q, state.total())},
             {"phase", note}};
    if (q.kind() == Question::Kind::Bit) {
        out["kind"] = "bit";
        out["bit"] = q.bit_index();
        out["text"] = "Write your number minus one in binary. Is bit " + std::to_string(q.bit_index()) +
                      " (counting from 0 at the lowest) a 1?";
        return out;
    }
    std::vector<CandidateId> real;
    std::uint64_t hidden = 0;
    for (auto id : q.members(static_cast<CandidateId>(state.total()))) {
        if (state.is_real_secret(id)) real.push_back(id);
        else ++hidden;
    }
    out["kind"] = "list";
    out["members"] = real;
    out["virtual_members"] = hidden;
    std::string text = "Is your number one of: ";
    for (std::size_t i = 0; i < real.size(); ++i) text += (i ? ", " : "") + std::to_string(real[i]);
    if (real.empty()) text = "Is your number in the empty set?";
    else text += "?";
    out["text"] = text;
    return out;
}

SessionService::SessionService(ServiceConfig config) : config_(std::move(config)) {
    std::random_device rd;
    id_state_ = (std::uint64_t{rd()} << 32) ^ rd();
    if (!config_.event_log.empty()) {
        log_.open(config_.event_log, std::ios::app);
        if (!log_) throw GameError(ErrorCode::InvalidArgument, "cannot open event log " + config_.event_log.string());
    }
}

std::string SessionService::new_id() {
    std::lock_guard lock(id_mutex_);
    SplitMix64 rng(id_state_);
    auto hi = rng.next(), lo = rng.next();
    id_state_ = rng.next();
    return hex64(hi) + hex64(lo);
}

std::size_t SessionService::session_count() const {
    std::shared_lock lock(sessions_mutex_);
    return sessions_.size();
}

std::shared_ptr<Session> SessionService::find(const std::string& id) const {
    std::shared_lock lock(sessions_mutex_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
}

void SessionService::refresh_snapshot(Session& s) {
    auto snap = std::make_shared<const json>(view(s));
    std::lock_guard lock(s.snapshot_mutex);
    s.snapshot = std::move(snap);
}

bool SessionService::expire_if_idle(Session& s, Clock::time_point now) {
    if (s.status != Status::InProgress || now - s.last_activity <= config_.idle_timeout) return false;
    s.status = Status::Expired;
    s.pending.reset();
    return true;
}

void SessionService::advance_machine(Session& s) {
    s.pending = next_question(*s.plan, s.state);
    if (!s.pending) settle(s);
}

ApiResponse SessionService::create_session(const json& request) {
    try {
        if (!request.is_object()) return error(400, "bad_request", "body must be a JSON object");
        const auto mode_name = request.value("mode", std::string("machine_asks"));
        Mode mode;
        if (mode_name == "machine_asks") mode = Mode::MachineAsks;
        else if (mode_name == "human_asks") mode = Mode::HumanAsks;
        else return error(400, "invalid_argument", "mode must be machine_asks or human_asks");
        const auto n = require_n(request, config_.max_n);

        auto s = std::make_shared<Session>();
        s->id = new_id();
        s->mode = mode;
        s->n = n;
        s->last_activity = config_.now();
        if (mode == Mode::MachineAsks) {
            s->plan = make_plan(n);
            s->budget = s->plan->q;
            s->state = plan_state(*s->plan);
            advance_machine(*s);
        } else {
            s->responder.emplace(parse_responder(request, n), n);
            s->budget = pelc_q1(n);
            s->state = GameState::initial(n, s->budget);
            settle(*s);
        }
        refresh_snapshot(*s);

        {
            std::unique_lock lock(sessions_mutex_);
            if (sessions_.size() >= config_.max_sessions)
                return error(503, "capacity_exceeded", "session store is full");
            sessions_.emplace(s->id, s);
        }
        json body{{"id", s->id}, {"mode", to_string(mode)}, {"budget", s->budget},
                  {"status", to_string(s->status)}, {"summary", summary_json(s->state.summary())}};
        if (s->pending) body["question"] = render_question(s->pending->question, s->state, s->pending->note);
        if (s->identified) body["identified"] = *s->identified;
        if (mode == Mode::HumanAsks) body["target"] = s->budget;
        return {201, body};
    } catch (const GameError& e) {
        return from_game_error(e);
    }
}

ApiResponse SessionService::post_answer(const std::string& id, const json& request) {
    auto s = find(id);
    if (!s) return error(404, "unknown_session", "no session " + id);
    std::unique_lock guard(s->mutation, std::try_to_lock);
    if (!guard.owns_lock()) return error(409, "conflict", "another request is mutating this session");
    const auto now = config_.now();
    if (expire_if_idle(*s, now)) refresh_snapshot(*s);
    if (s->mode != Mode::MachineAsks)
        return error(409, "wrong_mode", "answers are posted to machine_asks sessions");
    if (s->status != Status::InProgress)
        return error(409, "session_not_in_progress", std::string("session is ") + to_string(s->status));
    auto ans = parse_answer(request);
    if (!ans) return error(400, "bad_request", "value must be yes or no");

    try {
        auto asked = std::move(*s->pending);
        s->pending.reset();
        s->state.apply(asked.question, *ans, asked.note);
        on_answer(*s->plan, s->state, *ans);
        s->last_activity = now;
        if (s->state.real_alive() == 0)
            settle(*s);
        else
            advance_machine(*s);
    } catch (const GameError& e) {
        return error(500, to_string(e.code()), e.what());
    }
    refresh_snapshot(*s);

    json body{{"status", to_string(s->status)}, {"summary", summary_json(s->state.summary())},
              {"questions_asked", s->state.transcript().size()},
              {"questions_remaining", s->state.remaining()}};
    if (s->pending) body["question"] = render_question(s->pending->question, s->state, s->pending->note);
    if (s->identified) body["identified"] = *s->identified;
    return {200, body};
}

ApiResponse SessionService::post_question(const std::string& id, const json& request) {
    auto s = find(id);
    if (!s) return error(404, "unknown_session", "no session " + id);
    std::unique_lock guard(s->mutation, std::try_to_lock);
    if (!guard.owns_lock()) return error(409, "conflict", "another request is mutating this session");
    const auto now = config_.now();
    if (expire_if_idle(*s, now)) refresh_snapshot(*s);
    if (s->mode != Mode::HumanAsks)
        return error(409, "wrong_mode", "questions are posted to human_asks sessions");
    if (s->status != Status::InProgress)
        return error(409, "session_not_in_progress", std::string("session is ") + to_string(s->status));
    if (!request.is_object()) return error(400, "bad_request", "body must be a JSON object");

    Answer ans;
    std::uint64_t parent_weight;
    try {
        const auto q = parse_question(request, s->n);
        parent_weight = s->state.weight();
        ans = s->responder->answer(s->state, q, static_cast<unsigned>(s->state.transcript().size() + 1));
        s->state.apply(q, ans);
    } catch (const GameError& e) {
        return from_game_error(e);
    }
    s->last_activity = now;
    settle(*s);
    refresh_snapshot(*s);

    json body{{"answer", ans == Answer::Yes ? "yes" : "no"},
              {"summary", summary_json(s->state.summary())},
              {"parent_weight", parent_weight},
              {"status", to_string(s->status)},
              {"questions_asked", s->state.transcript().size()},
              {"questions_remaining", s->state.remaining()}};
    if (s->identified) body["identified"] = *s->identified;
    return {200, body};
}

ApiResponse SessionService::get_session(const std::string& id) {
    auto s = find(id);
    if (!s) return error(404, "unknown_session", "no session " + id);
    std::shared_ptr<const json> snap;
    {
        std::lock_guard lock(s->snapshot_mutex);
        snap = s->snapshot;
    }
    auto body = *snap;
    // Idle expiry is visible to readers without mutating the session.
    if (body["status"] == to_string(Status::InProgress) && s->status == Status::InProgress) {
        std::unique_lock guard(s->mutation, std::try_to_lock);
        if (guard.owns_lock() && s->status == Status::InProgress &&
            config_.now() - s->last_activity > config_.idle_timeout)
            body["status"] = to_string(Status::Expired);
    }
    return {200, body};
}

std::size_t SessionService::expire_idle() {
    std::vector<std::shared_ptr<Session>> all;
    {
        std::shared_lock lock(sessions_mutex_);
        for (auto& [id, s] : sessions_) all.push_back(s);
    }
    std::size_t changed = 0;
    const auto now = config_.now();
    for (auto& s : all) {
        std::unique_lock guard(s->mutation, std::try_to_lock);
        if (guard.owns_lock() && expire_if_idle(*s, now)) {
            refresh_snapshot(*s);
            ++changed;
        }
    }
    return changed;
}

void SessionService::log_event(const std::string& method, const std::string& path, const json& request,
                               const ApiResponse& response) {
    if (!log_.is_open()) return;
    std::lock_guard lock(log_mutex_);
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::system_clock::now().time_since_epoch())
                        .count();
    json line{{"seq", ++log_seq_}, {"time_ms", ms},       {"method", method},
              {"path", path},      {"request", request},  {"status", response.status},
              {"response", response.body}};
    log_ << line.dump() << '\n';
    log_.flush();
}

ApiResponse SessionService::handle(const std::string& method, const std::string& path,
                                   const std::string& body) {
    json request;
    ApiResponse response;
    bool parsed = true;
    if (!body.empty()) {
        request = json::parse(body, nullptr, false);
        if (request.is_discarded()) {
            parsed = false;
            request = body;
            response = error(400, "bad_json", "request body is not valid JSON");
        }
    }
    if (parsed) {
        constexpr std::string_view prefix = "/sessions";
        std::string_view p(path);
        if (!p.starts_with(prefix)) {
            response = error(404, "not_found", "no route " + path);
        } else {
            p.remove_prefix(prefix.size());
            if (p.empty() || p == "/") {
                response = method == "POST" ? create_session(request.is_null() ? json::object() : request)
                                            : error(405, "method_not_allowed", "use POST /sessions");
            } else {
                p.remove_prefix(1);
                auto slash = p.find('/');
                std::string id(p.substr(0, slash));
                std::string_view action = slash == std::string_view::npos ? "" : p.substr(slash + 1);
                if (action.empty() && method == "GET")
                    response = get_session(id);
                else if (action == "answer" && method == "POST")
                    response = post_answer(id, request);
                else if (action == "question" && method == "POST")
                    response = post_question(id, request);
                else
                    response = error(404, "not_found", "no route " + method + " " + path);
            }
        }
    }
    log_event(method, path, request, response);
    return response;
}

}  // namespace liar::service
