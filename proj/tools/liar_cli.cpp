// liar: bounds, oracle, verification, adversary simulation and the session
// server for the one-lie liar game.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "liar/adversary.hpp"
#include "liar/bounds.hpp"
#include "liar/harness.hpp"
#include "liar/oracle.hpp"
#include "liar/service.hpp"
#include "liar/strategy.hpp"
#include "liar/transcript.hpp"

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& text) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::trunc);
    out << text;
}

std::string lie_label(const std::optional<unsigned>& lie) { return lie ? std::to_string(*lie) : "none"; }

int cmd_bound(std::uint64_t n) {
    const auto t2 = liar::theorem2_bound(n);
    const auto pelc = liar::pelc_q1(n);
    std::cout << "n=" << n << " pelc_q1=" << pelc << " theorem2_q=" << t2.q << " ell=" << t2.ell
              << " padded=" << liar::pow2(t2.ell);
    if (n >= 2) std::cout << " gap=" << liar::gap(n);
    std::cout << '\n';
    // Volume thresholds around the strategy's budget: n > max_volume_n(q-1)
    // means q-1 questions cannot suffice.
    if (t2.q >= 1)
        std::cout << "max_n(" << t2.q - 1 << " questions)=" << liar::max_volume_n(t2.q - 1) << '\n';
    std::cout << "max_n(" << t2.q << " questions)=" << liar::max_volume_n(t2.q) << '\n';
    return 0;
}

int cmd_oracle(std::uint64_t n_max, unsigned j_max, const std::string& memo, unsigned threads) {
    liar::Oracle oracle({std::max<std::uint64_t>(n_max, 2), j_max});
    if (!memo.empty() && fs::exists(memo)) oracle.load(memo);
    const auto table = liar::oracle_table(oracle, n_max, threads);
    int bad = 0;
    std::cout << "n,oracle_q1,pelc_q1,match\n";
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        const auto p = liar::pelc_q1(n);
        const bool match = table[n - 1] == p;
        bad += !match;
        std::cout << n << ',' << table[n - 1] << ',' << p << ',' << (match ? "yes" : "NO") << '\n';
    }
    if (!memo.empty()) oracle.save(memo);
    std::cerr << (bad ? "MISMATCH" : "all match") << " (memo entries: " << oracle.memo_size() << ")\n";
    return bad ? 1 : 0;
}

int cmd_verify(std::uint64_t n, bool full, std::optional<std::uint64_t> samples, std::uint64_t seed,
               std::optional<liar::CandidateId> x, unsigned threads, std::uint64_t budget,
               const std::string& dir) {
    liar::VerifyOptions opts;
    opts.threads = threads;
    opts.case_budget = full ? ~std::uint64_t{0} : budget;
    if (full)
        opts.progress = [](std::uint64_t done, std::uint64_t total) {
            std::cerr << "progress " << done << "/" << total << '\n';
        };
    auto report = samples ? liar::verify_sampled(n, *samples, seed, x, opts)
                          : liar::verify_exhaustive(n, opts);
    std::cout << liar::format_report(report);
    if (!dir.empty())
        for (const auto& f : report.failures)
            write_file(fs::path(dir) / ("fail_x" + std::to_string(f.x) + "_lie" + lie_label(f.lie_at) + ".txt"),
                       f.transcript);
    return report.ok() ? 0 : 1;
}

int cmd_adversary(std::uint64_t n, unsigned q, const std::string& dir) {
    const auto r = liar::simulate_adversary(n, q);
    const bool volume = liar::volume_winnable(n, q);
    const unsigned budget = liar::theorem2_bound(n).q;
    std::cout << "n=" << n << " q=" << q << " volume_winnable=" << (volume ? "yes" : "no")
              << " final=(" << r.final_summary.a << "," << r.final_summary.b << ") j=" << r.final_summary.j
              << " real_survivors=" << r.real_survivors
              << " questioner_won=" << (r.questioner_won ? "yes" : "no");
    if (r.identified) std::cout << " identified=" << *r.identified;
    std::cout << " saw_(1,0)=" << (r.saw_one_zero ? "yes" : "no")
              << " saw_real_(1,0)=" << (r.saw_real_one_zero ? "yes" : "no") << " below_half=" << r.below_half
              << " forced=" << r.forced << '\n';
    if (!dir.empty())
        write_file(fs::path(dir) / ("adversary_n" + std::to_string(n) + "_q" + std::to_string(q) + ".txt"),
                   liar::format_transcript(r.transcript));

    bool ok = true;
    if (!volume) ok = !r.questioner_won && r.real_survivors >= 2 && !r.saw_one_zero && !r.saw_real_one_zero;
    else if (q >= budget) ok = r.questioner_won;
    std::cout << (ok ? "PASS" : "FAIL") << '\n';
    return ok ? 0 : 1;
}

int cmd_trace(std::uint64_t n, liar::CandidateId x, std::optional<unsigned> lie_at) {
    liar::Responder responder(liar::HonestConfig{x, lie_at}, n);
    auto out = liar::run_game(n, responder.source());
    std::cout << liar::format_transcript(out.state.transcript());
    std::cerr << "questions=" << out.questions << " identified="
              << (out.identified ? std::to_string(*out.identified) : "none") << '\n';
    return out.identified == x ? 0 : 1;
}

int cmd_play(std::uint64_t n) {
    liar::service::SessionService svc;
    auto created = svc.create_session({{"mode", "machine_asks"}, {"n", n}});
    if (created.status != 201) {
        std::cerr << created.body.dump() << '\n';
        return 1;
    }
    const auto id = created.body["id"].get<std::string>();
    std::cout << "Think of a number in 1.." << n << ". You may lie once. I need at most "
              << created.body["budget"] << " questions.\n";
    auto body = created.body;
    while (body["status"] == "in_progress") {
        const auto& q = body["question"];
        std::cout << q["text"].get<std::string>() << " [y/n] " << std::flush;
        std::string line;
        if (!std::getline(std::cin, line)) return 1;
        if (line != "y" && line != "n" && line != "yes" && line != "no") continue;
        auto res = svc.post_answer(id, {{"value", line}});
        if (res.status != 200) {
            std::cerr << res.body.dump() << '\n';
            return 1;
        }
        body = res.body;
        const auto& s = body["summary"];
        std::cout << "  state (" << s["a"] << "," << s["b"] << ") weight " << s["weight"] << " / "
                  << s["capacity"] << '\n';
    }
    if (body["status"] == "won")
        std::cout << "Your number is " << body["identified"] << " (" << body["questions_asked"]
                  << " questions).\n";
    else
        std::cout << "Game over: " << body["status"].get<std::string>() << '\n';
    return 0;
}


int cmd_serve(const std::string& host, int port, const std::string& log, std::uint64_t max_n,
              unsigned idle, const std::string& static_dir) {
    liar::service::ServiceConfig cfg;
    cfg.max_n = max_n;
    cfg.idle_timeout = std::chrono::seconds(idle);
    cfg.event_log = log;
    liar::service::SessionService svc(cfg);
    liar::service::HttpServer server(svc, static_dir);
    const int bound = server.bind(host, port);
    if (bound < 0) {
        std::cerr << "cannot bind " << host << ":" << port << '\n';
        return 1;
    }
    std::cerr << "listening on http://" << host << ":" << bound << '\n';
    std::jthread sweeper([&svc](std::stop_token stop) {
        while (!stop.stop_requested()) {
            for (int i = 0; i < 50 && !stop.stop_requested(); ++i)
                std::this_thread::sleep_for(std::chrono::milliseconds(100));
            svc.expire_idle();
        }
    });
    return server.listen() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"One-lie liar game: bounds, strategy verification, adversary and session server"};
    app.require_subcommand(1);

    std::uint64_t n = 0;
    auto* q1 = app.add_subcommand("q1", "Pelc's exact q1(n)");
    q1->add_option("n", n)->required()->check(CLI::PositiveNumber);

    auto* bound = app.add_subcommand("bound", "Constructive strategy budget and volume thresholds");
    bound->add_option("n", n)->required()->check(CLI::PositiveNumber);

    std::uint64_t from = 1, to = 64;
    char delim = ',';
    auto* table = app.add_subcommand("table", "Bound table: n, pelc_q1, theorem2_q, ell, gap");
    table->add_option("--from", from)->check(CLI::PositiveNumber);
    table->add_option("--to", to)->check(CLI::PositiveNumber);
    table->add_option("--delim", delim);

    std::uint64_t n_max = 64;
    unsigned j_max = 24, threads = 1;
    std::string memo;
    auto* oracle = app.add_subcommand("oracle", "Brute-force q1(n) and comparison with Pelc's formula");
    oracle->add_option("--n-max", n_max)->check(CLI::PositiveNumber);
    oracle->add_option("--j-max", j_max);
    oracle->add_option("--memo", memo, "memo cache file")->envname("LIAR_ORACLE_MEMO");
    oracle->add_option("--threads", threads);

    bool full = false;
    std::optional<std::uint64_t> samples;
    std::uint64_t seed = 1, budget = 5'000'000;
    std::optional<liar::CandidateId> forced_x;
    std::string dir;
    auto* verify = app.add_subcommand("verify", "Run the strategy against every (x, lie) case or a seeded sample");
    verify->add_option("--n", n)->required()->check(CLI::PositiveNumber);
    auto* full_flag = verify->add_flag("--full", full, "exhaustive regardless of the case budget");
    auto* samples_opt = verify->add_option("--samples", samples);
    verify->add_option("--seed", seed);
    verify->add_option("--x", forced_x, "pin the secret in sampled runs");
    verify->add_option("--threads", threads);
    verify->add_option("--budget", budget, "maximum exhaustive case count");
    verify->add_option("--transcripts", dir, "directory for failing transcripts");
    full_flag->excludes(samples_opt);

    unsigned q = 0;
    auto* adversary = app.add_subcommand("adversary", "Strategy (truncated to q) against the weight adversary");
    adversary->add_option("--n", n)->required()->check(CLI::PositiveNumber);
    adversary->add_option("--q", q)->required();
    adversary->add_option("--transcripts", dir);

    liar::CandidateId x = 1;
    std::optional<unsigned> lie_at;
    auto* trace = app.add_subcommand("trace", "Print the strategy trace for one honest game");
    trace->add_option("--n", n)->required()->check(CLI::PositiveNumber);
    trace->add_option("--x", x)->required();
    trace->add_option("--lie-at", lie_at);

    auto* play = app.add_subcommand("play", "Answer the machine's questions in the terminal");
    play->add_option("--n", n)->required()->check(CLI::PositiveNumber);

    std::string host = "127.0.0.1", log, static_dir;
    int port = 8080;
    std::uint64_t max_n = std::uint64_t{1} << 20;
    unsigned idle = 3600;
    auto* serve = app.add_subcommand("serve", "HTTP JSON session service");
    serve->add_option("--port", port);
    serve->add_option("--host", host);
    serve->add_option("--event-log", log);
    serve->add_option("--max-n", max_n);
    serve->add_option("--idle-timeout", idle, "seconds");
    serve->add_option("--static", static_dir, "serve a frontend from this directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*q1) {
            std::cout << liar::pelc_q1(n) << '\n';
            return 0;
        }
        if (*bound) return cmd_bound(n);
        if (*table) {
            std::cout << liar::bound_table(from, to, delim);
            return 0;
        }
        if (*oracle) return cmd_oracle(n_max, j_max, memo, threads);
        if (*verify) return cmd_verify(n, full, samples, seed, forced_x, threads, budget, dir);
        if (*adversary) return cmd_adversary(n, q, dir);
        if (*trace) return cmd_trace(n, x, lie_at);
        if (*play) return cmd_play(n);
        if (*serve) return cmd_serve(host, port, log, max_n, idle, static_dir);
    } catch (const liar::GameError& e) {
        std::cerr << "error (" << liar::to_string(e.code()) << "): " << e.what() << '\n';
        return 2;
    }
    return 0;
}
