#include "liar/harness.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "liar/adversary.hpp"
#include "liar/bounds.hpp"
#include "liar/strategy.hpp"
#include "liar/transcript.hpp"

namespace liar {

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
    if (bound == 0) throw GameError(ErrorCode::InvalidArgument, "below(0)");
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    for (;;) {
        auto v = next();
        if (v < limit) return v % bound;
    }
}

std::optional<VerificationFailure> check_case(std::uint64_t n, CandidateId x,
                                              std::optional<unsigned> lie_at, unsigned q_bound,
                                              VerificationReport& report) {
    Responder responder(HonestConfig{x, lie_at}, n);
    auto out = run_game(n, responder.source());
    ++report.cases_run;
    report.q_used_max = std::max(report.q_used_max, out.questions);
    report.halving_checks += out.halving_checks;
    report.halving_failures += out.halving_failures;

    std::string reason;
    if (out.inconsistent)
        reason = "strategy reported an inconsistent responder";
    else if (!out.identified)
        reason = "game ended without identification";
    else if (*out.identified != x)
        reason = "identified " + std::to_string(*out.identified);
    else if (out.questions > q_bound)
        reason = "used " + std::to_string(out.questions) + " questions";
    else if (out.halving_failures)
        reason = "weight not halved in the halving phase";
    if (reason.empty()) return std::nullopt;
    return VerificationFailure{x, lie_at, reason, format_transcript(out.state.transcript())};
}

namespace {

struct Case {
    CandidateId x;
    std::optional<unsigned> lie_at;
};

// Runs cases in shards of consecutive indices and merges shard reports in
// index order, so output does not depend on the worker count.
VerificationReport run_cases(std::uint64_t n, const std::vector<Case>& cases, const VerifyOptions& opts) {
    const unsigned q_bound = theorem2_bound(n).q;
    constexpr std::size_t kShard = 256;
    const std::size_t shards = (cases.size() + kShard - 1) / kShard;
    std::vector<VerificationReport> parts(shards);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex mutex;
    std::atomic<std::uint64_t> finished{0};

    auto work = [&] {
        try {
            for (auto s = next++; s < shards; s = next++) {
                auto& part = parts[s];
                const auto end = std::min(cases.size(), (s + 1) * kShard);
                for (auto i = s * kShard; i < end; ++i)
                    if (auto f = check_case(n, cases[i].x, cases[i].lie_at, q_bound, part))
                        part.failures.push_back(std::move(*f));
                finished += end - s * kShard;
            }
        } catch (...) {
            std::lock_guard lock(mutex);
            if (!failure) failure = std::current_exception();
            next = shards;
        }
    };

    const unsigned threads = std::max(1u, opts.threads);
    if (threads == 1 && !opts.progress) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
        if (opts.progress) {
            while (finished < cases.size() && !failure) {
                opts.progress(finished, cases.size());
                std::this_thread::sleep_for(std::chrono::milliseconds(500));
            }
        }
    }
    if (failure) std::rethrow_exception(failure);
    if (opts.progress) opts.progress(cases.size(), cases.size());

    VerificationReport report;
    report.n = n;
    report.q_bound = q_bound;
    for (auto& part : parts) {
        report.cases_run += part.cases_run;
        report.q_used_max = std::max(report.q_used_max, part.q_used_max);
        report.halving_checks += part.halving_checks;
        report.halving_failures += part.halving_failures;
        for (auto& f : part.failures) report.failures.push_back(std::move(f));
    }
    return report;
}

std::vector<Case> all_cases(std::uint64_t n, unsigned q) {
    std::vector<Case> cases;
    cases.reserve(n * (q + 1));
    for (std::uint64_t x = 1; x <= n; ++x) {
        cases.push_back({static_cast<CandidateId>(x), std::nullopt});
        for (unsigned lie = 1; lie <= q; ++lie) cases.push_back({static_cast<CandidateId>(x), lie});
    }
    return cases;
}

}  // namespace

VerificationReport verify_exhaustive(std::uint64_t n, const VerifyOptions& opts) {
    const unsigned q = theorem2_bound(n).q;
    const auto total = checked_mul(n, q + 1);
    if (total > opts.case_budget)
        throw GameError(ErrorCode::LimitExceeded,
                        "exhaustive verification needs " + std::to_string(total) +
                            " cases, budget is " + std::to_string(opts.case_budget));
    return run_cases(n, all_cases(n, q), opts);
}

VerificationReport verify_sampled(std::uint64_t n, std::uint64_t samples, std::uint64_t seed,
                                  std::optional<CandidateId> forced_x, const VerifyOptions& opts) {
    const unsigned q = theorem2_bound(n).q;
    if (forced_x && (*forced_x < 1 || *forced_x > n))
        throw GameError(ErrorCode::InvalidArgument,
                        "sampled x must be in 1.." + std::to_string(n) + ", got " +
                            std::to_string(*forced_x));
    const std::uint64_t space = forced_x ? q + 1 : checked_mul(n, q + 1);
    if (samples >= space) {
        if (!forced_x) return run_cases(n, all_cases(n, q), opts);
        std::vector<Case> cases{{*forced_x, std::nullopt}};
        for (unsigned lie = 1; lie <= q; ++lie) cases.push_back({*forced_x, lie});
        return run_cases(n, cases, opts);
    }
    SplitMix64 rng(seed);
    std::vector<Case> cases;
    cases.reserve(samples);
    for (std::uint64_t i = 0; i < samples; ++i) {
        const auto x = forced_x ? *forced_x : static_cast<CandidateId>(1 + rng.below(n));
        const auto lie = static_cast<unsigned>(rng.below(q + 1));
        cases.push_back({x, lie == 0 ? std::nullopt : std::optional<unsigned>(lie)});
    }
    return run_cases(n, cases, opts);
}

AdversaryReport simulate_adversary(std::uint64_t n, unsigned q) {
    const auto natural = theorem2_bound(n).q;
    Responder responder(WeightAdversaryConfig{}, n);
    AdversaryReport report;
    report.n = n;
    report.q = q;

    auto one_zero = [](const StateSummary& s) { return s.a == 1 && s.b == 0; };
    auto observe = [&](const GameState& s) {
        report.saw_one_zero |= one_zero(s.summary());
        report.saw_real_one_zero |= one_zero(s.real_summary());
    };
    auto inner = responder.source();
    AnswerSource watched = [&](const GameState& s, const Question& question, unsigned index) {
        observe(s);
        return inner(s, question, index);
    };

    RunOptions opts;
    opts.max_questions = std::min(q, natural);
    opts.check_halving = false;
    auto out = run_game(n, watched, opts);
    observe(out.state);

    const auto& t = out.state.transcript();
    for (const auto& e : t.entries) report.saw_one_zero |= one_zero(e.summary_after);
    for (const auto& p : t.pads) report.saw_one_zero |= one_zero(p.summary_after);

    report.transcript = t;
    report.final_summary = out.state.summary();
    report.real_survivors = out.state.real_alive();
    report.identified = out.identified;
    report.questioner_won = out.identified.has_value();
    report.below_half = responder.below_half();
    report.forced = responder.forced();
    return report;
}

std::string format_report(const VerificationReport& r) {
    std::ostringstream out;
    out << "n=" << r.n << " q_bound=" << r.q_bound << " q_used_max=" << r.q_used_max
        << " cases=" << r.cases_run << " halving_checks=" << r.halving_checks
        << " halving_failures=" << r.halving_failures << " failures=" << r.failures.size() << '\n';
    for (const auto& f : r.failures) {
        out << "FAIL x=" << f.x << " lie_at=";
        if (f.lie_at) out << *f.lie_at;
        else out << "none";
        out << " reason=" << f.reason << '\n';
    }
    return out.str();
}

}  // namespace liar
