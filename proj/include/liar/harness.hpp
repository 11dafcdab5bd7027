#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "liar/game.hpp"

namespace liar {

/// SplitMix64. The sequence for a seed is part of the report format:
///   state += 0x9E3779B97F4A7C15
///   z = state; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB; return z ^ (z >> 31)
/// below(bound) uses rejection sampling on the top of the 64-bit range.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    std::uint64_t below(std::uint64_t bound);

private:
    std::uint64_t state_;
};

struct VerificationFailure {
    CandidateId x = 0;
    std::optional<unsigned> lie_at;
    std::string reason;
    std::string transcript;  // canonical transcript text, replayable
};

struct VerificationReport {
    std::uint64_t n = 0;
    unsigned q_bound = 0;
    unsigned q_used_max = 0;
    std::uint64_t cases_run = 0;
    std::uint64_t halving_checks = 0;
    std::uint64_t halving_failures = 0;
    std::vector<VerificationFailure> failures;

    bool ok() const { return failures.empty() && q_used_max <= q_bound && halving_failures == 0; }
};

struct VerifyOptions {
    /// Refuse exhaustive runs with more cases than this.
    std::uint64_t case_budget = 5'000'000;
    unsigned threads = 1;
    /// Called with the number of finished cases, from the merging thread.
    std::function<void(std::uint64_t done, std::uint64_t total)> progress;
};

/// Runs the strategy against the honest responder for one (x, lie_at) pair.
/// Returns the failure if the game did not identify x within the bound.
std::optional<VerificationFailure> check_case(std::uint64_t n, CandidateId x,
                                              std::optional<unsigned> lie_at, unsigned q_bound,
                                              VerificationReport& report);

/// Every x in 1..n and lie_at in {none, 1..q}: n(q+1) cases.
VerificationReport verify_exhaustive(std::uint64_t n, const VerifyOptions& opts = {});

/// `samples` seeded (x, lie_at) draws. When samples >= n(q+1) the whole case
/// space is run instead. `forced_x` pins the secret (must be <= n).
VerificationReport verify_sampled(std::uint64_t n, std::uint64_t samples, std::uint64_t seed,
                                  std::optional<CandidateId> forced_x = std::nullopt,
                                  const VerifyOptions& opts = {});

struct AdversaryReport {
    std::uint64_t n = 0;
    unsigned q = 0;
    Transcript transcript;
    StateSummary final_summary;
    std::uint64_t real_survivors = 0;   // candidates in 1..n with <= 1 contradiction
    bool questioner_won = false;
    std::optional<CandidateId> identified;
    bool saw_one_zero = false;          // summary (1,0) occurred at some point
    bool saw_real_one_zero = false;     // same, restricted to real secrets
    std::uint64_t below_half = 0;       // adversary picks under ceil(parent/2)
    std::uint64_t forced = 0;           // picks forced by the consistency rule
};

/// The strategy, truncated to q questions when q is below its budget,
/// against the weight adversary.
AdversaryReport simulate_adversary(std::uint64_t n, unsigned q);

std::string format_report(const VerificationReport& r);

}  // namespace liar
