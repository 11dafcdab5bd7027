#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "liar/bounds.hpp"
#include "liar/harness.hpp"
#include "liar/transcript.hpp"

using namespace liar;

TEST_CASE("SplitMix64 reference sequence") {
    SplitMix64 rng(0);
    CHECK(rng.next() == 0xE220A8397B1DCDAFull);
    CHECK(rng.next() == 0x6E789E6AA1B965F4ull);
    CHECK(rng.next() == 0x06C45D188009454Full);
}

TEST_CASE("SplitMix64::below") {
    SplitMix64 a(42), b(42);
    for (int i = 0; i < 1000; ++i) {
        auto v = a.below(7);
        REQUIRE(v < 7);
        REQUIRE(v == b.below(7));
    }
    CHECK(a.below(1) == 0);
    CHECK_THROWS_AS(a.below(0), GameError);
}

TEST_CASE("exhaustive verification") {
    auto two = verify_exhaustive(2);
    CHECK(two.cases_run == 8);
    CHECK(two.q_bound == 3);
    CHECK(two.ok());

    auto r = verify_exhaustive(17);
    CHECK(r.cases_run == 170);
    CHECK(r.q_bound == 9);
    CHECK(r.q_used_max <= 9);
    CHECK(r.halving_failures == 0);
    CHECK(r.ok());

    VerifyOptions tight;
    tight.case_budget = 100;
    CHECK_THROWS_AS(verify_exhaustive(17, tight), GameError);
}

TEST_CASE("sampled verification") {
    auto r = verify_sampled(1'000'000, 300, 1);
    CHECK(r.cases_run == 300);
    CHECK(r.q_used_max <= 25);
    CHECK(r.ok());

    CHECK_THROWS_AS(verify_sampled(10, 5, 1, CandidateId{11}), GameError);
    CHECK_THROWS_AS(verify_sampled(10, 5, 1, CandidateId{0}), GameError);

    // pinned secret with enough samples covers every lie position once
    auto pinned = verify_sampled(100, 1000, 1, CandidateId{37});
    CHECK(pinned.cases_run == theorem2_bound(100).q + 1);
    CHECK(pinned.ok());

    // asking for more than the case space runs the whole space
    auto all = verify_sampled(5, 10'000, 9);
    CHECK(all.cases_run == 5 * (theorem2_bound(5).q + 1));
}

TEST_CASE("sampled verification is deterministic across thread counts") {
    VerifyOptions one, three;
    three.threads = 3;
    auto a = verify_sampled(5000, 2000, 77, std::nullopt, one);
    auto b = verify_sampled(5000, 2000, 77, std::nullopt, three);
    CHECK(a.cases_run == b.cases_run);
    CHECK(a.q_used_max == b.q_used_max);
    CHECK(a.halving_checks == b.halving_checks);
    CHECK(format_report(a) == format_report(b));
}

TEST_CASE("failures carry a replayable transcript") {
    VerificationReport report;
    auto f = check_case(64, 9, 4u, 3, report);  // bound deliberately too small
    REQUIRE(f);
    CHECK(f->reason.find("used") == 0);
    auto state = replay(parse_transcript(f->transcript));
    CHECK(state.identified() == CandidateId{9});
    CHECK(state.contradictions(9) == 1);

    report.failures.push_back(*f);
    CHECK_FALSE(report.ok());
    CHECK(format_report(report).find("FAIL x=9 lie_at=4 reason=used") != std::string::npos);
}

TEST_CASE("adversary simulation") {
    auto win = simulate_adversary(2, 3);
    CHECK(win.questioner_won);

    // n(q+1) > 2^q: the questioner cannot finish
    for (auto [n, q] : {std::pair<std::uint64_t, unsigned>{4, 4}, {17, 7}, {64, 9}}) {
        REQUIRE_FALSE(volume_winnable(n, q));
        auto r = simulate_adversary(n, q);
        CHECK_FALSE(r.questioner_won);
        CHECK(r.real_survivors >= 2);
        CHECK_FALSE(r.saw_one_zero);
        CHECK_FALSE(r.saw_real_one_zero);
        CHECK(r.below_half == 0);
        CHECK(r.transcript.size() == q);
    }
}
