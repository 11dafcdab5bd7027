#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "liar/adversary.hpp"
#include "liar/bounds.hpp"
#include "liar/strategy.hpp"

using namespace liar;

namespace {

AnswerSource honest(CandidateId x, std::optional<unsigned> lie_at = std::nullopt) {
    return [=](const GameState&, const Question& q, unsigned i) {
        return honest_answer(HonestConfig{x, lie_at}, i, q);
    };
}

}  // namespace

TEST_CASE("make_plan") {
    auto plan = make_plan(1'000'000);
    CHECK(plan.ell == 20);
    CHECK(plan.q == 25);
    CHECK(plan.p() == 5);
    CHECK(plan.padded == (1u << 20));
    CHECK(std::holds_alternative<phase::BitSearch>(plan.phase));

    CHECK(make_plan(1).done());
    CHECK(make_plan(2).q == 3);
    CHECK_THROWS_AS(make_plan(0), GameError);
    CHECK_THROWS_AS(make_plan(kMaxCandidates + 1), GameError);
}

TEST_CASE("n = 1 needs no questions") {
    auto out = run_game(1, honest(1));
    CHECK(out.questions == 0);
    CHECK(out.identified == CandidateId{1});
}

TEST_CASE("bit questions") {
    auto plan = make_plan(5);  // padded to 8
    CHECK(bit_question(plan, 0).members(8) == std::vector<CandidateId>{2, 4, 6, 8});
    CHECK_THROWS_AS(bit_question(plan, 1), GameError);
    plan.phase = phase::BitSearch{2};
    CHECK(bit_question(plan, 2).members(8) == std::vector<CandidateId>{5, 6, 7, 8});
}

TEST_CASE("worked example: n = 10^6 first steps") {
    auto plan = make_plan(1'000'000);
    auto state = plan_state(plan);
    const CandidateId x = 777'777;
    for (unsigned i = 0; i < 20; ++i) {
        auto next = next_question(plan, state);
        REQUIRE(next);
        CHECK(next->note == "BIT " + std::to_string(i));
        auto ans = next->question.contains(x) ? Answer::Yes : Answer::No;
        state.apply(next->question, ans, next->note);
        on_answer(plan, state, ans);
    }
    CHECK(state.summary() == StateSummary{1, 20, 5});
    CHECK(std::holds_alternative<phase::PennyInit>(plan.phase));

    auto next = next_question(plan, state);  // pads first
    REQUIRE(next);
    REQUIRE(state.transcript().pads.size() == 1);
    CHECK(state.transcript().pads[0].count == 6);
    CHECK(state.summary() == StateSummary{1, 26, 5});
    CHECK(state.weight() == 32);
    CHECK(next->note == "HALV 5 11");
    CHECK(next->question.members(static_cast<CandidateId>(state.total())).size() == 12);

    // Yes: (1, 11) with weight 16
    state.apply(next->question, Answer::Yes, next->note);
    on_answer(plan, state, Answer::Yes);
    CHECK(state.summary() == StateSummary{1, 11, 4});
    CHECK(state.weight() == 16);

    next = next_question(plan, state);
    REQUIRE(next);
    CHECK(next->note == "HALV 4 4");
    CHECK(next->question.members(static_cast<CandidateId>(state.total())).size() == 5);
}

TEST_CASE("worked example: No branch enters penny search with 16 pennies") {
    auto plan = make_plan(1'000'000);
    auto state = plan_state(plan);
    for (unsigned i = 0; i < 20; ++i) {
        auto next = next_question(plan, state);
        auto ans = next->question.contains(1) ? Answer::Yes : Answer::No;
        state.apply(next->question, ans);
        on_answer(plan, state, ans);
    }
    auto next = next_question(plan, state);
    state.apply(next->question, Answer::No);
    on_answer(plan, state, Answer::No);
    CHECK(state.summary() == StateSummary{0, 16, 4});
    auto* search = std::get_if<phase::PennySearch>(&plan.phase);
    REQUIRE(search);
    CHECK(search->ranked.size() == 16);
    CHECK(search->steps == 4);
}

TEST_CASE("halving_set") {
    // (1, 4) with p = 3: y = (4 + 1 - 3) / 2 = 1
    auto s = GameState::from_counts(5, 5, {1, 1, 0, 1, 1}, 3);
    CHECK(halving_set(3, 4, s) == Question::set({1, 3}));
    CHECK_THROWS_AS(halving_set(3, 5, s), GameError);   // parity
    CHECK_THROWS_AS(halving_set(2, 4, s), GameError);   // p too small
    auto bad = GameState::from_counts(5, 5, {0, 0, 1, 1, 1}, 3);
    CHECK_THROWS_AS(halving_set(3, 3, bad), GameError);
}

TEST_CASE("penny search questions") {
    const std::vector<CandidateId> ranked{10, 20, 30, 40};
    CHECK(penny_search_question(ranked, 0) == Question::set({20, 40}));
    CHECK(penny_search_question(ranked, 1) == Question::set({30, 40}));
    CHECK_THROWS_AS(penny_search_question(ranked, 2), GameError);
    CHECK_THROWS_AS(penny_search_question({1, 2, 3}, 0), GameError);
}

TEST_CASE("endgame questions") {
    CHECK(endgame_question(GameState::from_counts(3, 3, {1, 2, 0}, 2)) == Question::set({3}));
    CHECK(endgame_question(GameState::from_counts(3, 3, {2, 1, 1}, 2)) == Question::set({2}));
    CHECK_FALSE(endgame_question(GameState::from_counts(3, 3, {2, 1, 2}, 2)).has_value());
    CHECK_THROWS_AS(endgame_question(GameState::from_counts(3, 3, {0, 0, 2}, 2)), GameError);
}

TEST_CASE("out-of-phase calls") {
    auto plan = make_plan(8);
    auto state = plan_state(plan);
    CHECK_THROWS_AS(pad_pennies(state, plan), GameError);
    plan.phase = phase::Done{};
    CHECK_THROWS_AS(on_answer(plan, state, Answer::Yes), GameError);
    CHECK_FALSE(next_question(plan, state).has_value());
}

TEST_CASE("exhaustive: every secret and lie position, n <= 48") {
    for (std::uint64_t n = 2; n <= 48; ++n) {
        const unsigned q = theorem2_bound(n).q;
        for (CandidateId x = 1; x <= n; ++x) {
            for (unsigned lie = 0; lie <= q; ++lie) {
                auto out = run_game(n, honest(x, lie ? std::optional<unsigned>(lie) : std::nullopt));
                REQUIRE(out.identified == x);
                REQUIRE(out.questions <= q);
                REQUIRE(out.halving_failures == 0);
                REQUIRE_FALSE(out.inconsistent);
            }
        }
    }
}

TEST_CASE("n = 10^6: every lie position for a few secrets") {
    for (CandidateId x : {CandidateId{1}, CandidateId{2}, CandidateId{524'288}, CandidateId{777'777},
                          CandidateId{1'000'000}}) {
        for (unsigned lie = 0; lie <= 25; ++lie) {
            auto out = run_game(1'000'000, honest(x, lie ? std::optional<unsigned>(lie) : std::nullopt));
            REQUIRE(out.identified == x);
            REQUIRE(out.questions <= 25);
            REQUIRE(out.halving_failures == 0);
        }
    }
}

TEST_CASE("property: identification is always consistent with at most one lie") {
    // Arbitrary (possibly multi-lie) responders: the strategy either names a
    // real candidate that fits all but at most one answer or flags the
    // responder.
    std::mt19937_64 rng(17);
    for (int game = 0; game < 2000; ++game) {
        const std::uint64_t n = 2 + rng() % 300;
        AnswerSource random = [&](const GameState&, const Question&, unsigned) {
            return rng() % 2 ? Answer::Yes : Answer::No;
        };
        auto out = run_game(n, random);
        REQUIRE(out.questions <= theorem2_bound(n).q);
        if (out.identified) {
            REQUIRE(*out.identified <= n);
            REQUIRE(out.state.contradictions(*out.identified) <= 1);
            REQUIRE_FALSE(out.inconsistent);
        } else {
            REQUIRE(out.inconsistent);
            REQUIRE(out.state.real_alive() == 0);
        }
    }
}

TEST_CASE("truncated runs stop at the budget") {
    RunOptions opts;
    opts.max_questions = 3;
    auto out = run_game(64, honest(5), opts);
    CHECK(out.questions == 3);
    CHECK_FALSE(out.identified);
    CHECK(out.state.remaining() == 0);
}
