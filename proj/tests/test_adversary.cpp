#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "liar/adversary.hpp"
#include "liar/bounds.hpp"

using namespace liar;

namespace {

Question random_set(std::mt19937_64& rng, std::uint64_t total) {
    std::vector<CandidateId> ids;
    for (CandidateId id = 1; id <= total; ++id)
        if (rng() % 2) ids.push_back(id);
    return Question::set(std::move(ids));
}

}  // namespace

TEST_CASE("honest answers") {
    const auto q = Question::set({2, 4});
    CHECK(honest_answer({2, std::nullopt}, 1, q) == Answer::Yes);
    CHECK(honest_answer({3, std::nullopt}, 1, q) == Answer::No);
    CHECK(honest_answer({2, 3}, 3, q) == Answer::No);
    CHECK(honest_answer({2, 3}, 2, q) == Answer::Yes);
}

TEST_CASE("adversary picks the heavier child") {
    auto s = initial_state(4, 3);
    auto d = adversarial_decision(s, Question::set({1}));
    // j = 3: parent 16; yes (1,3) -> 6, no (3,1) -> 10
    CHECK(d.answer == Answer::No);
    CHECK(d.parent_weight == 16);
    CHECK(d.chosen_weight == 10);
    CHECK_FALSE(d.forced_by_consistency);
    CHECK(adversarial_answer(s, Question::set({2, 3, 4})) == Answer::Yes);
}

TEST_CASE("ties go to the larger a, then to No") {
    // yes (1,0) and no (0,3), both weight 3 with j = 2
    auto s = GameState::from_counts(3, 3, {0, 1, 1}, 3);
    CHECK(adversarial_answer(s, Question::set({1})) == Answer::Yes);
    // fully symmetric split
    auto sym = initial_state(2, 3);
    CHECK(adversarial_answer(sym, Question::set({1})) == Answer::No);
}

TEST_CASE("only real secrets carry weight") {
    // 1..2 real, 3..4 padding; padded children are equal but the real
    // ones are (0,2) for Yes and (2,0) for No
    auto s = GameState::initial(2, 3, 4);
    auto d = adversarial_decision(s, Question::set({3, 4}));
    CHECK(d.answer == Answer::No);
    CHECK(d.chosen_weight == 6);

    s.add_virtual_pennies(5);
    CHECK(adversarial_answer(s, Question::set({5, 6, 7, 8, 9})) == Answer::No);
}

TEST_CASE("consistency keeps a real candidate alive") {
    // real secret 1 is a penny; 2 and 3 are ghosts
    auto s = GameState::from_counts(1, 3, {1, 0, 0}, 1);
    auto d = adversarial_decision(s, Question::set({1}));
    CHECK(d.answer == Answer::Yes);
    auto after = apply_answer(s, Question::set({1}), d.answer);
    CHECK(after.real_alive() == 1);
}

TEST_CASE("responder validation") {
    CHECK_THROWS_AS(Responder(HonestConfig{0, std::nullopt}, 5), GameError);
    CHECK_THROWS_AS(Responder(HonestConfig{6, std::nullopt}, 5), GameError);
    CHECK_THROWS_AS(Responder(HonestConfig{2, 0u}, 5), GameError);
    CHECK_NOTHROW(Responder(HonestConfig{5, 1u}, 5));
    CHECK_NOTHROW(Responder(WeightAdversaryConfig{}, 5));
}

TEST_CASE("property: the chosen child keeps at least half the real weight") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 5000; ++trial) {
        const std::uint64_t n = 1 + rng() % 100;
        const std::uint64_t padded = n + rng() % 30;
        std::vector<std::uint8_t> counts(padded + rng() % 10);
        for (auto& c : counts) c = static_cast<std::uint8_t>(rng() % 3);
        auto s = GameState::from_counts(n, padded, counts, 1 + static_cast<unsigned>(rng() % 15));
        auto q = random_set(rng, s.total());
        auto d = adversarial_decision(s, q);
        REQUIRE(2 * d.chosen_weight >= d.parent_weight);
        auto after = apply_answer(s, q, d.answer);
        REQUIRE(weight(after.real_summary()) == d.chosen_weight);
        if (s.real_alive() > 0) REQUIRE(after.real_alive() > 0);
    }
}

TEST_CASE("property: random questioners lose when the volume bound fails") {
    std::mt19937_64 rng(29);
    for (std::uint64_t n = 2; n <= 40; ++n) {
        unsigned q = 0;
        while (volume_winnable(n, q + 1) == false) ++q;  // largest losing q
        REQUIRE_FALSE(volume_winnable(n, q));
        for (int game = 0; game < 30; ++game) {
            Responder adv(WeightAdversaryConfig{}, n);
            auto s = initial_state(n, q);
            for (unsigned i = 1; i <= q; ++i) {
                auto question = random_set(rng, n);
                s.apply(question, adv.answer(s, question, i));
            }
            REQUIRE(s.real_alive() >= 2);
            REQUIRE(adv.below_half() == 0);
            REQUIRE(adv.forced() == 0);
        }
    }
}
