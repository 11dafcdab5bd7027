#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "liar/bounds.hpp"
#include "liar/game.hpp"

using namespace liar;

namespace {

using u128 = unsigned __int128;

// Straight search with 128-bit arithmetic, no shortcuts.
unsigned ref_q1(std::uint64_t n) {
    for (unsigned q = 0;; ++q) {
        const u128 lhs = u128(n) * (q + 1);
        const u128 cap = u128(1) << q;
        if (n % 2 == 0 ? lhs <= cap : lhs + q <= cap + 1) return q;
    }
}

unsigned ref_theorem2(std::uint64_t n) {
    unsigned ell = 0;
    while ((u128(1) << ell) < n) ++ell;
    for (unsigned q = ell;; ++q)
        if ((u128(1) << ell) * (q + 1) <= (u128(1) << q)) return q;
}

}  // namespace

TEST_CASE("small n table") {
    const unsigned expected[] = {3, 5, 5, 6, 6, 6, 6, 7, 7, 7, 7, 7, 7, 7, 7, 8};
    for (std::uint64_t n = 2; n <= 17; ++n) CHECK(pelc_q1(n) == expected[n - 2]);
    CHECK(pelc_q1(1) == 0);
    CHECK(theorem2_bound(17).q == 9);
    CHECK(gap(17) == 1);
}

TEST_CASE("headline values") {
    CHECK(pelc_q1(1'000'000) == 25);
    const auto t = theorem2_bound(1'000'000);
    CHECK(t.q == 25);
    CHECK(t.ell == 20);
    CHECK(gap(1'000'000) == 0);
    CHECK(max_volume_n(24) == 671'088);
    CHECK(max_volume_n(25) == 1'290'555);
    CHECK_FALSE(volume_winnable(1'000'000, 24));
    CHECK(volume_winnable(1'000'000, 25));
    CHECK(theorem2_bound(1u << 20).q == 25);
}

TEST_CASE("theorem bound for powers of two") {
    // 2^ell (q+1) <= 2^q
    CHECK(theorem2_bound(2).q == 3);
    CHECK(theorem2_bound(4).q == 5);
    CHECK(theorem2_bound(8).q == 6);
    CHECK(theorem2_bound(16).q == 7);
    CHECK(theorem2_bound(1).q == 0);
    CHECK(theorem2_bound(1).ell == 0);
}

TEST_CASE("agreement with 128-bit reference") {
    for (std::uint64_t n = 1; n <= 5000; ++n) {
        REQUIRE(pelc_q1(n) == ref_q1(n));
        REQUIRE(theorem2_bound(n).q == ref_theorem2(n));
    }
    for (std::uint64_t n : {std::uint64_t{671'088}, std::uint64_t{671'089}, std::uint64_t{1'290'555},
                            std::uint64_t{1'290'556}, std::uint64_t{1} << 40, (std::uint64_t{1} << 40) + 1}) {
        CHECK(pelc_q1(n) == ref_q1(n));
        CHECK(theorem2_bound(n).q == ref_theorem2(n));
    }
}

TEST_CASE("property: minimality and monotonicity") {
    unsigned prev = 0;
    for (std::uint64_t n = 2; n <= 20000; ++n) {
        const unsigned q = pelc_q1(n);
        REQUIRE(pelc_condition(n, q));
        REQUIRE_FALSE(pelc_condition(n, q - 1));
        REQUIRE(q >= prev);
        prev = q;
        // the constructive budget is never below the optimum and never
        // below the volume bound
        const auto t = theorem2_bound(n);
        REQUIRE(t.q >= q);
        REQUIRE(volume_winnable(n, t.q));
        REQUIRE(gap(n) == static_cast<int>(t.q - q));
    }
}

TEST_CASE("property: odd inequality is stricter than even") {
    for (std::uint64_t n = 3; n <= 4001; n += 2)
        for (unsigned q = 0; q <= 30; ++q)
            if (pelc_condition(n, q)) REQUIRE(volume_winnable(n, q));
}

TEST_CASE("max_volume_n boundary") {
    for (unsigned j = 1; j <= 40; ++j) {
        const auto m = max_volume_n(j);
        CHECK(volume_winnable(m, j) == (m > 0));
        CHECK_FALSE(volume_winnable(m + 1, j));
    }
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(pelc_q1(0), GameError);
    CHECK_THROWS_AS(theorem2_bound(0), GameError);
    CHECK_THROWS_AS(gap(1), GameError);
    CHECK_THROWS_AS(max_volume_n(kMaxQuestions + 1), GameError);
    CHECK_THROWS_AS(volume_winnable(5, kMaxQuestions + 1), GameError);
}

TEST_CASE("bound_table format") {
    CHECK(bound_table(2, 4) ==
          "n,pelc_q1,theorem2_q,ell,gap\n"
          "2,3,3,1,0\n"
          "3,5,5,2,0\n"
          "4,5,5,2,0\n");
    CHECK(bound_table(17, 17, '\t') == "n\tpelc_q1\ttheorem2_q\tell\tgap\n17\t8\t9\t5\t1\n");
}
