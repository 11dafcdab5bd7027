#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>

#include "liar/bounds.hpp"
#include "liar/game.hpp"
#include "liar/oracle.hpp"

using namespace liar;

namespace {

// Minimax over explicit candidate lists: every subset is a question.
struct BruteForce {
    std::map<std::pair<std::vector<int>, unsigned>, bool> memo;

    bool win(std::vector<int> counts, unsigned j) {
        counts.erase(std::remove_if(counts.begin(), counts.end(), [](int c) { return c >= 2; }), counts.end());
        std::sort(counts.begin(), counts.end());
        if (counts.size() <= 1) return true;
        if (j == 0) return false;
        auto key = std::make_pair(counts, j);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        bool result = false;
        const unsigned m = static_cast<unsigned>(counts.size());
        for (unsigned mask = 0; mask < (1u << m) && !result; ++mask) {
            auto yes = counts, no = counts;
            for (unsigned i = 0; i < m; ++i) ((mask >> i) & 1 ? no : yes)[i]++;
            result = win(yes, j - 1) && win(no, j - 1);
        }
        memo[key] = result;
        return result;
    }
};

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("small known values") {
    Oracle o;
    CHECK(o.winnable(1, 0, 0));
    CHECK(o.winnable(0, 1, 0));
    CHECK_FALSE(o.winnable(0, 2, 0));
    CHECK(o.winnable(1, 1, 2));
    CHECK(o.winnable(0, 2, 1));
    CHECK_FALSE(o.winnable(0, 3, 1));
    CHECK(o.winnable(2, 0, 3));
    CHECK_FALSE(o.winnable(2, 0, 2));
    CHECK_FALSE(o.winnable(3, 0, 4));
    CHECK(o.winnable(3, 0, 5));
    CHECK(o.q1(1) == 0);
    CHECK(o.q1(2) == 3);
    CHECK(o.q1(3) == 5);
}

TEST_CASE("agrees with brute force on explicit candidates") {
    Oracle o;
    BruteForce bf;
    for (unsigned a = 0; a <= 6; ++a)
        for (unsigned b = 0; a + b <= 6; ++b)
            for (unsigned j = 0; j <= 8; ++j) {
                std::vector<int> counts(a, 0);
                counts.insert(counts.end(), b, 1);
                INFO("a=" << a << " b=" << b << " j=" << j);
                REQUIRE(o.winnable(a, b, j) == bf.win(counts, j));
            }
}

TEST_CASE("matches Pelc for n <= 64") {
    Oracle o;
    for (std::uint64_t n = 1; n <= 64; ++n) REQUIRE(o.q1(n) == pelc_q1(n));
}

TEST_CASE("property: monotone in j, antitone in a and b, volume necessary") {
    Oracle o;
    for (unsigned a = 0; a <= 12; ++a)
        for (unsigned b = 0; b <= 20; ++b)
            for (unsigned j = 0; j <= 10; ++j) {
                const bool w = o.winnable(a, b, j);
                if (w) {
                    REQUIRE(o.winnable(a, b, j + 1));
                    if (a > 0) REQUIRE(o.winnable(a - 1, b, j));
                    if (b > 0) REQUIRE(o.winnable(a, b - 1, j));
                    REQUIRE(weight({a, b, j}) <= pow2(j));
                }
            }
}

TEST_CASE("limits") {
    Oracle o({16, 10});
    CHECK_THROWS_AS(o.winnable(10, 7, 5), GameError);
    CHECK_THROWS_AS(o.winnable(1, 1, 11), GameError);
    CHECK_THROWS_AS(o.q1(0), GameError);
    CHECK_THROWS_AS(Oracle({std::uint64_t{1} << 25, 10}), GameError);
}

TEST_CASE("memo save and load") {
    const auto path = temp_file("liar_oracle_test.memo");
    Oracle first;
    for (std::uint64_t n = 1; n <= 20; ++n) (void)first.q1(n);
    first.save(path);

    Oracle second;
    CHECK(second.load(path) == first.memo_size());
    CHECK(second.memo_size() == first.memo_size());
    for (std::uint64_t n = 1; n <= 20; ++n) CHECK(second.q1(n) == pelc_q1(n));
    CHECK(second.memo_size() == first.memo_size());

    // header layout
    std::ifstream in(path, std::ios::binary);
    char magic[8];
    in.read(magic, 8);
    CHECK(std::string(magic, 8) == "LIARMEMO");
    CHECK(std::filesystem::file_size(path) == 8 + 4 + 8 + 9 * first.memo_size());
    in.close();

    // truncated and foreign files
    std::filesystem::resize_file(path, 8 + 4 + 8 + 5);
    CHECK_THROWS_AS(Oracle().load(path), GameError);
    { std::ofstream(path, std::ios::binary) << "NOTAMEMO"; }
    CHECK_THROWS_AS(Oracle().load(path), GameError);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(Oracle().load(path), GameError);
}

TEST_CASE("oracle_table does not depend on thread count") {
    Oracle single, multi;
    auto a = oracle_table(single, 40, 1);
    auto b = oracle_table(multi, 40, 4);
    CHECK(a == b);
    REQUIRE(a.size() == 40);
    for (std::uint64_t n = 1; n <= 40; ++n) CHECK(a[n - 1] == pelc_q1(n));
}
