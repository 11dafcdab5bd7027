#include "liar/bounds.hpp"

#include <sstream>

#include "liar/game.hpp"

namespace liar {

namespace {

void require_n(std::uint64_t n) {
    if (n == 0) throw GameError(ErrorCode::InvalidArgument, "n must be at least 1");
}

template <class Pred>
unsigned least_q(Pred&& holds) {
    for (unsigned q = 0; q <= kMaxQuestions; ++q)
        if (holds(q)) return q;
    throw GameError(ErrorCode::Overflow,
                    "no q up to " + std::to_string(kMaxQuestions) + " satisfies the bound");
}

}  // namespace

bool volume_winnable(std::uint64_t n, unsigned q) {
    require_n(n);
    if (q > kMaxQuestions) throw GameError(ErrorCode::Overflow, "q above supported cap");
    return checked_mul(n, q + 1) <= pow2(q);
}

bool pelc_condition(std::uint64_t n, unsigned q) {
    require_n(n);
    if (q > kMaxQuestions) throw GameError(ErrorCode::Overflow, "q above supported cap");
    const auto lhs = checked_mul(n, q + 1);
    if (n % 2 == 0) return lhs <= pow2(q);
    // 2^q - q + 1 >= 2 for every q >= 0
    return lhs <= pow2(q) - q + 1;
}

unsigned pelc_q1(std::uint64_t n) {
    require_n(n);
    return least_q([n](unsigned q) { return pelc_condition(n, q); });
}

BoundResult pelc_bound(std::uint64_t n) { return {n, pelc_q1(n), 0, BoundKind::PelcExact}; }

BoundResult theorem2_bound(std::uint64_t n) {
    require_n(n);
    const unsigned ell = ceil_log2(n);
    const auto size = pow2(ell);
    const unsigned q = least_q([size](unsigned q) { return checked_mul(size, q + 1) <= pow2(q); });
    return {n, q, ell, BoundKind::Theorem2};
}

std::uint64_t max_volume_n(unsigned j) {
    if (j > kMaxQuestions) throw GameError(ErrorCode::Overflow, "j above supported cap");
    return pow2(j) / (j + 1);
}

int gap(std::uint64_t n) {
    if (n < 2) throw GameError(ErrorCode::InvalidArgument, "gap is defined for n >= 2");
    return static_cast<int>(theorem2_bound(n).q) - static_cast<int>(pelc_q1(n));
}

std::string bound_table(std::uint64_t from, std::uint64_t to, char delim) {
    require_n(from);
    std::ostringstream out;
    out << "n" << delim << "pelc_q1" << delim << "theorem2_q" << delim << "ell" << delim << "gap\n";
    for (auto n = from; n <= to; ++n) {
        auto t2 = theorem2_bound(n);
        auto p = pelc_q1(n);
        out << n << delim << p << delim << t2.q << delim << t2.ell << delim;
        if (n >= 2) out << gap(n);
        else out << 0;
        out << '\n';
    }
    return out.str();
}

}  // namespace liar
