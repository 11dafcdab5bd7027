#include "liar/game.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <sstream>

namespace liar {

const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::Overflow: return "overflow";
    case ErrorCode::NoQuestionsRemaining: return "no_questions_remaining";
    case ErrorCode::UnknownCandidate: return "unknown_candidate";
    case ErrorCode::InconsistentResponder: return "inconsistent_responder";
    case ErrorCode::OutOfPhase: return "out_of_phase";
    case ErrorCode::LogicError: return "logic_error";
    case ErrorCode::LimitExceeded: return "limit_exceeded";
    case ErrorCode::ParseError: return "parse_error";
    }
    return "unknown";
}

std::uint64_t checked_add(std::uint64_t x, std::uint64_t y) {
    std::uint64_t out;
    if (__builtin_add_overflow(x, y, &out))
        throw GameError(ErrorCode::Overflow, "64-bit addition overflow");
    return out;
}

std::uint64_t checked_mul(std::uint64_t x, std::uint64_t y) {
    std::uint64_t out;
    if (__builtin_mul_overflow(x, y, &out))
        throw GameError(ErrorCode::Overflow, "64-bit multiplication overflow");
    return out;
}

std::uint64_t pow2(unsigned exponent) {
    if (exponent >= 64)
        throw GameError(ErrorCode::Overflow, "2^" + std::to_string(exponent) + " exceeds 64 bits");
    return std::uint64_t{1} << exponent;
}

unsigned ceil_log2(std::uint64_t n) {
    if (n <= 1) return 0;
    return static_cast<unsigned>(std::bit_width(n - 1));
}

std::uint64_t weight(const StateSummary& s) {
    return checked_add(checked_mul(std::uint64_t{s.j} + 1, s.a), s.b);
}

// ---------------------------------------------------------------- Question

namespace {

constexpr std::uint64_t kAll = ~std::uint64_t{0};

// Low `count` bits set.
std::uint64_t low_bits(std::int64_t count) {
    if (count <= 0) return 0;
    if (count >= 64) return kAll;
    return (std::uint64_t{1} << count) - 1;
}

// Bits k of a word for which bit `i` (< 6) of k is set.
constexpr std::uint64_t kBitPattern[6] = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull,
};

std::uint64_t parse_u64(std::string_view s) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw GameError(ErrorCode::ParseError, "not a number: '" + std::string(s) + "'");
    return v;
}

CandidateId parse_id(std::string_view s) {
    auto v = parse_u64(s);
    if (v == 0 || v > 0xFFFFFFFFull)
        throw GameError(ErrorCode::ParseError, "candidate id out of range: " + std::string(s));
    return static_cast<CandidateId>(v);
}

}  // namespace

Question Question::set(std::vector<CandidateId> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (!ids.empty() && ids.front() == 0)
        throw GameError(ErrorCode::UnknownCandidate, "candidate ids start at 1");
    Question q;
    q.kind_ = Kind::Set;
    q.ids_ = std::move(ids);
    return q;
}

Question Question::bit(unsigned bit, CandidateId limit) {
    if (bit >= 32) throw GameError(ErrorCode::InvalidArgument, "bit index must be < 32");
    Question q;
    q.kind_ = Kind::Bit;
    q.bit_ = bit;
    q.hi_ = limit;
    return q;
}

Question Question::range(CandidateId lo, CandidateId hi) {
    if (lo == 0) throw GameError(ErrorCode::UnknownCandidate, "candidate ids start at 1");
    if (hi < lo) return set({});  // canonical empty question
    Question q;
    q.kind_ = Kind::Range;
    q.lo_ = lo;
    q.hi_ = hi;
    return q;
}

bool Question::contains(CandidateId id) const {
    switch (kind_) {
    case Kind::Set: return std::binary_search(ids_.begin(), ids_.end(), id);
    case Kind::Bit: return id >= 1 && id <= hi_ && (((id - 1) >> bit_) & 1u);
    case Kind::Range: return id >= lo_ && id <= hi_;
    }
    return false;
}

std::uint64_t Question::word_mask(std::size_t word) const {
    const std::uint64_t first = std::uint64_t{word} * 64 + 1;  // id of bit 0
    switch (kind_) {
    case Kind::Bit: {
        std::uint64_t m;
        if (bit_ < 6)
            m = kBitPattern[bit_];
        else
            m = ((word >> (bit_ - 6)) & 1u) ? kAll : 0;
        return m & low_bits(static_cast<std::int64_t>(hi_) - static_cast<std::int64_t>(first) + 1);
    }
    case Kind::Range: {
        if (hi_ < lo_) return 0;
        auto upto = low_bits(static_cast<std::int64_t>(hi_) - static_cast<std::int64_t>(first) + 1);
        auto below = low_bits(static_cast<std::int64_t>(lo_) - static_cast<std::int64_t>(first));
        return upto & ~below;
    }
    case Kind::Set: {
        std::uint64_t m = 0;
        auto it = std::lower_bound(ids_.begin(), ids_.end(), first);
        for (; it != ids_.end() && *it < first + 64; ++it) m |= std::uint64_t{1} << (*it - first);
        return m;
    }
    }
    return 0;
}

CandidateId Question::max_id() const {
    switch (kind_) {
    case Kind::Set: return ids_.empty() ? 0 : ids_.back();
    case Kind::Bit: return hi_;
    case Kind::Range: return hi_ < lo_ ? 0 : hi_;
    }
    return 0;
}

std::vector<CandidateId> Question::members(CandidateId limit) const {
    std::vector<CandidateId> out;
    if (kind_ == Kind::Set) {
        for (auto id : ids_)
            if (id <= limit) out.push_back(id);
        return out;
    }
    CandidateId top = std::min(limit, max_id());
    for (CandidateId id = 1; id <= top && id != 0; ++id)
        if (contains(id)) out.push_back(id);
    return out;
}

std::string Question::to_string() const {
    switch (kind_) {
    case Kind::Bit: return "bit:" + std::to_string(bit_);
    case Kind::Range: return "range:" + std::to_string(lo_) + "-" + std::to_string(hi_);
    case Kind::Set: {
        std::string s = "set:";
        for (std::size_t i = 0; i < ids_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(ids_[i]);
        }
        return s;
    }
    }
    return {};
}

Question Question::parse(const std::string& text, CandidateId bit_limit) {
    std::string_view t(text);
    if (t.starts_with("bit:")) {
        auto b = parse_u64(t.substr(4));
        if (b >= 32) throw GameError(ErrorCode::ParseError, "bit index must be < 32");
        return bit(static_cast<unsigned>(b), bit_limit);
    }
    if (t.starts_with("range:")) {
        auto body = t.substr(6);
        auto dash = body.find('-');
        if (dash == std::string_view::npos)
            throw GameError(ErrorCode::ParseError, "range needs lo-hi: " + text);
        return range(parse_id(body.substr(0, dash)), parse_id(body.substr(dash + 1)));
    }
    if (t.starts_with("set:")) {
        auto body = t.substr(4);
        std::vector<CandidateId> ids;
        while (!body.empty()) {
            auto comma = body.find(',');
            ids.push_back(parse_id(body.substr(0, comma)));
            if (comma == std::string_view::npos) break;
            body.remove_prefix(comma + 1);
        }
        return set(std::move(ids));
    }
    throw GameError(ErrorCode::ParseError, "unrecognized question: '" + text + "'");
}

// --------------------------------------------------------------- GameState

GameState GameState::initial(std::uint64_t n, unsigned q) { return initial(n, q, n); }

GameState GameState::initial(std::uint64_t n, unsigned q, std::uint64_t padded) {
    if (n == 0) throw GameError(ErrorCode::InvalidArgument, "n must be at least 1");
    if (padded < n) throw GameError(ErrorCode::InvalidArgument, "padded size below n");
    if (padded > kMaxCandidates)
        throw GameError(ErrorCode::LimitExceeded, "search space too large: " + std::to_string(padded));
    if (q > kMaxQuestions)
        throw GameError(ErrorCode::LimitExceeded, "question budget above " + std::to_string(kMaxQuestions));

    GameState s;
    s.n_ = n;
    s.padded_ = padded;
    s.total_ = padded;
    s.j_ = q;
    const std::size_t words = (padded + 63) / 64;
    s.zero_.assign(words, kAll);
    s.one_.assign(words, 0);
    s.zero_.back() = low_bits(static_cast<std::int64_t>(padded - (words - 1) * 64));
    s.active_.resize(words);
    for (std::size_t w = 0; w < words; ++w) s.active_[w] = static_cast<std::uint32_t>(w);
    s.a_ = padded;
    s.b_ = 0;
    s.real_a_ = n;
    s.transcript_.n = n;
    s.transcript_.padded = padded;
    s.transcript_.q = q;
    return s;
}

GameState GameState::from_counts(std::uint64_t n, std::uint64_t padded,
                                 const std::vector<std::uint8_t>& counts, unsigned j) {
    if (padded < n || counts.size() < padded)
        throw GameError(ErrorCode::InvalidArgument, "from_counts: need n <= padded <= counts.size()");
    if (counts.size() > kMaxCandidates)
        throw GameError(ErrorCode::LimitExceeded, "search space too large");
    GameState s;
    s.n_ = n;
    s.padded_ = padded;
    s.total_ = counts.size();
    s.j_ = j;
    const std::size_t words = (counts.size() + 63) / 64;
    s.zero_.assign(words, 0);
    s.one_.assign(words, 0);
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] == 0) s.zero_[i / 64] |= std::uint64_t{1} << (i % 64);
        if (counts[i] == 1) s.one_[i / 64] |= std::uint64_t{1} << (i % 64);
    }
    for (std::size_t w = 0; w < words; ++w)
        if (s.zero_[w] | s.one_[w]) s.active_.push_back(static_cast<std::uint32_t>(w));
    s.recount();
    s.transcript_.n = n;
    s.transcript_.padded = padded;
    s.transcript_.q = j;
    return s;
}

void GameState::recount() {
    a_ = b_ = real_a_ = real_b_ = 0;
    for (auto w : active_) {
        a_ += std::popcount(zero_[w]);
        b_ += std::popcount(one_[w]);
        auto real = low_bits(static_cast<std::int64_t>(n_) - static_cast<std::int64_t>(w) * 64);
        real_a_ += std::popcount(zero_[w] & real);
        real_b_ += std::popcount(one_[w] & real);
    }
}

unsigned GameState::contradictions(CandidateId id) const {
    if (id == 0 || id > total_)
        throw GameError(ErrorCode::UnknownCandidate, "unknown candidate " + std::to_string(id));
    const auto w = (id - 1) / 64;
    const auto bit = std::uint64_t{1} << ((id - 1) % 64);
    if (zero_[w] & bit) return 0;
    if (one_[w] & bit) return 1;
    return 2;
}

namespace {

std::vector<CandidateId> collect(const std::vector<std::uint64_t>& bits,
                                 const std::vector<std::uint32_t>& active) {
    std::vector<CandidateId> out;
    for (auto w : active) {
        for (auto word = bits[w]; word; word &= word - 1)
            out.push_back(static_cast<CandidateId>(w * 64 + std::countr_zero(word) + 1));
    }
    return out;
}

}  // namespace

std::vector<CandidateId> GameState::consistent() const { return collect(zero_, active_); }
std::vector<CandidateId> GameState::pennies() const { return collect(one_, active_); }

void GameState::add_virtual_pennies(std::uint32_t count, std::string note) {
    if (count == 0 && note.empty()) return;
    if (total_ + count > kMaxCandidates)
        throw GameError(ErrorCode::LimitExceeded, "too many virtual pennies");
    const std::uint64_t first = total_;  // zero-based index of the first new id
    total_ += count;
    const std::size_t words = (total_ + 63) / 64;
    zero_.resize(words, 0);
    one_.resize(words, 0);
    for (std::uint64_t i = first; i < total_; ++i) one_[i / 64] |= std::uint64_t{1} << (i % 64);
    if (count) {
        std::uint32_t from = static_cast<std::uint32_t>(first / 64);
        for (std::uint32_t w = from; w < words; ++w)
            if (active_.empty() || active_.back() < w) active_.push_back(w);
        b_ += count;
    }
    transcript_.pads.push_back({transcript_.entries.size(), count, summary(), std::move(note)});
}

void GameState::validate(const Question& q) const {
    if (q.max_id() > total_)
        throw GameError(ErrorCode::UnknownCandidate,
                        "question references id " + std::to_string(q.max_id()) + " beyond " +
                            std::to_string(total_));
}

ChildSplit GameState::split(const Question& q) const {
    if (j_ == 0) throw GameError(ErrorCode::NoQuestionsRemaining, "no questions remaining");
    validate(q);
    ChildSplit out;
    out.yes.j = out.no.j = out.real_yes.j = out.real_no.j = j_ - 1;
    for (auto w : active_) {
        const auto m = q.word_mask(w);
        const auto z = zero_[w], o = one_[w];
        const auto real = low_bits(static_cast<std::int64_t>(n_) - static_cast<std::int64_t>(w) * 64);
        const auto yes_a = z & m, yes_b = (o & m) | (z & ~m);
        const auto no_a = z & ~m, no_b = (o & ~m) | (z & m);
        out.yes.a += std::popcount(yes_a);
        out.yes.b += std::popcount(yes_b);
        out.no.a += std::popcount(no_a);
        out.no.b += std::popcount(no_b);
        out.real_yes.a += std::popcount(yes_a & real);
        out.real_yes.b += std::popcount(yes_b & real);
        out.real_no.a += std::popcount(no_a & real);
        out.real_no.b += std::popcount(no_b & real);
    }
    return out;
}

void GameState::apply(const Question& q, Answer ans, std::string note) {
    if (j_ == 0) throw GameError(ErrorCode::NoQuestionsRemaining, "no questions remaining");
    validate(q);
    std::size_t kept = 0;
    for (auto w : active_) {
        auto m = q.word_mask(w);
        if (ans == Answer::No) m = ~m;
        const auto z = zero_[w], o = one_[w];
        zero_[w] = z & m;
        one_[w] = (o & m) | (z & ~m);
        if (zero_[w] | one_[w]) active_[kept++] = w;
    }
    active_.resize(kept);
    --j_;
    recount();
    transcript_.entries.push_back({q, ans, summary(), std::move(note)});
}

std::optional<CandidateId> GameState::survivor() const {
    if (a_ + b_ != 1) return std::nullopt;
    for (auto w : active_) {
        auto word = zero_[w] | one_[w];
        if (word) return static_cast<CandidateId>(w * 64 + std::countr_zero(word) + 1);
    }
    return std::nullopt;
}

std::optional<CandidateId> GameState::identified() const {
    if (!is_won()) return std::nullopt;
    auto s = survivor();
    if (!s || !is_real_secret(*s))
        throw GameError(ErrorCode::InconsistentResponder,
                        "no real candidate fits all but at most one answer");
    return s;
}

GameState initial_state(std::uint64_t n, unsigned q) { return GameState::initial(n, q); }

GameState apply_answer(GameState state, const Question& q, Answer ans) {
    state.apply(q, ans);
    return state;
}

}  // namespace liar
