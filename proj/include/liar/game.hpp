#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace liar {

/// 1-based candidate identifier. Real candidates are 1..N (the padded
/// range), virtual pennies are N+1..N+v.
using CandidateId = std::uint32_t;

/// Largest question budget for which n(q+1) and 2^q fit in 64 bits for
/// every supported n.
inline constexpr unsigned kMaxQuestions = 57;

/// Largest padded search space a GameState will allocate.
inline constexpr std::uint64_t kMaxCandidates = std::uint64_t{1} << 26;

enum class ErrorCode {
    InvalidArgument,
    Overflow,
    NoQuestionsRemaining,
    UnknownCandidate,
    InconsistentResponder,
    OutOfPhase,
    LogicError,
    LimitExceeded,
    ParseError,
};

const char* to_string(ErrorCode code);

class GameError : public std::runtime_error {
public:
    GameError(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Checked 64-bit arithmetic. Overflow raises ErrorCode::Overflow.
std::uint64_t checked_add(std::uint64_t x, std::uint64_t y);
std::uint64_t checked_mul(std::uint64_t x, std::uint64_t y);
std::uint64_t pow2(unsigned exponent);

/// Bit length based ceil(log2 n); ceil_log2(1) == 0.
unsigned ceil_log2(std::uint64_t n);

enum class Answer : std::uint8_t { No = 0, Yes = 1 };

inline Answer negate(Answer a) { return a == Answer::Yes ? Answer::No : Answer::Yes; }
inline char to_char(Answer a) { return a == Answer::Yes ? 'Y' : 'N'; }

/// Aggregate view (a, b) with j questions remaining.
struct StateSummary {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    unsigned j = 0;

    friend bool operator==(const StateSummary&, const StateSummary&) = default;
};

/// w_j(a,b) = (j+1)a + b, overflow checked.
std::uint64_t weight(const StateSummary& s);

/// The set A of "Is x in A?". Stored either as an explicit sorted id list or
/// as one of two shorthands that are cheap to evaluate on large ranges.
class Question {
public:
    enum class Kind : std::uint8_t { Set, Bit, Range };

    Question() = default;

    static Question set(std::vector<CandidateId> ids);
    /// {v in 1..limit : bit `bit` of (v-1) is 1}
    static Question bit(unsigned bit, CandidateId limit);
    /// {lo..hi}; an empty range is returned as the empty set.
    static Question range(CandidateId lo, CandidateId hi);

    Kind kind() const { return kind_; }
    unsigned bit_index() const { return bit_; }
    CandidateId lo() const { return lo_; }
    CandidateId hi() const { return hi_; }
    const std::vector<CandidateId>& ids() const { return ids_; }

    bool contains(CandidateId id) const;

    /// Membership bits for ids 64*word+1 .. 64*word+64 (bit k <-> id 64*word+k+1).
    std::uint64_t word_mask(std::size_t word) const;

    /// Largest id referenced, 0 for an empty question.
    CandidateId max_id() const;

    /// Explicit members within 1..limit, ascending.
    std::vector<CandidateId> members(CandidateId limit) const;

    /// Canonical text: `set:1,3,5`, `set:` (empty), `bit:i`, `range:lo-hi`.
    std::string to_string() const;
    static Question parse(const std::string& text, CandidateId bit_limit);

    friend bool operator==(const Question&, const Question&) = default;

private:
    Kind kind_ = Kind::Set;
    unsigned bit_ = 0;
    CandidateId lo_ = 1;
    CandidateId hi_ = 0;
    std::vector<CandidateId> ids_;
};

struct TranscriptEntry {
    Question question;
    Answer answer = Answer::No;
    StateSummary summary_after;
    /// Optional phase annotation (strategy traces), e.g. "BIT 3".
    std::string note;
};

/// Virtual pennies appended before the entry with index `before_entry`.
struct PadEvent {
    std::size_t before_entry = 0;
    std::uint32_t count = 0;
    StateSummary summary_after;
    std::string note;
};

struct Transcript {
    std::uint64_t n = 0;        // real secrets are 1..n
    std::uint64_t padded = 0;   // game is played over 1..padded
    unsigned q = 0;             // initial question budget
    std::vector<TranscriptEntry> entries;
    std::vector<PadEvent> pads;

    std::size_t size() const { return entries.size(); }
};

/// Child aggregates of a question, computed without mutating the state.
struct ChildSplit {
    StateSummary yes;
    StateSummary no;
    /// The same children restricted to real secrets 1..n.
    StateSummary real_yes;
    StateSummary real_no;
};

/// Ground-truth game state: a contradiction count for every candidate.
/// Counts saturate at 2: a candidate with two contradictions is eliminated
/// and stays eliminated, so its exact count is never needed.
///
/// Storage is two bitsets (count 0 and count 1) over 1..N+v plus the list of
/// words that still hold a live candidate.
class GameState {
public:
    /// Game on 1..n with q questions, no padding.
    static GameState initial(std::uint64_t n, unsigned q);
    /// Game whose candidates are 1..padded while real secrets are 1..n.
    static GameState initial(std::uint64_t n, unsigned q, std::uint64_t padded);
    /// Arbitrary state; counts[i] is the count of candidate i+1 (values > 2
    /// are clamped). Candidates beyond `padded` are virtual.
    static GameState from_counts(std::uint64_t n, std::uint64_t padded,
                                 const std::vector<std::uint8_t>& counts, unsigned j);

    std::uint64_t n() const { return n_; }
    std::uint64_t padded() const { return padded_; }
    std::uint64_t virtual_count() const { return total_ - padded_; }
    std::uint64_t total() const { return total_; }
    unsigned remaining() const { return j_; }
    const Transcript& transcript() const { return transcript_; }
    Transcript& transcript() { return transcript_; }

    StateSummary summary() const { return {a_, b_, j_}; }
    std::uint64_t weight() const { return liar::weight(summary()); }
    /// Summary restricted to real secrets 1..n (no ghosts, no virtual pennies).
    StateSummary real_summary() const { return {real_a_, real_b_, j_}; }
    /// Candidates in 1..n with at most one contradiction.
    std::uint64_t real_alive() const { return real_a_ + real_b_; }

    /// 0, 1, or 2 (eliminated).
    unsigned contradictions(CandidateId id) const;
    bool is_virtual(CandidateId id) const { return id > padded_; }
    bool is_real_secret(CandidateId id) const { return id >= 1 && id <= n_; }

    /// Ascending ids with count 0 / count 1.
    std::vector<CandidateId> consistent() const;
    std::vector<CandidateId> pennies() const;

    /// Adds `count` virtual pennies (ids above every existing id).
    void add_virtual_pennies(std::uint32_t count, std::string note = {});

    /// Throws UnknownCandidate if the question mentions ids beyond total().
    void validate(const Question& q) const;

    ChildSplit split(const Question& q) const;

    /// Applies one answer in place. Yes: everyone outside q gains a
    /// contradiction; No: everyone inside q does.
    void apply(const Question& q, Answer ans, std::string note = {});

    bool is_won() const { return a_ + b_ <= 1; }

    /// Sole survivor when a+b == 1. Throws InconsistentResponder if it is not
    /// a real secret, and nullopt when the game is not yet decided.
    std::optional<CandidateId> identified() const;

    /// Sole survivor without the realness check.
    std::optional<CandidateId> survivor() const;

private:
    void recount();

    std::uint64_t n_ = 0;
    std::uint64_t padded_ = 0;
    std::uint64_t total_ = 0;
    unsigned j_ = 0;
    std::vector<std::uint64_t> zero_;
    std::vector<std::uint64_t> one_;
    std::vector<std::uint32_t> active_;
    std::uint64_t a_ = 0;
    std::uint64_t b_ = 0;
    std::uint64_t real_a_ = 0;
    std::uint64_t real_b_ = 0;
    Transcript transcript_;
};

/// Free-function forms of the state operations.
GameState initial_state(std::uint64_t n, unsigned q);
GameState apply_answer(GameState state, const Question& q, Answer ans);
inline StateSummary summary(const GameState& s) { return s.summary(); }
inline bool is_won(const GameState& s) { return s.is_won(); }

}  // namespace liar
