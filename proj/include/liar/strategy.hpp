#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "liar/game.hpp"

namespace liar {

namespace phase {
struct BitSearch { unsigned bit = 0; };
struct PennyInit {};
/// Summary is (1, r) and w_p(1, r) == 2^p.
struct Halving { unsigned p = 0; std::uint64_t r = 0; };
/// Binary search over a power-of-two list of pennies, ranked by id at entry.
struct PennySearch { std::vector<CandidateId> ranked; unsigned step = 0; unsigned steps = 0; };
struct Endgame { unsigned step = 0; };
struct Done {};
}  // namespace phase

using Phase = std::variant<phase::BitSearch, phase::PennyInit, phase::Halving, phase::PennySearch,
                           phase::Endgame, phase::Done>;

/// The questioner's parameters and current phase for the halving strategy:
/// bit search over 1..2^ell, then pad to weight 2^p, then halving sets.
struct StrategyPlan {
    std::uint64_t n = 0;
    std::uint64_t padded = 0;  // 2^ell
    unsigned ell = 0;
    unsigned q = 0;
    unsigned asked = 0;
    Phase phase = phase::Done{};

    unsigned p() const { return q - ell; }
    /// Questions left in the plan's own budget.
    unsigned remaining() const { return q - asked; }
    bool done() const { return std::holds_alternative<phase::Done>(phase); }
};

std::string phase_name(const Phase& ph);

StrategyPlan make_plan(std::uint64_t n);

/// Fresh game state matching the plan. `budget` overrides the state's
/// question count (used to truncate the strategy).
GameState plan_state(const StrategyPlan& plan, std::optional<unsigned> budget = std::nullopt);

Question bit_question(const StrategyPlan& plan, unsigned i);

/// Adds r - ell virtual pennies, r = 2^p - p - 1, so the weight with p
/// questions left is exactly 2^p. Moves to Halving or Endgame.
void pad_pennies(GameState& state, StrategyPlan& plan);

/// A_p: the consistent candidate and the y = (r+1-p)/2 lowest-id pennies.
Question halving_set(unsigned p, std::uint64_t r, const GameState& state);

/// Candidates whose rank (within `ranked`) has bit `step` set.
Question penny_search_question(const std::vector<CandidateId>& ranked, unsigned step);

/// Next endgame question for a summary (1, b<=1) or (0, 2); nullopt once
/// a+b <= 1.
std::optional<Question> endgame_question(const GameState& state);

/// Performs pending non-question transitions (padding) and returns the next
/// question with its phase label, or nullopt when the plan is done.
struct PlannedQuestion {
    Question question;
    std::string note;
};
std::optional<PlannedQuestion> next_question(StrategyPlan& plan, GameState& state);

/// Advances the phase after `ans` has been applied to `state`.
void on_answer(StrategyPlan& plan, const GameState& state, Answer ans);

/// Answer source: (state before the answer, question, 1-based index).
using AnswerSource = std::function<Answer(const GameState&, const Question&, unsigned)>;

struct RunOptions {
    /// Truncate after this many questions; the state's budget is set to it.
    std::optional<unsigned> max_questions;
    /// Verify that every halving / penny-search answer halves the weight.
    bool check_halving = true;
};

struct GameOutcome {
    GameState state;
    unsigned questions = 0;
    std::optional<CandidateId> identified;
    bool inconsistent = false;   // no real candidate fits all but one answer
    std::uint64_t halving_checks = 0;
    std::uint64_t halving_failures = 0;
};

GameOutcome run_game(std::uint64_t n, const AnswerSource& responder, const RunOptions& opts = {});

}  // namespace liar
