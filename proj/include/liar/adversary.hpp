#pragma once

#include <cstdint>
#include <optional>
#include <variant>

#include "liar/game.hpp"
#include "liar/strategy.hpp"

namespace liar {

/// Holds a fixed secret and lies at most once, at question `lie_at` (1-based).
struct HonestConfig {
    CandidateId x = 1;
    std::optional<unsigned> lie_at;
};

/// Commits to no secret; answers so the surviving weight is as large as
/// possible while keeping at least one real candidate alive.
struct WeightAdversaryConfig {};

using ResponderConfig = std::variant<HonestConfig, WeightAdversaryConfig>;

Answer honest_answer(const HonestConfig& cfg, unsigned question_index, const Question& q);

struct AdversaryDecision {
    Answer answer = Answer::No;
    std::uint64_t parent_weight = 0;
    std::uint64_t chosen_weight = 0;
    /// The heavier child had no real candidate left, so the lighter one was taken.
    bool forced_by_consistency = false;
};

/// Heavier child (over real secrets 1..n) wins; ties go to the larger a',
/// then to No.
AdversaryDecision adversarial_decision(const GameState& state, const Question& q);
Answer adversarial_answer(const GameState& state, const Question& q);

/// Responder bound to one game. Validates the honest secret against n.
class Responder {
public:
    Responder(ResponderConfig cfg, std::uint64_t n);

    Answer answer(const GameState& state, const Question& q, unsigned question_index);
    AnswerSource source();

    const ResponderConfig& config() const { return cfg_; }
    /// Decisions where the adversary picked a child below ceil(parent/2).
    std::uint64_t below_half() const { return below_half_; }
    std::uint64_t forced() const { return forced_; }

private:
    ResponderConfig cfg_;
    std::uint64_t below_half_ = 0;
    std::uint64_t forced_ = 0;
};

}  // namespace liar
