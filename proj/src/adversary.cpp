#include "liar/adversary.hpp"

namespace liar {

Answer honest_answer(const HonestConfig& cfg, unsigned question_index, const Question& q) {
    const Answer truth = q.contains(cfg.x) ? Answer::Yes : Answer::No;
    return cfg.lie_at && *cfg.lie_at == question_index ? negate(truth) : truth;
}

AdversaryDecision adversarial_decision(const GameState& state, const Question& q) {
    // Weights count real secrets only: padding ghosts and virtual pennies are
    // questioner bookkeeping and can never be the secret.
    const auto split = state.split(q);
    const auto w_yes = weight(split.real_yes);
    const auto w_no = weight(split.real_no);

    Answer pick;
    if (w_yes != w_no)
        pick = w_yes > w_no ? Answer::Yes : Answer::No;
    else if (split.real_yes.a != split.real_no.a)
        pick = split.real_yes.a > split.real_no.a ? Answer::Yes : Answer::No;
    else
        pick = Answer::No;

    auto alive = [&](Answer a) {
        const auto& c = a == Answer::Yes ? split.real_yes : split.real_no;
        return c.a + c.b;
    };
    AdversaryDecision d;
    if (alive(pick) == 0 && alive(negate(pick)) > 0) {
        pick = negate(pick);
        d.forced_by_consistency = true;
    }
    d.answer = pick;
    d.parent_weight = weight(state.real_summary());
    d.chosen_weight = pick == Answer::Yes ? w_yes : w_no;
    return d;
}

Answer adversarial_answer(const GameState& state, const Question& q) {
    return adversarial_decision(state, q).answer;
}

Responder::Responder(ResponderConfig cfg, std::uint64_t n) : cfg_(std::move(cfg)) {
    if (auto* h = std::get_if<HonestConfig>(&cfg_)) {
        if (h->x < 1 || h->x > n)
            throw GameError(ErrorCode::InvalidArgument,
                            "secret " + std::to_string(h->x) + " outside 1.." + std::to_string(n));
        if (h->lie_at && *h->lie_at == 0)
            throw GameError(ErrorCode::InvalidArgument, "lie position is 1-based");
    }
}

Answer Responder::answer(const GameState& state, const Question& q, unsigned question_index) {
    if (auto* h = std::get_if<HonestConfig>(&cfg_)) return honest_answer(*h, question_index, q);
    const auto d = adversarial_decision(state, q);
    if (d.forced_by_consistency) ++forced_;
    if (2 * d.chosen_weight < d.parent_weight) ++below_half_;
    return d.answer;
}

AnswerSource Responder::source() {
    return [this](const GameState& s, const Question& q, unsigned i) { return answer(s, q, i); };
}

}  // namespace liar
