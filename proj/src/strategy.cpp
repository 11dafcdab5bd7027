#include "liar/strategy.hpp"

#include "liar/bounds.hpp"

namespace liar {

namespace {

[[noreturn]] void out_of_phase(const StrategyPlan& plan, const char* op) {
    throw GameError(ErrorCode::OutOfPhase,
                    std::string(op) + " called in phase " + phase_name(plan.phase));
}

std::uint64_t halving_y(unsigned p, std::uint64_t r) {
    if (r < p + 1 || p <= 2)
        throw GameError(ErrorCode::LogicError, "halving needs r >= p+1 and p > 2");
    if ((r + 1 - p) % 2 != 0)
        throw GameError(ErrorCode::LogicError, "r+1-p must be even; state is corrupted");
    return (r + 1 - p) / 2;
}

}  // namespace

std::string phase_name(const Phase& ph) {
    struct Visitor {
        std::string operator()(const phase::BitSearch& b) const { return "BIT " + std::to_string(b.bit); }
        std::string operator()(const phase::PennyInit&) const { return "PENNY_INIT"; }
        std::string operator()(const phase::Halving& h) const {
            return "HALVING " + std::to_string(h.p) + " " + std::to_string(h.r);
        }
        std::string operator()(const phase::PennySearch& s) const { return "PSRCH " + std::to_string(s.step); }
        std::string operator()(const phase::Endgame& e) const { return "END " + std::to_string(e.step); }
        std::string operator()(const phase::Done&) const { return "DONE"; }
    };
    return std::visit(Visitor{}, ph);
}

StrategyPlan make_plan(std::uint64_t n) {
    if (n > kMaxCandidates)
        throw GameError(ErrorCode::LimitExceeded, "n above supported cap " + std::to_string(kMaxCandidates));
    const auto bound = theorem2_bound(n);
    StrategyPlan plan;
    plan.n = n;
    plan.ell = bound.ell;
    plan.q = bound.q;
    plan.padded = pow2(bound.ell);
    if (n == 1)
        plan.phase = phase::Done{};
    else
        plan.phase = phase::BitSearch{0};
    return plan;
}

GameState plan_state(const StrategyPlan& plan, std::optional<unsigned> budget) {
    return GameState::initial(plan.n, budget.value_or(plan.q), plan.padded);
}

Question bit_question(const StrategyPlan& plan, unsigned i) {
    auto* bit = std::get_if<phase::BitSearch>(&plan.phase);
    if (!bit || bit->bit != i || i >= plan.ell) out_of_phase(plan, "bit_question");
    return Question::bit(i, static_cast<CandidateId>(plan.padded));
}

void pad_pennies(GameState& state, StrategyPlan& plan) {
    if (!std::holds_alternative<phase::PennyInit>(plan.phase)) out_of_phase(plan, "pad_pennies");
    const unsigned p = plan.p();
    const auto s = state.summary();
    if (s.a != 1 || s.b != plan.ell)
        throw GameError(ErrorCode::LogicError, "bit search did not end in state (1, ell)");
    const auto target = pow2(p);
    if (target < p + 1 + s.b)
        throw GameError(ErrorCode::LogicError, "weight already exceeds 2^p");
    const std::uint64_t r = target - p - 1;
    state.add_virtual_pennies(static_cast<std::uint32_t>(r - s.b), "PAD " + std::to_string(r));
    if (weight({state.summary().a, state.summary().b, p}) != target)
        throw GameError(ErrorCode::LogicError, "padding missed weight 2^p");
    if (r >= p + 1)
        plan.phase = phase::Halving{p, r};
    else
        plan.phase = phase::Endgame{0};
}

Question halving_set(unsigned p, std::uint64_t r, const GameState& state) {
    const auto y = halving_y(p, r);
    const auto consistent = state.consistent();
    const auto pennies = state.pennies();
    if (consistent.size() != 1 || pennies.size() != r)
        throw GameError(ErrorCode::LogicError, "halving expects state (1, r)");
    std::vector<CandidateId> members(pennies.begin(), pennies.begin() + static_cast<std::ptrdiff_t>(y));
    members.push_back(consistent.front());
    return Question::set(std::move(members));
}

Question penny_search_question(const std::vector<CandidateId>& ranked, unsigned step) {
    if (ranked.empty() || (ranked.size() & (ranked.size() - 1)) != 0)
        throw GameError(ErrorCode::LogicError, "penny count is not a power of two");
    if ((std::size_t{1} << step) >= ranked.size())
        throw GameError(ErrorCode::OutOfPhase, "penny search step beyond log2(count)");
    std::vector<CandidateId> members;
    members.reserve(ranked.size() / 2);
    for (std::size_t rank = 0; rank < ranked.size(); ++rank)
        if ((rank >> step) & 1u) members.push_back(ranked[rank]);
    return Question::set(std::move(members));
}

std::optional<Question> endgame_question(const GameState& state) {
    const auto s = state.summary();
    if (s.a + s.b <= 1) return std::nullopt;
    if (s.a == 1 && s.b == 1) return Question::set({state.consistent().front()});
    if (s.a == 0 && s.b == 2) return Question::set({state.pennies().front()});
    throw GameError(ErrorCode::LogicError,
                    "endgame expects (1,1) or (0,2), got (" + std::to_string(s.a) + "," +
                        std::to_string(s.b) + ")");
}

std::optional<PlannedQuestion> next_question(StrategyPlan& plan, GameState& state) {
    while (true) {
        if (plan.done()) return std::nullopt;
        if (state.is_won()) {
            plan.phase = phase::Done{};
            return std::nullopt;
        }
        if (std::holds_alternative<phase::PennyInit>(plan.phase)) {
            pad_pennies(state, plan);
            continue;
        }
        if (state.remaining() == 0 || plan.remaining() == 0) return std::nullopt;

        if (auto* bit = std::get_if<phase::BitSearch>(&plan.phase))
            return PlannedQuestion{bit_question(plan, bit->bit), "BIT " + std::to_string(bit->bit)};
        if (auto* h = std::get_if<phase::Halving>(&plan.phase))
            return PlannedQuestion{halving_set(h->p, h->r, state),
                                   "HALV " + std::to_string(h->p) + " " + std::to_string(halving_y(h->p, h->r))};
        if (auto* s = std::get_if<phase::PennySearch>(&plan.phase))
            return PlannedQuestion{penny_search_question(s->ranked, s->step), "PSRCH " + std::to_string(s->step)};
        if (auto* e = std::get_if<phase::Endgame>(&plan.phase)) {
            auto q = endgame_question(state);
            if (!q) {
                plan.phase = phase::Done{};
                return std::nullopt;
            }
            return PlannedQuestion{std::move(*q), "END " + std::to_string(e->step)};
        }
        out_of_phase(plan, "next_question");
    }
}

void on_answer(StrategyPlan& plan, const GameState& state, Answer ans) {
    if (auto* bit = std::get_if<phase::BitSearch>(&plan.phase)) {
        ++plan.asked;
        if (bit->bit + 1 < plan.ell)
            plan.phase = phase::BitSearch{bit->bit + 1};
        else
            plan.phase = phase::PennyInit{};
    } else if (auto* h = std::get_if<phase::Halving>(&plan.phase)) {
        ++plan.asked;
        const auto y = halving_y(h->p, h->r);
        const unsigned p = h->p;
        if (ans == Answer::Yes) {
            if (p - 1 == 2)
                plan.phase = phase::Endgame{0};
            else
                plan.phase = phase::Halving{p - 1, y};
        } else {
            auto ranked = state.pennies();
            if (ranked.size() != pow2(p - 1) || state.summary().a != 0)
                throw GameError(ErrorCode::LogicError, "No-branch must leave 2^(p-1) pennies");
            plan.phase = phase::PennySearch{std::move(ranked), 0, p - 1};
        }
    } else if (auto* s = std::get_if<phase::PennySearch>(&plan.phase)) {
        ++plan.asked;
        if (s->step + 1 >= s->steps)
            plan.phase = phase::Done{};
        else
            ++s->step;
    } else if (auto* e = std::get_if<phase::Endgame>(&plan.phase)) {
        ++plan.asked;
        if (state.is_won())
            plan.phase = phase::Done{};
        else
            ++e->step;
    } else {
        out_of_phase(plan, "on_answer");
    }
}

GameOutcome run_game(std::uint64_t n, const AnswerSource& responder, const RunOptions& opts) {
    auto plan = make_plan(n);
    GameOutcome out;
    out.state = plan_state(plan, opts.max_questions);
    auto& state = out.state;
    while (auto next = next_question(plan, state)) {
        const bool halving = std::holds_alternative<phase::Halving>(plan.phase) ||
                             std::holds_alternative<phase::PennySearch>(plan.phase);
        const auto parent = weight({state.summary().a, state.summary().b, plan.remaining()});

        const auto ans = responder(state, next->question, plan.asked + 1);
        state.apply(next->question, ans, std::move(next->note));
        on_answer(plan, state, ans);
        ++out.questions;

        if (opts.check_halving && halving) {
            ++out.halving_checks;
            if (2 * weight({state.summary().a, state.summary().b, plan.remaining()}) != parent)
                ++out.halving_failures;
        }
        if (state.real_alive() == 0) {
            out.inconsistent = true;
            return out;
        }
    }
    if (state.is_won()) {
        auto s = state.survivor();
        if (s && state.is_real_secret(*s))
            out.identified = s;
        else
            out.inconsistent = true;
    }
    return out;
}

}  // namespace liar
