#include "liar/transcript.hpp"

#include <sstream>

namespace liar {

namespace {

std::string summary_text(const StateSummary& s) {
    return std::to_string(s.a) + "," + std::to_string(s.b) + "," + std::to_string(s.j);
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto tab = line.find('\t', start);
        out.push_back(line.substr(start, tab - start));
        if (tab == std::string::npos) break;
        start = tab + 1;
    }
    return out;
}

std::uint64_t to_u64(const std::string& s, std::size_t line_no) {
    try {
        std::size_t used = 0;
        auto v = std::stoull(s, &used);
        if (used == s.size() && !s.empty() && s[0] != '-') return v;
    } catch (const std::exception&) {
    }
    throw GameError(ErrorCode::ParseError,
                    "line " + std::to_string(line_no) + ": bad number '" + s + "'");
}

StateSummary parse_summary(const std::string& s, std::size_t line_no) {
    auto c1 = s.find(',');
    auto c2 = c1 == std::string::npos ? c1 : s.find(',', c1 + 1);
    if (c2 == std::string::npos)
        throw GameError(ErrorCode::ParseError,
                        "line " + std::to_string(line_no) + ": summary must be a,b,j");
    return {to_u64(s.substr(0, c1), line_no), to_u64(s.substr(c1 + 1, c2 - c1 - 1), line_no),
            static_cast<unsigned>(to_u64(s.substr(c2 + 1), line_no))};
}

}  // namespace

std::string format_transcript(const Transcript& t) {
    std::ostringstream out;
    out << "# liar-transcript n=" << t.n << " padded=" << t.padded << " q=" << t.q << '\n';
    std::size_t pad = 0;
    auto emit_pads = [&](std::size_t before) {
        for (; pad < t.pads.size() && t.pads[pad].before_entry == before; ++pad) {
            const auto& p = t.pads[pad];
            out << "pad:" << p.count << "\t-\t" << summary_text(p.summary_after);
            if (!p.note.empty()) out << '\t' << p.note;
            out << '\n';
        }
    };
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
        emit_pads(i);
        const auto& e = t.entries[i];
        out << e.question.to_string() << '\t' << to_char(e.answer) << '\t'
            << summary_text(e.summary_after);
        if (!e.note.empty()) out << '\t' << e.note;
        out << '\n';
    }
    emit_pads(t.entries.size());
    return out.str();
}

Transcript parse_transcript(const std::string& text) {
    Transcript t;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream h(line.substr(1));
            std::string tok;
            h >> tok;
            if (tok != "liar-transcript")
                throw GameError(ErrorCode::ParseError, "missing liar-transcript header");
            while (h >> tok) {
                auto eq = tok.find('=');
                if (eq == std::string::npos) continue;
                auto key = tok.substr(0, eq);
                auto val = to_u64(tok.substr(eq + 1), line_no);
                if (key == "n") t.n = val;
                else if (key == "padded") t.padded = val;
                else if (key == "q") t.q = static_cast<unsigned>(val);
            }
            header = true;
            continue;
        }
        if (!header) throw GameError(ErrorCode::ParseError, "transcript header must come first");
        auto fields = split_tabs(line);
        if (fields.size() < 3 || fields.size() > 4)
            throw GameError(ErrorCode::ParseError,
                            "line " + std::to_string(line_no) + ": expected 3 or 4 fields");
        std::string note = fields.size() == 4 ? fields[3] : std::string{};
        auto summary = parse_summary(fields[2], line_no);
        if (fields[0].starts_with("pad:")) {
            auto count = to_u64(fields[0].substr(4), line_no);
            t.pads.push_back({t.entries.size(), static_cast<std::uint32_t>(count), summary, note});
            continue;
        }
        if (fields[1] != "Y" && fields[1] != "N")
            throw GameError(ErrorCode::ParseError,
                            "line " + std::to_string(line_no) + ": answer must be Y or N");
        auto q = Question::parse(fields[0], static_cast<CandidateId>(t.padded));
        t.entries.push_back({std::move(q), fields[1] == "Y" ? Answer::Yes : Answer::No, summary,
                             std::move(note)});
    }
    if (!header) throw GameError(ErrorCode::ParseError, "empty transcript");
    return t;
}

GameState replay(const Transcript& t) {
    auto state = GameState::initial(t.n, t.q, t.padded);
    std::size_t pad = 0;
    auto apply_pads = [&](std::size_t before) {
        for (; pad < t.pads.size() && t.pads[pad].before_entry == before; ++pad) {
            state.add_virtual_pennies(t.pads[pad].count, t.pads[pad].note);
            if (state.summary() != t.pads[pad].summary_after)
                throw GameError(ErrorCode::LogicError, "replay diverged at pad event " +
                                                           std::to_string(pad));
        }
    };
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
        apply_pads(i);
        const auto& e = t.entries[i];
        state.apply(e.question, e.answer, e.note);
        if (state.summary() != e.summary_after)
            throw GameError(ErrorCode::LogicError,
                            "replay diverged at entry " + std::to_string(i + 1));
    }
    apply_pads(t.entries.size());
    return state;
}

}  // namespace liar
