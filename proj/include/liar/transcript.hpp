#pragma once

#include <string>
#include <vector>

#include "liar/game.hpp"

namespace liar {

// Line format (tab separated, one entry per line, ids ascending):
//
//   # liar-transcript n=<n> padded=<N> q=<q>
//   <question>\t<Y|N>\t<a>,<b>,<j>[\t<phase>]
//   pad:<count>\t-\t<a>,<b>,<j>[\t<phase>]
//
// <question> is `set:<id>,<id>,...`, `bit:<i>` or `range:<lo>-<hi>`. Pad
// lines record virtual pennies added before the next question.

std::string format_transcript(const Transcript& t);
Transcript parse_transcript(const std::string& text);

/// Replays questions, answers and pad events from the initial state. Throws
/// LogicError if any recorded summary differs from the recomputed one.
GameState replay(const Transcript& t);

}  // namespace liar
