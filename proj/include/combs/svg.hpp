#pragma once

#include <string>

#include "combs/comb.hpp"

namespace combs {

// 900x450 picture of a comb: (x, t) is dark when x is not in I_t.
//   px = 50 + 800 x,  py = 400 - 350 t / (1.05 T)
// where T is the last event time (1 when the comb has a single event).
// Point gaps are drawn as <line class="tooth"> from the time they appear to
// f(x) (the top edge if unmerged), dust as <rect class="dust">, and t = 0 as
// <line class="baseline">. Coordinates use "%.3f", so the output is a pure
// function of the comb.
auto render_svg(const Comb& c) -> std::string;

}  // namespace combs
