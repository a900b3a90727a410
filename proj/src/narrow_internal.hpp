#pragma once

#include <functional>
#include <vector>

#include "hyperlat/narrow.hpp"

namespace hl::detail {

// One value (or pair of values) of the outermost loop variables.
struct Unit {
    i64 x = 0, y = 0;
};

std::vector<Unit> outer_units(NarrowType t);
void run_unit(NarrowType t, const Unit& u, const std::function<void(NarrowPartRecord&)>& sink);

// Runs fn(i) for i in [0, n) on up to `threads` workers.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace hl::detail
