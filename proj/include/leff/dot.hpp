#pragma once

#include <string>

#include "leff/contagion.hpp"
#include "leff/order.hpp"

namespace leff {

// One node per element, one edge per Hasse cover pair, bottom to top.
// Deterministic node order.
std::string poset_to_dot(const FinitePoset& p);

// Time-layered cascade rendering: one node per round, labeled with the
// infected set of that round.
std::string trace_to_dot(const CascadeTrace& trace, const std::vector<std::string>& ground);

}  // namespace leff
