#pragma once

#include <functional>

#include "olp/fsa.hpp"

namespace olp {

using LabelCost = std::function<int(const Label&, const SymbolSpace&)>;

// Default weighting: technical transitions cost 1, segmental transitions 0.
int technical_cost(const Label& label, const SymbolSpace& space);

// Bounded Local Optimization. For every segmental projection the result
// accepts exactly the minimum-total-cost strings of `a` with that projection.
// Exact on trimmed acyclic automata (the wordform case); automata with
// cycles are returned unchanged.
Automaton bounded_local_optimization(const Automaton& a, const LabelCost& cost = {});

}  // namespace olp
