#pragma once

#include <iosfwd>
#include <string>

#include "olp/fsa.hpp"

namespace olp {

// Compact type-formula rendering of a label set, for DOT edges.
std::string describe_set(const SymbolSet& set, const SymbolSpace& space);

// Graphviz export; producer edges are drawn bold.
void write_dot(std::ostream& out, const Automaton& a);

}  // namespace olp
