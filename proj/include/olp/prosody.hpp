#pragma once

#include "olp/fsa.hpp"

namespace olp {

// The relation between segment strings and their up/down sonority marks,
// as a marked automaton: a marked segment string is accepted iff every
// position's claimed mark matches the sonority comparison with the next
// segment, the final position claiming `down`.
Automaton sonority_differences(const SymbolSpace& space);

}  // namespace olp
