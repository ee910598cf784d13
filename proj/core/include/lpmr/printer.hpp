#pragma once

#include <string>

#include "lpmr/term.hpp"

namespace lpmr {

// Concrete syntax accepted by parse_term, with minimal parentheses. Bound
// variables are renamed only when their hint would capture or shadow a name
// used in their scope.
std::string pretty(const Term& t);

}  // namespace lpmr
