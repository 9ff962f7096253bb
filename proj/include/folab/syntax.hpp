#pragma once

#include <string>

#include "folab/formula.hpp"

namespace folab {

// Canonical fully parenthesized rendering. parse(print(f)) == f for every
// formula f.
std::string print(const Formula& f);

// Concrete syntax:
//   variables   x1 x2 ...          atoms      R(x1,x2)   R()   x1=x2
//   constants   true false         negation   !phi
//   binary      & | -> <->         (prec ! > & > | > -> > <->, -> right-assoc)
//   quantifiers E x1. phi   A x1. phi   E2 P/2. phi   A2 P/2. phi
// Quantifier scope extends as far right as possible; parentheses override.
// Throws Error(Errc::parse_error) with an offset on malformed input.
Formula parse(const std::string& text);

}  // namespace folab
