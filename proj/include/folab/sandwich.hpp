#pragma once

#include <string>
#include <utility>
#include <vector>

#include "folab/formula.hpp"

namespace folab {

// An entailment pair gamma |= chi together with the second-order closures
// that pin its interpolants: closing gamma existentially over hidden_exists
// and chi universally over hidden_forall must both be equivalent to target.
struct Sandwich {
  Formula gamma;
  Formula chi;
  std::vector<std::pair<std::string, int>> hidden_exists;  // (name, arity)
  std::vector<std::pair<std::string, int>> hidden_forall;
  Formula target;
};

// ExistsSO chain over hidden_exists around gamma, first entry outermost.
Formula exists_closure(const Sandwich& s);
// ForallSO chain over hidden_forall around chi, first entry outermost.
Formula forall_closure(const Sandwich& s);

}  // namespace folab
