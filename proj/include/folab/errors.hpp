#pragma once

#include <stdexcept>
#include <string>

namespace folab {

// Error categories shared across the library. The CLI maps them to exit
// codes: parse_error -> 2, budget_exceeded -> 4, everything else -> 3.
enum class Errc {
  parse_error,
  arity_conflict,
  arity_mismatch,
  non_injective,
  not_clean,
  not_exists_and,
  not_fresh,
  predicate_not_unary,
  not_ucq,
  not_self_guarded,
  non_injective_renaming,
  unsupported_construct,
  unbound_variable,
  missing_relation,
  budget_exceeded,
  unknown_id,
  bad_argument,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace folab
