#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "folab/errors.hpp"
#include "folab/formula.hpp"
#include "folab/ops.hpp"
#include "folab/sandwich.hpp"

namespace folab {

// domain^arity, guarding against overflow at the scales we allow.
long long cell_count(int domain, int arity);

// Row-major cell index: the first tuple position is most significant.
long long cell_index(const std::vector<int>& tuple, int domain);

// A relation stored as a bitset over its cell space. The owning Structure
// fixes the domain; cells() = domain^arity is frozen at construction.
class Relation {
 public:
  Relation() = default;
  Relation(int arity, int domain);

  int arity() const { return arity_; }
  long long cells() const { return cells_; }
  bool test(long long cell) const;
  void set(long long cell, bool value);
  bool contains(const std::vector<int>& tuple, int domain) const;
  void add(const std::vector<int>& tuple, int domain);
  // Treats the bitset as a binary counter; returns false on wrap to zero.
  bool increment();
  void clear();
  std::vector<std::vector<int>> tuples(int domain) const;

  bool operator==(const Relation&) const = default;

 private:
  int arity_ = 0;
  long long cells_ = 1;
  std::vector<std::uint64_t> words_ = {0};
};

// Finite structure over domain {0, ..., domain-1}.
struct Structure {
  int domain = 1;
  std::map<std::string, Relation> relations;

  void add_relation(const std::string& name, int arity);
  void add_tuple(const std::string& name, const std::vector<int>& tuple);

  bool operator==(const Structure&) const = default;
};

// Variable index -> element.
using Assignment = std::map<int, int>;

struct Budget {
  int max_domain = 3;
  long long max_expansion_cells = 16;  // cap on domain^arity per SO binder
};

// Cap on the summed cell counts of a signature's relations when streaming
// every structure of a given size.
inline constexpr long long kDefaultEnumerationCells = 24;

struct Countermodel {
  Structure structure;
  Assignment assignment;
};

struct CheckOutcome {
  int verified_up_to = 0;  // meaningful when no countermodel was found
  std::optional<Countermodel> counter;
  bool ok() const { return !counter.has_value(); }
};

// Tarskian evaluation; second-order binders enumerate all 2^(domain^arity)
// interpretations with early exit.
bool eval(const Structure& m, const Assignment& g, const Formula& f,
          const Budget& budget = {});

// { tuple over params : eval(m, params -> tuple, f) }, in cell order.
std::set<std::vector<int>> interpret(const Structure& m, const Formula& f,
                                     const std::vector<Variable>& params,
                                     const Budget& budget = {});

// Reinterprets each substituted relation as the tuples its replacement
// formula defines, all evaluated against the original structure.
Structure apply_substitution_structure(const Structure& m,
                                       const AtomSubstitution& subst,
                                       const Budget& budget = {});

// Streams every structure over sig with the given domain, each exactly
// once: relation bitmasks count up with the name-wise last relation
// changing fastest.
class StructureStream {
 public:
  StructureStream(const Signature& sig, int domain,
                  long long max_total_cells = kDefaultEnumerationCells);

  const Structure& current() const { return current_; }
  bool exhausted() const { return exhausted_; }
  void advance();

 private:
  Structure current_;
  bool exhausted_ = false;
};

// Searches sizes 1..max_domain for a structure and assignment where phi
// holds but psi does not. A countermodel is conclusive; a clean sweep is
// only evidence up to the bound, never a proof.
CheckOutcome entails_upto(const Formula& phi, const Formula& psi,
                          const Budget& budget = {},
                          long long max_total_cells = kDefaultEnumerationCells);

// Two-sided variant: first structure/assignment where the values differ.
CheckOutcome equiv_upto(const Formula& phi, const Formula& psi,
                        const Budget& budget = {},
                        long long max_total_cells = kDefaultEnumerationCells);

struct SandwichReport {
  CheckOutcome entailment;   // gamma |= chi
  CheckOutcome exists_side;  // exists-closure(gamma) == target
  CheckOutcome forall_side;  // forall-closure(chi) == target
  int domain_used = 0;
  bool ok() const {
    return entailment.ok() && exists_side.ok() && forall_side.ok();
  }
};

// Runs the three sandwich checks. A closure check drops to domain size <= 2
// when it has to enumerate a hidden predicate of arity >= 2 (the expansion
// space is intractable at size 3); the entailment check is capped whenever
// either side is. domain_used reports the largest size any check reached.
SandwichReport sandwich_check(const Sandwich& s, const Budget& budget = {});

}  // namespace folab
