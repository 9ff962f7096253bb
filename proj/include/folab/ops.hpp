#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "folab/errors.hpp"
#include "folab/formula.hpp"

namespace folab {

// Relation name -> arity. A name may not occur at two arities.
class Signature {
 public:
  Signature() = default;

  // Collects the free relation symbols of f. Names bound by a second-order
  // quantifier are excluded; their occurrences must match the binder arity.
  static Signature of(const Formula& f);

  void add(const std::string& pred, int arity);  // Errc::arity_conflict
  void merge(const Signature& other);
  bool contains(const std::string& pred) const;
  std::optional<int> arity(const std::string& pred) const;
  bool empty() const { return entries_.empty(); }
  const std::map<std::string, int>& entries() const { return entries_; }

 private:
  std::map<std::string, int> entries_;
};

std::set<int> free_vars(const Formula& f);
// Indices carried by first-order quantifiers, whether or not they occur.
std::set<int> bound_var_indices(const Formula& f);
// 0 when no variable occurs anywhere.
int max_var_index(const Formula& f);
// Greatest free index; 0 for sentences.
int gfv(const Formula& f);

// Clean: no free variable is also bound, and no two quantifiers bind the
// same index.
bool is_clean(const Formula& f);
// Renames bound variables to the smallest indices above every index already
// mentioned, in preorder. Returns f itself when already clean.
Formula cleanify(const Formula& f);

// Rewrites ->, <-> and false into !, &, |, true. Idempotent.
Formula desugar(const Formula& f);

struct VariableRenaming {
  std::map<int, int> mapping;
  bool injective() const;
};

struct PredicateRenaming {
  std::map<std::string, std::string> mapping;
};

// Replaces free occurrences of mapped variables; bound ones are untouched.
// When a target index is bound somewhere in f, all binders are first moved
// out of the way deterministically (cleanify above the target indices).
Formula rename_free_vars(const Formula& f, const VariableRenaming& pi);

// The induced map on sig(f) (identity off the mapping) must be injective and
// arity-preserving. Occurrences bound by a second-order quantifier keep
// their name.
Formula rename_predicates(const Formula& f, const PredicateRenaming& rho);

// Replacement for a relation symbol: params orders the free variables of
// body, one per argument position.
struct AtomReplacement {
  std::vector<Variable> params;
  Formula body;
};
using AtomSubstitution = std::map<std::string, AtomReplacement>;

// Replaces every free atom R(z...) by body[params := z...], simultaneously,
// capture-avoiding. Atoms under a second-order binder of the same name are
// left alone.
Formula substitute_atoms(const Formula& f, const AtomSubstitution& subst);

struct SelfGuardInfo {
  enum class Kind { sentence, guarded, not_self_guarded } kind;
  std::optional<Formula> guard;  // present iff kind == guarded
};

// A non-sentence is self-guarded when it is alpha & psi with alpha an atom
// (or equality), optionally under existential quantifiers, whose free
// variables cover the whole formula's.
SelfGuardInfo self_guard_info(const Formula& f);

// Deterministic fresh names: base plus the smallest unused positive suffix.
class FreshNamePool {
 public:
  FreshNamePool() = default;
  explicit FreshNamePool(const Signature& sig) { reserve_all(sig); }
  void reserve(const std::string& name) { used_.insert(name); }
  void reserve_all(const Signature& sig);
  std::string fresh(const std::string& base);

 private:
  std::set<std::string> used_;
};

}  // namespace folab
