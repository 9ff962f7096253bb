#pragma once

#include <string>
#include <utility>
#include <vector>

#include "folab/formula.hpp"
#include "folab/ops.hpp"
#include "folab/sandwich.hpp"
#include "folab/semantics.hpp"

namespace folab {

// Replaces each designated free variable y_i by existential quantification
// relativized to the fresh unary predicate preds[i]: an atom a becomes
// E y'..(a & P_i(y_i) & ...) over the y_i actually occurring in a, and the
// rewrite commutes with conjunction and existential quantification.
// Requires an existential-conjunctive formula in which no y_i occurs bound.
Formula bind(const Formula& f, const std::vector<Variable>& ys,
             const std::vector<std::string>& preds);

// E x1..xn (P1(x1) & A y (P1(y) -> y=x1) & ... & f) over the free variables
// of f, each pinned to a fresh unary predicate interpreted as a singleton.
// Sentences are returned unchanged. `used` receives (variable index,
// predicate name) pairs in ascending variable order.
Formula relativize(const Formula& f,
                   std::vector<std::pair<int, std::string>>* used = nullptr);

// gamma = psi & T(x1), chi = (P'(x1) & A y (P'(y) -> y=x1)) -> psi[T := P'],
// target = (E2 T/1. gamma). T = target_pred must occur unary in psi;
// primed_pred must be fresh.
Sandwich thm31_step(const Formula& psi, const std::string& target_pred,
                    const std::string& primed_pred);

// gamma = E z (G(xs,z) & bind(psi, ys)), chi = /\ Q_i(x_i) ->
// E z (z=z & bind(psi, xs++ys)), target = E z bind(psi, ys). G is hidden on
// the gamma side, the Q's on the chi side; the ys-predicates are shared.
Sandwich bindexp_sandwich(const Formula& psi, const std::vector<Variable>& xs,
                          const std::vector<Variable>& ys, Variable z);

// gamma = E x (G(x,ys) & psi), chi = /\ P_i(y_i) -> E x (x=x & bind(psi,ys)),
// target = E x psi.
Sandwich cq_sandwich(const Formula& psi, Variable x,
                     const std::vector<Variable>& ys);

// Carries the sandwich built from a non-injective renaming together with
// the bounded refutation of gamma |= chi found at domain size <= 2.
class NonInjectiveError : public Error {
 public:
  NonInjectiveError(Sandwich s, CheckOutcome outcome);
  const Sandwich& sandwich() const { return sandwich_; }
  const CheckOutcome& outcome() const { return outcome_; }

 private:
  Sandwich sandwich_;
  CheckOutcome outcome_;
};

// gamma = /\ G_m(x_{i_m}) & A x_{i_1}..x_{i_k} (/\ G_m(x_{pi(i_m)}) -> f),
// chi = /\ P_m(x_{i_m}) -> E x_{i_1}..x_{i_k} (f & /\ P_m(x_{pi(i_m)})),
// target = f with its free variables renamed along pi. pi must be total and
// injective on the free variables of f; the non-injective case throws
// NonInjectiveError with the stored countermodel.
Sandwich shuffle_sandwich(const Formula& f, const VariableRenaming& pi);

// Substitutes self-guarded formulas for relation symbols in a union of
// conjunctive queries.
Formula ucq_apply(const Formula& q, const AtomSubstitution& args);

// f & transitivity(r1) & transitivity(r2).
Formula transitive_wrap(const Formula& f, const std::string& r1,
                        const std::string& r2);

// Four-line record: gamma, chi, hidden names (exists side then forall
// side), target.
std::string sandwich_record(const Sandwich& s);

}  // namespace folab
