#include "folab/transforms.hpp"

#include <algorithm>
#include <sstream>

#include "folab/classify.hpp"
#include "folab/json_io.hpp"
#include "folab/syntax.hpp"

namespace folab {

namespace {

void require_exists_and(const Formula& f) {
  MembershipResult m = fragment_membership(f, FragmentId::EXISTS_AND);
  if (!m.member) throw Error(Errc::not_exists_and, m.reason);
}

void require_clean(const Formula& f) {
  if (!is_clean(f))
    throw Error(Errc::not_clean, "formula is not clean: " + print(f));
}

void require_disjoint(const std::vector<Variable>& a,
                      const std::vector<Variable>& b, const char* what) {
  std::set<int> seen;
  for (Variable v : a) seen.insert(v.index);
  for (Variable v : b)
    if (seen.count(v.index))
      throw Error(Errc::bad_argument, std::string(what) +
                                          " share variable x" +
                                          std::to_string(v.index));
}

void require_free_within(const Formula& f, const std::set<int>& allowed) {
  for (int v : free_vars(f))
    if (!allowed.count(v))
      throw Error(Errc::bad_argument,
                  "free variable x" + std::to_string(v) +
                      " is outside the declared variables");
}

std::set<int> atom_vars(const Formula& f) {
  std::set<int> out;
  if (const auto* a = std::get_if<RelAtom>(&f.node().v)) {
    for (Variable v : a->args) out.insert(v.index);
  } else if (const auto* e = std::get_if<Equality>(&f.node().v)) {
    out.insert(e->lhs.index);
    out.insert(e->rhs.index);
  }
  return out;
}

Formula bind_rec(const Formula& f, const std::vector<Variable>& ys,
                 const std::vector<std::string>& preds) {
  if (const auto* a = std::get_if<And>(&f.node().v))
    return land(bind_rec(a->lhs, ys, preds), bind_rec(a->rhs, ys, preds));
  if (const auto* e = std::get_if<ExistsFO>(&f.node().v))
    return exists(e->var, bind_rec(e->body, ys, preds));
  std::set<int> av = atom_vars(f);
  std::vector<size_t> chosen;
  for (size_t i = 0; i < ys.size(); ++i)
    if (av.count(ys[i].index)) chosen.push_back(i);
  if (chosen.empty()) return f;
  std::vector<Formula> conjs = {f};
  for (size_t i : chosen) conjs.push_back(rel(preds[i], {ys[i]}));
  Formula body = land_all(conjs);
  for (auto it = chosen.rbegin(); it != chosen.rend(); ++it)
    body = exists(ys[*it], body);
  return body;
}

}  // namespace

Formula bind(const Formula& f, const std::vector<Variable>& ys,
             const std::vector<std::string>& preds) {
  if (ys.size() != preds.size())
    throw Error(Errc::arity_mismatch,
                std::to_string(ys.size()) + " variables for " +
                    std::to_string(preds.size()) + " predicates");
  std::set<int> yset;
  for (Variable y : ys)
    if (!yset.insert(y.index).second)
      throw Error(Errc::bad_argument,
                  "duplicate bind variable x" + std::to_string(y.index));
  std::set<std::string> pset;
  for (const std::string& p : preds)
    if (!pset.insert(p).second)
      throw Error(Errc::bad_argument, "duplicate bind predicate " + p);
  require_exists_and(f);
  std::set<int> bound = bound_var_indices(f);
  for (Variable y : ys)
    if (bound.count(y.index))
      throw Error(Errc::not_clean, "bind variable x" +
                                       std::to_string(y.index) +
                                       " occurs bound in the formula");
  Signature sig = Signature::of(f);
  for (const std::string& p : preds) {
    if (std::optional<int> ar = sig.arity(p)) {
      if (*ar != 1)
        throw Error(Errc::arity_mismatch,
                    p + " occurs with arity " + std::to_string(*ar));
      throw Error(Errc::not_fresh, p + " already occurs in the formula");
    }
  }
  return bind_rec(f, ys, preds);
}

Formula relativize(const Formula& f,
                   std::vector<std::pair<int, std::string>>* used) {
  if (used) used->clear();
  std::set<int> fv = free_vars(f);
  if (fv.empty()) return f;
  FreshNamePool pool(Signature::of(f));
  Variable y = x(max_var_index(f) + 1);
  std::vector<Formula> conjs;
  std::vector<int> order(fv.begin(), fv.end());
  for (int v : order) {
    std::string p = pool.fresh("P");
    if (used) used->emplace_back(v, p);
    conjs.push_back(rel(p, {x(v)}));
    conjs.push_back(forall(y, implies(rel(p, {y}), eq(y, x(v)))));
  }
  conjs.push_back(f);
  Formula body = land_all(conjs);
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    body = exists(x(*it), body);
  return body;
}

Sandwich thm31_step(const Formula& psi, const std::string& target_pred,
                    const std::string& primed_pred) {
  Signature sig = Signature::of(psi);
  std::optional<int> ar = sig.arity(target_pred);
  if (!ar)
    throw Error(Errc::bad_argument,
                target_pred + " does not occur in the formula");
  if (*ar != 1)
    throw Error(Errc::predicate_not_unary,
                target_pred + " has arity " + std::to_string(*ar));
  if (primed_pred == target_pred || sig.contains(primed_pred))
    throw Error(Errc::not_fresh, primed_pred + " is not fresh");
  Formula gamma = land(psi, rel(target_pred, {x(1)}));
  Variable y = x(std::max(max_var_index(psi), 1) + 1);
  Formula pinned =
      land(rel(primed_pred, {x(1)}),
           forall(y, implies(rel(primed_pred, {y}), eq(y, x(1)))));
  Formula psi_prime =
      rename_predicates(psi, PredicateRenaming{{{target_pred, primed_pred}}});
  Sandwich s;
  s.gamma = gamma;
  s.chi = implies(pinned, psi_prime);
  s.hidden_exists = {{target_pred, 1}};
  s.hidden_forall = {{primed_pred, 1}};
  s.target = exists_so(target_pred, 1, gamma);
  return s;
}

Sandwich bindexp_sandwich(const Formula& psi, const std::vector<Variable>& xs,
                          const std::vector<Variable>& ys, Variable z) {
  require_clean(psi);
  require_exists_and(psi);
  require_disjoint(xs, ys, "the two variable tuples");
  require_disjoint(xs, {z}, "xs and z");
  require_disjoint(ys, {z}, "ys and z");
  std::set<int> allowed = {z.index};
  for (Variable v : xs) allowed.insert(v.index);
  for (Variable v : ys) allowed.insert(v.index);
  require_free_within(psi, allowed);

  FreshNamePool pool(Signature::of(psi));
  std::vector<std::string> ps, qs;
  for (size_t i = 0; i < ys.size(); ++i) ps.push_back(pool.fresh("P"));
  for (size_t i = 0; i < xs.size(); ++i) qs.push_back(pool.fresh("Q"));
  std::string g = pool.fresh("G");

  Formula bind_y = folab::bind(psi, ys, ps);
  std::vector<Variable> gargs = xs;
  gargs.push_back(z);
  Formula gamma = exists(z, land(rel(g, gargs), bind_y));

  std::vector<Variable> xy = xs;
  xy.insert(xy.end(), ys.begin(), ys.end());
  std::vector<std::string> qp = qs;
  qp.insert(qp.end(), ps.begin(), ps.end());
  Formula bind_xy = folab::bind(psi, xy, qp);
  std::vector<Formula> qatoms;
  for (size_t i = 0; i < xs.size(); ++i)
    qatoms.push_back(rel(qs[i], {xs[i]}));
  Formula chi =
      implies(land_all(qatoms), exists(z, land(eq(z, z), bind_xy)));

  Sandwich s;
  s.gamma = gamma;
  s.chi = chi;
  s.hidden_exists = {{g, static_cast<int>(xs.size()) + 1}};
  for (const std::string& q : qs) s.hidden_forall.emplace_back(q, 1);
  s.target = exists(z, bind_y);
  return s;
}

Sandwich cq_sandwich(const Formula& psi, Variable x_var,
                     const std::vector<Variable>& ys) {
  require_clean(psi);
  require_exists_and(psi);
  require_disjoint(ys, {x_var}, "ys and x");
  std::set<int> allowed = {x_var.index};
  for (Variable v : ys) allowed.insert(v.index);
  require_free_within(psi, allowed);

  FreshNamePool pool(Signature::of(psi));
  std::vector<std::string> ps;
  for (size_t i = 0; i < ys.size(); ++i) ps.push_back(pool.fresh("P"));
  std::string g = pool.fresh("G");

  std::vector<Variable> gargs = {x_var};
  gargs.insert(gargs.end(), ys.begin(), ys.end());
  Formula gamma = exists(x_var, land(rel(g, gargs), psi));
  Formula bind_y = folab::bind(psi, ys, ps);
  std::vector<Formula> patoms;
  for (size_t i = 0; i < ys.size(); ++i)
    patoms.push_back(rel(ps[i], {ys[i]}));
  Formula chi = implies(land_all(patoms),
                        exists(x_var, land(eq(x_var, x_var), bind_y)));

  Sandwich s;
  s.gamma = gamma;
  s.chi = chi;
  s.hidden_exists = {{g, static_cast<int>(ys.size()) + 1}};
  for (const std::string& p : ps) s.hidden_forall.emplace_back(p, 1);
  s.target = exists(x_var, psi);
  return s;
}

NonInjectiveError::NonInjectiveError(Sandwich s, CheckOutcome outcome)
    : Error(Errc::non_injective_renaming,
            "renaming is not injective on the free variables" +
                (outcome.counter
                     ? "; gamma |= chi fails: " + render_outcome(outcome)
                     : std::string())),
      sandwich_(std::move(s)),
      outcome_(std::move(outcome)) {}

Sandwich shuffle_sandwich(const Formula& f, const VariableRenaming& pi) {
  std::set<int> fvset = free_vars(f);
  std::vector<int> fv(fvset.begin(), fvset.end());
  for (int i : fv)
    if (!pi.mapping.count(i))
      throw Error(Errc::bad_argument,
                  "renaming is not total on the free variables (x" +
                      std::to_string(i) + ")");
  bool injective = true;
  {
    std::set<int> image;
    for (int i : fv)
      if (!image.insert(pi.mapping.at(i)).second) injective = false;
  }

  FreshNamePool pool(Signature::of(f));
  std::vector<std::string> gs, ps;
  for (size_t i = 0; i < fv.size(); ++i) gs.push_back(pool.fresh("G"));
  for (size_t i = 0; i < fv.size(); ++i) ps.push_back(pool.fresh("P"));

  std::vector<Formula> gouter, ginner, pouter, pinner;
  for (size_t m = 0; m < fv.size(); ++m) {
    int i = fv[m];
    int j = pi.mapping.at(i);
    gouter.push_back(rel(gs[m], {x(i)}));
    ginner.push_back(rel(gs[m], {x(j)}));
    pouter.push_back(rel(ps[m], {x(i)}));
    pinner.push_back(rel(ps[m], {x(j)}));
  }
  Formula forall_part = implies(land_all(ginner), f);
  for (auto it = fv.rbegin(); it != fv.rend(); ++it)
    forall_part = forall(x(*it), forall_part);
  Formula gamma = land(land_all(gouter), forall_part);

  Formula echain = land(f, land_all(pinner));
  for (auto it = fv.rbegin(); it != fv.rend(); ++it)
    echain = exists(x(*it), echain);
  Formula chi = implies(land_all(pouter), echain);

  Sandwich s;
  s.gamma = gamma;
  s.chi = chi;
  for (size_t m = 0; m < fv.size(); ++m) {
    s.hidden_exists.emplace_back(gs[m], 1);
    s.hidden_forall.emplace_back(ps[m], 1);
  }
  s.target = rename_free_vars(f, pi);

  if (!injective) {
    CheckOutcome out = entails_upto(s.gamma, s.chi, Budget{2, 16});
    throw NonInjectiveError(std::move(s), std::move(out));
  }
  return s;
}

Formula ucq_apply(const Formula& q, const AtomSubstitution& args) {
  MembershipResult m = fragment_membership(q, FragmentId::UCQ);
  if (!m.member) throw Error(Errc::not_ucq, m.reason);
  for (const auto& [name, repl] : args) {
    if (self_guard_info(repl.body).kind ==
        SelfGuardInfo::Kind::not_self_guarded)
      throw Error(Errc::not_self_guarded,
                  "argument for " + name + " is not self-guarded: " +
                      print(repl.body));
  }
  return substitute_atoms(q, args);
}

Formula transitive_wrap(const Formula& f, const std::string& r1,
                        const std::string& r2) {
  if (r1 == r2)
    throw Error(Errc::bad_argument, "the two relation names must differ");
  Signature sig = Signature::of(f);
  for (const std::string& name : {r1, r2}) {
    if (std::optional<int> ar = sig.arity(name); ar && *ar != 2)
      throw Error(Errc::arity_mismatch,
                  name + " occurs with arity " + std::to_string(*ar));
  }
  Formula pattern = forall(
      x(1),
      forall(x(2),
             forall(x(3), implies(land(rel("R", {x(1), x(2)}),
                                       rel("R", {x(2), x(3)})),
                                  rel("R", {x(1), x(3)})))));
  Formula chi1 = rename_predicates(pattern, PredicateRenaming{{{"R", r1}}});
  Formula chi2 = rename_predicates(pattern, PredicateRenaming{{{"R", r2}}});
  return land(land(f, chi1), chi2);
}

std::string sandwich_record(const Sandwich& s) {
  auto names = [](const std::vector<std::pair<std::string, int>>& hs) {
    if (hs.empty()) return std::string("-");
    std::string out;
    for (size_t i = 0; i < hs.size(); ++i) {
      if (i) out += " ";
      out += hs[i].first + "/" + std::to_string(hs[i].second);
    }
    return out;
  };
  std::ostringstream out;
  out << "gamma: " << print(s.gamma) << "\n";
  out << "chi: " << print(s.chi) << "\n";
  out << "hidden: exists " << names(s.hidden_exists) << "; forall "
      << names(s.hidden_forall) << "\n";
  out << "target: " << print(s.target) << "\n";
  return out.str();
}

}  // namespace folab
