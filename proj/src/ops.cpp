#include "folab/ops.hpp"

#include <algorithm>

namespace folab {

namespace {

// Per-name stack of active second-order binder arities.
using SOScope = std::map<std::string, std::vector<int>>;

void collect_sig(const Formula& f, SOScope& so, Signature& out) {
  std::visit(
      overloaded{
          [&](const Top&) {},
          [&](const Bottom&) {},
          [&](const Equality&) {},
          [&](const RelAtom& a) {
            auto it = so.find(a.pred);
            int ar = static_cast<int>(a.args.size());
            if (it != so.end() && !it->second.empty()) {
              if (it->second.back() != ar)
                throw Error(Errc::arity_conflict,
                            "bound occurrence of " + a.pred + " at arity " +
                                std::to_string(ar) + ", binder declares " +
                                std::to_string(it->second.back()));
            } else {
              out.add(a.pred, ar);
            }
          },
          [&](const Not& n) { collect_sig(n.body, so, out); },
          [&](const And& n) { collect_sig(n.lhs, so, out); collect_sig(n.rhs, so, out); },
          [&](const Or& n) { collect_sig(n.lhs, so, out); collect_sig(n.rhs, so, out); },
          [&](const Implies& n) { collect_sig(n.lhs, so, out); collect_sig(n.rhs, so, out); },
          [&](const Iff& n) { collect_sig(n.lhs, so, out); collect_sig(n.rhs, so, out); },
          [&](const ExistsFO& n) { collect_sig(n.body, so, out); },
          [&](const ForallFO& n) { collect_sig(n.body, so, out); },
          [&](const ExistsSO& n) {
            so[n.pred].push_back(n.arity);
            collect_sig(n.body, so, out);
            so[n.pred].pop_back();
          },
          [&](const ForallSO& n) {
            so[n.pred].push_back(n.arity);
            collect_sig(n.body, so, out);
            so[n.pred].pop_back();
          },
      },
      f.node().v);
}

void collect_free(const Formula& f, std::map<int, int>& bound, std::set<int>& out) {
  auto var = [&](Variable v) {
    auto it = bound.find(v.index);
    if (it == bound.end() || it->second == 0) out.insert(v.index);
  };
  std::visit(
      overloaded{
          [&](const Top&) {},
          [&](const Bottom&) {},
          [&](const RelAtom& a) { for (Variable v : a.args) var(v); },
          [&](const Equality& e) { var(e.lhs); var(e.rhs); },
          [&](const Not& n) { collect_free(n.body, bound, out); },
          [&](const And& n) { collect_free(n.lhs, bound, out); collect_free(n.rhs, bound, out); },
          [&](const Or& n) { collect_free(n.lhs, bound, out); collect_free(n.rhs, bound, out); },
          [&](const Implies& n) { collect_free(n.lhs, bound, out); collect_free(n.rhs, bound, out); },
          [&](const Iff& n) { collect_free(n.lhs, bound, out); collect_free(n.rhs, bound, out); },
          [&](const ExistsFO& n) {
            ++bound[n.var.index];
            collect_free(n.body, bound, out);
            --bound[n.var.index];
          },
          [&](const ForallFO& n) {
            ++bound[n.var.index];
            collect_free(n.body, bound, out);
            --bound[n.var.index];
          },
          [&](const ExistsSO& n) { collect_free(n.body, bound, out); },
          [&](const ForallSO& n) { collect_free(n.body, bound, out); },
      },
      f.node().v);
}

void collect_binders(const Formula& f, std::vector<int>& out) {
  std::visit(
      overloaded{
          [&](const Top&) {},
          [&](const Bottom&) {},
          [&](const RelAtom&) {},
          [&](const Equality&) {},
          [&](const Not& n) { collect_binders(n.body, out); },
          [&](const And& n) { collect_binders(n.lhs, out); collect_binders(n.rhs, out); },
          [&](const Or& n) { collect_binders(n.lhs, out); collect_binders(n.rhs, out); },
          [&](const Implies& n) { collect_binders(n.lhs, out); collect_binders(n.rhs, out); },
          [&](const Iff& n) { collect_binders(n.lhs, out); collect_binders(n.rhs, out); },
          [&](const ExistsFO& n) { out.push_back(n.var.index); collect_binders(n.body, out); },
          [&](const ForallFO& n) { out.push_back(n.var.index); collect_binders(n.body, out); },
          [&](const ExistsSO& n) { collect_binders(n.body, out); },
          [&](const ForallSO& n) { collect_binders(n.body, out); },
      },
      f.node().v);
}

int max_index(const Formula& f) {
  int m = 0;
  std::visit(
      overloaded{
          [&](const Top&) {},
          [&](const Bottom&) {},
          [&](const RelAtom& a) {
            for (Variable v : a.args) m = std::max(m, v.index);
          },
          [&](const Equality& e) { m = std::max({m, e.lhs.index, e.rhs.index}); },
          [&](const Not& n) { m = max_index(n.body); },
          [&](const And& n) { m = std::max(max_index(n.lhs), max_index(n.rhs)); },
          [&](const Or& n) { m = std::max(max_index(n.lhs), max_index(n.rhs)); },
          [&](const Implies& n) { m = std::max(max_index(n.lhs), max_index(n.rhs)); },
          [&](const Iff& n) { m = std::max(max_index(n.lhs), max_index(n.rhs)); },
          [&](const ExistsFO& n) { m = std::max(n.var.index, max_index(n.body)); },
          [&](const ForallFO& n) { m = std::max(n.var.index, max_index(n.body)); },
          [&](const ExistsSO& n) { m = max_index(n.body); },
          [&](const ForallSO& n) { m = max_index(n.body); },
      },
      f.node().v);
  return m;
}

// Renames every first-order binder to a fresh index above *counter, in
// preorder; env maps in-scope old binder indices to their replacements.
Formula freshen_binders(const Formula& f, int* counter,
                        std::map<int, std::vector<int>>& env) {
  auto var = [&](Variable v) {
    auto it = env.find(v.index);
    if (it != env.end() && !it->second.empty()) return Variable{it->second.back()};
    return v;
  };
  return std::visit(
      overloaded{
          [&](const Top&) { return top(); },
          [&](const Bottom&) { return bottom(); },
          [&](const RelAtom& a) {
            std::vector<Variable> args;
            args.reserve(a.args.size());
            for (Variable v : a.args) args.push_back(var(v));
            return rel(a.pred, std::move(args));
          },
          [&](const Equality& e) { return eq(var(e.lhs), var(e.rhs)); },
          [&](const Not& n) { return lnot(freshen_binders(n.body, counter, env)); },
          [&](const And& n) {
            Formula l = freshen_binders(n.lhs, counter, env);
            return land(std::move(l), freshen_binders(n.rhs, counter, env));
          },
          [&](const Or& n) {
            Formula l = freshen_binders(n.lhs, counter, env);
            return lor(std::move(l), freshen_binders(n.rhs, counter, env));
          },
          [&](const Implies& n) {
            Formula l = freshen_binders(n.lhs, counter, env);
            return implies(std::move(l), freshen_binders(n.rhs, counter, env));
          },
          [&](const Iff& n) {
            Formula l = freshen_binders(n.lhs, counter, env);
            return iff(std::move(l), freshen_binders(n.rhs, counter, env));
          },
          [&](const ExistsFO& n) {
            int fresh = ++*counter;
            env[n.var.index].push_back(fresh);
            Formula body = freshen_binders(n.body, counter, env);
            env[n.var.index].pop_back();
            return exists(x(fresh), std::move(body));
          },
          [&](const ForallFO& n) {
            int fresh = ++*counter;
            env[n.var.index].push_back(fresh);
            Formula body = freshen_binders(n.body, counter, env);
            env[n.var.index].pop_back();
            return forall(x(fresh), std::move(body));
          },
          [&](const ExistsSO& n) {
            return exists_so(n.pred, n.arity, freshen_binders(n.body, counter, env));
          },
          [&](const ForallSO& n) {
            return forall_so(n.pred, n.arity, freshen_binders(n.body, counter, env));
          },
      },
      f.node().v);
}

// Substitutes free variable occurrences; binders shadow their index.
Formula subst_free(const Formula& f, const std::map<int, int>& pi,
                   std::map<int, int>& shadow) {
  auto var = [&](Variable v) {
    auto sh = shadow.find(v.index);
    if (sh != shadow.end() && sh->second > 0) return v;
    auto it = pi.find(v.index);
    if (it != pi.end()) return Variable{it->second};
    return v;
  };
  return std::visit(
      overloaded{
          [&](const Top&) { return top(); },
          [&](const Bottom&) { return bottom(); },
          [&](const RelAtom& a) {
            std::vector<Variable> args;
            args.reserve(a.args.size());
            for (Variable v : a.args) args.push_back(var(v));
            return rel(a.pred, std::move(args));
          },
          [&](const Equality& e) { return eq(var(e.lhs), var(e.rhs)); },
          [&](const Not& n) { return lnot(subst_free(n.body, pi, shadow)); },
          [&](const And& n) {
            Formula l = subst_free(n.lhs, pi, shadow);
            return land(std::move(l), subst_free(n.rhs, pi, shadow));
          },
          [&](const Or& n) {
            Formula l = subst_free(n.lhs, pi, shadow);
            return lor(std::move(l), subst_free(n.rhs, pi, shadow));
          },
          [&](const Implies& n) {
            Formula l = subst_free(n.lhs, pi, shadow);
            return implies(std::move(l), subst_free(n.rhs, pi, shadow));
          },
          [&](const Iff& n) {
            Formula l = subst_free(n.lhs, pi, shadow);
            return iff(std::move(l), subst_free(n.rhs, pi, shadow));
          },
          [&](const ExistsFO& n) {
            ++shadow[n.var.index];
            Formula body = subst_free(n.body, pi, shadow);
            --shadow[n.var.index];
            return exists(n.var, std::move(body));
          },
          [&](const ForallFO& n) {
            ++shadow[n.var.index];
            Formula body = subst_free(n.body, pi, shadow);
            --shadow[n.var.index];
            return forall(n.var, std::move(body));
          },
          [&](const ExistsSO& n) {
            return exists_so(n.pred, n.arity, subst_free(n.body, pi, shadow));
          },
          [&](const ForallSO& n) {
            return forall_so(n.pred, n.arity, subst_free(n.body, pi, shadow));
          },
      },
      f.node().v);
}

}  // namespace

void Signature::add(const std::string& pred, int arity) {
  auto [it, inserted] = entries_.emplace(pred, arity);
  if (!inserted && it->second != arity)
    throw Error(Errc::arity_conflict,
                pred + " occurs at arity " + std::to_string(it->second) +
                    " and " + std::to_string(arity));
}

void Signature::merge(const Signature& other) {
  for (const auto& [name, ar] : other.entries_) add(name, ar);
}

bool Signature::contains(const std::string& pred) const {
  return entries_.count(pred) != 0;
}

std::optional<int> Signature::arity(const std::string& pred) const {
  auto it = entries_.find(pred);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

Signature Signature::of(const Formula& f) {
  Signature s;
  SOScope so;
  collect_sig(f, so, s);
  return s;
}

std::set<int> free_vars(const Formula& f) {
  std::set<int> out;
  std::map<int, int> bound;
  collect_free(f, bound, out);
  return out;
}

std::set<int> bound_var_indices(const Formula& f) {
  std::vector<int> v;
  collect_binders(f, v);
  return std::set<int>(v.begin(), v.end());
}

int max_var_index(const Formula& f) { return max_index(f); }

int gfv(const Formula& f) {
  std::set<int> fv = free_vars(f);
  return fv.empty() ? 0 : *fv.rbegin();
}

bool is_clean(const Formula& f) {
  std::vector<int> binders;
  collect_binders(f, binders);
  std::set<int> seen;
  for (int b : binders)
    if (!seen.insert(b).second) return false;
  std::set<int> fv = free_vars(f);
  for (int b : binders)
    if (fv.count(b)) return false;
  return true;
}

Formula cleanify(const Formula& f) {
  if (is_clean(f)) return f;
  int counter = max_index(f);
  std::map<int, std::vector<int>> env;
  return freshen_binders(f, &counter, env);
}

Formula desugar(const Formula& f) {
  return std::visit(
      overloaded{
          [&](const Top&) { return f; },
          [&](const Bottom&) { return lnot(top()); },
          [&](const RelAtom&) { return f; },
          [&](const Equality&) { return f; },
          [&](const Not& n) {
            Formula b = desugar(n.body);
            return b == n.body ? f : lnot(b);
          },
          [&](const And& n) {
            Formula l = desugar(n.lhs), r = desugar(n.rhs);
            return (l == n.lhs && r == n.rhs) ? f : land(l, r);
          },
          [&](const Or& n) {
            Formula l = desugar(n.lhs), r = desugar(n.rhs);
            return (l == n.lhs && r == n.rhs) ? f : lor(l, r);
          },
          [&](const Implies& n) {
            return lor(lnot(desugar(n.lhs)), desugar(n.rhs));
          },
          [&](const Iff& n) {
            Formula l = desugar(n.lhs), r = desugar(n.rhs);
            return land(lor(lnot(l), r), lor(lnot(r), l));
          },
          [&](const ExistsFO& n) {
            Formula b = desugar(n.body);
            return b == n.body ? f : exists(n.var, b);
          },
          [&](const ForallFO& n) {
            Formula b = desugar(n.body);
            return b == n.body ? f : forall(n.var, b);
          },
          [&](const ExistsSO& n) {
            Formula b = desugar(n.body);
            return b == n.body ? f : exists_so(n.pred, n.arity, b);
          },
          [&](const ForallSO& n) {
            Formula b = desugar(n.body);
            return b == n.body ? f : forall_so(n.pred, n.arity, b);
          },
      },
      f.node().v);
}

bool VariableRenaming::injective() const {
  std::set<int> seen;
  for (const auto& [from, to] : mapping)
    if (!seen.insert(to).second) return false;
  return true;
}

Formula rename_free_vars(const Formula& f, const VariableRenaming& pi) {
  std::set<int> fv = free_vars(f);
  std::set<int> targets;
  int max_target = 0;
  for (int v : fv) {
    auto it = pi.mapping.find(v);
    if (it == pi.mapping.end())
      throw Error(Errc::bad_argument,
                  "renaming not defined for free variable x" + std::to_string(v));
    if (it->second < 1)
      throw Error(Errc::bad_argument, "renaming target index must be >= 1");
    targets.insert(it->second);
    max_target = std::max(max_target, it->second);
  }
  Formula g = f;
  std::set<int> bv = bound_var_indices(f);
  bool capture = std::any_of(bv.begin(), bv.end(),
                             [&](int b) { return targets.count(b) != 0; });
  if (capture) {
    int counter = std::max(max_index(f), max_target);
    std::map<int, std::vector<int>> env;
    g = freshen_binders(f, &counter, env);
  }
  std::map<int, int> restricted;
  for (int v : fv) restricted[v] = pi.mapping.at(v);
  std::map<int, int> shadow;
  return subst_free(g, restricted, shadow);
}

namespace {

Formula apply_pred_map(const Formula& f, const std::map<std::string, std::string>& m,
                       SOScope& so) {
  return std::visit(
      overloaded{
          [&](const Top&) { return f; },
          [&](const Bottom&) { return f; },
          [&](const Equality&) { return f; },
          [&](const RelAtom& a) {
            auto sh = so.find(a.pred);
            if (sh != so.end() && !sh->second.empty()) return f;
            auto it = m.find(a.pred);
            if (it == m.end()) return f;
            return rel(it->second, a.args);
          },
          [&](const Not& n) { return lnot(apply_pred_map(n.body, m, so)); },
          [&](const And& n) {
            Formula l = apply_pred_map(n.lhs, m, so);
            return land(std::move(l), apply_pred_map(n.rhs, m, so));
          },
          [&](const Or& n) {
            Formula l = apply_pred_map(n.lhs, m, so);
            return lor(std::move(l), apply_pred_map(n.rhs, m, so));
          },
          [&](const Implies& n) {
            Formula l = apply_pred_map(n.lhs, m, so);
            return implies(std::move(l), apply_pred_map(n.rhs, m, so));
          },
          [&](const Iff& n) {
            Formula l = apply_pred_map(n.lhs, m, so);
            return iff(std::move(l), apply_pred_map(n.rhs, m, so));
          },
          [&](const ExistsFO& n) {
            return exists(n.var, apply_pred_map(n.body, m, so));
          },
          [&](const ForallFO& n) {
            return forall(n.var, apply_pred_map(n.body, m, so));
          },
          [&](const ExistsSO& n) {
            so[n.pred].push_back(n.arity);
            Formula body = apply_pred_map(n.body, m, so);
            so[n.pred].pop_back();
            return exists_so(n.pred, n.arity, std::move(body));
          },
          [&](const ForallSO& n) {
            so[n.pred].push_back(n.arity);
            Formula body = apply_pred_map(n.body, m, so);
            so[n.pred].pop_back();
            return forall_so(n.pred, n.arity, std::move(body));
          },
      },
      f.node().v);
}

void collect_so_names(const Formula& f, std::set<std::string>& out) {
  std::visit(
      overloaded{
          [&](const Top&) {}, [&](const Bottom&) {}, [&](const RelAtom&) {},
          [&](const Equality&) {},
          [&](const Not& n) { collect_so_names(n.body, out); },
          [&](const And& n) { collect_so_names(n.lhs, out); collect_so_names(n.rhs, out); },
          [&](const Or& n) { collect_so_names(n.lhs, out); collect_so_names(n.rhs, out); },
          [&](const Implies& n) { collect_so_names(n.lhs, out); collect_so_names(n.rhs, out); },
          [&](const Iff& n) { collect_so_names(n.lhs, out); collect_so_names(n.rhs, out); },
          [&](const ExistsFO& n) { collect_so_names(n.body, out); },
          [&](const ForallFO& n) { collect_so_names(n.body, out); },
          [&](const ExistsSO& n) { out.insert(n.pred); collect_so_names(n.body, out); },
          [&](const ForallSO& n) { out.insert(n.pred); collect_so_names(n.body, out); },
      },
      f.node().v);
}

}  // namespace

Formula rename_predicates(const Formula& f, const PredicateRenaming& rho) {
  Signature sig = Signature::of(f);
  // Induced total map on the signature: identity off rho.
  std::map<std::string, std::string> induced;
  for (const auto& [name, ar] : sig.entries()) {
    auto it = rho.mapping.find(name);
    induced[name] = it == rho.mapping.end() ? name : it->second;
  }
  std::map<std::string, int> image;
  for (const auto& [name, ar] : sig.entries()) {
    const std::string& to = induced[name];
    auto [it, inserted] = image.emplace(to, ar);
    if (!inserted)
      throw Error(Errc::non_injective, "two symbols map to " + to);
  }
  for (const auto& [name, ar] : sig.entries()) {
    const std::string& to = induced[name];
    auto target_ar = sig.arity(to);
    // A target already in the signature is fine only if it is itself moved
    // away with the same arity (a swap) or identical to the source.
    if (to != name && target_ar && *target_ar != ar)
      throw Error(Errc::arity_mismatch,
                  name + "/" + std::to_string(ar) + " -> " + to + "/" +
                      std::to_string(*target_ar));
  }
  std::set<std::string> so_names;
  collect_so_names(f, so_names);
  for (const auto& [name, to] : induced)
    if (to != name && so_names.count(to))
      throw Error(Errc::not_fresh,
                  "renaming target " + to + " is a second-order bound name");
  std::map<std::string, std::string> effective;
  for (const auto& [name, to] : induced)
    if (to != name) effective[name] = to;
  if (effective.empty()) return f;
  SOScope so;
  return apply_pred_map(f, effective, so);
}

Formula substitute_atoms(const Formula& f, const AtomSubstitution& subst) {
  for (const auto& [name, repl] : subst) {
    std::set<int> params;
    for (Variable p : repl.params) {
      if (!params.insert(p.index).second)
        throw Error(Errc::bad_argument,
                    "duplicate parameter x" + std::to_string(p.index) +
                        " in replacement for " + name);
    }
    if (free_vars(repl.body) != params)
      throw Error(Errc::bad_argument,
                  "parameters of " + name +
                      " must order the free variables of the replacement");
  }
  struct Walker {
    const AtomSubstitution& subst;
    SOScope so;
    Formula go(const Formula& f) {
      return std::visit(
          overloaded{
              [&](const Top&) { return f; },
              [&](const Bottom&) { return f; },
              [&](const Equality&) { return f; },
              [&](const RelAtom& a) {
                auto sh = so.find(a.pred);
                if (sh != so.end() && !sh->second.empty()) return f;
                auto it = subst.find(a.pred);
                if (it == subst.end()) return f;
                const AtomReplacement& r = it->second;
                if (r.params.size() != a.args.size())
                  throw Error(Errc::arity_mismatch,
                              a.pred + " used at arity " +
                                  std::to_string(a.args.size()) +
                                  ", replacement has " +
                                  std::to_string(r.params.size()) +
                                  " parameters");
                VariableRenaming pi;
                for (size_t i = 0; i < r.params.size(); ++i)
                  pi.mapping[r.params[i].index] = a.args[i].index;
                return rename_free_vars(r.body, pi);
              },
              [&](const Not& n) { return lnot(go(n.body)); },
              [&](const And& n) {
                Formula l = go(n.lhs);
                return land(std::move(l), go(n.rhs));
              },
              [&](const Or& n) {
                Formula l = go(n.lhs);
                return lor(std::move(l), go(n.rhs));
              },
              [&](const Implies& n) {
                Formula l = go(n.lhs);
                return implies(std::move(l), go(n.rhs));
              },
              [&](const Iff& n) {
                Formula l = go(n.lhs);
                return iff(std::move(l), go(n.rhs));
              },
              [&](const ExistsFO& n) { return exists(n.var, go(n.body)); },
              [&](const ForallFO& n) { return forall(n.var, go(n.body)); },
              [&](const ExistsSO& n) {
                so[n.pred].push_back(n.arity);
                Formula body = go(n.body);
                so[n.pred].pop_back();
                return exists_so(n.pred, n.arity, std::move(body));
              },
              [&](const ForallSO& n) {
                so[n.pred].push_back(n.arity);
                Formula body = go(n.body);
                so[n.pred].pop_back();
                return forall_so(n.pred, n.arity, std::move(body));
              },
          },
          f.node().v);
    }
  };
  Walker w{subst, {}};
  return w.go(f);
}

namespace {

// Guard shape: existential quantifiers over an atom or equality.
bool exists_guard_shape(const Formula& g) {
  Formula core = g;
  while (const auto* ex = std::get_if<ExistsFO>(&core.node().v)) core = ex->body;
  return std::holds_alternative<RelAtom>(core.node().v) ||
         std::holds_alternative<Equality>(core.node().v);
}

}  // namespace

SelfGuardInfo self_guard_info(const Formula& f) {
  std::set<int> fv = free_vars(f);
  if (fv.empty()) return {SelfGuardInfo::Kind::sentence, std::nullopt};
  // A guard-shaped formula is its own guard.
  if (exists_guard_shape(f)) return {SelfGuardInfo::Kind::guarded, f};
  const auto* conj = std::get_if<And>(&f.node().v);
  if (!conj) return {SelfGuardInfo::Kind::not_self_guarded, std::nullopt};
  if (!exists_guard_shape(conj->lhs))
    return {SelfGuardInfo::Kind::not_self_guarded, std::nullopt};
  std::set<int> gv = free_vars(conj->lhs);
  for (int v : fv)
    if (!gv.count(v)) return {SelfGuardInfo::Kind::not_self_guarded, std::nullopt};
  return {SelfGuardInfo::Kind::guarded, conj->lhs};
}

void FreshNamePool::reserve_all(const Signature& sig) {
  for (const auto& [name, ar] : sig.entries()) used_.insert(name);
}

std::string FreshNamePool::fresh(const std::string& base) {
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (used_.insert(cand).second) return cand;
  }
}

}  // namespace folab
