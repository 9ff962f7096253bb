#include "folab/semantics.hpp"

#include <algorithm>

namespace folab {

namespace {
constexpr long long kCellCeiling = 1LL << 40;  // sentinel for "too large"
}

long long cell_count(int domain, int arity) {
  long long c = 1;
  for (int i = 0; i < arity; ++i) {
    c *= domain;
    if (c > kCellCeiling) return kCellCeiling;
  }
  return c;
}

long long cell_index(const std::vector<int>& tuple, int domain) {
  long long idx = 0;
  for (int t : tuple) idx = idx * domain + t;
  return idx;
}

Relation::Relation(int arity, int domain) : arity_(arity) {
  if (arity < 0) throw Error(Errc::bad_argument, "negative arity");
  if (domain < 1) throw Error(Errc::bad_argument, "domain must be positive");
  cells_ = cell_count(domain, arity);
  if (cells_ >= kCellCeiling)
    throw Error(Errc::budget_exceeded, "relation cell space too large");
  words_.assign(static_cast<size_t>((cells_ + 63) / 64), 0);
}

bool Relation::test(long long cell) const {
  return (words_[static_cast<size_t>(cell / 64)] >> (cell % 64)) & 1u;
}

void Relation::set(long long cell, bool value) {
  std::uint64_t bit = std::uint64_t{1} << (cell % 64);
  if (value)
    words_[static_cast<size_t>(cell / 64)] |= bit;
  else
    words_[static_cast<size_t>(cell / 64)] &= ~bit;
}

bool Relation::contains(const std::vector<int>& tuple, int domain) const {
  return test(cell_index(tuple, domain));
}

void Relation::add(const std::vector<int>& tuple, int domain) {
  set(cell_index(tuple, domain), true);
}

bool Relation::increment() {
  long long full_words = cells_ / 64;
  for (long long w = 0; w < static_cast<long long>(words_.size()); ++w) {
    std::uint64_t before = words_[static_cast<size_t>(w)]++;
    if (w < full_words) {
      if (before != ~std::uint64_t{0}) return true;
      words_[static_cast<size_t>(w)] = 0;
    } else {
      std::uint64_t mask = (std::uint64_t{1} << (cells_ % 64)) - 1;
      if ((words_[static_cast<size_t>(w)] & mask) != 0) return true;
      words_[static_cast<size_t>(w)] = 0;
    }
  }
  return false;
}

void Relation::clear() { std::fill(words_.begin(), words_.end(), 0); }

std::vector<std::vector<int>> Relation::tuples(int domain) const {
  std::vector<std::vector<int>> out;
  std::vector<int> t(static_cast<size_t>(arity_), 0);
  for (long long cell = 0; cell < cells_; ++cell) {
    if (test(cell)) {
      long long rest = cell;
      for (int i = arity_ - 1; i >= 0; --i) {
        t[static_cast<size_t>(i)] = static_cast<int>(rest % domain);
        rest /= domain;
      }
      out.push_back(t);
    }
  }
  return out;
}

void Structure::add_relation(const std::string& name, int arity) {
  auto [it, inserted] = relations.emplace(name, Relation(arity, domain));
  if (!inserted && it->second.arity() != arity)
    throw Error(Errc::arity_conflict,
                name + " already present at arity " +
                    std::to_string(it->second.arity()));
}

void Structure::add_tuple(const std::string& name,
                          const std::vector<int>& tuple) {
  auto it = relations.find(name);
  if (it == relations.end())
    throw Error(Errc::missing_relation, name + " not declared");
  if (static_cast<int>(tuple.size()) != it->second.arity())
    throw Error(Errc::arity_mismatch,
                "tuple arity " + std::to_string(tuple.size()) + " for " +
                    name + "/" + std::to_string(it->second.arity()));
  for (int t : tuple)
    if (t < 0 || t >= domain)
      throw Error(Errc::bad_argument, "tuple entry outside the domain");
  it->second.add(tuple, domain);
}

namespace {

class Evaluator {
 public:
  Evaluator(const Structure& m, const Assignment& g, const Budget& b)
      : m_(m), g_(g), b_(b) {
    if (b.max_domain < 1 || b.max_expansion_cells < 1)
      throw Error(Errc::bad_argument, "budget fields must be positive");
  }

  bool go(const Formula& f) {
    return std::visit(
        overloaded{
            [&](const Top&) { return true; },
            [&](const Bottom&) { return false; },
            [&](const RelAtom& a) {
              const Relation& r = resolve(a.pred, a.args.size());
              long long idx = 0;
              for (Variable v : a.args) idx = idx * m_.domain + value(v);
              return r.test(idx);
            },
            [&](const Equality& e) { return value(e.lhs) == value(e.rhs); },
            [&](const Not& n) { return !go(n.body); },
            [&](const And& n) { return go(n.lhs) && go(n.rhs); },
            [&](const Or& n) { return go(n.lhs) || go(n.rhs); },
            [&](const Implies& n) { return !go(n.lhs) || go(n.rhs); },
            [&](const Iff& n) { return go(n.lhs) == go(n.rhs); },
            [&](const ExistsFO& n) {
              auto& stack = env_[n.var.index];
              stack.push_back(0);
              bool found = false;
              for (int d = 0; d < m_.domain && !found; ++d) {
                stack.back() = d;
                found = go(n.body);
              }
              env_[n.var.index].pop_back();
              return found;
            },
            [&](const ForallFO& n) {
              auto& stack = env_[n.var.index];
              stack.push_back(0);
              bool all = true;
              for (int d = 0; d < m_.domain && all; ++d) {
                stack.back() = d;
                all = go(n.body);
              }
              env_[n.var.index].pop_back();
              return all;
            },
            [&](const ExistsSO& n) { return so_quantifier(n.pred, n.arity, n.body, true); },
            [&](const ForallSO& n) { return !so_quantifier(n.pred, n.arity, n.body, false); },
        },
        f.node().v);
  }

 private:
  int value(Variable v) {
    auto it = env_.find(v.index);
    if (it != env_.end() && !it->second.empty()) return it->second.back();
    auto g = g_.find(v.index);
    if (g == g_.end())
      throw Error(Errc::unbound_variable, "x" + std::to_string(v.index));
    if (g->second < 0 || g->second >= m_.domain)
      throw Error(Errc::bad_argument,
                  "assignment maps x" + std::to_string(v.index) +
                      " outside the domain");
    return g->second;
  }

  const Relation& resolve(const std::string& name, size_t arity) {
    const Relation* r = nullptr;
    auto ov = overlays_.find(name);
    if (ov != overlays_.end() && !ov->second.empty()) {
      r = &ov->second.back();
    } else {
      auto it = m_.relations.find(name);
      if (it == m_.relations.end())
        throw Error(Errc::missing_relation, name);
      r = &it->second;
    }
    if (r->arity() != static_cast<int>(arity))
      throw Error(Errc::arity_mismatch,
                  name + " used at arity " + std::to_string(arity) +
                      ", structure has " + std::to_string(r->arity()));
    return *r;
  }

  // For exists: true iff some expansion satisfies body. For forall we
  // search a failing expansion, so `want` flips the body's polarity.
  bool so_quantifier(const std::string& pred, int arity, const Formula& body,
                     bool want) {
    long long cells = cell_count(m_.domain, arity);
    if (cells > b_.max_expansion_cells || cells > 62)
      throw Error(Errc::budget_exceeded,
                  "expansion of " + pred + "/" + std::to_string(arity) +
                      " needs " + std::to_string(cells) + " cells, cap " +
                      std::to_string(b_.max_expansion_cells));
    auto& stack = overlays_[pred];
    stack.emplace_back(arity, m_.domain);
    bool found = false;
    for (long long it = 0, lim = 1LL << cells; it < lim && !found; ++it) {
      found = go(body) == want;
      if (!found) stack.back().increment();
    }
    overlays_[pred].pop_back();
    return found;
  }

  const Structure& m_;
  const Assignment& g_;
  Budget b_;
  std::map<int, std::vector<int>> env_;
  std::map<std::string, std::vector<Relation>> overlays_;
};

}  // namespace

bool eval(const Structure& m, const Assignment& g, const Formula& f,
          const Budget& budget) {
  Evaluator e(m, g, budget);
  return e.go(f);
}

std::set<std::vector<int>> interpret(const Structure& m, const Formula& f,
                                     const std::vector<Variable>& params,
                                     const Budget& budget) {
  std::set<int> seen;
  for (Variable p : params)
    if (!seen.insert(p.index).second)
      throw Error(Errc::bad_argument, "duplicate parameter x" +
                                          std::to_string(p.index));
  std::set<std::vector<int>> out;
  std::vector<int> vals(params.size(), 0);
  bool done = false;
  while (!done) {
    Assignment g;
    for (size_t i = 0; i < params.size(); ++i) g[params[i].index] = vals[i];
    if (eval(m, g, f, budget)) out.insert(vals);
    done = true;
    for (int i = static_cast<int>(vals.size()) - 1; i >= 0; --i) {
      if (++vals[static_cast<size_t>(i)] < m.domain) {
        done = false;
        break;
      }
      vals[static_cast<size_t>(i)] = 0;
    }
  }
  return out;
}

Structure apply_substitution_structure(const Structure& m,
                                       const AtomSubstitution& subst,
                                       const Budget& budget) {
  for (const auto& [name, repl] : subst) {
    auto it = m.relations.find(name);
    if (it != m.relations.end() &&
        it->second.arity() != static_cast<int>(repl.params.size()))
      throw Error(Errc::arity_mismatch,
                  name + "/" + std::to_string(it->second.arity()) +
                      " replaced at arity " +
                      std::to_string(repl.params.size()));
  }
  Structure out = m;
  for (const auto& [name, repl] : subst) {
    Relation fresh(static_cast<int>(repl.params.size()), m.domain);
    for (const std::vector<int>& t : interpret(m, repl.body, repl.params, budget))
      fresh.add(t, m.domain);
    out.relations.insert_or_assign(name, std::move(fresh));
  }
  return out;
}

StructureStream::StructureStream(const Signature& sig, int domain,
                                 long long max_total_cells) {
  if (domain < 1) throw Error(Errc::bad_argument, "domain must be positive");
  current_.domain = domain;
  long long total = 0;
  for (const auto& [name, arity] : sig.entries()) {
    total += cell_count(domain, arity);
    if (total > max_total_cells)
      throw Error(Errc::budget_exceeded,
                  "signature needs more than " +
                      std::to_string(max_total_cells) +
                      " relation cells at domain size " +
                      std::to_string(domain));
    current_.add_relation(name, arity);
  }
}

void StructureStream::advance() {
  for (auto it = current_.relations.rbegin(); it != current_.relations.rend();
       ++it) {
    if (it->second.increment()) return;
  }
  exhausted_ = true;
}

namespace {

// Runs test on every (structure, assignment) pair in enumeration order;
// returns the first hit as a countermodel.
template <class Test>
CheckOutcome search(const Signature& sig, const std::set<int>& fv,
                    const Budget& budget, long long max_total_cells,
                    Test&& test) {
  std::vector<int> vars(fv.begin(), fv.end());
  for (int n = 1; n <= budget.max_domain; ++n) {
    StructureStream stream(sig, n, max_total_cells);
    while (!stream.exhausted()) {
      const Structure& m = stream.current();
      std::vector<int> vals(vars.size(), 0);
      bool done = false;
      while (!done) {
        Assignment g;
        for (size_t i = 0; i < vars.size(); ++i) g[vars[i]] = vals[i];
        if (test(m, g)) return {n, Countermodel{m, g}};
        done = true;
        for (int i = static_cast<int>(vals.size()) - 1; i >= 0; --i) {
          if (++vals[static_cast<size_t>(i)] < n) {
            done = false;
            break;
          }
          vals[static_cast<size_t>(i)] = 0;
        }
      }
      stream.advance();
    }
  }
  return {budget.max_domain, std::nullopt};
}

}  // namespace

CheckOutcome entails_upto(const Formula& phi, const Formula& psi,
                          const Budget& budget, long long max_total_cells) {
  Signature sig = Signature::of(phi);
  sig.merge(Signature::of(psi));
  std::set<int> fv = free_vars(phi);
  for (int v : free_vars(psi)) fv.insert(v);
  return search(sig, fv, budget, max_total_cells,
                [&](const Structure& m, const Assignment& g) {
                  return eval(m, g, phi, budget) && !eval(m, g, psi, budget);
                });
}

CheckOutcome equiv_upto(const Formula& phi, const Formula& psi,
                        const Budget& budget, long long max_total_cells) {
  Signature sig = Signature::of(phi);
  sig.merge(Signature::of(psi));
  std::set<int> fv = free_vars(phi);
  for (int v : free_vars(psi)) fv.insert(v);
  return search(sig, fv, budget, max_total_cells,
                [&](const Structure& m, const Assignment& g) {
                  return eval(m, g, phi, budget) != eval(m, g, psi, budget);
                });
}

Formula exists_closure(const Sandwich& s) {
  Formula f = s.gamma;
  for (auto it = s.hidden_exists.rbegin(); it != s.hidden_exists.rend(); ++it)
    f = exists_so(it->first, it->second, std::move(f));
  return f;
}

Formula forall_closure(const Sandwich& s) {
  Formula f = s.chi;
  for (auto it = s.hidden_forall.rbegin(); it != s.hidden_forall.rend(); ++it)
    f = forall_so(it->first, it->second, std::move(f));
  return f;
}

SandwichReport sandwich_check(const Sandwich& s, const Budget& budget) {
  Signature chi_sig = Signature::of(s.chi);
  Signature gamma_sig = Signature::of(s.gamma);
  Signature target_sig = Signature::of(s.target);
  for (const auto& [name, arity] : s.hidden_exists) {
    if (chi_sig.contains(name) || target_sig.contains(name))
      throw Error(Errc::bad_argument,
                  "hidden predicate " + name + " escapes gamma");
  }
  for (const auto& [name, arity] : s.hidden_forall) {
    if (gamma_sig.contains(name) || target_sig.contains(name))
      throw Error(Errc::bad_argument,
                  "hidden predicate " + name + " escapes chi");
  }
  bool wide_exists = false;
  bool wide_forall = false;
  for (const auto& [name, arity] : s.hidden_exists)
    wide_exists = wide_exists || arity >= 2;
  for (const auto& [name, arity] : s.hidden_forall)
    wide_forall = wide_forall || arity >= 2;
  // Enumerating a binary-or-wider hidden predicate at domain size 3 would
  // blow past the expansion budget, so each check drops to size 2 exactly
  // when it has to expand such a predicate.  The entailment check never
  // expands anything itself, but it only ever accompanies the closures, so
  // it is capped whenever either side is.
  auto capped = [&](bool wide) {
    Budget eff = budget;
    if (wide) eff.max_domain = std::min(eff.max_domain, 2);
    return eff;
  };
  Budget eff_ent = capped(wide_exists || wide_forall);
  Budget eff_ex = capped(wide_exists);
  Budget eff_fa = capped(wide_forall);
  SandwichReport report;
  report.domain_used = std::max({eff_ent.max_domain, eff_ex.max_domain,
                                 eff_fa.max_domain});
  report.entailment = entails_upto(s.gamma, s.chi, eff_ent);
  report.exists_side = equiv_upto(exists_closure(s), s.target, eff_ex);
  report.forall_side = equiv_upto(forall_closure(s), s.target, eff_fa);
  return report;
}

}  // namespace folab
