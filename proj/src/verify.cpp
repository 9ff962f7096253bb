#include "folab/verify.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

#include "folab/classify.hpp"
#include "folab/json_io.hpp"
#include "folab/ops.hpp"
#include "folab/syntax.hpp"
#include "folab/transforms.hpp"

namespace folab {

std::uint64_t Rng::next() {
  state_ += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

int Rng::below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

int SuiteReport::failures() const {
  int n = 0;
  for (const auto& l : lines)
    if (!l.pass) ++n;
  return n;
}

int VerifySummary::failures() const {
  int n = 0;
  for (const auto& s : suites) n += s.failures();
  return n;
}

namespace {

Formula random_atom(Rng& rng, const std::vector<int>& scope, bool allow_binary) {
  auto v = [&] { return x(scope[rng.below(static_cast<int>(scope.size()))]); };
  int roll = rng.below(10);
  if (roll < 3) return rel("A", {v()});
  if (roll < 6) return rel("B", {v()});
  if (roll < 9) return allow_binary ? rel("R", {v(), v()}) : rel("A", {v()});
  return eq(v(), v());
}

// binders is a global reserve: popping an index guarantees it is bound at
// exactly one place, which keeps the output clean by construction.
Formula gen_ea(Rng& rng, int atoms, std::vector<int> scope, std::vector<int>& binders,
               bool allow_binary) {
  if (atoms <= 1) {
    if (!binders.empty() && rng.below(4) == 0) {
      int v = binders.back();
      binders.pop_back();
      auto inner = scope;
      inner.push_back(v);
      return exists(x(v), random_atom(rng, inner, allow_binary));
    }
    return random_atom(rng, scope, allow_binary);
  }
  if (!binders.empty() && rng.below(3) == 0) {
    int v = binders.back();
    binders.pop_back();
    auto inner = scope;
    inner.push_back(v);
    return exists(x(v), gen_ea(rng, atoms, inner, binders, allow_binary));
  }
  int left = 1 + rng.below(atoms - 1);
  Formula l = gen_ea(rng, left, scope, binders, allow_binary);
  Formula r = gen_ea(rng, atoms - left, scope, binders, allow_binary);
  return land(l, r);
}

}  // namespace

Formula random_exists_and(Rng& rng, int max_atoms, int max_vars, bool allow_binary) {
  int atoms = 1 + rng.below(max_atoms);
  std::vector<int> scope, binders;
  for (int v = 1; v <= max_vars; ++v) {
    if (v > 1 && rng.below(3) == 0)
      binders.push_back(v);
    else
      scope.push_back(v);
  }
  return gen_ea(rng, atoms, scope, binders, allow_binary);
}

Formula random_fo(Rng& rng, int depth, bool allow_equality, bool allow_so) {
  auto v = [&] { return x(1 + rng.below(3)); };
  if (depth <= 0 || rng.below(5) == 0) {
    int roll = rng.below(10);
    if (roll < 3) return rel("A", {v()});
    if (roll < 5) return rel("B", {v()});
    if (roll < 8) return rel("R", {v(), v()});
    if (roll == 8 && allow_equality) return eq(v(), v());
    return rng.coin() ? top() : bottom();
  }
  auto sub = [&] { return random_fo(rng, depth - 1, allow_equality, allow_so); };
  int roll = rng.below(allow_so ? 9 : 8);
  switch (roll) {
    case 0: return lnot(sub());
    case 1: return land(sub(), sub());
    case 2: return lor(sub(), sub());
    case 3: return implies(sub(), sub());
    case 4: return iff(sub(), sub());
    case 5: return exists(v(), sub());
    case 6: return forall(v(), sub());
    case 7: return random_fo(rng, 0, allow_equality, allow_so);
    default: {
      std::string pred = rng.coin() ? "X" : "Y";
      int arity = 1 + rng.below(2);
      return rng.coin() ? exists_so(pred, arity, sub()) : forall_so(pred, arity, sub());
    }
  }
}

Structure random_structure(Rng& rng, const Signature& sig, int n) {
  Structure m;
  m.domain = n;
  for (const auto& [name, arity] : sig.entries()) {
    m.add_relation(name, arity);
    long long cells = cell_count(n, arity);
    for (long long c = 0; c < cells; ++c)
      if (rng.coin()) m.relations.at(name).set(c, true);
  }
  return m;
}

namespace {

struct LawOutcome {
  bool pass = true;
  std::string detail;
};

bool reverify_counter(const Formula& lhs, const Formula& rhs, bool two_sided,
                      const Countermodel& c, const Budget& b) {
  bool lv = eval(c.structure, c.assignment, lhs, b);
  bool rv = eval(c.structure, c.assignment, rhs, b);
  return two_sided ? lv != rv : (lv && !rv);
}

// Exhaustive at sizes <= 2, then sampled size-3 structures with all
// assignments over the shared free variables. Every countermodel is
// replayed through eval before being reported.
LawOutcome check_law(const Formula& lhs, const Formula& rhs, bool two_sided, Rng& rng,
                     const SuiteOptions& opt) {
  Budget small{std::min(opt.max_size, 2), 16};
  CheckOutcome o = two_sided ? equiv_upto(lhs, rhs, small) : entails_upto(lhs, rhs, small);
  if (!o.ok()) {
    std::string msg = render_outcome(o);
    if (!reverify_counter(lhs, rhs, two_sided, *o.counter, small))
      msg += " (witness failed to replay under eval)";
    return {false, msg};
  }
  if (opt.max_size < 3) return {true, ""};

  Signature sig = Signature::of(lhs);
  sig.merge(Signature::of(rhs));
  std::set<int> fr = free_vars(lhs);
  for (int i : free_vars(rhs)) fr.insert(i);
  std::vector<int> fv(fr.begin(), fr.end());
  Budget b3{3, 16};
  for (int s = 0; s < opt.size3_samples; ++s) {
    Structure m = random_structure(rng, sig, 3);
    std::vector<int> vals(fv.size(), 0);
    while (true) {
      Assignment g;
      for (size_t i = 0; i < fv.size(); ++i) g[fv[i]] = vals[i];
      bool lv = eval(m, g, lhs, b3);
      bool rv = eval(m, g, rhs, b3);
      if (two_sided ? lv != rv : (lv && !rv)) {
        Countermodel c{m, g};
        std::string msg = "sampled countermodel (" + render_structure(m);
        if (!g.empty()) msg += "; " + render_assignment(g);
        msg += ")";
        if (!reverify_counter(lhs, rhs, two_sided, c, b3))
          msg += " (witness failed to replay under eval)";
        return {false, msg};
      }
      int i = static_cast<int>(vals.size()) - 1;
      for (; i >= 0; --i) {
        if (++vals[i] < 3) break;
        vals[i] = 0;
      }
      if (i < 0) break;
    }
  }
  return {true, ""};
}

// Aggregates one suite line out of many law instances: the line fails on
// the first countermodel, which is kept in the detail.
struct LawTally {
  int instances = 0;
  int failures = 0;
  std::string first_detail;

  void record(const Formula& subject, const LawOutcome& o) {
    ++instances;
    if (o.pass) return;
    if (failures++ == 0) first_detail = "on " + print(subject) + ": " + o.detail;
  }
  SuiteLine line(const std::string& label) const {
    if (failures == 0)
      return {true, label, std::to_string(instances) + " instances, no countermodels"};
    return {false, label, std::to_string(failures) + "/" + std::to_string(instances) +
                              " failed; first: " + first_detail};
  }
};

}  // namespace

SuiteReport gallery_suite(const Gallery& g, const Budget& budget) {
  SuiteReport rep;
  rep.name = "gallery";
  for (const auto& it : g.items()) {
    for (const auto& e : it.expected) {
      ExpectationResult r = e.run(g, budget);
      rep.lines.push_back(
          {r.pass, it.id + ": " + e.description + " [" + it.source + "]", r.detail});
    }
  }
  return rep;
}

SuiteReport bind_law_suite(const SuiteOptions& opt) {
  SuiteReport rep;
  rep.name = "bind-laws";
  Rng rng(opt.seed);
  LawTally comp, imp, equi;
  for (int i = 0; i < opt.bind_corpus; ++i) {
    Formula f = random_exists_and(rng, 4, 4, true);
    std::set<int> fr = free_vars(f);
    while (fr.empty()) {  // marker laws need at least one bindable variable
      f = random_exists_and(rng, 4, 4, true);
      fr = free_vars(f);
    }
    std::vector<int> frees(fr.begin(), fr.end());
    for (int j = static_cast<int>(frees.size()) - 1; j > 0; --j)
      std::swap(frees[j], frees[rng.below(j + 1)]);

    std::vector<Variable> ys, xs;
    size_t take_y = frees.empty() ? 0 : 1 + (frees.size() >= 2 && rng.below(3) == 0 ? 1 : 0);
    for (size_t k = 0; k < take_y; ++k) ys.push_back(x(frees[k]));
    if (frees.size() > take_y && rng.coin()) xs.push_back(x(frees[take_y]));

    std::vector<std::string> qs, ps;
    for (size_t k = 0; k < ys.size(); ++k) qs.push_back("Q" + std::to_string(k + 1));
    for (size_t k = 0; k < xs.size(); ++k) ps.push_back("P" + std::to_string(k + 1));

    // composition: binding xs++ys at once vs. ys first, then xs
    if (!ys.empty() || !xs.empty()) {
      std::vector<Variable> xy = xs;
      xy.insert(xy.end(), ys.begin(), ys.end());
      std::vector<std::string> pq = ps;
      pq.insert(pq.end(), qs.begin(), qs.end());
      Formula lhs = folab::bind(f, xy, pq);
      Formula rhs = folab::bind(f, ys, qs);
      if (!xs.empty()) rhs = folab::bind(rhs, xs, ps);
      comp.record(f, check_law(lhs, rhs, true, rng, opt));
    }

    // implication: the marker atoms together with f entail the bound form
    if (!ys.empty()) {
      std::vector<Formula> marks;
      for (size_t k = 0; k < ys.size(); ++k) marks.push_back(rel(qs[k], {ys[k]}));
      Formula premise = land(land_all(marks), f);
      imp.record(f, check_law(premise, folab::bind(f, ys, qs), false, rng, opt));
    }

    // equivalence: E x f matches the universally closed marked form
    {
      Variable ex = xs.empty() ? x(max_var_index(f) + 1) : xs[0];
      std::vector<Formula> marks;
      for (size_t k = 0; k < ys.size(); ++k) marks.push_back(rel(qs[k], {ys[k]}));
      Formula rhs = implies(land_all(marks), exists(ex, folab::bind(f, ys, qs)));
      for (auto it = qs.rbegin(); it != qs.rend(); ++it) rhs = forall_so(*it, 1, rhs);
      equi.record(f, check_law(exists(ex, f), rhs, true, rng, opt));
    }
  }
  rep.lines.push_back(comp.line("split-tuple bind composition matches simultaneous bind"));
  rep.lines.push_back(imp.line("marker atoms plus the formula entail its bound form"));
  rep.lines.push_back(
      equi.line("existential closure matches the universally closed marked form"));
  return rep;
}

namespace {

// Small formula over A/1 and R/2 with variables x1, x2 only; used where the
// enumeration signature has to stay tiny.
Formula small_fo(Rng& rng, int depth) {
  auto v = [&] { return x(1 + rng.below(2)); };
  if (depth <= 0) {
    int roll = rng.below(4);
    if (roll < 2) return rel("A", {v()});
    return rel("R", {v(), v()});
  }
  auto sub = [&] { return small_fo(rng, depth - 1); };
  switch (rng.below(7)) {
    case 0: return lnot(sub());
    case 1: return land(sub(), sub());
    case 2: return lor(sub(), sub());
    case 3: return implies(sub(), sub());
    case 4: return exists(v(), sub());
    case 5: return forall(v(), sub());
    default: return small_fo(rng, 0);
  }
}

}  // namespace

SuiteReport relativize_suite(const SuiteOptions& opt) {
  SuiteReport rep;
  rep.name = "relativize";
  Rng rng(opt.seed + 1);
  LawTally contract, step;
  for (int i = 0; i < opt.relativize_corpus; ++i) {
    Formula f = small_fo(rng, 2);
    if (free_vars(f).empty()) f = land(f, rel("A", {x(1)}));

    std::vector<std::pair<int, std::string>> used;
    Formula sent = relativize(f, &used);

    // contract: the sentence holds exactly when some tuple can be picked
    // with every helper predicate the matching singleton and f true there
    LawOutcome c{true, ""};
    Signature sig = Signature::of(sent);
    for (int n = 1; n <= std::min(opt.max_size, 3) && c.pass; ++n) {
      for (StructureStream st(sig, n); !st.exhausted() && c.pass; st.advance()) {
        const Structure& m = st.current();
        bool got = eval(m, {}, sent);
        bool want = false;
        std::vector<int> tup(used.size(), 0);
        while (!want) {
          bool singles = true;
          for (size_t k = 0; k < used.size() && singles; ++k) {
            const Relation& r = m.relations.at(used[k].second);
            for (int e = 0; e < n && singles; ++e)
              if (r.contains({e}, n) != (e == tup[k])) singles = false;
          }
          if (singles) {
            Assignment g;
            for (size_t k = 0; k < used.size(); ++k) g[used[k].first] = tup[k];
            if (eval(m, g, f)) want = true;
          }
          int j = static_cast<int>(tup.size()) - 1;
          for (; j >= 0; --j) {
            if (++tup[j] < n) break;
            tup[j] = 0;
          }
          if (j < 0) break;
        }
        if (got != want)
          c = {false, "sentence/oracle mismatch at (" + render_structure(m) + ")"};
      }
    }
    contract.record(f, c);

    // one singleton predicate becomes the pivot of the step sandwich
    if (!used.empty()) {
      FreshNamePool pool(Signature::of(sent));
      Sandwich s = thm31_step(sent, used.front().second, pool.fresh("P"));
      SandwichReport r = sandwich_check(s, Budget{std::min(opt.max_size, 2), 16});
      step.record(sent, {r.ok(), r.ok() ? "" : sandwich_failure_detail(r)});
    }
  }
  rep.lines.push_back(contract.line("relativize pins every free variable to a singleton"));
  rep.lines.push_back(step.line("step sandwiches pass all three checks"));
  return rep;
}

SuiteReport cq_sandwich_suite(const SuiteOptions& opt) {
  SuiteReport rep;
  rep.name = "cq-sandwiches";
  Rng rng(opt.seed + 2);
  LawTally bindexp, cq;
  Budget budget{std::min(opt.max_size, 3), 16};
  for (int i = 0; i < opt.cq_corpus; ++i) {
    // prenex conjunctive query over A/1, R/2 with variables from x1..x3
    int n_atoms = 1 + rng.below(2);
    std::vector<int> pool = {1, 2, 3};
    auto v = [&] { return x(pool[rng.below(3)]); };
    std::vector<Formula> atoms;
    for (int k = 0; k < n_atoms; ++k)
      atoms.push_back(rng.below(3) == 0 ? rel("A", {v()}) : rel("R", {v(), v()}));
    Formula psi = land_all(atoms);
    std::set<int> vs = free_vars(psi);
    std::vector<int> present(vs.begin(), vs.end());
    if (!present.empty() && rng.coin()) {
      int b = present[rng.below(static_cast<int>(present.size()))];
      psi = exists(x(b), psi);
    }

    std::set<int> fr = free_vars(psi);
    std::vector<int> frees(fr.begin(), fr.end());

    // free variables split across the two visible tuples, z always fresh
    std::vector<Variable> xs, ys;
    if (frees.size() >= 2) {
      xs.push_back(x(frees[0]));
      ys.push_back(x(frees[1]));
      for (size_t k = 2; k < frees.size(); ++k) ys.push_back(x(frees[k]));
    } else if (frees.size() == 1) {
      (rng.coin() ? xs : ys).push_back(x(frees[0]));
    }
    Variable z = x(max_var_index(psi) + 1);
    {
      Sandwich s = bindexp_sandwich(psi, xs, ys, z);
      SandwichReport r = sandwich_check(s, budget);
      bindexp.record(psi, {r.ok(), r.ok() ? "" : sandwich_failure_detail(r)});
    }
    {
      Variable pivot = frees.empty() ? x(max_var_index(psi) + 1) : x(frees[0]);
      std::vector<Variable> rest;
      for (size_t k = 1; k < frees.size(); ++k) rest.push_back(x(frees[k]));
      Sandwich s = cq_sandwich(psi, pivot, rest);
      SandwichReport r = sandwich_check(s, budget);
      cq.record(psi, {r.ok(), r.ok() ? "" : sandwich_failure_detail(r)});
    }
  }
  rep.lines.push_back(bindexp.line("guard-introduction sandwiches pass all three checks"));
  rep.lines.push_back(cq.line("query-projection sandwiches pass all three checks"));
  return rep;
}

SuiteReport shuffle_suite(const SuiteOptions& opt) {
  SuiteReport rep;
  rep.name = "shuffle";
  Rng rng(opt.seed + 3);
  LawTally inj;
  Budget budget{std::min(opt.max_size, 3), 16};
  for (int i = 0; i < opt.shuffle_pairs; ++i) {
    Formula f;
    int kind = i % 10;
    if (kind < 7) {
      // one free variable, unary predicates only
      auto atom = [&] { return rel(rng.coin() ? "A" : "B", {x(1 + rng.below(2))}); };
      Formula body = rng.coin() ? land(atom(), atom()) : implies(atom(), atom());
      f = rng.coin() ? body : lnot(body);
      if (rng.coin()) f = land(f, rel("A", {x(1)}));
      f = exists(x(2), f);
      if (rng.coin()) f = land(rel("B", {x(1)}), f);
    } else if (kind < 9) {
      // two free variables, single unary predicate
      auto atom = [&] { return rel("A", {x(1 + rng.below(2))}); };
      Formula body = rng.coin() ? implies(atom(), atom()) : lor(atom(), atom());
      f = land(body, rng.coin() ? rel("A", {x(2)}) : lnot(rel("A", {x(1)})));
      f = land(f, rel("A", {x(2)}));
      f = land(rel("A", {x(1)}), f);
    } else {
      // one free variable with a binary predicate under a quantifier
      Formula inner = rel("R", {x(1), x(2)});
      if (rng.coin()) inner = land(inner, rel("A", {x(2)}));
      f = rng.coin() ? exists(x(2), inner) : forall(x(2), implies(rel("A", {x(2)}), inner));
    }

    std::set<int> fr = free_vars(f);
    std::vector<int> order(fr.begin(), fr.end());
    for (int j = static_cast<int>(order.size()) - 1; j > 0; --j)
      std::swap(order[j], order[rng.below(j + 1)]);
    VariableRenaming pi;
    std::vector<int> sorted(fr.begin(), fr.end());
    for (size_t k = 0; k < sorted.size(); ++k) pi.mapping[sorted[k]] = order[k];

    Sandwich s = shuffle_sandwich(f, pi);
    SandwichReport r = sandwich_check(s, budget);
    inj.record(f, {r.ok(), r.ok() ? "" : sandwich_failure_detail(r)});
  }
  rep.lines.push_back(inj.line("injective-renaming sandwiches pass all three checks"));

  // regression pin: the collapsing renaming must refute gamma |= chi at the
  // recorded structure, not merely somewhere
  {
    SuiteLine line;
    line.label = "collapsing renaming x1,x2 -> x1 on R(x1,x2) is refuted at the pinned structure";
    VariableRenaming collapse;
    collapse.mapping = {{1, 1}, {2, 1}};
    try {
      shuffle_sandwich(rel("R", {x(1), x(2)}), collapse);
      line.pass = false;
      line.detail = "no error raised";
    } catch (const NonInjectiveError& e) {
      Structure want;
      want.domain = 2;
      want.add_relation("G1", 1);
      want.add_tuple("G1", {0});
      want.add_relation("G2", 1);
      want.add_tuple("G2", {1});
      want.add_relation("P1", 1);
      want.add_tuple("P1", {0});
      want.add_relation("P2", 1);
      want.add_tuple("P2", {1});
      want.add_relation("R", 2);
      Assignment g{{1, 0}, {2, 1}};
      const CheckOutcome& o = e.outcome();
      line.pass = o.counter.has_value() && o.counter->structure == want &&
                  o.counter->assignment == g;
      line.detail = render_outcome(o);
    }
    rep.lines.push_back(line);
  }
  return rep;
}

SuiteReport classifier_suite(const SuiteOptions& opt) {
  SuiteReport rep;
  rep.name = "classifier";
  const Gallery& g = pristine_gallery();

  auto verdicts = [&](const std::string& id,
                      std::vector<std::pair<FragmentId, bool>> want) -> SuiteLine {
    SuiteLine line;
    line.pass = true;
    std::ostringstream detail;
    for (auto [frag, expect] : want) {
      MembershipResult r = fragment_membership(g.formula(id), frag);
      detail << fragment_name(frag) << ": " << (r.member ? "yes" : "no") << "; ";
      if (r.member != expect) line.pass = false;
    }
    line.label = id + " membership verdicts";
    line.detail = detail.str();
    return line;
  };

  rep.lines.push_back(verdicts("footnote_cycle", {{FragmentId::GFO, true},
                                                  {FragmentId::FO2, true},
                                                  {FragmentId::UNFO, true},
                                                  {FragmentId::FF, false}}));
  rep.lines.push_back(verdicts("gfo_subst_before", {{FragmentId::GFO, true}}));
  rep.lines.push_back(verdicts("gfo_subst_after", {{FragmentId::GFO, false}}));
  {
    MembershipResult r = fragment_membership(g.formula("fl_conj"), FragmentId::FL);
    rep.lines.push_back({!r.member && r.reason == "no common level",
                         "fl_conj rejected with the level-clash reason",
                         r.member ? "member" : r.reason});
  }

  // property: every suffix level is also an infix level
  Rng rng(opt.seed + 4);
  LawTally subset;
  for (int i = 0; i < opt.classifier_corpus; ++i) {
    Formula f = random_fo(rng, 3, false, false);
    LevelSet fl = fl_level(f);
    LevelSet ff = ff_level(f);
    bool ok = fl.subset_of(ff);
    subset.record(f, {ok, ok ? "" : "suffix levels " + fl.str() + " vs infix levels " + ff.str()});
  }
  rep.lines.push_back(subset.line("suffix levels are a subset of infix levels"));
  return rep;
}

SuiteReport roundtrip_suite(const SuiteOptions& opt) {
  SuiteReport rep;
  rep.name = "plumbing";
  Rng rng(opt.seed + 5);
  LawTally trip;
  for (int i = 0; i < opt.roundtrip_corpus; ++i) {
    Formula f = random_fo(rng, 4, true, true);
    bool ok = parse(print(f)) == f;
    trip.record(f, {ok, ok ? "" : "reparse differs"});
  }
  rep.lines.push_back(trip.line("random formulas re-parse to themselves"));

  // deliberate countermodels replay under eval
  {
    SuiteLine line;
    line.label = "countermodel witnesses replay under eval";
    line.pass = true;
    CheckOutcome o1 = entails_upto(rel("A", {x(1)}), rel("B", {x(1)}), Budget{1, 16});
    if (o1.ok() || !reverify_counter(rel("A", {x(1)}), rel("B", {x(1)}), false, *o1.counter,
                                     Budget{1, 16}))
      line.pass = false;
    const Gallery& g = pristine_gallery();
    Formula closed = forall_so("P", 1, g.formula("delta1"));
    CheckOutcome o2 = equiv_upto(closed, g.formula("psi1"), Budget{3, 16});
    if (o2.ok() || !reverify_counter(closed, g.formula("psi1"), true, *o2.counter, Budget{3, 16}))
      line.pass = false;
    line.detail = render_outcome(o1) + "; " + render_outcome(o2);
    rep.lines.push_back(line);
  }
  return rep;
}

VerifySummary run_verify(const SuiteOptions& opt) {
  VerifySummary s;
  Gallery g;
  if (opt.corrupt_psi0) g.corrupt_psi0();
  s.suites.push_back(gallery_suite(g, Budget{opt.max_size, 16}));
  SuiteOptions bound = opt;
  s.suites.push_back(bind_law_suite(bound));
  return s;
}

std::string verify_text(const VerifySummary& s) {
  std::ostringstream out;
  int total = 0;
  for (const auto& suite : s.suites) {
    for (const auto& l : suite.lines) {
      ++total;
      out << (l.pass ? "PASS" : "FAIL") << "  " << suite.name << " :: " << l.label;
      if (!l.detail.empty()) out << "  (" << l.detail << ")";
      out << "\n";
    }
  }
  out << total << " claims, " << s.failures() << " failures\n";
  return out.str();
}

nlohmann::json verify_json(const VerifySummary& s) {
  nlohmann::json suites = nlohmann::json::array();
  for (const auto& suite : s.suites) {
    nlohmann::json lines = nlohmann::json::array();
    for (const auto& l : suite.lines)
      lines.push_back({{"pass", l.pass}, {"label", l.label}, {"detail", l.detail}});
    suites.push_back({{"name", suite.name}, {"lines", lines}});
  }
  return {{"suites", suites}, {"failures", s.failures()}};
}

}  // namespace folab
