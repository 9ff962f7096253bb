#include "folab/gallery.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "folab/classify.hpp"
#include "folab/errors.hpp"
#include "folab/json_io.hpp"
#include "folab/ops.hpp"
#include "folab/sandwich.hpp"
#include "folab/syntax.hpp"
#include "folab/transforms.hpp"

namespace folab {

namespace {

Formula R(int a, int b) { return rel("R", {x(a), x(b)}); }
Formula G(int a) { return rel("G", {x(a)}); }
Formula P(int a) { return rel("P", {x(a)}); }

// Claims are checked at min(requested size, their pinned bound) so that
// raising --max-size never turns a finite check into an intractable one.
Budget clamp(const Budget& b, int bound) {
  Budget e = b;
  e.max_domain = std::min(e.max_domain, bound);
  return e;
}

// The one structure that separates the forall-closure of delta1 from psi1:
// a single edge, whose transitive closure adds nothing.
Structure pinned_refutation() {
  Structure m;
  m.domain = 2;
  m.add_relation("R", 2);
  m.add_tuple("R", {0, 0});
  return m;
}

bool matches_pin(const CheckOutcome& o) {
  return o.counter.has_value() && o.counter->structure == pinned_refutation() &&
         o.counter->assignment.empty();
}

ExpectationResult outcome_result(const CheckOutcome& o, bool want_ok) {
  return {o.ok() == want_ok, render_outcome(o)};
}

Expectation expect_roundtrip(std::string id) {
  return {"round-trips through the concrete syntax",
          [id](const Gallery& g, const Budget&) -> ExpectationResult {
            Formula f = g.formula(id);
            std::string text = print(f);
            bool ok = parse(text) == f;
            return {ok, ok ? text : "reparse differs: " + text};
          }};
}

Expectation expect_member(std::string id, FragmentId frag, bool want) {
  std::string desc = std::string(fragment_name(frag)) + ": " + (want ? "yes" : "no");
  return {desc, [id, frag, want](const Gallery& g, const Budget&) -> ExpectationResult {
            MembershipResult r = fragment_membership(g.formula(id), frag);
            std::string detail = r.member ? "member" : r.reason;
            if (r.member && r.levels) detail += " " + r.levels->str();
            return {r.member == want, detail};
          }};
}

Expectation expect_level(std::string id, FragmentId frag, LevelSet want) {
  std::string desc = std::string(fragment_name(frag)) + ": yes, levels " + want.str();
  return {desc, [id, frag, want](const Gallery& g, const Budget&) -> ExpectationResult {
            MembershipResult r = fragment_membership(g.formula(id), frag);
            if (!r.member) return {false, r.reason};
            bool ok = r.levels.has_value() && *r.levels == want;
            return {ok, r.levels ? r.levels->str() : "no levels reported"};
          }};
}

Expectation expect_entails(std::string desc, std::string lhs_id, std::string rhs_id, int bound) {
  return {std::move(desc),
          [lhs_id, rhs_id, bound](const Gallery& g, const Budget& b) -> ExpectationResult {
            return outcome_result(
                entails_upto(g.formula(lhs_id), g.formula(rhs_id), clamp(b, bound)), true);
          }};
}

using Hidden = std::vector<std::pair<std::string, int>>;

Expectation expect_exists_closure(std::string desc, std::string lhs_id, Hidden preds,
                                  std::string target_id, int bound) {
  return {std::move(desc),
          [lhs_id, preds, target_id, bound](const Gallery& g, const Budget& b) -> ExpectationResult {
            Formula lhs = g.formula(lhs_id);
            for (auto it = preds.rbegin(); it != preds.rend(); ++it)
              lhs = exists_so(it->first, it->second, lhs);
            return outcome_result(equiv_upto(lhs, g.formula(target_id), clamp(b, bound)), true);
          }};
}

Expectation expect_forall_closure(std::string desc, std::string lhs_id, Hidden preds,
                                  std::string target_id, int bound, bool refuted) {
  return {std::move(desc),
          [lhs_id, preds, target_id, bound, refuted](const Gallery& g,
                                                     const Budget& b) -> ExpectationResult {
            Formula lhs = g.formula(lhs_id);
            for (auto it = preds.rbegin(); it != preds.rend(); ++it)
              lhs = forall_so(it->first, it->second, lhs);
            Budget eff = clamp(b, bound);
            CheckOutcome o = equiv_upto(lhs, g.formula(target_id), eff);
            if (!refuted) return outcome_result(o, true);
            // The refutation only appears from size 2 on; below that the
            // check is vacuously clean.
            if (eff.max_domain < 2) return outcome_result(o, true);
            return {matches_pin(o), render_outcome(o)};
          }};
}

Expectation expect_sandwich(std::string desc, std::string gamma_id, std::string chi_id,
                            Hidden hidden_exists, Hidden hidden_forall, std::string target_id,
                            bool forall_refuted) {
  return {std::move(desc),
          [gamma_id, chi_id, hidden_exists, hidden_forall, target_id, forall_refuted](
              const Gallery& g, const Budget& b) -> ExpectationResult {
            Sandwich s;
            s.gamma = g.formula(gamma_id);
            s.chi = g.formula(chi_id);
            s.hidden_exists = hidden_exists;
            s.hidden_forall = hidden_forall;
            s.target = g.formula(target_id);
            Budget eff = clamp(b, 3);
            SandwichReport r = sandwich_check(s, eff);
            std::string detail = "entailment " + render_outcome(r.entailment) +
                                 "; exists-side " + render_outcome(r.exists_side) +
                                 "; forall-side " + render_outcome(r.forall_side);
            bool forall_ok;
            if (!forall_refuted || eff.max_domain < 2)
              forall_ok = r.forall_side.ok();
            else
              forall_ok = matches_pin(r.forall_side);
            return {r.entailment.ok() && r.exists_side.ok() && forall_ok, detail};
          }};
}

GalleryItem make(std::string id, Formula f, std::string source, std::vector<std::string> notes,
                 std::vector<Expectation> expected) {
  GalleryItem it;
  it.id = std::move(id);
  it.formula = std::move(f);
  it.source = std::move(source);
  it.notes = std::move(notes);
  it.expected.push_back(expect_roundtrip(it.id));
  for (auto& e : expected) it.expected.push_back(std::move(e));
  return it;
}

}  // namespace

Gallery::Gallery() {
  Formula psi0 =
      forall(x(2), forall(x(3), implies(land(R(1, 2), R(2, 3)), R(1, 3))));
  Formula trans = forall(x(1), forall(x(2), forall(x(3), implies(land(R(1, 2), R(2, 3)), R(1, 3)))));
  Formula psi1 = lnot(trans);

  Formula gamma0 =
      land(forall(x(2), implies(R(1, 2), forall(x(3), implies(R(2, 3), G(3))))),
           forall(x(2), implies(G(2), R(1, 2))));
  Formula gamma1 =
      implies(exists(x(2), land(R(1, 2), exists(x(3), land(R(2, 3), P(3))))),
              exists(x(2), land(R(1, 2), P(2))));
  Formula delta0 =
      land(forall(x(1), implies(rel("G1", {x(1)}),
                                forall(x(2), implies(rel("G2", {x(2)}), lnot(R(1, 2)))))),
           exists(x(1), land(rel("G1", {x(1)}),
                             exists(x(2), land(R(1, 2),
                                               exists(x(3), land(R(2, 3), rel("G2", {x(3)}))))))));
  Formula delta1 =
      exists(x(1), implies(forall(x(2), iff(P(2), lnot(R(1, 2)))),
                           exists(x(2), land(R(1, 2), exists(x(3), land(R(2, 3), P(3)))))));

  Formula gamma0_fo2 =
      land(forall(x(2), implies(R(1, 2), forall(x(1), implies(R(2, 1), G(1))))),
           forall(x(2), implies(G(2), R(1, 2))));
  Formula gamma1_fo2 =
      implies(exists(x(2), land(R(1, 2), exists(x(1), land(R(2, 1), P(1))))),
              exists(x(2), land(R(1, 2), P(2))));
  Formula delta0_fo2 =
      land(forall(x(1), implies(rel("G1", {x(1)}),
                                forall(x(2), implies(rel("G2", {x(2)}), lnot(R(1, 2)))))),
           exists(x(1), land(rel("G1", {x(1)}),
                             exists(x(2), land(R(1, 2),
                                               exists(x(1), land(R(2, 1), rel("G2", {x(1)}))))))));
  Formula delta1_fo2 =
      exists(x(1), implies(forall(x(2), iff(P(2), lnot(R(1, 2)))),
                           exists(x(2), land(R(1, 2), exists(x(1), land(R(2, 1), P(1)))))));

  Formula footnote_cycle = exists(x(1), exists(x(2), land(R(1, 2), R(2, 1))));
  Formula subst_before = exists(x(1), exists(x(2), land(R(1, 2), lnot(rel("S", {x(1), x(2)})))));
  Formula subst_after =
      exists(x(1), exists(x(2), land(land(eq(x(1), x(1)), eq(x(2), x(2))),
                                     lnot(rel("S", {x(1), x(2)})))));
  Formula fl_conj = land(P(1), P(2));

  Hidden hG = {{"G", 1}};
  Hidden hP = {{"P", 1}};
  Hidden hG12 = {{"G1", 1}, {"G2", 1}};

  items_.push_back(make(
      "psi0", psi0, "interpolant of the almost-transitivity pair",
      {"the level checks reject it: the conjoined premise atoms end at different indices, so "
       "there is no common level"},
      {
          expect_member("psi0", FragmentId::FO2, false),
          expect_member("psi0", FragmentId::FL, false),
          expect_member("psi0", FragmentId::FF, false),
      }));

  items_.push_back(make("trans", trans, "transitivity of R",
                        {},
                        {
                            expect_member("trans", FragmentId::GFO, false),
                            Expectation{"conjoining two renamed transitivity axioms keeps a "
                                        "one-element model",
                                        [](const Gallery&, const Budget& b) -> ExpectationResult {
                                          Formula wrapped = transitive_wrap(top(), "R1", "R2");
                                          CheckOutcome o =
                                              entails_upto(wrapped, bottom(), clamp(b, 1));
                                          return outcome_result(o, false);
                                        }},
                            Expectation{"wrapping the non-transitivity sentence yields an "
                                        "unsatisfiable conjunction",
                                        [](const Gallery& g, const Budget& b) -> ExpectationResult {
                                          PredicateRenaming rho;
                                          rho.mapping = {{"R", "R1"}};
                                          Formula f = rename_predicates(g.formula("psi1"), rho);
                                          Formula wrapped = transitive_wrap(f, "R1", "R2");
                                          CheckOutcome o =
                                              entails_upto(wrapped, bottom(), clamp(b, 3));
                                          return outcome_result(o, true);
                                        }},
                        }));

  items_.push_back(make("psi1", psi1, "negated transitivity of R",
                        {},
                        {
                            expect_member("psi1", FragmentId::FL, false),
                            expect_member("psi1", FragmentId::FO2, false),
                        }));

  items_.push_back(make(
      "gamma0", gamma0, "lower sandwich half for the transitivity interpolant",
      {"the printed form nests the second conjunct inside the first universal; transcribed as a "
       "flat conjunction (the readings differ on a one-element structure with empty R)"},
      {
          expect_level("gamma0", FragmentId::FL, LevelSet::finite({1})),
          expect_entails("entails gamma1", "gamma0", "gamma1", 3),
          expect_exists_closure("projecting out G is equivalent to psi0", "gamma0", hG, "psi0", 3),
          expect_sandwich("sandwich with gamma1 onto psi0 passes all three checks", "gamma0",
                          "gamma1", hG, hP, "psi0", false),
      }));

  items_.push_back(make("gamma1", gamma1, "upper sandwich half for the transitivity interpolant",
                        {},
                        {
                            expect_level("gamma1", FragmentId::FL, LevelSet::finite({1})),
                            expect_forall_closure("closing P universally is equivalent to psi0",
                                                  "gamma1", hP, "psi0", 3, false),
                        }));

  items_.push_back(make(
      "delta0", delta0, "lower sandwich half for the negated-transitivity interpolant",
      {"the printed form nests the existential block inside the leading universal; transcribed "
       "as a flat conjunction"},
      {
          expect_level("delta0", FragmentId::FL, LevelSet::finite({0})),
          expect_entails("entails delta1", "delta0", "delta1", 3),
          expect_exists_closure("projecting out G1, G2 is equivalent to psi1", "delta0", hG12,
                                "psi1", 3),
      }));

  items_.push_back(make(
      "delta1", delta1, "upper sandwich half for the negated-transitivity interpolant",
      {"closing P universally is NOT equivalent to psi1: on any structure where R has two "
       "distinct rows, every choice of P leaves a vacuous witness, so the closure is true even "
       "when R is transitive; the first refuting structure is pinned below"},
      {
          expect_level("delta1", FragmentId::FL, LevelSet::finite({0})),
          expect_forall_closure(
              "closing P universally differs from psi1 exactly at the pinned one-edge structure",
              "delta1", hP, "psi1", 3, true),
          expect_sandwich("sandwich with delta0 onto psi1: entailment and exists-side hold, "
                          "forall-side is refuted by the pinned structure",
                          "delta0", "delta1", hG12, hP, "psi1", true),
      }));

  items_.push_back(make(
      "gamma0_fo2", gamma0_fo2, "two-variable rewriting of gamma0",
      {"reuses x1 for the innermost universal; same flat-conjunction reading as gamma0"},
      {
          expect_member("gamma0_fo2", FragmentId::FO2, true),
          expect_entails("entails gamma1_fo2", "gamma0_fo2", "gamma1_fo2", 3),
          expect_exists_closure("projecting out G is equivalent to psi0", "gamma0_fo2", hG,
                                "psi0", 3),
          expect_sandwich("sandwich with gamma1_fo2 onto psi0 passes all three checks",
                          "gamma0_fo2", "gamma1_fo2", hG, hP, "psi0", false),
      }));

  items_.push_back(make("gamma1_fo2", gamma1_fo2, "two-variable rewriting of gamma1",
                        {},
                        {
                            expect_member("gamma1_fo2", FragmentId::FO2, true),
                            expect_forall_closure("closing P universally is equivalent to psi0",
                                                  "gamma1_fo2", hP, "psi0", 3, false),
                        }));

  items_.push_back(make(
      "delta0_fo2", delta0_fo2, "two-variable rewriting of delta0",
      {"same flat-conjunction reading as delta0"},
      {
          expect_member("delta0_fo2", FragmentId::FO2, true),
          expect_entails("entails delta1_fo2", "delta0_fo2", "delta1_fo2", 3),
          expect_exists_closure("projecting out G1, G2 is equivalent to psi1", "delta0_fo2",
                                hG12, "psi1", 3),
      }));

  items_.push_back(make(
      "delta1_fo2", delta1_fo2, "two-variable rewriting of delta1",
      {"the printed biconditional applies P to the outer variable; transcribed with P on the "
       "quantified variable, matching delta1",
       "inherits the pinned refutation of delta1: the two sentences agree on every structure"},
      {
          expect_member("delta1_fo2", FragmentId::FO2, true),
          expect_forall_closure(
              "closing P universally differs from psi1 exactly at the pinned one-edge structure",
              "delta1_fo2", hP, "psi1", 3, true),
          expect_sandwich("sandwich with delta0_fo2 onto psi1: entailment and exists-side hold, "
                          "forall-side is refuted by the pinned structure",
                          "delta0_fo2", "delta1_fo2", hG12, hP, "psi1", true),
      }));

  items_.push_back(make("footnote_cycle", footnote_cycle, "two-element R-cycle",
                        {},
                        {
                            expect_member("footnote_cycle", FragmentId::GFO, true),
                            expect_member("footnote_cycle", FragmentId::FO2, true),
                            expect_member("footnote_cycle", FragmentId::UNFO, true),
                            expect_member("footnote_cycle", FragmentId::FF, false),
                        }));

  items_.push_back(make("gfo_subst_before", subst_before,
                        "guarded sentence whose guard gets substituted away",
                        {},
                        {
                            expect_member("gfo_subst_before", FragmentId::GFO, true),
                        }));

  items_.push_back(make(
      "gfo_subst_after", subst_after, "result of substituting trivial equalities for the guard",
      {},
      {
          expect_member("gfo_subst_after", FragmentId::GFO, false),
          expect_member("gfo_subst_after", FragmentId::GNFO_PRIMITIVE, false),
          Expectation{"equals the substitution product of gfo_subst_before",
                      [](const Gallery& g, const Budget&) -> ExpectationResult {
                        AtomSubstitution subst;
                        subst.emplace("R", AtomReplacement{{x(1), x(2)}, land(eq(x(1), x(1)),
                                                                              eq(x(2), x(2)))});
                        Formula got = substitute_atoms(g.formula("gfo_subst_before"), subst);
                        bool ok = got == g.formula("gfo_subst_after");
                        return {ok, print(got)};
                      }},
      }));

  items_.push_back(make("fl_conj", fl_conj, "conjunction of unary atoms at different indices",
                        {},
                        {
                            Expectation{"FL: no, with reason 'no common level'",
                                        [](const Gallery& g, const Budget&) -> ExpectationResult {
                                          MembershipResult r = fragment_membership(
                                              g.formula("fl_conj"), FragmentId::FL);
                                          bool ok = !r.member && r.reason == "no common level";
                                          return {ok, r.member ? "member" : r.reason};
                                        }},
                            expect_level("fl_conj", FragmentId::FF, LevelSet::up_from(2)),
                        }));
}

const GalleryItem& Gallery::item(const std::string& id) const {
  for (const auto& it : items_)
    if (it.id == id) return it;
  throw Error(Errc::unknown_id, "no gallery item named '" + id + "'");
}

Formula Gallery::formula(const std::string& id) const { return item(id).formula; }

void Gallery::corrupt_psi0() {
  for (auto& it : items_) {
    if (it.id != "psi0") continue;
    it.formula =
        forall(x(2), forall(x(3), implies(land(R(1, 2), R(2, 3)), bottom())));
    it.notes.push_back("MUTATED: consequent replaced by 'false'");
    return;
  }
}

const Gallery& pristine_gallery() {
  static const Gallery g;
  return g;
}

const GalleryItem& paper_formula(const std::string& id) { return pristine_gallery().item(id); }

std::string gallery_dump_text(const Gallery& g) {
  std::ostringstream out;
  bool first = true;
  for (const auto& it : g.items()) {
    if (!first) out << "\n";
    first = false;
    out << "[" << it.id << "]\n";
    out << "formula: " << print(it.formula) << "\n";
    out << "source: " << it.source << "\n";
    for (const auto& n : it.notes) out << "note: " << n << "\n";
    for (const auto& e : it.expected) out << "expect: " << e.description << "\n";
  }
  return out.str();
}

nlohmann::json gallery_dump_json(const Gallery& g) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& it : g.items()) {
    nlohmann::json j;
    j["id"] = it.id;
    j["formula"] = print(it.formula);
    j["source"] = it.source;
    j["notes"] = it.notes;
    nlohmann::json ex = nlohmann::json::array();
    for (const auto& e : it.expected) ex.push_back(e.description);
    j["expected"] = ex;
    arr.push_back(j);
  }
  return arr;
}

}  // namespace folab
