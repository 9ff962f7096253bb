#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <folab/formula.hpp>
#include <folab/gallery.hpp>
#include <folab/ops.hpp>
#include <folab/semantics.hpp>
#include <folab/syntax.hpp>

using namespace folab;

namespace {

Structure chain3() {
  Structure m;
  m.domain = 3;
  m.add_relation("R", 2);
  m.add_tuple("R", {0, 1});
  m.add_tuple("R", {1, 2});
  return m;
}

}  // namespace

TEST_CASE("cell layout is row-major with the first position most significant") {
  CHECK(cell_count(2, 0) == 1);
  CHECK(cell_count(2, 2) == 4);
  CHECK(cell_count(3, 2) == 9);
  CHECK(cell_index({}, 2) == 0);
  CHECK(cell_index({0, 0}, 2) == 0);
  CHECK(cell_index({0, 1}, 2) == 1);
  CHECK(cell_index({1, 0}, 2) == 2);
  CHECK(cell_index({1, 1}, 2) == 3);
  CHECK(cell_index({1, 2}, 3) == 5);
}

TEST_CASE("relation bitset basics") {
  Relation r(2, 2);
  CHECK(r.cells() == 4);
  CHECK_FALSE(r.contains({0, 1}, 2));
  r.add({0, 1}, 2);
  CHECK(r.contains({0, 1}, 2));
  CHECK(r.tuples(2) == std::vector<std::vector<int>>{{0, 1}});
  r.clear();
  CHECK(r.tuples(2).empty());

  // increment steps the bitset as a binary counter over cells
  Relation c(1, 2);
  CHECK(c.increment());
  CHECK(c.contains({0}, 2));
  CHECK(c.increment());
  CHECK_FALSE(c.contains({0}, 2));
  CHECK(c.contains({1}, 2));
  CHECK(c.increment());
  CHECK(c.contains({0}, 2));
  CHECK(c.contains({1}, 2));
  CHECK_FALSE(c.increment());  // wraps to empty
  CHECK(c.tuples(2).empty());
}

TEST_CASE("eval on atoms, connectives and quantifiers") {
  Structure m;
  m.domain = 2;
  m.add_relation("R", 2);
  m.add_tuple("R", {0, 1});
  Assignment g{{1, 0}, {2, 1}};

  CHECK(eval(m, g, rel("R", {x(1), x(2)})));
  CHECK_FALSE(eval(m, g, rel("R", {x(2), x(1)})));
  CHECK(eval(m, g, eq(x(1), x(1))));
  CHECK_FALSE(eval(m, g, eq(x(1), x(2))));
  CHECK(eval(m, g, top()));
  CHECK_FALSE(eval(m, g, bottom()));
  CHECK(eval(m, g, implies(bottom(), rel("R", {x(2), x(1)}))));
  CHECK(eval(m, g, iff(rel("R", {x(1), x(2)}), top())));
  CHECK(eval(m, {}, exists(x(1), exists(x(2), rel("R", {x(1), x(2)})))));
  CHECK_FALSE(eval(m, {}, forall(x(1), exists(x(2), rel("R", {x(1), x(2)})))));
}

TEST_CASE("eval of the transitivity-at-x1 pattern") {
  Formula psi0 = pristine_gallery().formula("psi0");
  Structure m = chain3();
  CHECK_FALSE(eval(m, {{1, 0}}, psi0));  // R(0,1), R(1,2) but no R(0,2)
  m.add_tuple("R", {0, 2});
  CHECK(eval(m, {{1, 0}}, psi0));
}

TEST_CASE("second-order binders enumerate expansions") {
  Structure m;
  m.domain = 2;
  m.add_relation("R", 2);

  // some unary P always works: take P = whole domain
  for (int a = 0; a < 2; ++a)
    CHECK(eval(m, {{1, a}}, exists_so("P", 1, rel("P", {x(1)}))));
  CHECK_FALSE(eval(m, {{1, 0}}, forall_so("P", 1, rel("P", {x(1)}))));

  // P can separate the two elements
  Formula separate = exists_so(
      "P", 1, land(rel("P", {x(1)}), lnot(rel("P", {x(2)}))));
  CHECK(eval(m, {{1, 0}, {2, 1}}, separate));
  CHECK_FALSE(eval(m, {{1, 0}, {2, 0}}, separate));
}

TEST_CASE("existential SO quantification agrees with direct enumeration") {
  // independent oracle: loop over all 2^(n^k) bitmasks by hand
  auto direct_exists = [](const Structure& m, const Assignment& g, int k,
                          const Formula& body) {
    Structure ext = m;
    ext.add_relation("P", k);
    long long cells = cell_count(ext.domain, k);
    for (long long mask = 0; mask < (1LL << cells); ++mask) {
      Relation& p = ext.relations.at("P");
      p.clear();
      for (long long c = 0; c < cells; ++c) p.set(c, (mask >> c) & 1);
      if (eval(ext, g, body)) return true;
    }
    return false;
  };

  std::vector<std::pair<int, Formula>> cases = {
      {1, rel("P", {x(1)})},
      {1, land(rel("P", {x(1)}), lnot(rel("P", {x(2)})))},
      {1, implies(rel("R", {x(1), x(2)}), rel("P", {x(2)}))},
      {1, forall(x(3), iff(rel("P", {x(3)}), rel("R", {x(3), x(3)})))},
      {2, land(rel("P", {x(1), x(2)}), lnot(rel("P", {x(2), x(1)})))},
      {2, forall(x(3), implies(rel("P", {x(3), x(3)}), rel("R", {x(3), x(3)})))},
  };
  Signature sig;
  sig.add("R", 2);
  for (int n = 1; n <= 2; ++n) {
    for (StructureStream stream(sig, n); !stream.exhausted();
         stream.advance()) {
      const Structure& m = stream.current();
      Assignment g;
      for (int v = 1; v <= 3; ++v) g[v] = (v - 1) % n;
      for (const auto& [k, body] : cases) {
        CHECK(eval(m, g, exists_so("P", k, body)) ==
              direct_exists(m, g, k, body));
      }
    }
  }
}

TEST_CASE("SO quantifiers satisfy De Morgan duality") {
  Signature sig;
  sig.add("R", 2);
  std::vector<Formula> bodies = {
      rel("P", {x(1)}),
      implies(rel("R", {x(1), x(2)}), rel("P", {x(1)})),
      exists(x(3), land(rel("P", {x(3)}), rel("R", {x(3), x(1)}))),
  };
  for (int n = 1; n <= 2; ++n) {
    StructureStream stream(sig, n);
    while (!stream.exhausted()) {
      const Structure& m = stream.current();
      Assignment g{{1, 0}, {2, n - 1}};
      for (const Formula& body : bodies) {
        CHECK(eval(m, g, forall_so("P", 1, body)) ==
              !eval(m, g, exists_so("P", 1, lnot(body))));
      }
      stream.advance();
    }
  }
}

TEST_CASE("interpret collects the defined tuples") {
  Structure m;
  m.domain = 2;
  m.add_relation("R", 2);
  m.add_tuple("R", {0, 1});

  CHECK(interpret(m, exists(x(2), rel("R", {x(1), x(2)})), {x(1)}) ==
        std::set<std::vector<int>>{{0}});
  CHECK(interpret(m, eq(x(1), x(1)), {x(1)}) ==
        std::set<std::vector<int>>{{0}, {1}});
  CHECK(interpret(m, bottom(), {x(1)}).empty());
  CHECK(interpret(m, rel("R", {x(2), x(1)}), {x(1), x(2)}) ==
        std::set<std::vector<int>>{{1, 0}});
}

TEST_CASE("apply_substitution_structure") {
  Structure m;
  m.domain = 3;
  m.add_relation("R", 2);
  m.add_tuple("R", {0, 1});

  AtomSubstitution diag;
  diag.emplace("R", AtomReplacement{{x(1), x(2)}, eq(x(1), x(2))});
  Structure md = apply_substitution_structure(m, diag);
  CHECK(md.relations.at("R").tuples(3) ==
        std::vector<std::vector<int>>{{0, 0}, {1, 1}, {2, 2}});

  AtomSubstitution ident;
  ident.emplace("R", AtomReplacement{{x(1), x(2)}, rel("R", {x(1), x(2)})});
  CHECK(apply_substitution_structure(m, ident) == m);
}

TEST_CASE("substitution expression matches substitution structure") {
  // eval(substitute_atoms(f, s), M, g) == eval(f, M[s], g)
  std::vector<Formula> shapes = {
      exists(x(2), rel("R", {x(1), x(2)})),
      forall(x(1), implies(rel("R", {x(1), x(1)}), rel("P", {x(1)}))),
      land(rel("P", {x(1)}), lnot(rel("R", {x(2), x(1)}))),
  };
  AtomSubstitution s;
  s.emplace("R", AtomReplacement{{x(1), x(2)},
                                 lor(eq(x(1), x(2)), rel("P", {x(2)}))});
  Signature sig;
  sig.add("R", 2);
  sig.add("P", 1);
  for (int n = 1; n <= 2; ++n) {
    StructureStream stream(sig, n);
    while (!stream.exhausted()) {
      const Structure& m = stream.current();
      Structure sub = apply_substitution_structure(m, s);
      for (const Formula& f : shapes) {
        Formula g = substitute_atoms(f, s);
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            CHECK(eval(m, {{1, a}, {2, b}}, g) ==
                  eval(sub, {{1, a}, {2, b}}, f));
      }
      stream.advance();
    }
  }
}

TEST_CASE("structure stream counts and order") {
  Signature p1;
  p1.add("P", 1);
  int count = 0;
  for (StructureStream s(p1, 2); !s.exhausted(); s.advance()) ++count;
  CHECK(count == 4);

  Signature r2;
  r2.add("R", 2);
  std::set<std::string> seen;
  count = 0;
  for (StructureStream s(r2, 2); !s.exhausted(); s.advance()) {
    ++count;
    std::string key;
    for (const auto& t : s.current().relations.at("R").tuples(2))
      key += std::to_string(t[0]) + std::to_string(t[1]) + ";";
    CHECK(seen.insert(key).second);  // no duplicates
  }
  CHECK(count == 16);

  Signature empty;
  count = 0;
  for (StructureStream s(empty, 3); !s.exhausted(); s.advance()) ++count;
  CHECK(count == 1);

  // with two relations the name-wise last one changes fastest
  Signature two;
  two.add("P", 1);
  two.add("Q", 1);
  StructureStream s(two, 1);
  CHECK(s.current().relations.at("P").tuples(1).empty());
  CHECK(s.current().relations.at("Q").tuples(1).empty());
  s.advance();
  CHECK(s.current().relations.at("P").tuples(1).empty());
  CHECK(s.current().relations.at("Q").tuples(1) ==
        std::vector<std::vector<int>>{{0}});
  s.advance();
  CHECK(s.current().relations.at("P").tuples(1) ==
        std::vector<std::vector<int>>{{0}});
  CHECK(s.current().relations.at("Q").tuples(1).empty());
}

TEST_CASE("entails_upto") {
  const Gallery& g = pristine_gallery();
  CheckOutcome ok = entails_upto(g.formula("gamma0"), g.formula("gamma1"),
                                 Budget{3, 16});
  CHECK(ok.ok());
  CHECK(ok.verified_up_to == 3);

  CheckOutcome bad = entails_upto(rel("P", {x(1)}), rel("Q", {x(1)}),
                                  Budget{1, 16});
  REQUIRE_FALSE(bad.ok());
  const Countermodel& c = *bad.counter;
  CHECK(c.structure.domain == 1);
  CHECK(c.structure.relations.at("P").tuples(1) ==
        std::vector<std::vector<int>>{{0}});
  CHECK(c.structure.relations.at("Q").tuples(1).empty());
  CHECK(c.assignment == Assignment{{1, 0}});
  // the witness re-verifies: phi holds, psi fails
  CHECK(eval(c.structure, c.assignment, rel("P", {x(1)})));
  CHECK_FALSE(eval(c.structure, c.assignment, rel("Q", {x(1)})));
}

TEST_CASE("equiv_upto") {
  Formula p = rel("P", {x(1)});
  CHECK(equiv_upto(p, lnot(lnot(p)), Budget{2, 16}).ok());
  CHECK(equiv_upto(land(p, rel("Q", {x(1)})), land(rel("Q", {x(1)}), p),
                   Budget{3, 16})
            .ok());
  CheckOutcome diff = equiv_upto(p, lnot(p), Budget{1, 16});
  CHECK_FALSE(diff.ok());

  // two-sided: detects a failure in the reverse direction too
  Formula q = rel("Q", {x(1)});
  CheckOutcome oneway = equiv_upto(land(p, q), p, Budget{2, 16});
  REQUIRE_FALSE(oneway.ok());
  CHECK(eval(oneway.counter->structure, oneway.counter->assignment, p) !=
        eval(oneway.counter->structure, oneway.counter->assignment,
             land(p, q)));
}

TEST_CASE("evaluation errors") {
  Structure m;
  m.domain = 3;
  m.add_relation("R", 2);

  CHECK_THROWS_AS(eval(m, {}, rel("P", {x(1)})), Error);  // missing relation
  try {
    eval(m, {}, rel("R", {x(1), x(2)}));
    FAIL("unbound variable must throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unbound_variable);
  }

  // SO expansion beyond the cell cap
  try {
    eval(m, {{1, 0}}, exists_so("T", 3, rel("T", {x(1), x(1), x(1)})),
         Budget{3, 16});
    FAIL("expansion past the cap must throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::budget_exceeded);
  }

  // streaming a signature that exceeds the total-cell cap
  Formula wide = rel("W", {x(1), x(2), x(3)});
  CHECK_THROWS_AS(entails_upto(wide, wide, Budget{3, 16}), Error);
}

TEST_CASE("reduct property: extra relations do not change eval") {
  Formula f = exists(x(2), rel("R", {x(1), x(2)}));
  Structure m;
  m.domain = 2;
  m.add_relation("R", 2);
  m.add_tuple("R", {0, 1});
  bool base = eval(m, {{1, 0}}, f);
  Structure ext = m;
  ext.add_relation("Extra", 1);
  ext.add_tuple("Extra", {1});
  CHECK(eval(ext, {{1, 0}}, f) == base);
}

TEST_CASE("sandwich reports carry the three outcomes") {
  // a trivial sandwich: gamma == chi == target, no hidden symbols
  Sandwich s;
  s.gamma = rel("P", {x(1)});
  s.chi = rel("P", {x(1)});
  s.target = rel("P", {x(1)});
  SandwichReport r = sandwich_check(s, Budget{3, 16});
  CHECK(r.ok());
  CHECK(r.domain_used == 3);
  CHECK(r.entailment.verified_up_to == 3);

  Sandwich bad = s;
  bad.chi = rel("Q", {x(1)});
  bad.target = rel("Q", {x(1)});
  SandwichReport rb = sandwich_check(bad, Budget{3, 16});
  CHECK_FALSE(rb.ok());
  CHECK_FALSE(rb.entailment.ok());
}

TEST_CASE("hidden binary predicates cap the closure checks at size 2") {
  // exists-closure over a binary hidden predicate is capped; the forall
  // side with only unary hidden predicates still runs at the full bound
  Sandwich s;
  s.gamma = exists(x(2), land(rel("G", {x(1), x(2)}), rel("P", {x(1)})));
  s.chi = rel("P", {x(1)});
  s.target = rel("P", {x(1)});
  s.hidden_exists = {{"G", 2}};
  SandwichReport r = sandwich_check(s, Budget{3, 16});
  CHECK(r.exists_side.verified_up_to <= 2);
  CHECK(r.forall_side.verified_up_to == 3);
  CHECK(r.domain_used == 3);
}
