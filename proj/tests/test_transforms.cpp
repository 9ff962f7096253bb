#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <folab/classify.hpp>
#include <folab/gallery.hpp>
#include <folab/syntax.hpp>
#include <folab/transforms.hpp>

using namespace folab;

namespace {

Errc thrown_code(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a folab::Error");
  return Errc::bad_argument;
}

std::vector<Variable> vars(std::initializer_list<int> xs) {
  std::vector<Variable> out;
  for (int i : xs) out.push_back(Variable{i});
  return out;
}

}  // namespace

TEST_CASE("bind unfolds atoms and commutes with & and E") {
  CHECK(print(folab::bind(parse("R(x1,x2)"), vars({2}), {"P"})) ==
        "(E x2. (R(x1,x2) & P(x2)))");
  // variables absent from the atom leave it alone
  CHECK(folab::bind(parse("Q(x1)"), vars({2}), {"P"}) == parse("Q(x1)"));
  CHECK(print(folab::bind(parse("E x3. (R(x1,x2) & S(x2,x3))"), vars({1}), {"P"})) ==
        "(E x3. ((E x1. (R(x1,x2) & P(x1))) & S(x2,x3)))");

  // bound variables disappear from the free set, nothing else does
  Formula f = parse("R(x1,x2) & E x3. S(x2,x3)");
  CHECK(free_vars(folab::bind(f, vars({2}), {"P"})) == std::set<int>{1});
  CHECK(free_vars(folab::bind(f, vars({1, 2}), {"P", "Q"})).empty());
  CHECK(free_vars(folab::bind(f, vars({5}), {"P"})) == std::set<int>{1, 2});
}

TEST_CASE("bind input validation") {
  Formula r = parse("R(x1,x2)");
  CHECK(thrown_code([&] { folab::bind(r, vars({2}), {"P", "Q"}); }) ==
        Errc::arity_mismatch);
  CHECK(thrown_code([&] { folab::bind(r, vars({1, 1}), {"P", "Q"}); }) ==
        Errc::bad_argument);
  CHECK(thrown_code([&] { folab::bind(r, vars({1, 2}), {"P", "P"}); }) ==
        Errc::bad_argument);
  CHECK(thrown_code([&] { folab::bind(parse("P(x1) | Q(x1)"), vars({1}), {"G"}); }) ==
        Errc::not_exists_and);
  CHECK(thrown_code([&] { folab::bind(parse("E x2. R(x1,x2)"), vars({2}), {"P"}); }) ==
        Errc::not_clean);
  // marker predicates must be fresh and end up unary
  CHECK(thrown_code([&] { folab::bind(r, vars({1}), {"R"}); }) ==
        Errc::arity_mismatch);
  CHECK(thrown_code([&] { folab::bind(parse("P(x1) & R(x1,x2)"), vars({2}), {"P"}); }) ==
        Errc::not_fresh);
}

TEST_CASE("bind marker laws on a hand instance") {
  Formula f = parse("R(x1,x2) & E x3. S(x2,x3)");
  Budget two{2, 16};

  // marking then conjoining the markers is entailed by the original
  Formula bound = folab::bind(f, vars({1, 2}), {"P", "Q"});
  Formula premise = land(land(parse("P(x1)"), parse("Q(x2)")), f);
  CHECK(entails_upto(premise, bound, two).ok());

  // staged binding over disjoint variable blocks equals the joint one
  Formula staged = folab::bind(folab::bind(f, vars({2}), {"Q"}), vars({1}), {"P"});
  CHECK(equiv_upto(staged, bound, two).ok());

  // E x f == A2 Q (Q(y) -> E x bind(f, y -> Q)), with y free on both sides
  Formula lhs = exists(Variable{1}, f);
  Formula rhs = forall_so(
      "Q", 1,
      implies(parse("Q(x2)"),
              exists(Variable{1}, folab::bind(f, vars({2}), {"Q"}))));
  CHECK(equiv_upto(lhs, rhs, two).ok());
}

TEST_CASE("relativize pins free variables to singleton markers") {
  std::vector<std::pair<int, std::string>> used;
  Formula rel = relativize(parse("R(x1,x2)"), &used);
  CHECK(print(rel) ==
        "(E x1. (E x2. ((((P1(x1) & (A x3. (P1(x3) -> x3=x1))) & P2(x2)) & "
        "(A x3. (P2(x3) -> x3=x2))) & R(x1,x2))))");
  CHECK(used == std::vector<std::pair<int, std::string>>{{1, "P1"}, {2, "P2"}});
  CHECK(free_vars(rel).empty());

  // sentences come back untouched
  Formula s = parse("E x1. P(x1)");
  used.clear();
  CHECK(relativize(s, &used) == s);
  CHECK(used.empty());

  // marker names dodge the existing signature
  Formula clash = relativize(parse("P1(x1)"), &used);
  REQUIRE(used.size() == 1);
  CHECK(used[0].second == "P2");

  // semantic contract: with the markers denoting singletons {a_i}, the
  // relativized sentence holds exactly when f holds at (a_1, .., a_n)
  Formula f = parse("R(x1,x2)");
  used.clear();
  Formula relf = relativize(f, &used);
  for (int d = 1; d <= 2; ++d) {
    StructureStream stream(Signature::of(f), d);
    while (!stream.exhausted()) {
      Structure m = stream.current();
      for (int a1 = 0; a1 < d; ++a1)
        for (int a2 = 0; a2 < d; ++a2) {
          Structure mm = m;
          mm.add_relation(used[0].second, 1);
          mm.add_relation(used[1].second, 1);
          mm.add_tuple(used[0].second, {a1});
          mm.add_tuple(used[1].second, {a2});
          Assignment g{{1, a1}, {2, a2}};
          CHECK(eval(mm, {}, relf) == eval(mm, g, f));
        }
      stream.advance();
    }
  }
}

TEST_CASE("singleton-marker sandwich construction") {
  Sandwich s = thm31_step(parse("R(x1,x2) & T(x1)"), "T", "T1");
  CHECK(print(s.gamma) == "((R(x1,x2) & T(x1)) & T(x1))");
  CHECK(print(s.chi) ==
        "((T1(x1) & (A x3. (T1(x3) -> x3=x1))) -> (R(x1,x2) & T1(x1)))");
  CHECK(print(s.target) == "(E2 T/1. ((R(x1,x2) & T(x1)) & T(x1)))");
  CHECK(s.hidden_exists == std::vector<std::pair<std::string, int>>{{"T", 1}});
  CHECK(s.hidden_forall == std::vector<std::pair<std::string, int>>{{"T1", 1}});
  // hidden names live on their own sides only
  CHECK_FALSE(Signature::of(s.chi).arity("T").has_value());
  CHECK_FALSE(Signature::of(s.gamma).arity("T1").has_value());

  CHECK(thrown_code([] { thm31_step(parse("R(x1,x2)"), "T", "T1"); }) ==
        Errc::bad_argument);
  CHECK(thrown_code([] { thm31_step(parse("T(x1,x2)"), "T", "T1"); }) ==
        Errc::predicate_not_unary);
  CHECK(thrown_code([] { thm31_step(parse("R(x1,x2) & T(x1)"), "T", "R"); }) ==
        Errc::not_fresh);
  CHECK(thrown_code([] { thm31_step(parse("R(x1,x2) & T(x1)"), "T", "T"); }) ==
        Errc::not_fresh);

  // on a relativized formula the three checks all pass
  Sandwich rs = thm31_step(relativize(parse("R(x1,x2)")), "P1", "P3");
  SandwichReport rep = sandwich_check(rs, Budget{2, 16});
  CHECK(rep.ok());
  CHECK(rep.entailment.verified_up_to == 2);
  CHECK(rep.exists_side.verified_up_to == 2);
  CHECK(rep.forall_side.verified_up_to == 2);
  CHECK(rep.domain_used == 2);
}

TEST_CASE("guard-expansion sandwich") {
  Formula psi = parse("R(x1,x2) & S(x2,x3)");
  Sandwich s = bindexp_sandwich(psi, vars({1}), vars({2}), Variable{3});
  CHECK(print(s.gamma) ==
        "(E x3. (G1(x1,x3) & ((E x2. (R(x1,x2) & P1(x2))) & "
        "(E x2. (S(x2,x3) & P1(x2))))))");
  CHECK(print(s.chi) ==
        "(Q1(x1) -> (E x3. (x3=x3 & ((E x1. (E x2. ((R(x1,x2) & Q1(x1)) & "
        "P1(x2)))) & (E x2. (S(x2,x3) & P1(x2)))))))");
  CHECK(print(s.target) ==
        "(E x3. ((E x2. (R(x1,x2) & P1(x2))) & (E x2. (S(x2,x3) & P1(x2)))))");
  CHECK(s.hidden_exists == std::vector<std::pair<std::string, int>>{{"G1", 2}});
  CHECK(s.hidden_forall == std::vector<std::pair<std::string, int>>{{"Q1", 1}});
  CHECK(free_vars(s.gamma) == std::set<int>{1});
  CHECK(free_vars(s.target) == std::set<int>{1});

  SandwichReport rep = sandwich_check(s, Budget{2, 16});
  CHECK(rep.ok());
  CHECK(rep.domain_used == 2);

  // disjointness preconditions
  CHECK(thrown_code([&] { bindexp_sandwich(psi, vars({1}), vars({1}), Variable{3}); }) ==
        Errc::bad_argument);
  CHECK(thrown_code([&] { bindexp_sandwich(psi, vars({1}), vars({2}), Variable{2}); }) ==
        Errc::bad_argument);
}

TEST_CASE("query projection sandwich") {
  Sandwich s = cq_sandwich(parse("R(x1,x2)"), Variable{1}, vars({2}));
  CHECK(print(s.gamma) == "(E x1. (G1(x1,x2) & R(x1,x2)))");
  CHECK(print(s.chi) ==
        "(P1(x2) -> (E x1. (x1=x1 & (E x2. (R(x1,x2) & P1(x2))))))");
  CHECK(print(s.target) == "(E x1. R(x1,x2))");
  CHECK(s.hidden_exists == std::vector<std::pair<std::string, int>>{{"G1", 2}});
  CHECK(s.hidden_forall == std::vector<std::pair<std::string, int>>{{"P1", 1}});

  // the binary hidden guard caps its own closure and the entailment at 2;
  // the unary forall side still runs to the requested bound
  SandwichReport rep = sandwich_check(s, Budget{3, 16});
  CHECK(rep.ok());
  CHECK(rep.entailment.verified_up_to == 2);
  CHECK(rep.exists_side.verified_up_to == 2);
  CHECK(rep.forall_side.verified_up_to == 3);
  CHECK(rep.domain_used == 3);

  CHECK(thrown_code([] { cq_sandwich(parse("R(x1,x2)"), Variable{2}, vars({2})); }) ==
        Errc::bad_argument);
}

TEST_CASE("variable-shuffle sandwich") {
  VariableRenaming swap;
  swap.mapping = {{1, 2}, {2, 1}};
  Sandwich s = shuffle_sandwich(parse("R(x1,x2)"), swap);
  CHECK(print(s.gamma) ==
        "((G1(x1) & G2(x2)) & (A x1. (A x2. ((G1(x2) & G2(x1)) -> R(x1,x2)))))");
  CHECK(print(s.chi) ==
        "((P1(x1) & P2(x2)) -> (E x1. (E x2. (R(x1,x2) & (P1(x2) & P2(x1))))))");
  CHECK(print(s.target) == "R(x2,x1)");
  SandwichReport rep = sandwich_check(s, Budget{3, 16});
  CHECK(rep.ok());
  CHECK(rep.entailment.verified_up_to == 3);
  CHECK(rep.exists_side.verified_up_to == 3);
  CHECK(rep.forall_side.verified_up_to == 3);

  // identity renaming keeps the target literal
  VariableRenaming id;
  id.mapping = {{1, 1}, {2, 2}};
  Sandwich si = shuffle_sandwich(parse("R(x1,x2)"), id);
  CHECK(si.target == parse("R(x1,x2)"));
  CHECK(entails_upto(si.gamma, si.chi, Budget{3, 16}).ok());
}

TEST_CASE("non-injective shuffles carry their refutation") {
  VariableRenaming squash;
  squash.mapping = {{1, 1}, {2, 1}};
  CHECK_THROWS_AS(shuffle_sandwich(parse("R(x1,x2)"), squash), NonInjectiveError);
  try {
    shuffle_sandwich(parse("R(x1,x2)"), squash);
  } catch (const NonInjectiveError& e) {
    CHECK(e.code() == Errc::non_injective_renaming);
    REQUIRE(e.outcome().counter.has_value());
    const Countermodel& cm = *e.outcome().counter;
    CHECK(cm.structure.domain == 2);
    CHECK(cm.structure.relations.at("R").tuples(2).empty());
    CHECK(cm.structure.relations.at("G1").tuples(2) ==
          std::vector<std::vector<int>>{{0}});
    CHECK(cm.structure.relations.at("G2").tuples(2) ==
          std::vector<std::vector<int>>{{1}});
    CHECK(cm.structure.relations.at("P1").tuples(2) ==
          std::vector<std::vector<int>>{{0}});
    CHECK(cm.structure.relations.at("P2").tuples(2) ==
          std::vector<std::vector<int>>{{1}});
    CHECK(cm.assignment == Assignment{{1, 0}, {2, 1}});
    // the stored structure really does separate gamma from chi
    CHECK(eval(cm.structure, cm.assignment, e.sandwich().gamma));
    CHECK_FALSE(eval(cm.structure, cm.assignment, e.sandwich().chi));
  }
}

TEST_CASE("query substitution") {
  AtomSubstitution guarded{
      {"R", {vars({1, 2}), parse("S(x1,x2) & !T(x1,x2)")}}};
  CHECK(print(ucq_apply(parse("E x1. E x2. R(x1,x2)"), guarded)) ==
        "(E x1. (E x2. (S(x1,x2) & !T(x1,x2))))");
  CHECK(fragment_membership(ucq_apply(parse("E x1. E x2. R(x1,x2)"), guarded),
                            FragmentId::GNFO_UCQ)
            .member);

  AtomSubstitution ident{{"R", {vars({1, 2}), parse("R(x1,x2)")}}};
  Formula q = parse("E x1. E x2. R(x1,x2)");
  CHECK(ucq_apply(q, ident) == q);

  AtomSubstitution split{{"R", {vars({1, 2}), parse("P(x1) & Q(x2)")}}};
  CHECK(thrown_code([&] { ucq_apply(q, split); }) == Errc::not_self_guarded);
  CHECK(thrown_code([&] { ucq_apply(parse("!P(x1)"), ident); }) == Errc::not_ucq);
}

TEST_CASE("transitivity wrapper") {
  CHECK(print(transitive_wrap(parse("true"), "R", "S")) ==
        "((true & (A x1. (A x2. (A x3. ((R(x1,x2) & R(x2,x3)) -> R(x1,x3)))))) "
        "& (A x1. (A x2. (A x3. ((S(x1,x2) & S(x2,x3)) -> S(x1,x3))))))");

  // a singleton model with empty relations satisfies the wrapped formula
  Formula sat = transitive_wrap(parse("E x1. P(x1)"), "R", "S");
  CheckOutcome out = entails_upto(sat, parse("false"), Budget{1, 16});
  REQUIRE(out.counter.has_value());
  CHECK(out.counter->structure.domain == 1);
  CHECK(eval(out.counter->structure, {}, sat));

  // asserting both transitivity and its failure has no model
  PredicateRenaming rho;
  rho.mapping = {{"R", "R1"}};
  Formula clash = transitive_wrap(
      rename_predicates(pristine_gallery().formula("psi1"), rho), "R1", "R2");
  CHECK(entails_upto(clash, parse("false"), Budget{3, 16}).ok());

  CHECK(thrown_code([] { transitive_wrap(parse("true"), "R", "R"); }) ==
        Errc::bad_argument);
  CHECK(thrown_code([] { transitive_wrap(parse("R(x1)"), "R", "S"); }) ==
        Errc::arity_mismatch);
}

TEST_CASE("sandwich record layout") {
  Sandwich s = cq_sandwich(parse("R(x1,x2)"), Variable{1}, vars({2}));
  CHECK(sandwich_record(s) ==
        "gamma: (E x1. (G1(x1,x2) & R(x1,x2)))\n"
        "chi: (P1(x2) -> (E x1. (x1=x1 & (E x2. (R(x1,x2) & P1(x2))))))\n"
        "hidden: exists G1/2; forall P1/1\n"
        "target: (E x1. R(x1,x2))\n");
}
