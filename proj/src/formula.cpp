#include "folab/formula.hpp"

#include "folab/errors.hpp"

namespace folab {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::parse_error: return "ParseError";
    case Errc::arity_conflict: return "ArityConflict";
    case Errc::arity_mismatch: return "ArityMismatch";
    case Errc::non_injective: return "NonInjective";
    case Errc::not_clean: return "NotClean";
    case Errc::not_exists_and: return "NotExistsAnd";
    case Errc::not_fresh: return "NotFresh";
    case Errc::predicate_not_unary: return "PredicateNotUnary";
    case Errc::not_ucq: return "NotUCQ";
    case Errc::not_self_guarded: return "NotSelfGuarded";
    case Errc::non_injective_renaming: return "NonInjectiveRenaming";
    case Errc::unsupported_construct: return "UnsupportedConstruct";
    case Errc::unbound_variable: return "UnboundVariable";
    case Errc::missing_relation: return "MissingRelation";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::unknown_id: return "UnknownId";
    case Errc::bad_argument: return "BadArgument";
  }
  return "Error";
}

namespace {

Formula make(NodeVariant v) {
  return Formula(std::make_shared<const FormulaNode>(FormulaNode{std::move(v)}));
}

void check_var(Variable v) {
  if (v.index < 1) throw Error(Errc::bad_argument, "variable index must be >= 1");
}

void check_pred(const std::string& name, int arity) {
  if (name.empty()) throw Error(Errc::bad_argument, "empty relation name");
  if (arity < 0) throw Error(Errc::bad_argument, "negative arity");
}

}  // namespace

Formula top() { return make(Top{}); }
Formula bottom() { return make(Bottom{}); }

Formula rel(std::string pred, std::vector<Variable> args) {
  check_pred(pred, static_cast<int>(args.size()));
  for (Variable a : args) check_var(a);
  return make(RelAtom{std::move(pred), std::move(args)});
}

Formula eq(Variable a, Variable b) {
  check_var(a);
  check_var(b);
  return make(Equality{a, b});
}

Formula lnot(Formula f) { return make(Not{std::move(f)}); }
Formula land(Formula a, Formula b) { return make(And{std::move(a), std::move(b)}); }
Formula lor(Formula a, Formula b) { return make(Or{std::move(a), std::move(b)}); }
Formula implies(Formula a, Formula b) { return make(Implies{std::move(a), std::move(b)}); }
Formula iff(Formula a, Formula b) { return make(Iff{std::move(a), std::move(b)}); }

Formula exists(Variable v, Formula body) {
  check_var(v);
  return make(ExistsFO{v, std::move(body)});
}

Formula forall(Variable v, Formula body) {
  check_var(v);
  return make(ForallFO{v, std::move(body)});
}

Formula exists_so(std::string pred, int arity, Formula body) {
  check_pred(pred, arity);
  return make(ExistsSO{std::move(pred), arity, std::move(body)});
}

Formula forall_so(std::string pred, int arity, Formula body) {
  check_pred(pred, arity);
  return make(ForallSO{std::move(pred), arity, std::move(body)});
}

Formula land_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return top();
  Formula acc = fs[0];
  for (size_t i = 1; i < fs.size(); ++i) acc = land(acc, fs[i]);
  return acc;
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_) return false;
  const NodeVariant& a = node_->v;
  const NodeVariant& b = other.node_->v;
  if (a.index() != b.index()) return false;
  return std::visit(
      overloaded{
          [&](const Top&) { return true; },
          [&](const Bottom&) { return true; },
          [&](const RelAtom& l) {
            const auto& r = std::get<RelAtom>(b);
            return l.pred == r.pred && l.args == r.args;
          },
          [&](const Equality& l) {
            const auto& r = std::get<Equality>(b);
            return l.lhs == r.lhs && l.rhs == r.rhs;
          },
          [&](const Not& l) { return l.body == std::get<Not>(b).body; },
          [&](const And& l) {
            const auto& r = std::get<And>(b);
            return l.lhs == r.lhs && l.rhs == r.rhs;
          },
          [&](const Or& l) {
            const auto& r = std::get<Or>(b);
            return l.lhs == r.lhs && l.rhs == r.rhs;
          },
          [&](const Implies& l) {
            const auto& r = std::get<Implies>(b);
            return l.lhs == r.lhs && l.rhs == r.rhs;
          },
          [&](const Iff& l) {
            const auto& r = std::get<Iff>(b);
            return l.lhs == r.lhs && l.rhs == r.rhs;
          },
          [&](const ExistsFO& l) {
            const auto& r = std::get<ExistsFO>(b);
            return l.var == r.var && l.body == r.body;
          },
          [&](const ForallFO& l) {
            const auto& r = std::get<ForallFO>(b);
            return l.var == r.var && l.body == r.body;
          },
          [&](const ExistsSO& l) {
            const auto& r = std::get<ExistsSO>(b);
            return l.pred == r.pred && l.arity == r.arity && l.body == r.body;
          },
          [&](const ForallSO& l) {
            const auto& r = std::get<ForallSO>(b);
            return l.pred == r.pred && l.arity == r.arity && l.body == r.body;
          },
      },
      a);
}

}  // namespace folab
