#pragma once

#include <compare>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace folab {

// Individual variables carry a positive index: x1, x2, x3, ...
struct Variable {
  int index = 1;
  auto operator<=>(const Variable&) const = default;
};

inline Variable x(int index) { return Variable{index}; }

struct FormulaNode;

// Immutable handle to a formula tree. Copies share structure; every
// operation in the library builds new trees instead of mutating.
class Formula {
 public:
  Formula() = default;
  explicit Formula(std::shared_ptr<const FormulaNode> n) : node_(std::move(n)) {}

  const FormulaNode& node() const { return *node_; }
  bool valid() const { return node_ != nullptr; }

  bool operator==(const Formula& other) const;  // structural
  bool operator!=(const Formula& other) const { return !(*this == other); }

 private:
  std::shared_ptr<const FormulaNode> node_;
};

struct Top {};
struct Bottom {};
struct RelAtom {
  std::string pred;
  std::vector<Variable> args;
};
struct Equality {
  Variable lhs, rhs;
};
struct Not {
  Formula body;
};
struct And {
  Formula lhs, rhs;
};
struct Or {
  Formula lhs, rhs;
};
struct Implies {
  Formula lhs, rhs;
};
struct Iff {
  Formula lhs, rhs;
};
struct ExistsFO {
  Variable var;
  Formula body;
};
struct ForallFO {
  Variable var;
  Formula body;
};
// Second-order binders quantify a relation name at a fixed arity.
struct ExistsSO {
  std::string pred;
  int arity = 0;
  Formula body;
};
struct ForallSO {
  std::string pred;
  int arity = 0;
  Formula body;
};

using NodeVariant =
    std::variant<Top, Bottom, RelAtom, Equality, Not, And, Or, Implies, Iff,
                 ExistsFO, ForallFO, ExistsSO, ForallSO>;

struct FormulaNode {
  NodeVariant v;
};

Formula top();
Formula bottom();
Formula rel(std::string pred, std::vector<Variable> args);
Formula eq(Variable a, Variable b);
Formula lnot(Formula f);
Formula land(Formula a, Formula b);
Formula lor(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula exists(Variable v, Formula body);
Formula forall(Variable v, Formula body);
Formula exists_so(std::string pred, int arity, Formula body);
Formula forall_so(std::string pred, int arity, Formula body);

// Left-associated conjunction; the empty list yields top().
Formula land_all(const std::vector<Formula>& fs);

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

}  // namespace folab
