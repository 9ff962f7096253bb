#include "folab/classify.hpp"

#include <sstream>

#include "folab/syntax.hpp"

namespace folab {

const std::vector<FragmentId>& all_fragments() {
  static const std::vector<FragmentId> ids = {
      FragmentId::FO2,  FragmentId::GFO, FragmentId::GNFO_PRIMITIVE,
      FragmentId::GNFO_UCQ, FragmentId::UNFO, FragmentId::CQ,
      FragmentId::UCQ,  FragmentId::EXISTS_AND, FragmentId::FL,
      FragmentId::FF,
  };
  return ids;
}

std::string fragment_name(FragmentId f) {
  switch (f) {
    case FragmentId::FO2: return "FO2";
    case FragmentId::GFO: return "GFO";
    case FragmentId::GNFO_PRIMITIVE: return "GNFO_PRIMITIVE";
    case FragmentId::GNFO_UCQ: return "GNFO_UCQ";
    case FragmentId::UNFO: return "UNFO";
    case FragmentId::CQ: return "CQ";
    case FragmentId::UCQ: return "UCQ";
    case FragmentId::EXISTS_AND: return "EXISTS_AND";
    case FragmentId::FL: return "FL";
    case FragmentId::FF: return "FF";
  }
  return "?";
}

std::optional<FragmentId> fragment_from_name(const std::string& name) {
  for (FragmentId id : all_fragments())
    if (fragment_name(id) == name) return id;
  return std::nullopt;
}

LevelSet LevelSet::finite(std::set<int> values) {
  LevelSet s;
  s.values_ = std::move(values);
  return s;
}

LevelSet LevelSet::up_from(int from) {
  LevelSet s;
  s.up_ = true;
  s.from_ = from;
  return s;
}

bool LevelSet::empty() const { return !up_ && values_.empty(); }

bool LevelSet::contains(int n) const {
  return up_ ? n >= from_ : values_.count(n) > 0;
}

LevelSet LevelSet::intersect(const LevelSet& other) const {
  if (up_ && other.up_) return up_from(std::max(from_, other.from_));
  const LevelSet& fin = up_ ? other : *this;
  const LevelSet& any = up_ ? *this : other;
  std::set<int> out;
  for (int v : fin.values_)
    if (any.contains(v)) out.insert(v);
  return finite(std::move(out));
}

bool LevelSet::subset_of(const LevelSet& other) const {
  if (up_) return other.up_ && from_ >= other.from_;
  for (int v : values_)
    if (!other.contains(v)) return false;
  return true;
}

std::string LevelSet::str() const {
  if (up_) return "upward-closed-from(" + std::to_string(from_) + ")";
  std::string s = "{";
  bool first = true;
  for (int v : values_) {
    if (!first) s += ",";
    first = false;
    s += std::to_string(v);
  }
  return s + "}";
}

namespace {

bool has_so(const Formula& f) {
  return std::visit(
      overloaded{
          [](const Top&) { return false; },
          [](const Bottom&) { return false; },
          [](const RelAtom&) { return false; },
          [](const Equality&) { return false; },
          [](const Not& n) { return has_so(n.body); },
          [](const And& n) { return has_so(n.lhs) || has_so(n.rhs); },
          [](const Or& n) { return has_so(n.lhs) || has_so(n.rhs); },
          [](const Implies& n) { return has_so(n.lhs) || has_so(n.rhs); },
          [](const Iff& n) { return has_so(n.lhs) || has_so(n.rhs); },
          [](const ExistsFO& n) { return has_so(n.body); },
          [](const ForallFO& n) { return has_so(n.body); },
          [](const ExistsSO&) { return true; },
          [](const ForallSO&) { return true; },
      },
      f.node().v);
}

std::optional<Formula> find_equality(const Formula& f) {
  if (std::holds_alternative<Equality>(f.node().v)) return f;
  std::optional<Formula> found;
  auto take = [&](const Formula& sub) {
    if (!found) found = find_equality(sub);
  };
  std::visit(overloaded{
                 [&](const Not& n) { take(n.body); },
                 [&](const And& n) { take(n.lhs); take(n.rhs); },
                 [&](const Or& n) { take(n.lhs); take(n.rhs); },
                 [&](const Implies& n) { take(n.lhs); take(n.rhs); },
                 [&](const Iff& n) { take(n.lhs); take(n.rhs); },
                 [&](const ExistsFO& n) { take(n.body); },
                 [&](const ForallFO& n) { take(n.body); },
                 [&](const ExistsSO& n) { take(n.body); },
                 [&](const ForallSO& n) { take(n.body); },
                 [&](const auto&) {},
             },
             f.node().v);
  return found;
}

void collect_var_indices(const Formula& f, std::set<int>& out) {
  std::visit(overloaded{
                 [&](const RelAtom& a) {
                   for (Variable v : a.args) out.insert(v.index);
                 },
                 [&](const Equality& e) {
                   out.insert(e.lhs.index);
                   out.insert(e.rhs.index);
                 },
                 [&](const Not& n) { collect_var_indices(n.body, out); },
                 [&](const And& n) {
                   collect_var_indices(n.lhs, out);
                   collect_var_indices(n.rhs, out);
                 },
                 [&](const Or& n) {
                   collect_var_indices(n.lhs, out);
                   collect_var_indices(n.rhs, out);
                 },
                 [&](const Implies& n) {
                   collect_var_indices(n.lhs, out);
                   collect_var_indices(n.rhs, out);
                 },
                 [&](const Iff& n) {
                   collect_var_indices(n.lhs, out);
                   collect_var_indices(n.rhs, out);
                 },
                 [&](const ExistsFO& n) {
                   out.insert(n.var.index);
                   collect_var_indices(n.body, out);
                 },
                 [&](const ForallFO& n) {
                   out.insert(n.var.index);
                   collect_var_indices(n.body, out);
                 },
                 [&](const ExistsSO& n) { collect_var_indices(n.body, out); },
                 [&](const ForallSO& n) { collect_var_indices(n.body, out); },
                 [&](const auto&) {},
             },
             f.node().v);
}

bool is_atomic_guard(const Formula& g) {
  return std::holds_alternative<RelAtom>(g.node().v) ||
         std::holds_alternative<Equality>(g.node().v);
}

// free(guard) includes free(body)
bool covers(const Formula& guard, const Formula& body) {
  std::set<int> gv = free_vars(guard);
  for (int v : free_vars(body))
    if (!gv.count(v)) return false;
  return true;
}

void set_why(std::string& why, const std::string& msg) {
  if (why.empty()) why = msg;
}

bool in_fo2(const Formula& f, std::string& why) {
  std::set<int> idx;
  collect_var_indices(f, idx);
  if (idx.size() > 2) {
    set_why(why, idx.size() == 3
                     ? "three variables"
                     : std::to_string(idx.size()) + " distinct variables");
    return false;
  }
  Signature sig = Signature::of(f);
  for (const auto& [name, arity] : sig.entries()) {
    if (arity > 2) {
      set_why(why, name + "/" + std::to_string(arity) +
                       " has arity greater than 2");
      return false;
    }
    if (arity == 0) {
      set_why(why, name + " is a 0-ary symbol");
      return false;
    }
  }
  return true;
}

bool in_gfo(const Formula& f, std::string& why) {
  return std::visit(
      overloaded{
          [&](const Top&) { return true; },
          [&](const RelAtom&) { return true; },
          [&](const Equality&) { return true; },
          [&](const Bottom&) {
            set_why(why, "'false' is not in the grammar");
            return false;
          },
          [&](const Not& n) { return in_gfo(n.body, why); },
          [&](const And& n) {
            return in_gfo(n.lhs, why) && in_gfo(n.rhs, why);
          },
          [&](const Or& n) {
            return in_gfo(n.lhs, why) && in_gfo(n.rhs, why);
          },
          [&](const Implies&) {
            set_why(why, "implication is not in the grammar");
            return false;
          },
          [&](const Iff&) {
            set_why(why, "biconditional is not in the grammar");
            return false;
          },
          [&](const ForallFO&) {
            set_why(why, "universal quantifier is not in the grammar");
            return false;
          },
          [&](const ExistsFO&) {
            Formula body = f;
            while (const auto* e = std::get_if<ExistsFO>(&body.node().v))
              body = e->body;
            const auto* a = std::get_if<And>(&body.node().v);
            if (!a) {
              set_why(why, "quantified body " + print(body) +
                               " is not of the form guard & formula");
              return false;
            }
            if (!is_atomic_guard(a->lhs)) {
              set_why(why, "guard " + print(a->lhs) + " is not atomic");
              return false;
            }
            if (!covers(a->lhs, a->rhs)) {
              set_why(why, "guard " + print(a->lhs) + " does not cover " +
                               print(a->rhs));
              return false;
            }
            return in_gfo(a->rhs, why);
          },
          [&](const auto&) { return false; },  // SO handled by callers
      },
      f.node().v);
}

bool in_gnfo(const Formula& f, std::string& why) {
  return std::visit(
      overloaded{
          [&](const Top&) { return true; },
          [&](const RelAtom&) { return true; },
          [&](const Equality&) { return true; },
          [&](const Bottom&) {
            set_why(why, "'false' is not in the grammar");
            return false;
          },
          [&](const Or& n) {
            return in_gnfo(n.lhs, why) && in_gnfo(n.rhs, why);
          },
          [&](const ExistsFO& n) { return in_gnfo(n.body, why); },
          [&](const And& n) {
            std::string plain;
            if (in_gnfo(n.lhs, plain) && in_gnfo(n.rhs, plain)) return true;
            if (const auto* neg = std::get_if<Not>(&n.rhs.node().v)) {
              if (is_atomic_guard(n.lhs) && covers(n.lhs, neg->body))
                return in_gnfo(neg->body, why);
              set_why(why, "negation in " + print(f) + " is not guarded");
              return false;
            }
            set_why(why, plain);
            return false;
          },
          [&](const Not&) {
            set_why(why, "unguarded negation " + print(f));
            return false;
          },
          [&](const Implies&) {
            set_why(why, "implication is not in the grammar");
            return false;
          },
          [&](const Iff&) {
            set_why(why, "biconditional is not in the grammar");
            return false;
          },
          [&](const ForallFO&) {
            set_why(why, "universal quantifier is not in the grammar");
            return false;
          },
          [&](const auto&) { return false; },
      },
      f.node().v);
}

bool in_unfo(const Formula& f, std::string& why) {
  return std::visit(
      overloaded{
          [&](const Top&) { return true; },
          [&](const RelAtom&) { return true; },
          [&](const Equality&) { return true; },
          [&](const Bottom&) {
            set_why(why, "'false' is not in the grammar");
            return false;
          },
          [&](const Not& n) {
            size_t fv = free_vars(n.body).size();
            if (fv > 1) {
              set_why(why, "negated subformula " + print(n.body) + " has " +
                               std::to_string(fv) + " free variables");
              return false;
            }
            return in_unfo(n.body, why);
          },
          [&](const And& n) {
            return in_unfo(n.lhs, why) && in_unfo(n.rhs, why);
          },
          [&](const Or& n) {
            return in_unfo(n.lhs, why) && in_unfo(n.rhs, why);
          },
          [&](const Implies&) {
            set_why(why, "implication is not in the grammar");
            return false;
          },
          [&](const Iff&) {
            set_why(why, "biconditional is not in the grammar");
            return false;
          },
          [&](const ForallFO&) {
            set_why(why, "universal quantifier is not in the grammar");
            return false;
          },
          [&](const ExistsFO& n) { return in_unfo(n.body, why); },
          [&](const auto&) { return false; },
      },
      f.node().v);
}

bool in_cq(const Formula& f, std::string& why) {
  Formula body = f;
  while (const auto* e = std::get_if<ExistsFO>(&body.node().v)) body = e->body;
  // conjunction tree of atoms, nothing else
  struct Walk {
    std::string& why;
    bool operator()(const Formula& g) {
      if (std::holds_alternative<RelAtom>(g.node().v) ||
          std::holds_alternative<Equality>(g.node().v))
        return true;
      if (const auto* a = std::get_if<And>(&g.node().v))
        return (*this)(a->lhs) && (*this)(a->rhs);
      set_why(why, print(g) + " is not an atom");
      return false;
    }
  };
  return Walk{why}(body);
}

bool in_ucq(const Formula& f, std::string& why) {
  if (const auto* o = std::get_if<Or>(&f.node().v))
    return in_ucq(o->lhs, why) && in_ucq(o->rhs, why);
  return in_cq(f, why);
}

bool in_exists_and(const Formula& f, std::string& why) {
  return std::visit(
      overloaded{
          [&](const RelAtom&) { return true; },
          [&](const Equality&) { return true; },
          [&](const And& n) {
            return in_exists_and(n.lhs, why) && in_exists_and(n.rhs, why);
          },
          [&](const ExistsFO& n) { return in_exists_and(n.body, why); },
          [&](const auto&) {
            set_why(why, print(f) + " is not existential-conjunctive");
            return false;
          },
      },
      f.node().v);
}

// UCQ-shaped recognizer: Or-tree of exists-chains over conjunction trees
// whose conjuncts are query atoms, guarded negations, or self-guarded
// subformulas of the same shape.
bool in_gn_ucq(const Formula& f, std::string& why);

bool gn_ucq_leaf(const Formula& f, std::string& why);

bool gn_ucq_conj(const Formula& f, std::string& why) {
  if (const auto* a = std::get_if<And>(&f.node().v)) {
    std::string scratch;
    if (gn_ucq_conj(a->lhs, scratch) && gn_ucq_conj(a->rhs, scratch))
      return true;
    return gn_ucq_leaf(f, why);
  }
  return gn_ucq_leaf(f, why);
}

bool gn_ucq_disjunct(const Formula& f, std::string& why) {
  Formula body = f;
  while (const auto* e = std::get_if<ExistsFO>(&body.node().v)) body = e->body;
  return gn_ucq_conj(body, why);
}

bool gn_ucq_leaf(const Formula& f, std::string& why) {
  return std::visit(
      overloaded{
          [&](const RelAtom&) { return true; },
          [&](const Equality&) { return true; },
          [&](const And& n) {
            if (const auto* neg = std::get_if<Not>(&n.rhs.node().v)) {
              if (is_atomic_guard(n.lhs) && covers(n.lhs, neg->body))
                return in_gn_ucq(neg->body, why);
              set_why(why, "negation in " + print(f) + " is not guarded");
              return false;
            }
            set_why(why, "conjunct " + print(f) +
                             " is neither query atoms nor a guarded negation");
            return false;
          },
          [&](const ExistsFO&) {
            if (free_vars(f).empty()) return in_gn_ucq(f, why);
            set_why(why, "open existential conjunct " + print(f));
            return false;
          },
          [&](const Or&) {
            if (free_vars(f).empty()) return in_gn_ucq(f, why);
            set_why(why, "open disjunction at conjunct position " + print(f));
            return false;
          },
          [&](const Top&) {
            set_why(why, "'true' is not in the grammar");
            return false;
          },
          [&](const Not&) {
            set_why(why, "unguarded negation " + print(f));
            return false;
          },
          [&](const auto&) {
            set_why(why, print(f) + " is not in the grammar");
            return false;
          },
      },
      f.node().v);
}

bool in_gn_ucq(const Formula& f, std::string& why) {
  if (const auto* o = std::get_if<Or>(&f.node().v))
    return in_gn_ucq(o->lhs, why) && in_gn_ucq(o->rhs, why);
  return gn_ucq_disjunct(f, why);
}

struct LevelsOut {
  LevelSet levels = LevelSet::finite({});
  std::string reason;
};

LevelsOut compute_levels(const Formula& f, bool suffix) {
  auto boolean = [&](const Formula& l, const Formula& r) -> LevelsOut {
    LevelsOut a = compute_levels(l, suffix);
    if (a.levels.empty()) return a;
    LevelsOut b = compute_levels(r, suffix);
    if (b.levels.empty()) return b;
    LevelsOut out;
    out.levels = a.levels.intersect(b.levels);
    if (out.levels.empty()) out.reason = "no common level";
    return out;
  };
  auto quantifier = [&](Variable v, const Formula& body) -> LevelsOut {
    LevelsOut c = compute_levels(body, suffix);
    if (c.levels.empty()) return c;
    if (c.levels.contains(v.index))
      return {LevelSet::finite({v.index - 1}), ""};
    return {LevelSet::finite({}),
            "bound variable x" + std::to_string(v.index) +
                " is not a level of the body"};
  };
  return std::visit(
      overloaded{
          [&](const Top&) -> LevelsOut {
            return {LevelSet::finite({}), "nullary connective true"};
          },
          [&](const Bottom&) -> LevelsOut {
            return {LevelSet::finite({}), "nullary connective false"};
          },
          [&](const RelAtom& a) -> LevelsOut {
            if (a.args.empty())
              return {LevelSet::finite({}), a.pred + " is a 0-ary symbol"};
            for (size_t i = 0; i + 1 < a.args.size(); ++i) {
              if (a.args[i + 1].index != a.args[i].index + 1)
                return {LevelSet::finite({}),
                        print(f) + (suffix ? " is not a suffix atom"
                                           : " is not an infix atom")};
            }
            int last = a.args.back().index;
            return {suffix ? LevelSet::finite({last}) : LevelSet::up_from(last),
                    ""};
          },
          [&](const Not& n) { return compute_levels(n.body, suffix); },
          [&](const And& n) { return boolean(n.lhs, n.rhs); },
          [&](const Or& n) { return boolean(n.lhs, n.rhs); },
          [&](const Implies& n) { return boolean(n.lhs, n.rhs); },
          [&](const Iff& n) { return boolean(n.lhs, n.rhs); },
          [&](const ExistsFO& n) { return quantifier(n.var, n.body); },
          [&](const ForallFO& n) { return quantifier(n.var, n.body); },
          [&](const auto&) -> LevelsOut {
            throw Error(Errc::unsupported_construct,
                        "level computation on " + print(f));
          },
      },
      f.node().v);
}

void check_level_pre(const Formula& f) {
  if (has_so(f))
    throw Error(Errc::unsupported_construct, "second-order binder");
  if (std::optional<Formula> eq = find_equality(f))
    throw Error(Errc::unsupported_construct, "equality atom " + print(*eq));
}

MembershipResult level_membership(const Formula& f, bool suffix) {
  MembershipResult r;
  if (std::optional<Formula> eq = find_equality(f)) {
    r.member = false;
    r.levels = LevelSet::finite({});
    r.reason = "equality atom " + print(*eq);
    return r;
  }
  LevelsOut out = compute_levels(f, suffix);
  r.member = !out.levels.empty();
  r.levels = out.levels;
  r.reason = out.reason;
  return r;
}

}  // namespace

LevelSet fl_level(const Formula& f) {
  check_level_pre(f);
  return compute_levels(f, true).levels;
}

LevelSet ff_level(const Formula& f) {
  check_level_pre(f);
  return compute_levels(f, false).levels;
}

MembershipResult fragment_membership(const Formula& f, FragmentId id) {
  if (has_so(f))
    throw Error(Errc::unsupported_construct, "second-order binder");
  if (id == FragmentId::FL) return level_membership(f, true);
  if (id == FragmentId::FF) return level_membership(f, false);
  MembershipResult r;
  std::string why;
  switch (id) {
    case FragmentId::FO2: r.member = in_fo2(f, why); break;
    case FragmentId::GFO: r.member = in_gfo(f, why); break;
    case FragmentId::GNFO_PRIMITIVE: r.member = in_gnfo(f, why); break;
    case FragmentId::GNFO_UCQ: r.member = in_gn_ucq(f, why); break;
    case FragmentId::UNFO: r.member = in_unfo(f, why); break;
    case FragmentId::CQ: r.member = in_cq(f, why); break;
    case FragmentId::UCQ: r.member = in_ucq(f, why); break;
    case FragmentId::EXISTS_AND: r.member = in_exists_and(f, why); break;
    default: break;
  }
  if (!r.member && why.empty()) why = "not in the grammar";
  if (!r.member) r.reason = why;
  return r;
}

ClassificationReport classify_all(const Formula& f) {
  ClassificationReport r;
  bool so = has_so(f);
  for (FragmentId id : all_fragments()) {
    if (so)
      r.fragments.emplace_back(id, std::nullopt);
    else
      r.fragments.emplace_back(id, fragment_membership(f, id));
  }
  r.gfv = gfv(f);
  r.clean = is_clean(f);
  switch (self_guard_info(f).kind) {
    case SelfGuardInfo::Kind::sentence: r.self_guarded = "sentence"; break;
    case SelfGuardInfo::Kind::guarded: r.self_guarded = "guarded"; break;
    default: r.self_guarded = "no"; break;
  }
  return r;
}

std::string classification_report_text(const ClassificationReport& r) {
  std::ostringstream out;
  for (const auto& [id, res] : r.fragments) {
    out << fragment_name(id) << ": ";
    if (!res) {
      out << "n/a (second-order binder)";
    } else if (res->member) {
      out << "yes";
      if (res->levels) out << " (level " << res->levels->str() << ")";
    } else {
      out << "no";
      if (!res->reason.empty()) out << " (" << res->reason << ")";
    }
    out << "\n";
  }
  out << "gfv: " << r.gfv << "\n";
  out << "clean: " << (r.clean ? "yes" : "no") << "\n";
  out << "self-guarded: " << r.self_guarded << "\n";
  return out.str();
}

nlohmann::json classification_report_json(const ClassificationReport& r) {
  nlohmann::json frags = nlohmann::json::object();
  for (const auto& [id, res] : r.fragments) {
    nlohmann::json entry;
    if (!res) {
      entry["member"] = nullptr;
      entry["reason"] = "second-order binder";
    } else {
      entry["member"] = res->member;
      if (!res->reason.empty()) entry["reason"] = res->reason;
      if (res->levels) {
        if (res->levels->upward())
          entry["levels"] = {{"kind", "upward-closed-from"},
                             {"from", res->levels->from()}};
        else
          entry["levels"] = {{"kind", "finite"},
                             {"values", res->levels->values()}};
      }
    }
    frags[fragment_name(id)] = std::move(entry);
  }
  return nlohmann::json{{"fragments", std::move(frags)},
                        {"gfv", r.gfv},
                        {"clean", r.clean},
                        {"self_guarded", r.self_guarded}};
}

}  // namespace folab
