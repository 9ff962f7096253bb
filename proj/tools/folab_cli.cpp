#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "folab/classify.hpp"
#include "folab/errors.hpp"
#include "folab/gallery.hpp"
#include "folab/json_io.hpp"
#include "folab/ops.hpp"
#include "folab/semantics.hpp"
#include "folab/syntax.hpp"
#include "folab/transforms.hpp"
#include "folab/verify.hpp"

namespace {

using namespace folab;

// Formula arguments are literal text, @id for a gallery formula, or
// @file:path for the contents of a file.
Formula resolve_formula(const std::string& arg) {
  if (arg.rfind("@file:", 0) == 0) {
    std::ifstream in(arg.substr(6));
    if (!in) throw Error(Errc::bad_argument, "cannot read '" + arg.substr(6) + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
  }
  if (!arg.empty() && arg[0] == '@') return pristine_gallery().formula(arg.substr(1));
  return parse(arg);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

int var_index(const std::string& tok) {
  std::string t = tok;
  if (!t.empty() && t[0] == 'x') t = t.substr(1);
  try {
    size_t pos = 0;
    int v = std::stoi(t, &pos);
    if (pos != t.size() || v <= 0) throw std::invalid_argument("bad");
    return v;
  } catch (const std::exception&) {
    throw Error(Errc::bad_argument, "'" + tok + "' is not a variable");
  }
}

std::vector<Variable> parse_vars(const std::string& list) {
  std::vector<Variable> out;
  for (const auto& tok : split(list, ','))
    if (!tok.empty()) out.push_back(x(var_index(tok)));
  return out;
}

VariableRenaming parse_map(const std::string& list) {
  VariableRenaming pi;
  for (const auto& tok : split(list, ',')) {
    if (tok.empty()) continue;
    auto parts = split(tok, ':');
    if (parts.size() != 2)
      throw Error(Errc::bad_argument, "map entry '" + tok + "' is not FROM:TO");
    pi.mapping[var_index(parts[0])] = var_index(parts[1]);
  }
  return pi;
}

// "R(x1,x2)=BODY": the head names the relation and orders its parameters.
std::pair<std::string, AtomReplacement> parse_arg_spec(const std::string& spec) {
  auto close = spec.find(')');
  if (close == std::string::npos || close + 1 >= spec.size() || spec[close + 1] != '=')
    throw Error(Errc::bad_argument, "argument '" + spec + "' is not HEAD(params)=BODY");
  Formula head = parse(spec.substr(0, close + 1));
  const auto* atom = std::get_if<RelAtom>(&head.node().v);
  if (!atom) throw Error(Errc::bad_argument, "argument head must be a relation atom");
  return {atom->pred, AtomReplacement{atom->args, parse(spec.substr(close + 2))}};
}

std::string membership_line(FragmentId id, const MembershipResult& r) {
  std::string line = fragment_name(id) + ": ";
  if (r.member) {
    line += "yes";
    if (r.levels) line += " (level " + r.levels->str() + ")";
  } else {
    line += "no (" + r.reason + ")";
  }
  return line;
}

int exit_code_for(const Error& e) {
  if (e.code() == Errc::parse_error) return 2;
  if (e.code() == Errc::budget_exceeded) return 4;
  return 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fragment laboratory: parse, classify, transform and check formulas"};
  app.require_subcommand(1);

  int rc = 0;
  auto guarded = [&rc](auto body) {
    return [&rc, body]() {
      try {
        rc = body();
      } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        rc = exit_code_for(e);
      }
    };
  };

  // parse
  std::string parse_text;
  bool parse_json = false;
  auto* cmd_parse = app.add_subcommand("parse", "parse and reprint in canonical form");
  cmd_parse->add_option("formula", parse_text, "formula text, @id, or @file:path")->required();
  cmd_parse->add_flag("--json", parse_json, "emit JSON");
  cmd_parse->callback(guarded([&]() {
    Formula f = resolve_formula(parse_text);
    if (parse_json) {
      json j;
      j["formula"] = print(f);
      std::set<int> fv = free_vars(f);
      j["free"] = std::vector<int>(fv.begin(), fv.end());
      j["gfv"] = gfv(f);
      j["clean"] = is_clean(f);
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << print(f) << "\n";
    }
    return 0;
  }));

  // classify
  std::string cls_text;
  std::vector<std::string> cls_frags;
  bool cls_all = false, cls_json = false;
  auto* cmd_classify = app.add_subcommand("classify", "fragment membership checks");
  cmd_classify->add_option("formula", cls_text)->required();
  cmd_classify->add_option("--fragment", cls_frags, "fragment name (repeatable)");
  cmd_classify->add_flag("--all", cls_all, "every fragment plus summary data");
  cmd_classify->add_flag("--json", cls_json, "emit JSON");
  cmd_classify->callback(guarded([&]() {
    Formula f = resolve_formula(cls_text);
    if (cls_all) {
      ClassificationReport rep = classify_all(f);
      if (cls_json)
        std::cout << classification_report_json(rep).dump(2) << "\n";
      else
        std::cout << classification_report_text(rep);
      for (const auto& [id, r] : rep.fragments)
        if (!r || !r->member) return 1;
      return 0;
    }
    if (cls_frags.empty())
      throw Error(Errc::bad_argument, "pass --fragment NAME or --all");
    bool all_member = true;
    json lines = json::array();
    for (const auto& name : cls_frags) {
      auto id = fragment_from_name(name);
      if (!id) throw Error(Errc::bad_argument, "unknown fragment '" + name + "'");
      MembershipResult r = fragment_membership(f, *id);
      all_member = all_member && r.member;
      if (cls_json) {
        json j{{"fragment", fragment_name(*id)}, {"member", r.member}};
        if (!r.member) j["reason"] = r.reason;
        if (r.levels) j["levels"] = r.levels->str();
        lines.push_back(j);
      } else {
        std::cout << membership_line(*id, r) << "\n";
      }
    }
    if (cls_json) std::cout << lines.dump(2) << "\n";
    return all_member ? 0 : 1;
  }));

  // transform
  auto* cmd_transform = app.add_subcommand("transform", "apply a formula transformation");
  cmd_transform->require_subcommand(1);

  std::string tr_text, tr_vars, tr_preds, tr_map, tr_r1, tr_r2;
  std::vector<std::string> tr_args;
  bool tr_json = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("formula", tr_text)->required();
    sub->add_flag("--json", tr_json, "emit JSON");
  };
  auto emit = [&](const std::string& result) {
    if (tr_json)
      std::cout << json{{"result", result}}.dump(2) << "\n";
    else
      std::cout << result << "\n";
    return 0;
  };

  auto* tr_bind = cmd_transform->add_subcommand("bind", "existentially close chosen variables");
  add_common(tr_bind);
  tr_bind->add_option("--vars", tr_vars, "comma-separated variables")->required();
  tr_bind->add_option("--preds", tr_preds, "comma-separated fresh unary predicates")->required();
  tr_bind->callback(guarded([&]() {
    std::vector<std::string> preds;
    for (const auto& p : split(tr_preds, ','))
      if (!p.empty()) preds.push_back(p);
    return emit(print(folab::bind(resolve_formula(tr_text), parse_vars(tr_vars), preds)));
  }));

  auto* tr_rel = cmd_transform->add_subcommand(
      "relativize", "close free variables over fresh singleton predicates");
  add_common(tr_rel);
  tr_rel->callback(guarded([&]() {
    return emit(print(relativize(resolve_formula(tr_text))));
  }));

  auto* tr_shuffle = cmd_transform->add_subcommand(
      "shuffle", "sandwich record for a free-variable renaming");
  add_common(tr_shuffle);
  tr_shuffle->add_option("--map", tr_map, "renaming FROM:TO,...")->required();
  tr_shuffle->callback(guarded([&]() {
    Sandwich s = shuffle_sandwich(resolve_formula(tr_text), parse_map(tr_map));
    return emit(sandwich_record(s));
  }));

  auto* tr_ucq = cmd_transform->add_subcommand(
      "ucq-apply", "substitute self-guarded formulas into a union of queries");
  add_common(tr_ucq);
  tr_ucq->add_option("--arg", tr_args, "substitution R(x1,..)=BODY (repeatable)")->required();
  tr_ucq->callback(guarded([&]() {
    AtomSubstitution subst;
    for (const auto& spec : tr_args) subst.insert(parse_arg_spec(spec));
    return emit(print(ucq_apply(resolve_formula(tr_text), subst)));
  }));

  auto* tr_wrap = cmd_transform->add_subcommand(
      "trans-wrap", "conjoin transitivity axioms for two binary predicates");
  add_common(tr_wrap);
  tr_wrap->add_option("--r1", tr_r1)->required();
  tr_wrap->add_option("--r2", tr_r2)->required();
  tr_wrap->callback(guarded([&]() {
    return emit(print(transitive_wrap(resolve_formula(tr_text), tr_r1, tr_r2)));
  }));

  // check
  auto* cmd_check = app.add_subcommand("check", "bounded semantic checks");
  cmd_check->require_subcommand(1);

  std::string ck_lhs, ck_rhs, ck_shuffle_text, ck_map;
  int ck_max = 3;
  bool ck_json = false;

  auto outcome_exit = [&](const CheckOutcome& o) {
    if (ck_json)
      std::cout << outcome_to_json(o).dump(2) << "\n";
    else
      std::cout << render_outcome(o) << "\n";
    return o.ok() ? 0 : 1;
  };

  auto* ck_entails = cmd_check->add_subcommand("entails", "phi |= psi up to a size bound");
  ck_entails->add_option("lhs", ck_lhs)->required();
  ck_entails->add_option("rhs", ck_rhs)->required();
  ck_entails->add_option("--max-size", ck_max, "largest domain size");
  ck_entails->add_flag("--json", ck_json);
  ck_entails->callback(guarded([&]() {
    return outcome_exit(entails_upto(resolve_formula(ck_lhs), resolve_formula(ck_rhs),
                                     Budget{ck_max, 16}));
  }));

  auto* ck_equiv = cmd_check->add_subcommand("equiv", "phi == psi up to a size bound");
  ck_equiv->add_option("lhs", ck_lhs)->required();
  ck_equiv->add_option("rhs", ck_rhs)->required();
  ck_equiv->add_option("--max-size", ck_max, "largest domain size");
  ck_equiv->add_flag("--json", ck_json);
  ck_equiv->callback(guarded([&]() {
    return outcome_exit(equiv_upto(resolve_formula(ck_lhs), resolve_formula(ck_rhs),
                                   Budget{ck_max, 16}));
  }));

  auto* ck_sandwich = cmd_check->add_subcommand("sandwich", "run all three sandwich checks");
  ck_sandwich->add_option("--shuffle", ck_shuffle_text, "formula for a renaming sandwich")
      ->required();
  ck_sandwich->add_option("--map", ck_map, "renaming FROM:TO,...")->required();
  ck_sandwich->add_option("--max-size", ck_max, "largest domain size");
  ck_sandwich->add_flag("--json", ck_json);
  ck_sandwich->callback(guarded([&]() {
    Sandwich s = shuffle_sandwich(resolve_formula(ck_shuffle_text), parse_map(ck_map));
    SandwichReport r = sandwich_check(s, Budget{ck_max, 16});
    if (ck_json)
      std::cout << sandwich_report_to_json(r).dump(2) << "\n";
    else
      std::cout << render_sandwich_report(r) << "\n";
    return r.ok() ? 0 : 1;
  }));

  // gallery
  auto* cmd_gallery = app.add_subcommand("gallery", "bundled example formulas");
  cmd_gallery->require_subcommand(1);
  bool gal_json = false;
  auto* gal_dump = cmd_gallery->add_subcommand("dump", "print every item");
  gal_dump->add_flag("--json", gal_json);
  gal_dump->callback(guarded([&]() {
    if (gal_json)
      std::cout << gallery_dump_json(pristine_gallery()).dump(2) << "\n";
    else
      std::cout << gallery_dump_text(pristine_gallery());
    return 0;
  }));

  // verify-paper
  SuiteOptions vp;
  bool vp_json = false;
  auto* cmd_verify = app.add_subcommand(
      "verify-paper", "run every gallery claim plus the randomized law suites");
  cmd_verify->add_option("--max-size", vp.max_size, "largest domain size");
  cmd_verify->add_option("--seed", vp.seed, "corpus seed");
  cmd_verify->add_flag("--corrupt-psi0", vp.corrupt_psi0,
                       "self-test: mutate one gallery formula and expect failures");
  cmd_verify->add_flag("--json", vp_json);
  cmd_verify->callback(guarded([&]() {
    VerifySummary s = run_verify(vp);
    if (vp_json)
      std::cout << verify_json(s).dump(2) << "\n";
    else
      std::cout << verify_text(s);
    return s.failures() == 0 ? 0 : 1;
  }));

  CLI11_PARSE(app, argc, argv);
  return rc;
}
