#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "folab/formula.hpp"
#include "folab/ops.hpp"

namespace folab {

enum class FragmentId {
  FO2,
  GFO,
  GNFO_PRIMITIVE,
  GNFO_UCQ,
  UNFO,
  CQ,
  UCQ,
  EXISTS_AND,
  FL,
  FF,
};

const std::vector<FragmentId>& all_fragments();
std::string fragment_name(FragmentId f);
std::optional<FragmentId> fragment_from_name(const std::string& name);

// Either an explicit finite set of levels or everything from `from` up.
class LevelSet {
 public:
  static LevelSet finite(std::set<int> values);
  static LevelSet up_from(int from);

  bool empty() const;
  bool contains(int n) const;
  LevelSet intersect(const LevelSet& other) const;
  bool subset_of(const LevelSet& other) const;
  bool operator==(const LevelSet& other) const = default;
  std::string str() const;  // "{1,2}" or "upward-closed-from(2)"

  bool upward() const { return up_; }
  int from() const { return from_; }
  const std::set<int>& values() const { return values_; }

 private:
  bool up_ = false;
  int from_ = 0;
  std::set<int> values_;
};

struct MembershipResult {
  bool member = false;
  std::optional<LevelSet> levels;  // level-based checks only
  std::string reason;              // non-empty iff !member
};

// Strict syntactic membership per the respective grammar; connectives
// outside a grammar are violations, never desugared here.
MembershipResult fragment_membership(const Formula& f, FragmentId id);

// Level computation for the two ordered-variable checks. Rejects equality
// and second-order binders outright.
LevelSet fl_level(const Formula& f);
LevelSet ff_level(const Formula& f);

struct ClassificationReport {
  // nullopt = not applicable (second-order binders present)
  std::vector<std::pair<FragmentId, std::optional<MembershipResult>>> fragments;
  int gfv = 0;
  bool clean = false;
  std::string self_guarded;  // "sentence" | "guarded" | "no"
};

ClassificationReport classify_all(const Formula& f);

// Line-oriented form "FRAGMENT: yes|no|n/a [levels] [reason]" plus the
// gfv/clean/self-guarded trailer.
std::string classification_report_text(const ClassificationReport& r);
nlohmann::json classification_report_json(const ClassificationReport& r);

}  // namespace folab
