#pragma once

#include <string>

#include <json.hpp>

#include "folab/semantics.hpp"

namespace folab {

using json = nlohmann::json;

// {"domain": n, "relations": {"R": [[0,1],...]}, "arities": {"R": 2}}.
// "arities" disambiguates empty relations; the reader falls back to the
// first tuple's length when it is absent.
json structure_to_json(const Structure& m);
Structure structure_from_json(const json& j);

// {"x1": 0, "x2": 1}
json assignment_to_json(const Assignment& g);
Assignment assignment_from_json(const json& j);

json outcome_to_json(const CheckOutcome& o);
json sandwich_report_to_json(const SandwichReport& r);

// One-line renderings for terminal output:
//   domain {0,1}; P = {0}; R = {(0,1)}
//   verified-up-to(3)
//   countermodel (domain {0,1}; R = {(0,1)}; x1 = 0)
std::string render_structure(const Structure& m);
std::string render_assignment(const Assignment& g);
std::string render_outcome(const CheckOutcome& o);
// "entailment verified-up-to(2); exists-side ...; forall-side ..."
std::string render_sandwich_report(const SandwichReport& r);
// Only the sub-checks that failed, for compact failure lines.
std::string sandwich_failure_detail(const SandwichReport& r);

}  // namespace folab
