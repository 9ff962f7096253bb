#include "folab/json_io.hpp"

#include <sstream>

namespace folab {

json structure_to_json(const Structure& m) {
  json rels = json::object();
  json arities = json::object();
  for (const auto& [name, rel] : m.relations) {
    json tuples = json::array();
    for (const auto& t : rel.tuples(m.domain)) tuples.push_back(t);
    rels[name] = std::move(tuples);
    arities[name] = rel.arity();
  }
  return json{{"domain", m.domain},
              {"relations", std::move(rels)},
              {"arities", std::move(arities)}};
}

Structure structure_from_json(const json& j) {
  if (!j.is_object() || !j.contains("domain") ||
      !j["domain"].is_number_integer())
    throw Error(Errc::bad_argument, "structure JSON needs an integer domain");
  Structure m;
  m.domain = j["domain"].get<int>();
  if (m.domain < 1)
    throw Error(Errc::bad_argument, "domain must be positive");
  json rels = j.value("relations", json::object());
  if (!rels.is_object())
    throw Error(Errc::bad_argument, "relations must be an object");
  json arities = j.value("arities", json::object());
  for (auto it = rels.begin(); it != rels.end(); ++it) {
    const json& tuples = it.value();
    if (!tuples.is_array())
      throw Error(Errc::bad_argument, it.key() + " must map to tuple list");
    int arity;
    if (arities.contains(it.key()))
      arity = arities[it.key()].get<int>();
    else if (!tuples.empty())
      arity = static_cast<int>(tuples.front().size());
    else
      throw Error(Errc::bad_argument,
                  "empty relation " + it.key() + " needs an arities entry");
    m.add_relation(it.key(), arity);
    for (const json& t : tuples) {
      if (!t.is_array())
        throw Error(Errc::bad_argument, "tuples must be arrays");
      m.add_tuple(it.key(), t.get<std::vector<int>>());
    }
  }
  return m;
}

json assignment_to_json(const Assignment& g) {
  json out = json::object();
  for (const auto& [idx, val] : g) out["x" + std::to_string(idx)] = val;
  return out;
}

Assignment assignment_from_json(const json& j) {
  if (!j.is_object())
    throw Error(Errc::bad_argument, "assignment JSON must be an object");
  Assignment g;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    if (key.size() < 2 || key[0] != 'x' ||
        key.find_first_not_of("0123456789", 1) != std::string::npos)
      throw Error(Errc::bad_argument, "assignment key " + key);
    g[std::stoi(key.substr(1))] = it.value().get<int>();
  }
  return g;
}

json outcome_to_json(const CheckOutcome& o) {
  if (o.ok())
    return json{{"status", "verified-up-to"}, {"size", o.verified_up_to}};
  return json{{"status", "countermodel"},
              {"size", o.counter->structure.domain},
              {"structure", structure_to_json(o.counter->structure)},
              {"assignment", assignment_to_json(o.counter->assignment)}};
}

json sandwich_report_to_json(const SandwichReport& r) {
  return json{{"ok", r.ok()},
              {"domain_used", r.domain_used},
              {"entailment", outcome_to_json(r.entailment)},
              {"exists_side", outcome_to_json(r.exists_side)},
              {"forall_side", outcome_to_json(r.forall_side)}};
}

std::string render_structure(const Structure& m) {
  std::ostringstream out;
  out << "domain {";
  for (int d = 0; d < m.domain; ++d) out << (d ? "," : "") << d;
  out << "}";
  for (const auto& [name, rel] : m.relations) {
    out << "; " << name << " = {";
    bool first = true;
    for (const auto& t : rel.tuples(m.domain)) {
      if (!first) out << ", ";
      first = false;
      if (t.size() == 1) {
        out << t[0];
      } else {
        out << "(";
        for (size_t i = 0; i < t.size(); ++i) out << (i ? "," : "") << t[i];
        out << ")";
      }
    }
    out << "}";
  }
  return out.str();
}

std::string render_assignment(const Assignment& g) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [idx, val] : g) {
    if (!first) out << "; ";
    first = false;
    out << "x" << idx << " = " << val;
  }
  return out.str();
}

std::string render_outcome(const CheckOutcome& o) {
  if (o.ok())
    return "verified-up-to(" + std::to_string(o.verified_up_to) + ")";
  std::string s = "countermodel (" + render_structure(o.counter->structure);
  if (!o.counter->assignment.empty())
    s += "; " + render_assignment(o.counter->assignment);
  return s + ")";
}

std::string render_sandwich_report(const SandwichReport& r) {
  return "entailment " + render_outcome(r.entailment) + "; exists-side " +
         render_outcome(r.exists_side) + "; forall-side " + render_outcome(r.forall_side);
}

std::string sandwich_failure_detail(const SandwichReport& r) {
  std::string s;
  auto add = [&](const char* name, const CheckOutcome& o) {
    if (o.ok()) return;
    if (!s.empty()) s += "; ";
    s += std::string(name) + " " + render_outcome(o);
  };
  add("entailment", r.entailment);
  add("exists-side", r.exists_side);
  add("forall-side", r.forall_side);
  return s.empty() ? "all checks passed" : s;
}

}  // namespace folab
