#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "folab/formula.hpp"
#include "folab/semantics.hpp"

namespace folab {

class Gallery;

struct ExpectationResult {
  bool pass = false;
  std::string detail;
};

// A claim about a bundled formula, executable against a (possibly mutated)
// gallery at a given budget. Expectations encode the outcomes the checker
// actually produces; where those deviate from the material the formulas
// were transcribed from, the item's notes say so.
struct Expectation {
  std::string description;
  std::function<ExpectationResult(const Gallery&, const Budget&)> run;
};

struct GalleryItem {
  std::string id;
  Formula formula;
  std::string source;  // neutral description of the formula's role
  std::vector<std::string> notes;
  std::vector<Expectation> expected;
};

class Gallery {
 public:
  Gallery();

  const std::vector<GalleryItem>& items() const { return items_; }
  const GalleryItem& item(const std::string& id) const;
  Formula formula(const std::string& id) const;

  // Mutation hook for the self-test: replaces the consequent of the
  // transitivity-shaped implication in psi0 by 'false'.
  void corrupt_psi0();

 private:
  std::vector<GalleryItem> items_;
};

const Gallery& pristine_gallery();
const GalleryItem& paper_formula(const std::string& id);

std::string gallery_dump_text(const Gallery& g);
nlohmann::json gallery_dump_json(const Gallery& g);

}  // namespace folab
