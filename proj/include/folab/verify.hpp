#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "folab/formula.hpp"
#include "folab/gallery.hpp"
#include "folab/semantics.hpp"

namespace folab {

// splitmix64: tiny, fast, and good enough for corpus sampling. Fixed seeds
// make every randomized suite reproducible run to run.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  int below(int n);  // uniform over [0, n)
  bool coin() { return below(2) == 1; }

 private:
  std::uint64_t state_;
};

inline constexpr std::uint64_t kDefaultSeed = 20260823ull;

struct SuiteOptions {
  int max_size = 3;
  std::uint64_t seed = kDefaultSeed;
  int bind_corpus = 200;       // clean existential-conjunctive formulas
  int size3_samples = 50;      // sampled size-3 structures per law instance
  int relativize_corpus = 20;  // formulas fed through relativize + step
  int cq_corpus = 20;          // conjunctive queries for the two sandwiches
  int shuffle_pairs = 50;      // (formula, injective renaming) pairs
  int classifier_corpus = 500;
  int roundtrip_corpus = 1000;
  bool corrupt_psi0 = false;  // self-test: mutate the gallery, expect failures
};

struct SuiteLine {
  bool pass = false;
  std::string label;
  std::string detail;
};

struct SuiteReport {
  std::string name;
  std::vector<SuiteLine> lines;
  int failures() const;
};

// Corpus generators. All output is deterministic in the Rng state.
//
// Clean existential-conjunctive formula: at most max_atoms atoms over
// unary A/B (and binary R when allow_binary), variables drawn from
// x1..x_max_vars, binders never shadowing or capturing.
Formula random_exists_and(Rng& rng, int max_atoms, int max_vars, bool allow_binary);
// General first-order (optionally second-order) formula of bounded depth.
Formula random_fo(Rng& rng, int depth, bool allow_equality, bool allow_so);
// Uniformly random structure over sig with the given domain size.
Structure random_structure(Rng& rng, const Signature& sig, int n);

// One line per gallery expectation, run against g (which may be mutated).
SuiteReport gallery_suite(const Gallery& g, const Budget& budget);
// The three bind laws (composition, implication, equivalence) over a random
// clean corpus: exhaustive at sizes <= 2, sampled at size 3.
SuiteReport bind_law_suite(const SuiteOptions& opt);
// Relativization's singleton contract plus the step sandwiches it feeds.
SuiteReport relativize_suite(const SuiteOptions& opt);
// bindexp_sandwich and cq_sandwich over random conjunctive queries.
SuiteReport cq_sandwich_suite(const SuiteOptions& opt);
// Injective-renaming sandwiches plus the pinned non-injective refutation.
SuiteReport shuffle_suite(const SuiteOptions& opt);
// Bundled membership verdicts plus suffix-level subset of infix-level.
SuiteReport classifier_suite(const SuiteOptions& opt);
// Parse/print round-trips and countermodel re-verification.
SuiteReport roundtrip_suite(const SuiteOptions& opt);

struct VerifySummary {
  std::vector<SuiteReport> suites;
  int failures() const;
};

// The claim run behind `verify-paper`: every gallery expectation plus the
// three bind laws. Honors opt.corrupt_psi0 and opt.max_size.
VerifySummary run_verify(const SuiteOptions& opt);

std::string verify_text(const VerifySummary& s);
nlohmann::json verify_json(const VerifySummary& s);

}  // namespace folab
