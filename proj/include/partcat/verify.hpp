#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "partcat/field.hpp"

namespace partcat {

struct CheckResult {
  std::string description;
  bool pass = false;
  std::string witness;  // serialized counterexample; empty when passing
};

struct SuiteReport {
  std::string suite;
  int n = 0;
  int k = -1;  // -1 when the suite has no k parameter
  int l = -1;
  FieldSpec field;
  bool seeded = false;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool all_pass() const;
};

// The defining relations as exact morphism identities, all of them again as
// matrix identities, the determinant compatibilities, and negative controls.
SuiteReport check_relations(int n, FieldSpec f);

// Kernel and injectivity of the diagram-to-matrix functor on Hom(k, l).
SuiteReport check_phi_kernel(int n, int k, int l);

// Rank of the normal-form basis under the matrix functor vs. the dimension
// formula and the brute-force invariant count.
SuiteReport check_fullness(int n, int k, int l);

// The normal-form basis of Hom(k, 0) is independent, has the predicted size,
// and reduce() of seeded random morphisms preserves the matrix image and
// lands in the basis span.
SuiteReport check_faithfulness(int n, int k, std::uint64_t seed,
                               FieldSpec f = FieldSpec::rationals());

// Worked examples: the two reduction orders of the four-jellyfish diagram and
// the vanishing 5-term combination (n=2), the three pairing orders of the
// alpha-beta-alpha composite (n=2), and the j* o j expansion (n=2,3).
SuiteReport golden_examples(int n);

// reduce o compose is associative on seeded random triples of End(k) morphisms.
SuiteReport check_associativity(int n, int k, std::uint64_t seed,
                                FieldSpec f = FieldSpec::rationals());

std::string report_text(const SuiteReport& r);
std::string report_json(const SuiteReport& r);
std::string reports_json(const std::vector<SuiteReport>& rs);

}  // namespace partcat
