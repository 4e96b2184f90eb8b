#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>

#include "partcat/jellycat.hpp"
#include "partcat/pcat.hpp"
#include "partcat/repn.hpp"

namespace partcat {

// Diagram text, e.g. "P(2->1)[{1,2,1'},{2'}]"; top vertices carry a prime.
PartitionDiagram parse_diagram(const std::string& text);

// Jellyfish diagram text, e.g. "JP(3->0; n=2)[{1},{2,3},{}]J(#1,#3)"; "{}" is
// a junction block and "_" a dangling leg. The result is canonicalized, so a
// sign (or zero) can come out of parsing.
Canonical parse_jelly_diagram(const std::string& text);

// Morphism file format:
//   field Q            (or F5)
//   n 2
//   type 3 -> 0
//   1 * P(3->0)[{1},{2},{3}]
//   -1/2 * JP(3->0; n=2)[{1},{2,3}]J(#1,#2)
// A morphism with no terms has the single body line "0-morphism".
// Jellyfish-free terms print with the P grammar; files mixing P and JP terms
// are valid, and every JP header must repeat the file's n.
JellyMorphism parse_jelly_morphism(std::istream& in);
JellyMorphism parse_jelly_morphism_text(const std::string& text);
// Same file format restricted to jellyfish-free terms.
Morphism parse_morphism(std::istream& in);
Morphism parse_morphism_text(const std::string& text);

std::string print_morphism(const Morphism& m);
std::string print_jelly_morphism(const JellyMorphism& m);

// {"n":..,"k":..,"l":..,"field":"Q","rows":..,"cols":..,
//  "entries":[[row,col,"value"],...]} with 1-based indices sorted by (r,c).
std::string print_matrix_json(const TensorMap& m);

// Deterministic generator: identical sequences on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::uint64_t next_below(std::uint64_t bound);  // uniform in [0, bound)
  int uniform_int(int lo, int hi);                // uniform in [lo, hi]

 private:
  std::mt19937_64 gen_;
};

SetPartition random_set_partition(Rng& rng, int m);
PartitionDiagram random_diagram(Rng& rng, int k, int l);
Morphism random_morphism(Rng& rng, int k, int l, FieldSpec f, int n, int max_terms);
// Random nonzero canonical jellyfish diagrams enter with random coefficients;
// jellyfish count per diagram is at most max_jellies.
JellyMorphism random_jelly_morphism(Rng& rng, int k, int l, FieldSpec f, int n,
                                    int max_terms, int max_jellies);

}  // namespace partcat
