#pragma once

#include "partcat/pcat.hpp"

#include <map>
#include <string>
#include <vector>

namespace partcat {

// Leg target marker for a dangling leg. Chosen larger than any block index so
// that the default integer order sorts dangling legs last.
inline constexpr int kDangling = 1 << 30;

// Jellyfish diagram of type bottom -> top with n_legs-legged jellyfish.
// blocks[i] lists the external vertices of block i (vertex bottom + j is the
// top vertex j'); an empty list is an internal junction block held together by
// jellyfish legs only. jellies[t][i] is the 0-based block index attached to
// leg i+1 of jellyfish t, or kDangling.
//
// Canonical form (established by canonicalize, which reports the sign):
//   - external blocks sorted by minimum vertex, junction blocks appended;
//   - within each jellyfish, legs ascending with dangling legs last;
//   - jellyfish sorted by their leg vectors (sign-free reordering);
//   - zero diagrams (two legs of one jellyfish on one block, two dangling legs
//     on one jellyfish, or a sign-reversing junction relabeling) are excluded.
struct JellyDiagram {
  int bottom = 0;
  int top = 0;
  int n_legs = 0;
  std::vector<std::vector<int>> blocks;
  std::vector<std::vector<int>> jellies;

  int block_count() const { return static_cast<int>(blocks.size()); }
  int jelly_count() const { return static_cast<int>(jellies.size()); }
  bool pure() const { return jellies.empty(); }

  std::string to_string() const;  // JP(k->l; n=N)[{1},{2'},{}]J(#1,_)...

  friend bool operator==(const JellyDiagram&, const JellyDiagram&) = default;
  friend auto operator<=>(const JellyDiagram&, const JellyDiagram&) = default;
};

// Unordered input data for canonicalize.
struct RawJelly {
  int bottom = 0;
  int top = 0;
  int n_legs = 0;
  std::vector<std::vector<int>> blocks;
  std::vector<std::vector<int>> jellies;
};

struct Canonical {
  bool zero = false;
  int sign = 1;
  JellyDiagram diagram;
};

Canonical canonicalize(const RawJelly& raw);

struct JellyMorphism {
  int bottom = 0;
  int top = 0;
  FieldSpec field;
  int n_param = 2;
  std::map<JellyDiagram, Scalar> terms;

  static JellyMorphism zero(int bottom, int top, FieldSpec f, int n);
  bool is_zero() const { return terms.empty(); }

  friend bool operator==(const JellyMorphism&, const JellyMorphism&) = default;
};

JellyMorphism add(const JellyMorphism& m1, const JellyMorphism& m2);
JellyMorphism scale(const Scalar& c, const JellyMorphism& m);

// Jellyfish-free inclusion of P(n) and its inverse on jellyfish-free input.
JellyDiagram embed_diagram(const PartitionDiagram& d, int n_legs);
JellyMorphism embed(const Morphism& m);
PartitionDiagram strip_jellies(const JellyDiagram& d);
Morphism strip_jellies(const JellyMorphism& m);

// The generator j: n -> 0 (one jellyfish, legs on the n singleton blocks).
JellyMorphism jelly_generator(int n, FieldSpec f);

JellyMorphism compose_jelly(const JellyMorphism& m2, const JellyMorphism& m1);
JellyMorphism tensor_jelly(const JellyMorphism& m1, const JellyMorphism& m2);

// Eliminates jellyfish a and b of d via the two-jellyfish relation: for each
// sigma in S_n join the block of leg i of a to the block of leg sigma(i) of b
// with coefficient (-1)^sigma; emptied leg-free components contribute factors
// n. reduce_pair uses the first two jellyfish.
JellyMorphism reduce_pair_at(const JellyDiagram& d, int a, int b, FieldSpec f, int n_param);
JellyMorphism reduce_pair(const JellyDiagram& d, FieldSpec f, int n_param);

// The all-singletons diagram Y: (n+1) -> 0 expressed as a combination of
// diagrams with at most n parts (computed over Q once per n, cached).
Morphism y_expansion(int n);

// Rewrites d: k -> 0 as a combination of diagrams with at most n parts.
Morphism reduce_parts(const PartitionDiagram& d, int n, FieldSpec f);

// Rewrites a canonical single-jellyfish diagram of type k -> 0 into the span
// of the j_D basis elements (zero, one signed j_D, or a combination when the
// underlying partition needs part reduction first).
JellyMorphism normalize_single_jelly(const JellyDiagram& d, FieldSpec f, int n);

// Normal form: for k -> 0, a combination of diagrams with at most n parts and
// j_D elements; general types are bent to (k+l) -> 0, reduced, and unbent, so
// the result keeps the input type.
JellyMorphism reduce(const JellyMorphism& m);

// Bending bijection at the jellyfish level (vertex relabeling per term).
JellyMorphism bend_jelly(const JellyMorphism& m);
JellyMorphism unbend_jelly(const JellyMorphism& m, int top_count);

// Canonical single-jellyfish diagram j_D for D: k -> 0 with n or n-1 parts:
// leg i on block i (blocks ordered by minimum vertex); when D has n-1 parts
// the last leg dangles.
JellyDiagram j_diagram(const PartitionDiagram& d, int n);

// Normal-form basis of Hom(k, 0): diagrams with at most n parts, then j_D for
// every D with n or n-1 parts.
std::vector<JellyDiagram> jelly_basis(int n, int k);

}  // namespace partcat
