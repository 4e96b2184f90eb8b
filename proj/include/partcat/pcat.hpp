#pragma once

#include "partcat/diagram.hpp"

#include <map>
#include <string>

namespace partcat {

// Finite linear combination of partition diagrams of one type k -> l over one
// field, with the categorical parameter n carried along. Zero coefficients are
// never stored.
struct Morphism {
  int bottom = 0;
  int top = 0;
  FieldSpec field;
  int n_param = 2;
  std::map<PartitionDiagram, Scalar> terms;

  static Morphism zero(int bottom, int top, FieldSpec f, int n);
  static Morphism of_diagram(const PartitionDiagram& d, FieldSpec f, int n);
  static Morphism identity(int k, FieldSpec f, int n);

  bool is_zero() const { return terms.empty(); }

  friend bool operator==(const Morphism&, const Morphism&) = default;
};

Morphism add(const Morphism& m1, const Morphism& m2);
Morphism scale(const Scalar& c, const Morphism& m);
Morphism compose(const Morphism& m2, const Morphism& m1);
Morphism tensor(const Morphism& m1, const Morphism& m2);

// Coordinates of m in the x basis: x_D = D - sum over strictly coarser D' of
// x_{D'}; equivalently D = sum over all coarsenings D' >= D of x_{D'}.
std::map<PartitionDiagram, Scalar> to_x_basis(const Morphism& m);
Morphism from_x_basis(int bottom, int top, FieldSpec f, int n,
                      const std::map<PartitionDiagram, Scalar>& coords);

// Integer expansion of x_D in the diagram basis (field independent, memoized).
std::map<PartitionDiagram, BigInt> x_expansion(const PartitionDiagram& d);

}  // namespace partcat
