#pragma once

#include <string>
#include <utility>
#include <vector>

#include "partcat/field.hpp"
#include "partcat/jellycat.hpp"
#include "partcat/pcat.hpp"

namespace partcat {

// n^exp as a 64-bit count; throws std::overflow_error past 2^62.
long long pow_ll(long long base, int exp);

// Basis tuple (i_1,...,i_k) with entries in 1..n; the empty tuple spans V^0.
// Ranks are lexicographic with i_1 most significant.
struct TensorIndex {
  std::vector<int> entries;

  static TensorIndex of_rank(long long rank, int n, int k);
  long long rank(int n) const;
  std::string to_string() const;  // "(1,2,1)"; "()" when empty

  bool operator==(const TensorIndex&) const = default;
};

// Exact matrix of a linear map V^k -> V^l in the tuple basis, stored sparsely
// by column: cols[c] holds (row, value) sorted by row with no zero values.
struct TensorMap {
  int n = 0;
  int k = 0;
  int l = 0;
  FieldSpec field;
  std::vector<std::vector<std::pair<long long, Scalar>>> cols;

  static TensorMap zero(int n, int k, int l, FieldSpec f);
  static TensorMap identity_map(int n, int k, FieldSpec f);

  long long row_count() const;
  long long col_count() const;
  Scalar at(long long row, long long col) const;
  bool is_zero() const;
  // Row-major dense copy of all entries; only sensible for small maps.
  std::vector<Scalar> flatten() const;

  bool operator==(const TensorMap&) const = default;
};

TensorMap add(const TensorMap& a, const TensorMap& b);
TensorMap scale(const Scalar& c, const TensorMap& a);
TensorMap matmul(const TensorMap& a, const TensorMap& b);
// Kronecker product; the left factor's indices are most significant.
TensorMap kron(const TensorMap& a, const TensorMap& b);

// Matrix of a partition diagram: bottom labels must agree on each part,
// parts without bottom vertices range over a free summation index.
TensorMap phi(const PartitionDiagram& d, int n, FieldSpec f);
TensorMap phi_morphism(const Morphism& m);

// 1 x n^n row: sign of the tuple when it is a permutation of (1..n), else 0.
TensorMap det_map(int n, FieldSpec f);

// Matrix of a jellyfish diagram: free labels run over legless blocks and
// dangling legs; each jellyfish contributes the sign of its leg labels.
TensorMap psi_diagram(const JellyDiagram& d, int n, FieldSpec f);
TensorMap psi(const JellyMorphism& m);

// Indicator row of the orbit O_D: picks tuples whose equality pattern is D.
TensorMap f_functional(const PartitionDiagram& d, int n,
                       FieldSpec f = FieldSpec::rationals());

// The canonical one-jellyfish diagram over D together with its matrix row.
std::pair<JellyDiagram, TensorMap> jelly_functional(const PartitionDiagram& d, int n,
                                                    FieldSpec f = FieldSpec::rationals());

// Even permutations of {1..n} in one-line form (g[i-1] = g(i)).
std::vector<std::vector<int>> alternating_group(int n);

struct OrbitClass {
  std::string label;
  std::vector<long long> members;  // tuple ranks, ascending
};

// Partition of the tuple basis of V^k into A_n-orbit classes: one class per
// equality pattern with at most n-2 parts, a +/- pair when the pattern has
// n-1 or n parts (split by the sign of the jelly functional row).
std::vector<OrbitClass> classify_orbits(int n, int k);

// Direct orbit computation: act with every even permutation on every tuple.
std::vector<std::vector<long long>> orbits_bruteforce(int n, int k);

// Relabeling action on tuple ranks: entry i becomes g(i).
long long act_on_rank(const std::vector<int>& g, long long rank, int n, int k);

// Sum_{p<=n-2} S(k+l,p) + 2 S(k+l,n-1) + 2 S(k+l,n).
BigInt hom_dim(int n, int k, int l);

// Rank of the averaging operator over the enumerated A_n on V^(k+l),
// computed blockwise over its orbit decomposition.
long long hom_dim_bruteforce(int n, int k, int l, FieldSpec f);

// Row rank of an exact dense matrix; fraction-free over the rationals.
long long rank_dense(std::vector<std::vector<Scalar>> rows, FieldSpec f);

}  // namespace partcat
