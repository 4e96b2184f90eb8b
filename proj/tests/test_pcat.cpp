#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "partcat/io.hpp"
#include "partcat/pcat.hpp"

using namespace partcat;

namespace {

const FieldSpec kQ = FieldSpec::rationals();

Scalar q(long long v) { return Scalar::of_integer(kQ, v); }

Morphism dm(const PartitionDiagram& d, int n) { return Morphism::of_diagram(d, kQ, n); }

}  // namespace

TEST_CASE("morphism_algebra_basics") {
  Morphism z = Morphism::zero(2, 1, kQ, 3);
  CHECK(z.is_zero());
  Morphism m = dm(gen_mu(), 3);
  CHECK(add(m, z) == m);
  CHECK(add(m, scale(q(-1), m)).is_zero());
  CHECK(scale(q(0), m).is_zero());
  CHECK(scale(q(2), add(m, m)) == scale(q(4), m));
}

TEST_CASE("composition_scales_by_n_to_the_loop_count") {
  // eps o eta closes one loop: the scalar n appears
  for (int n = 2; n <= 5; ++n) {
    Morphism c = compose(dm(gen_eps(), n), dm(gen_eta(), n));
    Morphism want = scale(q(n), Morphism::of_diagram(PartitionDiagram::empty(), kQ, n));
    CHECK(c == want);
  }
  // the worked 4 -> 7 -> 5 pair contributes n^2
  PartitionDiagram d1 = PartitionDiagram::of_blocks(
      4, 7, {{1, 4}, {2, 5, 9}, {3, 11}, {6, 7}, {8}, {10}});
  PartitionDiagram d2 = PartitionDiagram::of_blocks(
      7, 5, {{1, 8}, {2, 4}, {3}, {5, 10, 12}, {6}, {7}, {9, 11}});
  Morphism c = compose(dm(d2, 3), dm(d1, 3));
  PartitionDiagram star =
      PartitionDiagram::of_blocks(4, 5, {{1, 4}, {2, 5, 7, 9}, {3}, {6, 8}});
  CHECK(c == scale(q(9), dm(star, 3)));
}

TEST_CASE("composition_is_bilinear") {
  Rng rng(21);
  for (int t = 0; t < 20; ++t) {
    int k = rng.uniform_int(0, 2), l = rng.uniform_int(0, 2), m = rng.uniform_int(0, 2);
    Morphism a = random_morphism(rng, k, l, kQ, 2, 3);
    Morphism b = random_morphism(rng, k, l, kQ, 2, 3);
    Morphism c = random_morphism(rng, l, m, kQ, 2, 3);
    CHECK(compose(c, add(a, b)) == add(compose(c, a), compose(c, b)));
    CHECK(compose(c, scale(q(5), a)) == scale(q(5), compose(c, a)));
  }
}

TEST_CASE("composition_rejects_shape_and_field_mismatch") {
  Morphism a = dm(gen_mu(), 2);                                   // 2 -> 1
  Morphism b = dm(gen_mu(), 2);                                   // 2 -> 1 again
  CHECK_THROWS_AS(compose(b, a), type_mismatch_error);            // 1 != 2
  Morphism f5 = Morphism::of_diagram(gen_delta(), FieldSpec::prime_field(5), 2);
  CHECK_THROWS_AS(compose(f5, a), field_mismatch_error);
  Morphism n3 = dm(gen_delta(), 3);
  CHECK_THROWS_AS(compose(n3, a), type_mismatch_error);           // n differs
  CHECK_THROWS_AS(add(a, dm(gen_delta(), 2)), type_mismatch_error);
}

TEST_CASE("tensor_of_morphisms_multiplies_coefficients") {
  Morphism a = scale(q(2), dm(gen_eps(), 2));
  Morphism b = scale(q(3), dm(gen_eta(), 2));
  Morphism t = tensor(a, b);
  CHECK(t.bottom == 1);
  CHECK(t.top == 1);
  Morphism want = scale(q(6), dm(tensor_diagrams(gen_eps(), gen_eta()), 2));
  CHECK(t == want);
}

TEST_CASE("x_basis_expansion_of_a_two_strand_diagram") {
  // D = {1,2'},{2},{1'}: subtracting the strictly coarser rebasings gives
  // coefficients +1, -1, -1, -1, +2
  PartitionDiagram d = PartitionDiagram::of_blocks(2, 2, {{1, 4}, {2}, {3}});
  std::map<PartitionDiagram, Scalar> coords;
  coords.emplace(d, Scalar::one(kQ));
  Morphism x = from_x_basis(2, 2, kQ, 2, coords);

  Morphism want = dm(d, 2);
  want = add(want, scale(q(-1), dm(PartitionDiagram::of_blocks(2, 2, {{1, 2, 4}, {3}}), 2)));
  want = add(want, scale(q(-1), dm(PartitionDiagram::of_blocks(2, 2, {{1, 3, 4}, {2}}), 2)));
  want = add(want, scale(q(-1), dm(PartitionDiagram::of_blocks(2, 2, {{1, 4}, {2, 3}}), 2)));
  want = add(want, scale(q(2), dm(PartitionDiagram::of_blocks(2, 2, {{1, 2, 3, 4}}), 2)));
  CHECK(x == want);

  // the integer expansion agrees
  std::map<PartitionDiagram, BigInt> ix = x_expansion(d);
  CHECK(ix.size() == 5);
  CHECK(ix.at(d) == 1);
  CHECK(ix.at(PartitionDiagram::of_blocks(2, 2, {{1, 2, 3, 4}})) == 2);
}

TEST_CASE("x_expansion_is_triangular_with_unit_diagonal") {
  Rng rng(22);
  for (int t = 0; t < 40; ++t) {
    int k = rng.uniform_int(0, 2);
    int l = rng.uniform_int(0, 2);
    PartitionDiagram d = random_diagram(rng, k, l);
    std::map<PartitionDiagram, BigInt> ix = x_expansion(d);
    CHECK(ix.at(d) == 1);
    for (const auto& [e, c] : ix) {
      CHECK(is_coarsening(d.parts, e.parts));
      CHECK(c != 0);
    }
  }
}

TEST_CASE("diagram_equals_sum_of_x_over_coarsenings") {
  // inverting the rebasing: D = sum of x_{D'} over all D' >= D
  for (const SetPartition& p : enumerate_set_partitions(3)) {
    PartitionDiagram d = PartitionDiagram::of(3, 0, p);
    std::map<PartitionDiagram, Scalar> coords;
    for (const SetPartition& cp : coarsenings(p)) {
      coords.emplace(PartitionDiagram::of(3, 0, cp), Scalar::one(kQ));
    }
    CHECK(from_x_basis(3, 0, kQ, 2, coords) == dm(d, 2));
  }
}

TEST_CASE("x_basis_round_trips") {
  Rng rng(23);
  for (int t = 0; t < 50; ++t) {
    int k = rng.uniform_int(0, 2);
    int l = rng.uniform_int(0, 2);
    Morphism m = random_morphism(rng, k, l, kQ, 2, 4);
    std::map<PartitionDiagram, Scalar> coords = to_x_basis(m);
    CHECK(from_x_basis(k, l, kQ, 2, coords) == m);
  }
  // and in the other direction, over a prime field too
  FieldSpec f5 = FieldSpec::prime_field(5);
  Rng rng2(24);
  for (int t = 0; t < 20; ++t) {
    Morphism m = random_morphism(rng2, 2, 1, f5, 3, 4);
    Morphism back = from_x_basis(2, 1, f5, 3, to_x_basis(m));
    CHECK(back == m);
  }
}
