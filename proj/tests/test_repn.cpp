#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "partcat/io.hpp"
#include "partcat/repn.hpp"

using namespace partcat;

namespace {

const FieldSpec kQ = FieldSpec::rationals();

Scalar q(long long v) { return Scalar::of_integer(kQ, v); }

// equality pattern of a tuple as a set partition of its positions
SetPartition pattern_of(const TensorIndex& idx) {
  int k = static_cast<int>(idx.entries.size());
  std::vector<int> labels(k + 1, 0);
  for (int i = 1; i <= k; ++i) labels[i] = idx.entries[i - 1];
  return SetPartition::from_labels(k, labels);
}

int parity(const std::vector<int>& tuple) {
  int inv = 0;
  for (size_t a = 0; a < tuple.size(); ++a)
    for (size_t b = a + 1; b < tuple.size(); ++b)
      if (tuple[a] > tuple[b]) ++inv;
  return inv % 2 ? -1 : 1;
}

}  // namespace

TEST_CASE("pow_ll_values_and_overflow_guard") {
  CHECK(pow_ll(3, 0) == 1);
  CHECK(pow_ll(2, 10) == 1024);
  CHECK(pow_ll(4, 5) == 1024);
  CHECK_THROWS_AS(pow_ll(2, 63), std::overflow_error);
}

TEST_CASE("tensor_index_rank_round_trip") {
  // first entry most significant
  CHECK(TensorIndex::of_rank(0, 3, 2).entries == std::vector<int>{1, 1});
  CHECK(TensorIndex::of_rank(1, 3, 2).entries == std::vector<int>{1, 2});
  CHECK(TensorIndex::of_rank(3, 3, 2).entries == std::vector<int>{2, 1});
  CHECK(TensorIndex{{1, 2, 1}}.to_string() == "(1,2,1)");
  CHECK(TensorIndex{}.to_string() == "()");
  CHECK(TensorIndex::of_rank(0, 2, 0).entries.empty());
  for (int n = 2; n <= 3; ++n) {
    for (int k = 0; k <= 3; ++k) {
      for (long long r = 0; r < pow_ll(n, k); ++r) {
        TensorIndex idx = TensorIndex::of_rank(r, n, k);
        CHECK(idx.rank(n) == r);
        CHECK(static_cast<int>(idx.entries.size()) == k);
      }
    }
  }
}

TEST_CASE("tensor_map_identity_and_kron_layout") {
  TensorMap id = TensorMap::identity_map(2, 2, kQ);
  CHECK(id.row_count() == 4);
  CHECK(id.col_count() == 4);
  for (long long r = 0; r < 4; ++r)
    for (long long c = 0; c < 4; ++c) CHECK(id.at(r, c) == (r == c ? q(1) : q(0)));

  // kron: the left factor owns the most significant index
  TensorMap eps = phi(gen_eps(), 2, kQ);  // 1 x 2 row of ones
  TensorMap k1 = kron(eps, TensorMap::identity_map(2, 1, kQ));
  CHECK(k1.row_count() == 2);
  CHECK(k1.col_count() == 4);
  // column (i,j) -> row j with coefficient 1
  for (long long i = 0; i < 2; ++i)
    for (long long j = 0; j < 2; ++j)
      for (long long r = 0; r < 2; ++r)
        CHECK(k1.at(r, 2 * i + j) == (r == j ? q(1) : q(0)));
  CHECK(k1 == phi(tensor_diagrams(gen_eps(), PartitionDiagram::identity(1)), 2, kQ));
}

TEST_CASE("matrix_arithmetic_matches_flatten") {
  Rng rng(40);
  for (int t = 0; t < 10; ++t) {
    Morphism a = random_morphism(rng, 2, 1, kQ, 2, 3);
    Morphism b = random_morphism(rng, 2, 1, kQ, 2, 3);
    TensorMap ma = phi_morphism(a);
    TensorMap mb = phi_morphism(b);
    std::vector<Scalar> fa = ma.flatten(), fb = mb.flatten(), fs = add(ma, mb).flatten();
    REQUIRE(fa.size() == fs.size());
    for (size_t i = 0; i < fa.size(); ++i) CHECK(fs[i] == fa[i] + fb[i]);
    std::vector<Scalar> f2 = scale(q(3), ma).flatten();
    for (size_t i = 0; i < fa.size(); ++i) CHECK(f2[i] == q(3) * fa[i]);
  }
}

TEST_CASE("generator_matrices") {
  // unit: column of ones
  TensorMap eta = phi(gen_eta(), 3, kQ);
  CHECK(eta.row_count() == 3);
  CHECK(eta.col_count() == 1);
  for (long long r = 0; r < 3; ++r) CHECK(eta.at(r, 0).is_one());

  // product: equal labels multiply, unequal vanish
  TensorMap mu = phi(gen_mu(), 2, kQ);
  CHECK(mu.row_count() == 2);
  CHECK(mu.col_count() == 4);
  CHECK(mu.at(0, 0).is_one());
  CHECK(mu.at(1, 3).is_one());
  CHECK(mu.at(0, 1).is_zero());
  CHECK(mu.at(0, 2).is_zero());
  CHECK(mu.at(1, 1).is_zero());
  CHECK(mu.at(1, 2).is_zero());

  // coproduct is the transpose shape: v_i -> v_i (x) v_i
  TensorMap dl = phi(gen_delta(), 2, kQ);
  CHECK(dl.at(0, 0).is_one());
  CHECK(dl.at(3, 1).is_one());
  CHECK(dl.at(1, 0).is_zero());

  // counit: row of ones
  TensorMap eps = phi(gen_eps(), 3, kQ);
  for (long long c = 0; c < 3; ++c) CHECK(eps.at(0, c).is_one());

  // crossing: permutes the tuple
  TensorMap s = phi(gen_s(), 2, kQ);
  CHECK(s.at(0, 0).is_one());
  CHECK(s.at(2, 1).is_one());
  CHECK(s.at(1, 2).is_one());
  CHECK(s.at(3, 3).is_one());
}

TEST_CASE("worked_five_to_three_diagram_matrix") {
  // sends v_i to d(i1,i2) d(i3,i5) sum_m v_{i4} (x) v_{i1} (x) v_m
  PartitionDiagram d = PartitionDiagram::of_blocks(5, 3, {{1, 2, 7}, {3, 5}, {4, 6}, {8}});
  for (int n = 2; n <= 3; ++n) {
    TensorMap m = phi(d, n, kQ);
    REQUIRE(m.col_count() == pow_ll(n, 5));
    REQUIRE(m.row_count() == pow_ll(n, 3));
    for (long long c = 0; c < m.col_count(); ++c) {
      std::vector<int> i = TensorIndex::of_rank(c, n, 5).entries;
      for (long long r = 0; r < m.row_count(); ++r) {
        std::vector<int> o = TensorIndex::of_rank(r, n, 3).entries;
        bool hit = i[0] == i[1] && i[2] == i[4] && o[0] == i[3] && o[1] == i[0];
        CHECK(m.at(r, c) == (hit ? q(1) : q(0)));
      }
    }
  }
}

TEST_CASE("matrix_functor_respects_composition_and_tensor") {
  Rng rng(41);
  for (int t = 0; t < 30; ++t) {
    int n = rng.uniform_int(2, 3);
    int k = rng.uniform_int(0, 2), l = rng.uniform_int(0, 2), m = rng.uniform_int(0, 2);
    Morphism a = random_morphism(rng, k, l, kQ, n, 3);
    Morphism b = random_morphism(rng, l, m, kQ, n, 3);
    CHECK(phi_morphism(compose(b, a)) == matmul(phi_morphism(b), phi_morphism(a)));
    Morphism c = random_morphism(rng, rng.uniform_int(0, 2), rng.uniform_int(0, 2), kQ, n, 3);
    CHECK(phi_morphism(tensor(a, c)) == kron(phi_morphism(a), phi_morphism(c)));
  }
  CHECK(phi_morphism(Morphism::identity(2, kQ, 3)) == TensorMap::identity_map(3, 2, kQ));
}

TEST_CASE("determinant_row_values") {
  TensorMap d2 = det_map(2, kQ);
  CHECK(d2.row_count() == 1);
  CHECK(d2.col_count() == 4);
  CHECK(d2.at(0, TensorIndex{{1, 2}}.rank(2)) == q(1));
  CHECK(d2.at(0, TensorIndex{{2, 1}}.rank(2)) == q(-1));
  CHECK(d2.at(0, TensorIndex{{1, 1}}.rank(2)).is_zero());
  CHECK(d2.at(0, TensorIndex{{2, 2}}.rank(2)).is_zero());

  TensorMap d3 = det_map(3, kQ);
  for (long long c = 0; c < 27; ++c) {
    std::vector<int> tup = TensorIndex::of_rank(c, 3, 3).entries;
    std::set<int> seen(tup.begin(), tup.end());
    Scalar want = seen.size() == 3 ? q(parity(tup)) : q(0);
    CHECK(d3.at(0, c) == want);
  }
  CHECK(d3.at(0, TensorIndex{{2, 3, 1}}.rank(3)) == q(1));
  CHECK(d3.at(0, TensorIndex{{1, 3, 2}}.rank(3)) == q(-1));

  // composing with a crossing negates the row
  for (int n = 2; n <= 3; ++n) {
    for (int i = 1; i < n; ++i) {
      TensorMap lhs = matmul(det_map(n, kQ), phi(s_i(n, i), n, kQ));
      CHECK(lhs == scale(q(-1), det_map(n, kQ)));
    }
  }
}

TEST_CASE("jelly_matrix_extends_the_pure_matrix") {
  Rng rng(42);
  for (int t = 0; t < 30; ++t) {
    int n = rng.uniform_int(2, 3);
    PartitionDiagram d = random_diagram(rng, rng.uniform_int(0, 2), rng.uniform_int(0, 1));
    CHECK(psi_diagram(embed_diagram(d, n), n, kQ) == phi(d, n, kQ));
  }
  for (int n = 2; n <= 4; ++n) CHECK(psi(jelly_generator(n, kQ)) == det_map(n, kQ));
}

TEST_CASE("jelly_matrix_is_functorial") {
  Rng rng(43);
  for (int t = 0; t < 30; ++t) {
    int n = rng.uniform_int(2, 3);
    int k = rng.uniform_int(0, 2), l = rng.uniform_int(0, 2), m = rng.uniform_int(0, 2);
    JellyMorphism a = random_jelly_morphism(rng, k, l, kQ, n, 2, 1);
    JellyMorphism b = random_jelly_morphism(rng, l, m, kQ, n, 2, 1);
    CHECK(psi(compose_jelly(b, a)) == matmul(psi(b), psi(a)));
    CHECK(psi(tensor_jelly(a, b)) == kron(psi(a), psi(b)));
  }
}

TEST_CASE("orbit_indicator_rows") {
  // single block on two strands: picks the diagonal tuples
  TensorMap f = f_functional(PartitionDiagram::of_blocks(2, 0, {{1, 2}}), 2);
  CHECK(f.row_count() == 1);
  CHECK(f.at(0, 0) == q(1));   // (1,1)
  CHECK(f.at(0, 3) == q(1));   // (2,2)
  CHECK(f.at(0, 1).is_zero());
  CHECK(f.at(0, 2).is_zero());

  // the indicator of the equality pattern, for every pattern on two strands
  for (int n = 2; n <= 3; ++n) {
    for (const SetPartition& p : enumerate_set_partitions(2)) {
      PartitionDiagram d = PartitionDiagram::of(2, 0, p);
      TensorMap row = f_functional(d, n, kQ);
      for (long long c = 0; c < row.col_count(); ++c) {
        bool member = pattern_of(TensorIndex::of_rank(c, n, 2)) == p;
        CHECK(row.at(0, c) == (member ? q(1) : q(0)));
      }
    }
  }

  // the rebasing maps onto the indicator; overfull patterns map to zero
  for (const SetPartition& p : enumerate_set_partitions(3)) {
    PartitionDiagram d = PartitionDiagram::of(3, 0, p);
    std::map<PartitionDiagram, Scalar> coords;
    coords.emplace(d, Scalar::one(kQ));
    TensorMap img = phi_morphism(from_x_basis(3, 0, kQ, 2, coords));
    CHECK(img == f_functional(d, 2, kQ));
    if (p.part_count() > 2) CHECK(img.is_zero());
  }
}

TEST_CASE("signed_orbit_rows") {
  // two singletons, n=2: the signed row is the determinant
  auto [jd, row] = jelly_functional(PartitionDiagram::of_blocks(2, 0, {{1}, {2}}), 2);
  CHECK(row == det_map(2, kQ));
  CHECK(psi_diagram(jd, 2, kQ) == row);

  // one strand, n=2: one dangling leg sums the second label
  auto [jd1, row1] = jelly_functional(PartitionDiagram::of_blocks(1, 0, {{1}}), 2);
  CHECK(row1.at(0, 0) == q(1));
  CHECK(row1.at(0, 1) == q(-1));

  // support sits inside the orbit of the underlying pattern
  for (int n = 2; n <= 3; ++n) {
    for (const SetPartition& p : enumerate_set_partitions(3)) {
      if (p.part_count() < n - 1 || p.part_count() > n) continue;
      PartitionDiagram d = PartitionDiagram::of(3, 0, p);
      auto [jdn, rown] = jelly_functional(d, n);
      for (long long c = 0; c < rown.col_count(); ++c) {
        if (!rown.at(0, c).is_zero()) {
          CHECK(pattern_of(TensorIndex::of_rank(c, n, 3)) == p);
        }
      }
    }
  }
}

TEST_CASE("even_permutations") {
  CHECK(alternating_group(2) == std::vector<std::vector<int>>{{1, 2}});
  CHECK(alternating_group(3).size() == 3);
  CHECK(alternating_group(4).size() == 12);
  for (const auto& g : alternating_group(4)) {
    std::vector<int> copy = g;
    CHECK(parity(copy) == 1);
  }
}

TEST_CASE("relabeling_action_on_tuple_ranks") {
  // g = (1 2 3): each entry advances cyclically
  std::vector<int> g = {2, 3, 1};
  long long r = TensorIndex{{1, 3, 2}}.rank(3);
  CHECK(act_on_rank(g, r, 3, 3) == TensorIndex{{2, 1, 3}}.rank(3));
  // identity fixes everything
  for (long long t = 0; t < 27; ++t) CHECK(act_on_rank({1, 2, 3}, t, 3, 3) == t);
  // the action is a homomorphism into permutations of ranks
  for (const auto& a : alternating_group(3)) {
    for (const auto& b : alternating_group(3)) {
      std::vector<int> ab(3);
      for (int i = 1; i <= 3; ++i) ab[i - 1] = a[b[i - 1] - 1];
      for (long long t = 0; t < 9; ++t) {
        CHECK(act_on_rank(ab, t, 3, 2) == act_on_rank(a, act_on_rank(b, t, 3, 2), 3, 2));
      }
    }
  }
}

TEST_CASE("orbit_classification") {
  // n=3, k=1: one orbit covering all three basis vectors
  std::vector<OrbitClass> c31 = classify_orbits(3, 1);
  REQUIRE(c31.size() == 1);
  CHECK(c31[0].members == std::vector<long long>{0, 1, 2});
  CHECK(c31[0].label == "O[{1}]");

  // n=2, k=2: the group is trivial, so four singleton classes
  std::vector<OrbitClass> c22 = classify_orbits(2, 2);
  CHECK(c22.size() == 4);
  for (const OrbitClass& oc : c22) CHECK(oc.members.size() == 1);

  // n=3, k=3: 1 diagonal class + 3 split pairs + the split all-distinct pair
  std::vector<OrbitClass> c33 = classify_orbits(3, 3);
  CHECK(c33.size() == 9);
  int plus = 0, minus = 0;
  for (const OrbitClass& oc : c33) {
    if (oc.label.ends_with("^+")) ++plus;
    if (oc.label.ends_with("^-")) ++minus;
  }
  CHECK(plus == 4);
  CHECK(minus == 4);

  // classes agree with the direct orbit computation
  for (int n = 2; n <= 3; ++n) {
    for (int k = 0; k <= 3; ++k) {
      std::vector<OrbitClass> classes = classify_orbits(n, k);
      std::set<std::vector<long long>> got;
      long long covered = 0;
      for (const OrbitClass& oc : classes) {
        CHECK(std::is_sorted(oc.members.begin(), oc.members.end()));
        got.insert(oc.members);
        covered += static_cast<long long>(oc.members.size());
      }
      CHECK(covered == pow_ll(n, k));
      std::set<std::vector<long long>> want;
      for (const auto& orbit : orbits_bruteforce(n, k)) want.insert(orbit);
      CHECK(got == want);
    }
  }
}

TEST_CASE("invariant_dimension_formula") {
  CHECK(hom_dim(2, 1, 1) == 4);
  CHECK(hom_dim(3, 1, 1) == 3);
  CHECK(hom_dim(4, 2, 1) == 6);
  CHECK(hom_dim(4, 2, 3) == 86);
  CHECK(hom_dim(2, 0, 0) == 1);
  for (int n = 2; n <= 3; ++n) {
    for (int k = 0; k <= 2; ++k) {
      for (int l = 0; l + k <= 4; ++l) {
        CHECK(hom_dim(n, k, l) == hom_dim_bruteforce(n, k, l, kQ));
      }
    }
  }
}

TEST_CASE("dense_rank") {
  std::vector<std::vector<Scalar>> rows = {
      {q(1), q(2), q(3)}, {q(2), q(4), q(6)}, {q(0), q(1), q(1)}};
  CHECK(rank_dense(rows, kQ) == 2);
  CHECK(rank_dense({{q(0), q(0)}}, kQ) == 0);
  FieldSpec f5 = FieldSpec::prime_field(5);
  Scalar a = Scalar::of_integer(f5, 1), b = Scalar::of_integer(f5, 2);
  CHECK(rank_dense({{a, b}, {b, Scalar::of_integer(f5, 4)}}, f5) == 1);
}
