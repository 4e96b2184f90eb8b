#include "partcat/verify.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "partcat/diagram.hpp"
#include "partcat/foundations.hpp"
#include "partcat/io.hpp"
#include "partcat/jellycat.hpp"
#include "partcat/pcat.hpp"
#include "partcat/repn.hpp"

namespace partcat {

namespace {

Scalar sc(FieldSpec f, long long v) { return Scalar::of_integer(f, v); }

Morphism dm(const PartitionDiagram& d, FieldSpec f, int n) {
  return Morphism::of_diagram(d, f, n);
}

int perm_sign(const std::vector<int>& sigma) {
  int inv = 0;
  for (std::size_t i = 0; i < sigma.size(); ++i)
    for (std::size_t j = i + 1; j < sigma.size(); ++j)
      if (sigma[i] > sigma[j]) ++inv;
  return inv % 2 ? -1 : 1;
}

// s_1 o s_2 o ... o s_hi on the given strand count (rightmost factor first).
Morphism s_chain(int strands, int hi, FieldSpec f, int n) {
  Morphism c = dm(s_i(strands, hi), f, n);
  for (int i = hi - 1; i >= 1; --i) c = compose(dm(s_i(strands, i), f, n), c);
  return c;
}

// sum over sigma in S_n of (-1)^sigma crosscap o (sigma (x) 1_n) : 2n -> 0.
Morphism signed_crosscap_sum(int n, FieldSpec f) {
  Morphism acc = Morphism::zero(2 * n, 0, f, n);
  Morphism cc = dm(crosscap(n), f, n);
  Morphism id_n = Morphism::identity(n, f, n);
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 1);
  do {
    Morphism t = compose(cc, tensor(dm(permutation_diagram(sigma), f, n), id_n));
    acc = add(acc, scale(sc(f, perm_sign(sigma)), t));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return acc;
}

// sign * sum over sigma in S_n of (-1)^sigma sigma : n -> n.
Morphism signed_perm_sum(int n, FieldSpec f, int sign) {
  Morphism acc = Morphism::zero(n, n, f, n);
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 1);
  do {
    acc = add(acc, scale(sc(f, sign * perm_sign(sigma)),
                         dm(permutation_diagram(sigma), f, n)));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return acc;
}

JellyMorphism one_term(const JellyDiagram& d, FieldSpec f, int n, long long c = 1) {
  JellyMorphism m = JellyMorphism::zero(d.bottom, d.top, f, n);
  m.terms.emplace(d, sc(f, c));
  return m;
}

// Morphism of a diagram as drawn: canonicalize and fold the sign into the
// coefficient.
JellyMorphism drawn(const RawJelly& raw, FieldSpec f) {
  Canonical c = canonicalize(raw);
  JellyMorphism m = JellyMorphism::zero(raw.bottom, raw.top, f, raw.n_legs);
  if (!c.zero) m.terms.emplace(c.diagram, sc(f, c.sign));
  return m;
}

// Eliminate jellyfish a and b of a four-jellyfish diagram, then the remaining
// pair of every term; the result is jellyfish-free.
JellyMorphism expand_two_pairs(const JellyDiagram& d, int a, int b, FieldSpec f, int n) {
  JellyMorphism first = reduce_pair_at(d, a, b, f, n);
  JellyMorphism out = JellyMorphism::zero(d.bottom, d.top, f, n);
  for (const auto& [t, c] : first.terms) out = add(out, scale(c, reduce_pair(t, f, n)));
  return out;
}

std::string indent_lines(const std::string& text, const std::string& pad) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!first) out << '\n';
    out << pad << line;
    first = false;
  }
  return out.str();
}

void check_true(SuiteReport& r, std::string desc, bool ok, std::string witness = "") {
  r.checks.push_back({std::move(desc), ok, ok ? std::string() : std::move(witness)});
}

void check_eq_morphism(SuiteReport& r, std::string desc, const Morphism& a,
                       const Morphism& b) {
  bool ok = a == b;
  std::string w;
  if (!ok) w = "lhs:\n" + print_morphism(a) + "\nrhs:\n" + print_morphism(b);
  r.checks.push_back({std::move(desc), ok, std::move(w)});
}

void check_eq_jelly(SuiteReport& r, std::string desc, const JellyMorphism& a,
                    const JellyMorphism& b) {
  bool ok = a == b;
  std::string w;
  if (!ok) w = "lhs:\n" + print_jelly_morphism(a) + "\nrhs:\n" + print_jelly_morphism(b);
  r.checks.push_back({std::move(desc), ok, std::move(w)});
}

void check_eq_matrix(SuiteReport& r, std::string desc, const TensorMap& a,
                     const TensorMap& b) {
  bool ok = a == b;
  std::string w;
  if (!ok) w = "lhs: " + print_matrix_json(a) + "\nrhs: " + print_matrix_json(b);
  r.checks.push_back({std::move(desc), ok, std::move(w)});
}

}  // namespace

bool SuiteReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

SuiteReport check_relations(int n, FieldSpec f) {
  if (!f.is_rational() && f.p < static_cast<std::uint32_t>(n))
    throw characteristic_error("relation suite needs characteristic 0 or >= n");
  SuiteReport r;
  r.suite = "relations";
  r.n = n;
  r.field = f;

  Morphism s = dm(gen_s(), f, n);
  Morphism mu = dm(gen_mu(), f, n);
  Morphism de = dm(gen_delta(), f, n);
  Morphism ep = dm(gen_eps(), f, n);
  Morphism et = dm(gen_eta(), f, n);
  Morphism i1 = Morphism::identity(1, f, n);
  Morphism i2 = Morphism::identity(2, f, n);

  struct Rel {
    std::string name;
    Morphism lhs, rhs;
  };
  std::vector<Rel> rels;
  rels.push_back({"crossing is an involution", compose(s, s), i2});
  rels.push_back({"crossing braid relation",
                  compose(tensor(i1, s), compose(tensor(s, i1), tensor(i1, s))),
                  compose(tensor(s, i1), compose(tensor(i1, s), tensor(s, i1)))});
  rels.push_back({"unit slides past the crossing", compose(s, tensor(i1, et)),
                  tensor(et, i1)});
  rels.push_back({"product slides past the crossing",
                  compose(tensor(i1, mu), compose(tensor(s, i1), tensor(i1, s))),
                  compose(s, tensor(mu, i1))});
  rels.push_back({"counit slides past the crossing", compose(tensor(i1, ep), s),
                  tensor(ep, i1)});
  rels.push_back({"coproduct slides past the crossing",
                  compose(tensor(i1, s), compose(tensor(s, i1), tensor(i1, de))),
                  compose(tensor(de, i1), s)});
  rels.push_back({"unit is a unit for the product", compose(mu, tensor(i1, et)), i1});
  rels.push_back({"counit is a counit for the coproduct (left)",
                  compose(tensor(i1, ep), de), i1});
  rels.push_back({"counit is a counit for the coproduct (right)",
                  compose(tensor(ep, i1), de), i1});
  rels.push_back({"Frobenius relation (left)",
                  compose(tensor(mu, i1), tensor(i1, de)), compose(de, mu)});
  rels.push_back({"Frobenius relation (right)",
                  compose(tensor(i1, mu), tensor(de, i1)), compose(de, mu)});
  rels.push_back({"product is commutative", compose(mu, s), mu});
  rels.push_back({"product splits the coproduct", compose(mu, de), i1});
  rels.push_back({"closed loop evaluates to n", compose(ep, et),
                  scale(sc(f, n), dm(PartitionDiagram::empty(), f, n))});

  for (const auto& rel : rels) check_eq_morphism(r, "relation: " + rel.name, rel.lhs, rel.rhs);
  for (const auto& rel : rels)
    check_eq_matrix(r, "matrix functor: " + rel.name, phi_morphism(rel.lhs),
                    phi_morphism(rel.rhs));

  // Jellyfish relations.
  JellyMorphism j = jelly_generator(n, f);
  Morphism cyc = s_chain(n + 1, n, f, n);
  JellyMorphism slide_lhs = tensor_jelly(j, embed(i1));
  JellyMorphism slide_rhs = compose_jelly(tensor_jelly(embed(i1), j), embed(cyc));
  check_eq_jelly(r, "jellyfish slides across a free strand", slide_lhs, slide_rhs);
  check_eq_matrix(r, "matrix functor: jellyfish slides across a free strand",
                  psi(slide_lhs), psi(slide_rhs));
  for (int i = 1; i < n; ++i) {
    JellyMorphism tw = compose_jelly(j, embed(dm(s_i(n, i), f, n)));
    JellyMorphism neg = scale(sc(f, -1), j);
    check_eq_jelly(r, "jellyfish is alternating at strand " + std::to_string(i), tw, neg);
    check_eq_matrix(r, "matrix functor: jellyfish alternating at strand " + std::to_string(i),
                    psi(tw), psi(neg));
  }
  JellyMorphism jj = tensor_jelly(j, j);
  Morphism cc_sum = signed_crosscap_sum(n, f);
  check_eq_jelly(r, "jellyfish pair expands into signed permutations", reduce(jj),
                 embed(cc_sum));
  check_eq_matrix(r, "matrix functor: jellyfish pair expansion", psi(jj),
                  phi_morphism(cc_sum));

  // Determinant compatibilities.
  TensorMap det = det_map(n, f);
  TensorMap idv = TensorMap::identity_map(n, 1, f);
  check_eq_matrix(r, "jellyfish generator maps to the determinant row",
                  psi(j), det);
  check_eq_matrix(r, "determinant row intertwines the strand cycle",
                  kron(det, idv), matmul(kron(idv, det), phi_morphism(cyc)));
  for (int i = 1; i < n; ++i)
    check_eq_matrix(r, "determinant row alternating at strand " + std::to_string(i),
                    matmul(det, phi(s_i(n, i), n, f)), scale(sc(f, -1), det));
  check_eq_matrix(r, "determinant square equals the signed crosscap sum",
                  kron(det, det), phi_morphism(cc_sum));

  // Negative controls: a deliberately sign-flipped identity must fail.
  bool mutated_holds = (compose(mu, s) == scale(sc(f, -1), mu));
  check_true(r, "negative control: sign-flipped commutativity is rejected",
             !mutated_holds, "mu o s == -mu unexpectedly holds");
  bool mutated_matrix = (phi_morphism(compose(mu, s)) ==
                         scale(sc(f, -1), phi_morphism(mu)));
  check_true(r, "negative control: sign-flipped matrix identity is rejected",
             !mutated_matrix, "Phi(mu o s) == -Phi(mu) unexpectedly holds");
  return r;
}

SuiteReport check_phi_kernel(int n, int k, int l) {
  FieldSpec f = FieldSpec::rationals();
  SuiteReport r;
  r.suite = "phi-kernel";
  r.n = n;
  r.k = k;
  r.l = l;
  r.field = f;

  int m = k + l;
  std::vector<SetPartition> parts = enumerate_set_partitions(m);
  std::vector<PartitionDiagram> diagrams;
  diagrams.reserve(parts.size());
  for (const auto& p : parts) diagrams.push_back(PartitionDiagram::of(k, l, p));

  std::vector<std::vector<Scalar>> rows;
  rows.reserve(diagrams.size());
  for (const auto& d : diagrams) rows.push_back(phi(d, n, f).flatten());
  long long rk = rank_dense(std::move(rows), f);

  BigInt expect = 0;
  for (int p = 0; p <= n && p <= m; ++p) expect += stirling2(m, p);
  check_true(r, "rank of the diagram images matches the truncated Bell sum",
             BigInt(rk) == expect,
             "rank " + std::to_string(rk) + ", expected " + expect.str());

  bool kernel_ok = true;
  std::string kw;
  for (const auto& d : diagrams) {
    std::map<PartitionDiagram, Scalar> coords;
    coords.emplace(d, Scalar::one(f));
    Morphism xd = from_x_basis(k, l, f, n, coords);
    bool vanished = phi_morphism(xd).is_zero();
    bool expect_zero = d.part_count() > n;
    if (vanished != expect_zero) {
      kernel_ok = false;
      kw = "x-basis element over " + d.to_string() + ": " +
           (vanished ? "vanished" : "nonzero") + ", expected " +
           (expect_zero ? "zero" : "nonzero");
      break;
    }
  }
  check_true(r, "x-basis elements vanish exactly above " + std::to_string(n) + " parts",
             kernel_ok, kw);

  bool injective = (rk == static_cast<long long>(diagrams.size()));
  bool expect_injective = (m <= n);
  check_true(r, "injectivity on this hom space matches the strand bound",
             injective == expect_injective,
             std::string("functor is ") + (injective ? "injective" : "not injective") +
                 " but the strand bound says " +
                 (expect_injective ? "injective" : "not injective"));
  return r;
}

SuiteReport check_fullness(int n, int k, int l) {
  FieldSpec f = FieldSpec::rationals();
  SuiteReport r;
  r.suite = "fullness";
  r.n = n;
  r.k = k;
  r.l = l;
  r.field = f;

  int m = k + l;
  BigInt dim = hom_dim(n, k, l);
  std::vector<JellyDiagram> basis = jelly_basis(n, m);
  check_true(r, "normal-form basis size matches the dimension formula",
             BigInt(static_cast<long long>(basis.size())) == dim,
             "basis size " + std::to_string(basis.size()) + ", formula " + dim.str());

  std::vector<std::vector<Scalar>> rows;
  rows.reserve(basis.size());
  for (const auto& b : basis) rows.push_back(psi_diagram(b, n, f).flatten());
  long long rk = rank_dense(std::move(rows), f);
  check_true(r, "matrix images of the basis span the full invariant space",
             BigInt(rk) == dim,
             "rank " + std::to_string(rk) + ", dimension " + dim.str());

  long long brute = hom_dim_bruteforce(n, k, l, f);
  check_true(r, "dimension formula matches the brute-force invariant count",
             BigInt(brute) == dim,
             "brute force " + std::to_string(brute) + ", formula " + dim.str());
  return r;
}

SuiteReport check_faithfulness(int n, int k, std::uint64_t seed, FieldSpec f) {
  SuiteReport r;
  r.suite = "faithfulness";
  r.n = n;
  r.k = k;
  r.field = f;
  r.seeded = true;
  r.seed = seed;

  std::vector<JellyDiagram> basis = jelly_basis(n, k);
  BigInt dim = hom_dim(n, k, 0);
  check_true(r, "normal-form basis size matches the dimension formula",
             BigInt(static_cast<long long>(basis.size())) == dim,
             "basis size " + std::to_string(basis.size()) + ", formula " + dim.str());
  if (n == 2 && k == 3)
    check_true(r, "basis of Hom(3, 0) at n=2 has 8 elements", basis.size() == 8,
               "got " + std::to_string(basis.size()));
  if (n == 3 && k == 3)
    check_true(r, "basis of Hom(3, 0) at n=3 has 9 elements", basis.size() == 9,
               "got " + std::to_string(basis.size()));

  std::vector<std::vector<Scalar>> rows;
  rows.reserve(basis.size());
  for (const auto& b : basis) rows.push_back(psi_diagram(b, n, f).flatten());
  long long rk = rank_dense(std::move(rows), f);
  check_true(r, "matrix images of the basis are linearly independent",
             rk == static_cast<long long>(basis.size()),
             "rank " + std::to_string(rk) + " of " + std::to_string(basis.size()));

  std::set<JellyDiagram> basis_set(basis.begin(), basis.end());
  Rng rng(seed);
  const int trials = 100;
  bool image_ok = true, span_ok = true;
  std::string image_w, span_w;
  for (int t = 0; t < trials; ++t) {
    JellyMorphism m = random_jelly_morphism(rng, k, 0, f, n, 3, 2);
    JellyMorphism red = reduce(m);
    if (image_ok && !(psi(red) == psi(m))) {
      image_ok = false;
      image_w = "trial " + std::to_string(t) + ":\n" + print_jelly_morphism(m);
    }
    if (span_ok) {
      for (const auto& [d, c] : red.terms) {
        if (!basis_set.count(d)) {
          span_ok = false;
          span_w = "trial " + std::to_string(t) + " produced " + d.to_string() +
                   " outside the basis; input:\n" + print_jelly_morphism(m);
          break;
        }
      }
    }
  }
  check_true(r, "reduce preserves the matrix image on " + std::to_string(trials) +
                    " random morphisms", image_ok, image_w);
  check_true(r, "reduced forms lie in the normal-form basis on " +
                    std::to_string(trials) + " random morphisms", span_ok, span_w);
  return r;
}

namespace {

void golden_four_jellyfish(SuiteReport& r) {
  FieldSpec f = FieldSpec::rationals();
  const int n = 2;

  RawJelly core_raw;
  core_raw.bottom = 3;
  core_raw.top = 0;
  core_raw.n_legs = 2;
  core_raw.blocks = {{1}, {2}, {3}, {}};
  // Upper jellyfish legs read left to right as drawn: (dangler, junction) on
  // the left, (junction, dangler) on the right.
  core_raw.jellies = {{0, 1}, {1, 2}, {kDangling, 3}, {3, kDangling}};
  Canonical core = canonicalize(core_raw);
  check_true(r, "four-jellyfish diagram with a junction is nonzero and drawn with sign -1",
             !core.zero && core.sign == -1,
             core.zero ? "canonicalized to zero" : "sign " + std::to_string(core.sign));
  if (core.zero) return;
  Scalar sign = sc(f, core.sign);

  // The two elimination orders, as drawn: top pair first vs. left pair first.
  Morphism tb = scale(sign, strip_jellies(expand_two_pairs(core.diagram, 2, 3, f, n)));
  Morphism lr = scale(sign, strip_jellies(expand_two_pairs(core.diagram, 0, 2, f, n)));

  auto blocks_morphism = [&](std::vector<std::vector<int>> blocks, long long c) {
    return scale(sc(f, c), dm(PartitionDiagram::of_blocks(3, 0, std::move(blocks)), f, n));
  };
  Morphism tb_expect = add(blocks_morphism({{1, 3}, {2}}, 2), blocks_morphism({{1, 2, 3}}, -2));
  Morphism lr_expect = add(add(blocks_morphism({{1, 3}, {2}}, 1), blocks_morphism({{1, 2}, {3}}, -1)),
                           add(blocks_morphism({{1}, {2, 3}}, -1), blocks_morphism({{1}, {2}, {3}}, 1)));
  check_eq_morphism(r, "top-pair-first expansion of the four-jellyfish diagram", tb, tb_expect);
  check_eq_morphism(r, "left-pair-first expansion of the four-jellyfish diagram", lr, lr_expect);

  PartitionDiagram y = PartitionDiagram::of_blocks(3, 0, {{1}, {2}, {3}});
  std::map<PartitionDiagram, Scalar> coords;
  coords.emplace(y, Scalar::one(f));
  Morphism xy = from_x_basis(3, 0, f, n, coords);
  Morphism xy_expect = add(
      add(blocks_morphism({{1}, {2}, {3}}, 1), blocks_morphism({{1, 3}, {2}}, -1)),
      add(add(blocks_morphism({{1, 2}, {3}}, -1), blocks_morphism({{1}, {2, 3}}, -1)),
          blocks_morphism({{1, 2, 3}}, 2)));
  check_eq_morphism(r, "x-basis expansion of the all-singletons diagram", xy, xy_expect);
  check_eq_morphism(r, "the two expansion orders differ by the x-basis element",
                    add(lr, scale(sc(f, -1), tb)), xy);
  check_true(r, "the difference of the expansion orders reduces to zero",
             reduce(embed(xy)).is_zero(), print_jelly_morphism(reduce(embed(xy))));
  check_true(r, "the matrix functor kills the difference of the expansion orders",
             phi_morphism(xy).is_zero(), print_matrix_json(phi_morphism(xy)));

  JellyMorphism core_m = one_term(core.diagram, f, n);
  check_eq_matrix(r, "matrix image of the four-jellyfish diagram matches both expansions",
                  psi(core_m), phi_morphism(scale(sign, tb)));
  check_eq_matrix(r, "matrix image is stable under reduce on the four-jellyfish diagram",
                  psi(reduce(core_m)), psi(core_m));
}

void golden_composite(SuiteReport& r) {
  FieldSpec f = FieldSpec::rationals();
  const int n = 2;

  RawJelly alpha_raw;
  alpha_raw.bottom = 2;
  alpha_raw.top = 2;
  alpha_raw.n_legs = 2;
  alpha_raw.blocks = {{1}, {2, 4}, {3}};
  alpha_raw.jellies = {{2, 0}};
  Canonical alpha = canonicalize(alpha_raw);
  RawJelly beta_raw;
  beta_raw.bottom = 2;
  beta_raw.top = 2;
  beta_raw.n_legs = 2;
  beta_raw.blocks = {{1, 3}, {2}, {4}};
  beta_raw.jellies = {{2, 1}};
  Canonical beta = canonicalize(beta_raw);
  check_true(r, "canonical signs of the two drawn one-jellyfish factors",
             !alpha.zero && !beta.zero && alpha.sign == -1 && beta.sign == -1,
             "alpha sign " + std::to_string(alpha.sign) + ", beta sign " +
                 std::to_string(beta.sign));
  if (alpha.zero || beta.zero) return;

  JellyMorphism am = one_term(alpha.diagram, f, n, alpha.sign);
  JellyMorphism bm = one_term(beta.diagram, f, n, beta.sign);
  JellyMorphism composite = compose_jelly(am, compose_jelly(bm, am));

  JellyDiagram expected;
  expected.bottom = 2;
  expected.top = 2;
  expected.n_legs = 2;
  expected.blocks = {{1}, {2}, {3}, {4}, {}};
  expected.jellies = {{0, 4}, {1, 3}, {2, 4}};
  check_eq_jelly(r, "three-fold composite is a single three-jellyfish diagram",
                 composite, one_term(expected, f, n));

  // Eliminate the three jellyfish pairwise in every order; all orders and the
  // built-in normal form must agree.
  JellyMorphism bent = bend_jelly(composite);
  JellyMorphism reduced = reduce(composite);
  bool orders_ok = true;
  std::string ow;
  std::vector<std::pair<int, int>> orders = {{0, 1}, {0, 2}, {1, 2}};
  std::vector<JellyMorphism> results;
  for (auto [a, b] : orders) {
    JellyMorphism out = JellyMorphism::zero(4, 0, f, n);
    for (const auto& [d3, c3] : bent.terms) {
      JellyMorphism first = reduce_pair_at(d3, a, b, f, n);
      for (const auto& [t, c] : first.terms)
        out = add(out, scale(c3 * c, normalize_single_jelly(t, f, n)));
    }
    results.push_back(unbend_jelly(out, 2));
  }
  for (std::size_t i = 1; i < results.size(); ++i) {
    if (!(results[i] == results[0])) {
      orders_ok = false;
      ow = "pair order (" + std::to_string(orders[i].first) + "," +
           std::to_string(orders[i].second) + "):\n" + print_jelly_morphism(results[i]) +
           "\nvs pair order (0,1):\n" + print_jelly_morphism(results[0]);
      break;
    }
  }
  check_true(r, "all three pairing orders of the composite agree", orders_ok, ow);
  check_eq_jelly(r, "pairing orders match the built-in normal form", results[0], reduced);

  auto drawn2 = [&](std::vector<std::vector<int>> blocks, std::vector<int> legs) {
    RawJelly raw;
    raw.bottom = 2;
    raw.top = 2;
    raw.n_legs = 2;
    raw.blocks = std::move(blocks);
    raw.jellies = {std::move(legs)};
    return drawn(raw, f);
  };
  // The five drawn one-jellyfish diagrams the composite decomposes through.
  JellyMorphism pa = drawn2({{1, 3}, {2}, {4}}, {1, 2});
  JellyMorphism pb = drawn2({{1, 2}, {3}, {4}}, {1, 2});
  JellyMorphism pc = drawn2({{1, 4}, {2}, {3}}, {2, 1});
  JellyMorphism pd = drawn2({{1}, {2, 3}, {4}}, {0, 2});
  JellyMorphism pe = drawn2({{1}, {2}, {3, 4}}, {0, 1});
  check_eq_jelly(r, "composite reduces to the first drawn one-jellyfish diagram",
                 reduced, reduce(pa));
  check_eq_jelly(r, "composite equals the second drawn difference after reduce",
                 reduced, add(reduce(pb), scale(sc(f, -1), reduce(pc))));
  check_eq_jelly(r, "composite equals the third drawn difference after reduce",
                 reduced, add(reduce(pd), scale(sc(f, -1), reduce(pe))));

  check_eq_matrix(r, "matrix image is stable under reduce on the composite",
                  psi(reduced), psi(composite));
  check_eq_matrix(r, "matrix image of the composite matches the first drawn diagram",
                  psi(composite), psi(pa));
  check_eq_matrix(r, "matrix image of the composite matches the second drawn difference",
                  psi(composite), add(psi(pb), scale(sc(f, -1), psi(pc))));
  check_eq_matrix(r, "matrix image of the composite matches the third drawn difference",
                  psi(composite), add(psi(pd), scale(sc(f, -1), psi(pe))));
}

void golden_adjoint_product(SuiteReport& r, int n) {
  FieldSpec f = FieldSpec::rationals();
  JellyMorphism j = jelly_generator(n, f);
  JellyMorphism jstar = unbend_jelly(j, n);
  JellyMorphism prod = compose_jelly(jstar, j);
  int sign = (n / 2) % 2 ? -1 : 1;
  Morphism rhs = signed_perm_sum(n, f, sign);
  check_eq_jelly(r, "adjoint product reduces to the signed permutation sum (n=" +
                        std::to_string(n) + ")", reduce(prod), embed(rhs));
  check_eq_matrix(r, "matrix image of the adjoint product (n=" + std::to_string(n) + ")",
                  psi(prod), phi_morphism(rhs));
}

}  // namespace

SuiteReport golden_examples(int n) {
  SuiteReport r;
  r.suite = "golden";
  r.n = n;
  r.field = FieldSpec::rationals();
  if (n == 2) {
    golden_four_jellyfish(r);
    golden_composite(r);
  }
  golden_adjoint_product(r, n);
  return r;
}

SuiteReport check_associativity(int n, int k, std::uint64_t seed, FieldSpec f) {
  SuiteReport r;
  r.suite = "associativity";
  r.n = n;
  r.k = k;
  r.field = f;
  r.seeded = true;
  r.seed = seed;

  Rng rng(seed);
  const int trials = 50;
  bool assoc_ok = true, interleave_ok = true, functor_ok = true;
  std::string aw, iw, fw;
  for (int t = 0; t < trials; ++t) {
    JellyMorphism a = random_jelly_morphism(rng, k, k, f, n, 2, 1);
    JellyMorphism b = random_jelly_morphism(rng, k, k, f, n, 2, 1);
    JellyMorphism c = random_jelly_morphism(rng, k, k, f, n, 2, 1);
    auto witness = [&]() {
      return "trial " + std::to_string(t) + "\na:\n" + print_jelly_morphism(a) +
             "\nb:\n" + print_jelly_morphism(b) + "\nc:\n" + print_jelly_morphism(c);
    };
    JellyMorphism left = reduce(compose_jelly(compose_jelly(a, b), c));
    JellyMorphism right = reduce(compose_jelly(a, compose_jelly(b, c)));
    if (assoc_ok && !(left == right)) {
      assoc_ok = false;
      aw = witness();
    }
    JellyMorphism left_r = reduce(compose_jelly(reduce(compose_jelly(a, b)), c));
    JellyMorphism right_r = reduce(compose_jelly(a, reduce(compose_jelly(b, c))));
    if (interleave_ok && !(left_r == left && right_r == left)) {
      interleave_ok = false;
      iw = witness();
    }
    if (functor_ok && !(psi(left) == matmul(psi(a), matmul(psi(b), psi(c))))) {
      functor_ok = false;
      fw = witness();
    }
  }
  check_true(r, "composition is associative under reduce on " + std::to_string(trials) +
                    " random triples", assoc_ok, aw);
  check_true(r, "reducing intermediate composites does not change the normal form",
             interleave_ok, iw);
  check_true(r, "matrix functor is multiplicative on the random triples", functor_ok, fw);
  return r;
}

std::string report_text(const SuiteReport& r) {
  std::ostringstream out;
  out << "suite " << r.suite << ": n=" << r.n;
  if (r.k >= 0) out << " k=" << r.k;
  if (r.l >= 0) out << " l=" << r.l;
  out << " field=" << r.field.to_string();
  if (r.seeded) out << " seed=" << r.seed;
  out << '\n';
  int passed = 0;
  for (const auto& c : r.checks) {
    out << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.description << '\n';
    if (!c.pass && !c.witness.empty()) out << indent_lines(c.witness, "        ") << '\n';
    if (c.pass) ++passed;
  }
  out << "result: " << passed << "/" << r.checks.size() << " checks passed\n";
  return out.str();
}

namespace {

nlohmann::ordered_json report_to_json(const SuiteReport& r) {
  nlohmann::ordered_json params;
  params["n"] = r.n;
  if (r.k >= 0) params["k"] = r.k;
  if (r.l >= 0) params["l"] = r.l;
  params["field"] = r.field.to_string();
  if (r.seeded) params["seed"] = r.seed;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json jc;
    jc["description"] = c.description;
    jc["pass"] = c.pass;
    if (!c.pass) jc["witness"] = c.witness;
    checks.push_back(std::move(jc));
  }
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["params"] = std::move(params);
  j["checks"] = std::move(checks);
  j["pass"] = r.all_pass();
  return j;
}

}  // namespace

std::string report_json(const SuiteReport& r) { return report_to_json(r).dump(2); }

std::string reports_json(const std::vector<SuiteReport>& rs) {
  nlohmann::ordered_json suites = nlohmann::ordered_json::array();
  bool all = true;
  for (const auto& r : rs) {
    suites.push_back(report_to_json(r));
    all = all && r.all_pass();
  }
  nlohmann::ordered_json j;
  j["suites"] = std::move(suites);
  j["pass"] = all;
  return j.dump(2);
}

}  // namespace partcat
