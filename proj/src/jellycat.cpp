#include "partcat/jellycat.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace partcat {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int size) : parent(static_cast<size_t>(size)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int a) {
    while (parent[static_cast<size_t>(a)] != a) {
      parent[static_cast<size_t>(a)] = parent[static_cast<size_t>(parent[static_cast<size_t>(a)])];
      a = parent[static_cast<size_t>(a)];
    }
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<size_t>(b)] = a;
  }
};

int sort_parity(std::vector<int>& v) {
  // bubble sort counting swaps; entries are pairwise distinct
  int sign = 1;
  for (size_t i = 0; i + 1 < v.size(); ++i) {
    for (size_t j = 0; j + 1 < v.size() - i; ++j) {
      if (v[j] > v[j + 1]) {
        std::swap(v[j], v[j + 1]);
        sign = -sign;
      }
    }
  }
  return sign;
}

int permutation_sign(const std::vector<int>& sigma) {
  int sign = 1;
  for (size_t i = 0; i < sigma.size(); ++i) {
    for (size_t j = i + 1; j < sigma.size(); ++j) {
      if (sigma[i] > sigma[j]) sign = -sign;
    }
  }
  return sign;
}

void check_jelly_linear_compat(const JellyMorphism& a, const JellyMorphism& b) {
  if (a.field != b.field) {
    throw field_mismatch_error("morphism fields differ: " + a.field.to_string() + " vs " +
                               b.field.to_string());
  }
  if (a.n_param != b.n_param) {
    throw type_mismatch_error("morphism parameters differ: n=" + std::to_string(a.n_param) +
                              " vs n=" + std::to_string(b.n_param));
  }
}

void add_jelly_term(std::map<JellyDiagram, Scalar>& terms, const JellyDiagram& d,
                    const Scalar& c) {
  if (c.is_zero()) return;
  auto it = terms.find(d);
  if (it == terms.end()) {
    terms.emplace(d, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms.erase(it);
}

std::vector<int> vertex_block_labels(const JellyDiagram& d) {
  std::vector<int> labels(static_cast<size_t>(d.bottom + d.top) + 1, -1);
  for (size_t i = 0; i < d.blocks.size(); ++i) {
    for (int v : d.blocks[i]) labels[static_cast<size_t>(v)] = static_cast<int>(i);
  }
  return labels;
}

// Glues a raw block/jelly assembly: merges blocks by union-find roots, counts
// emptied leg-free components as beta, and canonicalizes.
struct GlueResult {
  bool zero = false;
  int sign = 1;
  int beta = 0;
  JellyDiagram diagram;
};

GlueResult glue(int bottom, int top, int n_legs, const std::vector<std::vector<int>>& verts,
                UnionFind& uf, const std::vector<std::vector<int>>& jellies) {
  const int node_count = static_cast<int>(verts.size());
  std::vector<int> comp_of(static_cast<size_t>(node_count), -1);
  std::vector<std::vector<int>> comp_verts;
  for (int node = 0; node < node_count; ++node) {
    int root = uf.find(node);
    if (comp_of[static_cast<size_t>(root)] == -1) {
      comp_of[static_cast<size_t>(root)] = static_cast<int>(comp_verts.size());
      comp_verts.emplace_back();
    }
    int c = comp_of[static_cast<size_t>(root)];
    comp_of[static_cast<size_t>(node)] = c;
    auto& dst = comp_verts[static_cast<size_t>(c)];
    dst.insert(dst.end(), verts[static_cast<size_t>(node)].begin(),
               verts[static_cast<size_t>(node)].end());
  }
  std::vector<char> comp_has_leg(comp_verts.size(), 0);
  std::vector<std::vector<int>> mapped_jellies;
  mapped_jellies.reserve(jellies.size());
  for (const auto& legs : jellies) {
    std::vector<int> mapped;
    mapped.reserve(legs.size());
    for (int t : legs) {
      if (t == kDangling) {
        mapped.push_back(kDangling);
      } else {
        int c = comp_of[static_cast<size_t>(uf.find(t))];
        mapped.push_back(c);
        comp_has_leg[static_cast<size_t>(c)] = 1;
      }
    }
    mapped_jellies.push_back(std::move(mapped));
  }
  GlueResult out;
  std::vector<int> final_index(comp_verts.size(), -1);
  std::vector<std::vector<int>> blocks;
  for (size_t c = 0; c < comp_verts.size(); ++c) {
    if (comp_verts[c].empty() && !comp_has_leg[c]) {
      ++out.beta;
      continue;
    }
    final_index[c] = static_cast<int>(blocks.size());
    blocks.push_back(std::move(comp_verts[c]));
  }
  for (auto& legs : mapped_jellies) {
    for (int& t : legs) {
      if (t != kDangling) t = final_index[static_cast<size_t>(t)];
    }
  }
  RawJelly raw;
  raw.bottom = bottom;
  raw.top = top;
  raw.n_legs = n_legs;
  raw.blocks = std::move(blocks);
  raw.jellies = std::move(mapped_jellies);
  Canonical canon = canonicalize(raw);
  out.zero = canon.zero;
  out.sign = canon.sign;
  out.diagram = std::move(canon.diagram);
  return out;
}

}  // namespace

std::string JellyDiagram::to_string() const {
  std::ostringstream out;
  out << "JP(" << bottom << "->" << top << "; n=" << n_legs << ")[";
  for (size_t i = 0; i < blocks.size(); ++i) {
    if (i) out << ',';
    out << '{';
    for (size_t j = 0; j < blocks[i].size(); ++j) {
      if (j) out << ',';
      int v = blocks[i][j];
      if (v <= bottom) {
        out << v;
      } else {
        out << (v - bottom) << '\'';
      }
    }
    out << '}';
  }
  out << ']';
  for (const auto& legs : jellies) {
    out << "J(";
    for (size_t i = 0; i < legs.size(); ++i) {
      if (i) out << ',';
      if (legs[i] == kDangling) {
        out << '_';
      } else {
        out << '#' << (legs[i] + 1);
      }
    }
    out << ')';
  }
  return out.str();
}

Canonical canonicalize(const RawJelly& raw) {
  const int total = raw.bottom + raw.top;
  std::vector<int> owner(static_cast<size_t>(total) + 1, -1);
  for (size_t i = 0; i < raw.blocks.size(); ++i) {
    for (int v : raw.blocks[i]) {
      if (v < 1 || v > total) throw std::invalid_argument("external vertex out of range");
      if (owner[static_cast<size_t>(v)] != -1) throw std::invalid_argument("duplicate vertex");
      owner[static_cast<size_t>(v)] = static_cast<int>(i);
    }
  }
  for (int v = 1; v <= total; ++v) {
    if (owner[static_cast<size_t>(v)] == -1) {
      throw std::invalid_argument("vertex " + std::to_string(v) + " not covered");
    }
  }
  std::vector<int> leg_count(raw.blocks.size(), 0);
  for (const auto& legs : raw.jellies) {
    if (static_cast<int>(legs.size()) != raw.n_legs) {
      throw std::invalid_argument("jellyfish must have exactly n legs");
    }
    for (int t : legs) {
      if (t == kDangling) continue;
      if (t < 0 || t >= static_cast<int>(raw.blocks.size())) {
        throw std::invalid_argument("leg references a missing block");
      }
      ++leg_count[static_cast<size_t>(t)];
    }
  }
  for (size_t i = 0; i < raw.blocks.size(); ++i) {
    if (raw.blocks[i].empty() && leg_count[i] == 0) {
      throw std::invalid_argument("junction block with no legs");
    }
  }
  // Dissolve junction blocks held by a single leg: that leg dangles.
  std::vector<char> dissolved(raw.blocks.size(), 0);
  for (size_t i = 0; i < raw.blocks.size(); ++i) {
    if (raw.blocks[i].empty() && leg_count[i] == 1) dissolved[i] = 1;
  }
  std::vector<std::vector<int>> jellies = raw.jellies;
  for (auto& legs : jellies) {
    for (int& t : legs) {
      if (t != kDangling && dissolved[static_cast<size_t>(t)]) t = kDangling;
    }
  }
  // Compact the surviving blocks, externals first ordered by minimum vertex.
  std::vector<size_t> externals, internals;
  for (size_t i = 0; i < raw.blocks.size(); ++i) {
    if (dissolved[i]) continue;
    (raw.blocks[i].empty() ? internals : externals).push_back(i);
  }
  std::vector<std::vector<int>> ext_blocks;
  ext_blocks.reserve(externals.size());
  std::vector<int> ext_sorted_index(raw.blocks.size(), -1);
  {
    std::vector<std::pair<int, size_t>> order;
    for (size_t i : externals) {
      auto b = raw.blocks[i];
      std::sort(b.begin(), b.end());
      order.emplace_back(b.front(), i);
      ext_blocks.push_back(std::move(b));
    }
    std::vector<size_t> perm(order.size());
    std::iota(perm.begin(), perm.end(), size_t{0});
    std::sort(perm.begin(), perm.end(),
              [&](size_t a, size_t b) { return order[a].first < order[b].first; });
    std::vector<std::vector<int>> sorted;
    sorted.reserve(ext_blocks.size());
    for (size_t pos = 0; pos < perm.size(); ++pos) {
      ext_sorted_index[order[perm[pos]].second] = static_cast<int>(pos);
      sorted.push_back(std::move(ext_blocks[perm[pos]]));
    }
    ext_blocks = std::move(sorted);
  }
  Canonical result;
  // Zero detectors: two legs of one jellyfish on one block, or two dangling
  // legs on one jellyfish.
  for (const auto& legs : jellies) {
    int danglers = 0;
    std::vector<int> targets;
    for (int t : legs) {
      if (t == kDangling) {
        ++danglers;
      } else {
        targets.push_back(t);
      }
    }
    std::sort(targets.begin(), targets.end());
    if (danglers >= 2 || std::adjacent_find(targets.begin(), targets.end()) != targets.end()) {
      result.zero = true;
      return result;
    }
  }
  // Junction blocks carry no external vertices, so their order is a free
  // choice: take the ordering with the lexicographically least jelly encoding.
  // If one encoding arises from two orderings with opposite leg-sort signs the
  // diagram equals its own negative and is zero.
  const int n_ext = static_cast<int>(ext_blocks.size());
  std::vector<size_t> internal_order = internals;
  std::sort(internal_order.begin(), internal_order.end());
  bool have_best = false;
  std::vector<std::vector<int>> best_encoding;
  int best_sign = 1;
  do {
    std::vector<int> final_of(raw.blocks.size(), -1);
    for (size_t i : externals) final_of[i] = ext_sorted_index[i];
    for (size_t pos = 0; pos < internal_order.size(); ++pos) {
      final_of[internal_order[pos]] = n_ext + static_cast<int>(pos);
    }
    int sign = 1;
    std::vector<std::vector<int>> encoded;
    encoded.reserve(jellies.size());
    for (const auto& legs : jellies) {
      std::vector<int> mapped;
      mapped.reserve(legs.size());
      for (int t : legs) mapped.push_back(t == kDangling ? kDangling : final_of[static_cast<size_t>(t)]);
      sign *= sort_parity(mapped);
      encoded.push_back(std::move(mapped));
    }
    std::sort(encoded.begin(), encoded.end());
    if (!have_best || encoded < best_encoding) {
      have_best = true;
      best_encoding = std::move(encoded);
      best_sign = sign;
    } else if (encoded == best_encoding && sign != best_sign) {
      result.zero = true;
      return result;
    }
  } while (std::next_permutation(internal_order.begin(), internal_order.end()));
  result.sign = best_sign;
  result.diagram.bottom = raw.bottom;
  result.diagram.top = raw.top;
  result.diagram.n_legs = raw.n_legs;
  result.diagram.blocks = std::move(ext_blocks);
  result.diagram.blocks.resize(static_cast<size_t>(n_ext) + internals.size());
  result.diagram.jellies = std::move(best_encoding);
  return result;
}

JellyMorphism JellyMorphism::zero(int bottom, int top, FieldSpec f, int n) {
  JellyMorphism m;
  m.bottom = bottom;
  m.top = top;
  m.field = f;
  m.n_param = n;
  return m;
}

JellyMorphism add(const JellyMorphism& m1, const JellyMorphism& m2) {
  check_jelly_linear_compat(m1, m2);
  if (m1.bottom != m2.bottom || m1.top != m2.top) {
    throw type_mismatch_error("addition of different types");
  }
  JellyMorphism out = m1;
  for (const auto& [d, c] : m2.terms) add_jelly_term(out.terms, d, c);
  return out;
}

JellyMorphism scale(const Scalar& c, const JellyMorphism& m) {
  if (c.field() != m.field) throw field_mismatch_error("scale field mismatch");
  JellyMorphism out = JellyMorphism::zero(m.bottom, m.top, m.field, m.n_param);
  if (c.is_zero()) return out;
  for (const auto& [d, coeff] : m.terms) out.terms.emplace(d, c * coeff);
  return out;
}

JellyDiagram embed_diagram(const PartitionDiagram& d, int n_legs) {
  JellyDiagram out;
  out.bottom = d.bottom;
  out.top = d.top;
  out.n_legs = n_legs;
  out.blocks = d.parts.blocks;
  return out;
}

JellyMorphism embed(const Morphism& m) {
  JellyMorphism out = JellyMorphism::zero(m.bottom, m.top, m.field, m.n_param);
  for (const auto& [d, c] : m.terms) out.terms.emplace(embed_diagram(d, m.n_param), c);
  return out;
}

PartitionDiagram strip_jellies(const JellyDiagram& d) {
  if (!d.pure()) throw type_mismatch_error("diagram still carries jellyfish");
  std::vector<std::vector<int>> blocks = d.blocks;
  return PartitionDiagram::of_blocks(d.bottom, d.top, std::move(blocks));
}

Morphism strip_jellies(const JellyMorphism& m) {
  Morphism out = Morphism::zero(m.bottom, m.top, m.field, m.n_param);
  for (const auto& [d, c] : m.terms) out.terms.emplace(strip_jellies(d), c);
  return out;
}

JellyMorphism jelly_generator(int n, FieldSpec f) {
  if (n < 2) throw std::invalid_argument("jellyfish categories need n >= 2");
  JellyDiagram d;
  d.bottom = n;
  d.top = 0;
  d.n_legs = n;
  std::vector<int> legs;
  for (int i = 0; i < n; ++i) {
    d.blocks.push_back({i + 1});
    legs.push_back(i);
  }
  d.jellies.push_back(std::move(legs));
  JellyMorphism m = JellyMorphism::zero(n, 0, f, n);
  m.terms.emplace(std::move(d), Scalar::one(f));
  return m;
}

JellyMorphism compose_jelly(const JellyMorphism& m2, const JellyMorphism& m1) {
  check_jelly_linear_compat(m1, m2);
  if (m1.top != m2.bottom) {
    throw type_mismatch_error("compose type mismatch: " + std::to_string(m1.bottom) + "->" +
                              std::to_string(m1.top) + " then " + std::to_string(m2.bottom) +
                              "->" + std::to_string(m2.top));
  }
  const int mid = m1.top;
  JellyMorphism out = JellyMorphism::zero(m1.bottom, m2.top, m1.field, m1.n_param);
  const Scalar n_scalar = Scalar::of_integer(m1.field, m1.n_param);
  for (const auto& [d2, c2] : m2.terms) {
    auto labels2 = vertex_block_labels(d2);
    for (const auto& [d1, c1] : m1.terms) {
      auto labels1 = vertex_block_labels(d1);
      const int nb1 = d1.block_count();
      UnionFind uf(nb1 + d2.block_count());
      for (int j = 1; j <= mid; ++j) {
        uf.unite(labels1[static_cast<size_t>(d1.bottom + j)],
                 nb1 + labels2[static_cast<size_t>(j)]);
      }
      // Node vertex sets in the composite's numbering; middle vertices vanish.
      std::vector<std::vector<int>> verts(static_cast<size_t>(nb1 + d2.block_count()));
      for (int b = 0; b < nb1; ++b) {
        for (int v : d1.blocks[static_cast<size_t>(b)]) {
          if (v <= d1.bottom) verts[static_cast<size_t>(b)].push_back(v);
        }
      }
      for (int b = 0; b < d2.block_count(); ++b) {
        for (int v : d2.blocks[static_cast<size_t>(b)]) {
          if (v > d2.bottom) {
            verts[static_cast<size_t>(nb1 + b)].push_back(m1.bottom + (v - d2.bottom));
          }
        }
      }
      std::vector<std::vector<int>> jellies;
      jellies.reserve(d1.jellies.size() + d2.jellies.size());
      for (const auto& legs : d1.jellies) jellies.push_back(legs);
      for (const auto& legs : d2.jellies) {
        std::vector<int> shifted;
        shifted.reserve(legs.size());
        for (int t : legs) shifted.push_back(t == kDangling ? kDangling : nb1 + t);
        jellies.push_back(std::move(shifted));
      }
      GlueResult r = glue(m1.bottom, m2.top, m1.n_param, verts, uf, jellies);
      if (r.zero) continue;
      Scalar coeff = c2 * c1 * Scalar::of_integer(m1.field, r.sign) *
                     n_scalar.pow(static_cast<unsigned>(r.beta));
      add_jelly_term(out.terms, r.diagram, coeff);
    }
  }
  return out;
}

JellyMorphism tensor_jelly(const JellyMorphism& m1, const JellyMorphism& m2) {
  check_jelly_linear_compat(m1, m2);
  const int k1 = m1.bottom, l1 = m1.top, k2 = m2.bottom, l2 = m2.top;
  JellyMorphism out = JellyMorphism::zero(k1 + k2, l1 + l2, m1.field, m1.n_param);
  auto map1 = [&](int v) { return v <= k1 ? v : v + k2; };
  auto map2 = [&](int v) { return v <= k2 ? k1 + v : v + k1 + l1; };
  for (const auto& [d1, c1] : m1.terms) {
    for (const auto& [d2, c2] : m2.terms) {
      RawJelly raw;
      raw.bottom = k1 + k2;
      raw.top = l1 + l2;
      raw.n_legs = m1.n_param;
      const int nb1 = d1.block_count();
      for (const auto& b : d1.blocks) {
        std::vector<int> nb;
        nb.reserve(b.size());
        for (int v : b) nb.push_back(map1(v));
        raw.blocks.push_back(std::move(nb));
      }
      for (const auto& b : d2.blocks) {
        std::vector<int> nb;
        nb.reserve(b.size());
        for (int v : b) nb.push_back(map2(v));
        raw.blocks.push_back(std::move(nb));
      }
      for (const auto& legs : d1.jellies) raw.jellies.push_back(legs);
      for (const auto& legs : d2.jellies) {
        std::vector<int> shifted;
        shifted.reserve(legs.size());
        for (int t : legs) shifted.push_back(t == kDangling ? kDangling : nb1 + t);
        raw.jellies.push_back(std::move(shifted));
      }
      Canonical canon = canonicalize(raw);
      if (canon.zero) continue;
      add_jelly_term(out.terms, canon.diagram,
                     c1 * c2 * Scalar::of_integer(m1.field, canon.sign));
    }
  }
  return out;
}

JellyMorphism reduce_pair_at(const JellyDiagram& d, int a, int b, FieldSpec f, int n_param) {
  if (d.jelly_count() < 2) throw std::invalid_argument("need at least two jellyfish");
  if (a == b || a < 0 || b < 0 || a >= d.jelly_count() || b >= d.jelly_count()) {
    throw std::invalid_argument("bad jellyfish pair");
  }
  const int n = d.n_legs;
  std::vector<std::vector<int>> blocks = d.blocks;
  std::vector<int> j1 = d.jellies[static_cast<size_t>(a)];
  std::vector<int> j2 = d.jellies[static_cast<size_t>(b)];
  // A dangling leg is a unit: give it a fresh junction block before joining.
  for (int& t : j1) {
    if (t == kDangling) {
      t = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
  }
  for (int& t : j2) {
    if (t == kDangling) {
      t = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
  }
  std::vector<std::vector<int>> rest;
  for (int t = 0; t < d.jelly_count(); ++t) {
    if (t != a && t != b) rest.push_back(d.jellies[static_cast<size_t>(t)]);
  }
  JellyMorphism out = JellyMorphism::zero(d.bottom, d.top, f, n_param);
  const Scalar n_scalar = Scalar::of_integer(f, n_param);
  std::vector<int> sigma(static_cast<size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    UnionFind uf(static_cast<int>(blocks.size()));
    for (int i = 0; i < n; ++i) {
      uf.unite(j1[static_cast<size_t>(i)], j2[static_cast<size_t>(sigma[static_cast<size_t>(i)])]);
    }
    GlueResult r = glue(d.bottom, d.top, n, blocks, uf, rest);
    if (r.zero) continue;
    Scalar coeff = Scalar::of_integer(f, permutation_sign(sigma) * r.sign) *
                   n_scalar.pow(static_cast<unsigned>(r.beta));
    add_jelly_term(out.terms, r.diagram, coeff);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

JellyMorphism reduce_pair(const JellyDiagram& d, FieldSpec f, int n_param) {
  return reduce_pair_at(d, 0, 1, f, n_param);
}

namespace {

// Expands the four-jellyfish closed assembly of the Y derivation by pairing
// jellyfish (0, first) and then the remaining two; returns pure diagram terms.
Morphism expand_four_jellies(const JellyDiagram& d, const Scalar& c0, int first, int n) {
  const FieldSpec q = FieldSpec::rationals();
  Morphism out = Morphism::zero(d.bottom, d.top, q, n);
  JellyMorphism stage1 = reduce_pair_at(d, 0, first, q, n);
  for (const auto& [t, ct] : stage1.terms) {
    JellyMorphism stage2 = reduce_pair_at(t, 0, 1, q, n);
    for (const auto& [t2, ct2] : stage2.terms) {
      out = add(out, scale(c0 * ct * ct2, Morphism::of_diagram(strip_jellies(t2), q, n)));
    }
  }
  return out;
}

}  // namespace

Morphism y_expansion(int n) {
  static std::map<int, Morphism> cache;
  static std::mutex cache_mutex;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  if (n < 2) throw std::invalid_argument("y_expansion needs n >= 2");
  const FieldSpec q = FieldSpec::rationals();
  const JellyMorphism j = jelly_generator(n, q);
  const JellyMorphism jj = tensor_jelly(j, j);
  // Floating pair: the two jellyfish joined by n-1 junction arcs with the two
  // outer legs dangling.
  std::vector<std::vector<int>> u_blocks;
  u_blocks.push_back({1});
  for (int i = 1; i <= n - 1; ++i) u_blocks.push_back({i + 1, n + i});
  u_blocks.push_back({2 * n});
  const Morphism u = Morphism::of_diagram(PartitionDiagram::of_blocks(0, 2 * n, u_blocks), q, n);
  // Grounded pair: legs on overlapping runs of the n+1 bottom vertices.
  std::vector<std::vector<int>> w_blocks;
  w_blocks.push_back({1, (n + 1) + 1});
  for (int v = 2; v <= n; ++v) w_blocks.push_back({v, (n + 1) + v, (n + 1) + n + v - 1});
  w_blocks.push_back({n + 1, (n + 1) + 2 * n});
  const Morphism w =
      Morphism::of_diagram(PartitionDiagram::of_blocks(n + 1, 2 * n, w_blocks), q, n);
  const JellyMorphism top_pair = compose_jelly(jj, embed(u));
  const JellyMorphism bottom_pair = compose_jelly(jj, embed(w));
  const JellyMorphism four = tensor_jelly(top_pair, bottom_pair);
  if (four.terms.size() != 1 || four.terms.begin()->first.jelly_count() != 4) {
    throw std::logic_error("four-jellyfish assembly did not canonicalize to one term");
  }
  const JellyDiagram& core = four.terms.begin()->first;
  const Scalar c0 = four.terms.begin()->second;
  const PartitionDiagram y_diag =
      PartitionDiagram::of(n + 1, 0, SetPartition::singletons(n + 1));
  // One pairing order only yields terms with at most n parts; another isolates
  // the all-singletons diagram with coefficient +-(n-1)!.
  bool have_clean = false, have_iso = false;
  Morphism clean, iso;
  for (int first = 1; first <= 3 && !(have_clean && have_iso); ++first) {
    Morphism e = expand_four_jellies(core, c0, first, n);
    bool over_is_y_only = true, any_over = false;
    for (const auto& [dd, cc] : e.terms) {
      if (dd.part_count() > n) {
        any_over = true;
        if (dd != y_diag) over_is_y_only = false;
      }
    }
    if (!any_over && !have_clean) {
      clean = std::move(e);
      have_clean = true;
    } else if (any_over && over_is_y_only && !have_iso) {
      iso = std::move(e);
      have_iso = true;
    }
  }
  if (!have_clean || !have_iso) {
    throw std::logic_error("could not isolate the all-singletons expansion");
  }
  const Scalar cy = iso.terms.at(y_diag);
  BigInt fact = 1;
  for (int i = 2; i <= n - 1; ++i) fact *= i;
  if (cy.rational() != BigRat(fact) && cy.rational() != -BigRat(fact)) {
    throw std::logic_error("unexpected coefficient on the all-singletons diagram");
  }
  Morphism rest = iso;
  rest.terms.erase(y_diag);
  Morphism y = scale(cy.inverse(),
                     add(clean, scale(Scalar::of_integer(q, -1), rest)));
  for (const auto& [dd, cc] : y.terms) {
    if (dd.part_count() > n) throw std::logic_error("expansion still has too many parts");
  }
  std::lock_guard<std::mutex> lock(cache_mutex);
  return cache.emplace(n, std::move(y)).first->second;
}

Morphism reduce_parts(const PartitionDiagram& d, int n, FieldSpec f) {
  if (d.top != 0) throw type_mismatch_error("reduce_parts expects type k -> 0");
  if (!f.is_rational() && static_cast<int>(f.p) < n) {
    throw characteristic_error("characteristic " + std::to_string(f.p) +
                               " is smaller than n = " + std::to_string(n));
  }
  Morphism y;
  bool y_ready = false;
  Morphism out = Morphism::zero(d.bottom, 0, f, n);
  std::vector<std::pair<PartitionDiagram, Scalar>> work;
  work.emplace_back(d, Scalar::one(f));
  while (!work.empty()) {
    auto [cur, c] = std::move(work.back());
    work.pop_back();
    if (cur.part_count() <= n) {
      Morphism t = scale(c, Morphism::of_diagram(cur, f, n));
      out = add(out, t);
      continue;
    }
    if (!y_ready) {
      y = y_expansion(n);
      y_ready = true;
    }
    // Attach n+1 top vertices to the first n+1 parts, substitute the
    // all-singletons expansion, and recurse; part counts strictly decrease.
    std::vector<std::vector<int>> bar_blocks = cur.parts.blocks;
    for (int t = 1; t <= n + 1; ++t) {
      bar_blocks[static_cast<size_t>(t - 1)].push_back(cur.bottom + t);
    }
    PartitionDiagram bar = PartitionDiagram::of_blocks(cur.bottom, n + 1, bar_blocks);
    for (const auto& [z, cz] : y.terms) {
      ComposeResult r = compose_diagrams(z, bar);
      if (r.beta != 0) throw std::logic_error("unexpected closed component");
      if (r.star.part_count() >= cur.part_count()) {
        throw std::logic_error("part count did not decrease");
      }
      work.emplace_back(r.star, c * Scalar::of_rational(f, cz.rational()));
    }
  }
  return out;
}

JellyMorphism normalize_single_jelly(const JellyDiagram& d, FieldSpec f, int n) {
  if (d.jelly_count() != 1) throw std::invalid_argument("expected exactly one jellyfish");
  if (d.top != 0) throw type_mismatch_error("normalize_single_jelly expects type k -> 0");
  const int k = d.bottom;
  // Canonical one-jellyfish diagrams have no junction blocks (a single-leg
  // junction dangles, two legs of the one jellyfish on a block is zero).
  for (const auto& b : d.blocks) {
    if (b.empty()) throw std::invalid_argument("unexpected junction block");
  }
  // Cut the legs just below the body: leg i becomes top vertex i of a pure
  // diagram of type k -> n, a dangling leg becoming an isolated top vertex.
  std::vector<std::vector<int>> cut_blocks = d.blocks;
  const auto& legs = d.jellies.front();
  for (int i = 0; i < n; ++i) {
    int t = legs[static_cast<size_t>(i)];
    if (t == kDangling) {
      cut_blocks.push_back({k + i + 1});
    } else {
      cut_blocks[static_cast<size_t>(t)].push_back(k + i + 1);
    }
  }
  PartitionDiagram cut = PartitionDiagram::of_blocks(k, n, cut_blocks);
  // Rewrite the cut diagram with at most n parts, then re-attach the
  // jellyfish; each re-attachment is zero or a signed j_D.
  Morphism cut_reduced = Morphism::zero(k, n, f, n);
  for (const auto& [bd, bc] : reduce_parts(bend(cut), n, f).terms) {
    cut_reduced = add(cut_reduced, scale(bc, Morphism::of_diagram(unbend(bd, n), f, n)));
  }
  return compose_jelly(jelly_generator(n, f), embed(cut_reduced));
}

namespace {

JellyMorphism relabel_terms(const JellyMorphism& m, int new_bottom, int new_top,
                            int (*map_vertex)(int, int, int), int k, int l) {
  JellyMorphism out = JellyMorphism::zero(new_bottom, new_top, m.field, m.n_param);
  for (const auto& [d, c] : m.terms) {
    RawJelly raw;
    raw.bottom = new_bottom;
    raw.top = new_top;
    raw.n_legs = d.n_legs;
    for (const auto& b : d.blocks) {
      std::vector<int> nb;
      nb.reserve(b.size());
      for (int v : b) nb.push_back(map_vertex(v, k, l));
      raw.blocks.push_back(std::move(nb));
    }
    raw.jellies = d.jellies;
    Canonical canon = canonicalize(raw);
    if (canon.zero) throw std::logic_error("relabeling cannot vanish");
    add_jelly_term(out.terms, canon.diagram, c * Scalar::of_integer(m.field, canon.sign));
  }
  return out;
}

int bend_vertex(int v, int k, int l) { return v <= k ? v : k + l + 1 - (v - k); }

int unbend_vertex(int v, int k, int l) { return v <= k ? v : k + (k + l + 1 - v); }

}  // namespace

JellyMorphism bend_jelly(const JellyMorphism& m) {
  return relabel_terms(m, m.bottom + m.top, 0, bend_vertex, m.bottom, m.top);
}

JellyMorphism unbend_jelly(const JellyMorphism& m, int top_count) {
  if (m.top != 0) throw type_mismatch_error("unbend expects type m -> 0");
  if (top_count < 0 || top_count > m.bottom) {
    throw type_mismatch_error("unbend split exceeds vertex count");
  }
  return relabel_terms(m, m.bottom - top_count, top_count, unbend_vertex,
                       m.bottom - top_count, top_count);
}

JellyMorphism reduce(const JellyMorphism& m) {
  if (m.n_param < 2) throw std::invalid_argument("reduce needs n >= 2");
  if (!m.field.is_rational() && static_cast<int>(m.field.p) < m.n_param) {
    throw characteristic_error("characteristic " + std::to_string(m.field.p) +
                               " is smaller than n = " + std::to_string(m.n_param));
  }
  if (m.top > 0) return unbend_jelly(reduce(bend_jelly(m)), m.top);
  JellyMorphism out = JellyMorphism::zero(m.bottom, 0, m.field, m.n_param);
  std::vector<std::pair<JellyDiagram, Scalar>> work(m.terms.begin(), m.terms.end());
  while (!work.empty()) {
    auto [d, c] = std::move(work.back());
    work.pop_back();
    if (d.jelly_count() >= 2) {
      for (const auto& [t, ct] : reduce_pair(d, m.field, m.n_param).terms) {
        work.emplace_back(t, c * ct);
      }
    } else if (d.jelly_count() == 1) {
      out = add(out, scale(c, normalize_single_jelly(d, m.field, m.n_param)));
    } else {
      out = add(out, scale(c, embed(reduce_parts(strip_jellies(d), m.n_param, m.field))));
    }
  }
  return out;
}

JellyDiagram j_diagram(const PartitionDiagram& d, int n) {
  if (d.top != 0) throw type_mismatch_error("j_D expects a diagram of type k -> 0");
  const int p = d.part_count();
  if (p != n && p != n - 1) {
    throw std::invalid_argument("j_D needs n or n-1 parts");
  }
  RawJelly raw;
  raw.bottom = d.bottom;
  raw.top = 0;
  raw.n_legs = n;
  raw.blocks = d.parts.blocks;
  std::vector<int> legs;
  legs.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) legs.push_back(i < p ? i : kDangling);
  raw.jellies.push_back(std::move(legs));
  Canonical canon = canonicalize(raw);
  if (canon.zero || canon.sign != 1) throw std::logic_error("j_D must be canonical");
  return canon.diagram;
}

std::vector<JellyDiagram> jelly_basis(int n, int k) {
  std::vector<JellyDiagram> out;
  auto partitions = enumerate_set_partitions(k);
  for (const auto& p : partitions) {
    if (p.part_count() <= n) {
      out.push_back(embed_diagram(PartitionDiagram::of(k, 0, p), n));
    }
  }
  for (const auto& p : partitions) {
    if (p.part_count() == n || p.part_count() == n - 1) {
      out.push_back(j_diagram(PartitionDiagram::of(k, 0, p), n));
    }
  }
  return out;
}

}  // namespace partcat
