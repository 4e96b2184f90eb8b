#include "partcat/repn.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace partcat {

namespace {

void check_same_shape(const TensorMap& a, const TensorMap& b, const char* what) {
  if (a.field != b.field) throw field_mismatch_error(std::string(what) + ": field mismatch");
  if (a.n != b.n || a.k != b.k || a.l != b.l) {
    throw type_mismatch_error(std::string(what) + ": shape mismatch");
  }
}

std::vector<std::pair<long long, Scalar>> to_column(std::map<long long, Scalar>& acc) {
  std::vector<std::pair<long long, Scalar>> col;
  col.reserve(acc.size());
  for (auto& [r, v] : acc) {
    if (!v.is_zero()) col.emplace_back(r, v);
  }
  return col;
}

SetPartition pattern_of(const TensorIndex& idx) {
  const int k = static_cast<int>(idx.entries.size());
  std::vector<int> label_of(static_cast<size_t>(k) + 1, 0);
  for (int v = 1; v <= k; ++v) label_of[static_cast<size_t>(v)] = idx.entries[static_cast<size_t>(v - 1)];
  return SetPartition::from_labels(k, label_of);
}

int tuple_sign(const std::vector<int>& values) {
  // Sign of values as a permutation of 1..n; 0 when not a permutation.
  const int n = static_cast<int>(values.size());
  std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
  for (int v : values) {
    if (v < 1 || v > n || seen[static_cast<size_t>(v)]) return 0;
    seen[static_cast<size_t>(v)] = 1;
  }
  int sign = 1;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (values[static_cast<size_t>(i)] > values[static_cast<size_t>(j)]) sign = -sign;
    }
  }
  return sign;
}

}  // namespace

long long pow_ll(long long base, int exp) {
  long long out = 1;
  for (int i = 0; i < exp; ++i) {
    if (out > (1LL << 62) / std::max<long long>(base, 1)) {
      throw std::overflow_error("tensor power too large");
    }
    out *= base;
  }
  return out;
}

TensorIndex TensorIndex::of_rank(long long rank, int n, int k) {
  TensorIndex idx;
  idx.entries.assign(static_cast<size_t>(k), 1);
  for (int j = k - 1; j >= 0; --j) {
    idx.entries[static_cast<size_t>(j)] = static_cast<int>(rank % n) + 1;
    rank /= n;
  }
  return idx;
}

long long TensorIndex::rank(int n) const {
  long long r = 0;
  for (int e : entries) r = r * n + (e - 1);
  return r;
}

std::string TensorIndex::to_string() const {
  std::ostringstream out;
  out << '(';
  for (size_t i = 0; i < entries.size(); ++i) {
    if (i) out << ',';
    out << entries[i];
  }
  out << ')';
  return out.str();
}

TensorMap TensorMap::zero(int n, int k, int l, FieldSpec f) {
  TensorMap m;
  m.n = n;
  m.k = k;
  m.l = l;
  m.field = f;
  m.cols.assign(static_cast<size_t>(pow_ll(n, k)), {});
  return m;
}

TensorMap TensorMap::identity_map(int n, int k, FieldSpec f) {
  TensorMap m = zero(n, k, k, f);
  for (long long c = 0; c < m.col_count(); ++c) {
    m.cols[static_cast<size_t>(c)].emplace_back(c, Scalar::one(f));
  }
  return m;
}

long long TensorMap::row_count() const { return pow_ll(n, l); }

long long TensorMap::col_count() const { return static_cast<long long>(cols.size()); }

Scalar TensorMap::at(long long row, long long col) const {
  const auto& c = cols[static_cast<size_t>(col)];
  auto it = std::lower_bound(c.begin(), c.end(), row,
                             [](const auto& e, long long r) { return e.first < r; });
  if (it != c.end() && it->first == row) return it->second;
  return Scalar::zero(field);
}

bool TensorMap::is_zero() const {
  for (const auto& c : cols) {
    if (!c.empty()) return false;
  }
  return true;
}

std::vector<Scalar> TensorMap::flatten() const {
  const long long r = row_count(), c = col_count();
  std::vector<Scalar> out(static_cast<size_t>(r * c), Scalar::zero(field));
  for (long long j = 0; j < c; ++j) {
    for (const auto& [i, v] : cols[static_cast<size_t>(j)]) {
      out[static_cast<size_t>(i * c + j)] = v;
    }
  }
  return out;
}

TensorMap add(const TensorMap& a, const TensorMap& b) {
  check_same_shape(a, b, "add");
  TensorMap out = TensorMap::zero(a.n, a.k, a.l, a.field);
  for (size_t c = 0; c < a.cols.size(); ++c) {
    std::map<long long, Scalar> acc;
    for (const auto& [r, v] : a.cols[c]) acc.emplace(r, v);
    for (const auto& [r, v] : b.cols[c]) {
      auto it = acc.find(r);
      if (it == acc.end()) {
        acc.emplace(r, v);
      } else {
        it->second += v;
      }
    }
    out.cols[c] = to_column(acc);
  }
  return out;
}

TensorMap scale(const Scalar& c, const TensorMap& a) {
  if (c.field() != a.field) throw field_mismatch_error("scale: field mismatch");
  TensorMap out = TensorMap::zero(a.n, a.k, a.l, a.field);
  if (c.is_zero()) return out;
  for (size_t j = 0; j < a.cols.size(); ++j) {
    for (const auto& [r, v] : a.cols[j]) out.cols[j].emplace_back(r, c * v);
  }
  return out;
}

TensorMap matmul(const TensorMap& a, const TensorMap& b) {
  if (a.field != b.field) throw field_mismatch_error("matmul: field mismatch");
  if (a.n != b.n || a.k != b.l) throw type_mismatch_error("matmul: shape mismatch");
  TensorMap out = TensorMap::zero(a.n, b.k, a.l, a.field);
  for (size_t c = 0; c < b.cols.size(); ++c) {
    std::map<long long, Scalar> acc;
    for (const auto& [mid, bv] : b.cols[c]) {
      for (const auto& [r, av] : a.cols[static_cast<size_t>(mid)]) {
        Scalar prod = av * bv;
        auto it = acc.find(r);
        if (it == acc.end()) {
          acc.emplace(r, std::move(prod));
        } else {
          it->second += prod;
        }
      }
    }
    out.cols[c] = to_column(acc);
  }
  return out;
}

TensorMap kron(const TensorMap& a, const TensorMap& b) {
  if (a.field != b.field) throw field_mismatch_error("kron: field mismatch");
  if (a.n != b.n) throw type_mismatch_error("kron: different n");
  TensorMap out = TensorMap::zero(a.n, a.k + b.k, a.l + b.l, a.field);
  const long long b_rows = b.row_count();
  const long long b_cols = b.col_count();
  for (long long ca = 0; ca < a.col_count(); ++ca) {
    for (long long cb = 0; cb < b_cols; ++cb) {
      auto& col = out.cols[static_cast<size_t>(ca * b_cols + cb)];
      for (const auto& [ra, va] : a.cols[static_cast<size_t>(ca)]) {
        for (const auto& [rb, vb] : b.cols[static_cast<size_t>(cb)]) {
          col.emplace_back(ra * b_rows + rb, va * vb);
        }
      }
      std::sort(col.begin(), col.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
    }
  }
  return out;
}

TensorMap psi_diagram(const JellyDiagram& d, int n, FieldSpec f) {
  const int k = d.bottom, l = d.top;
  TensorMap out = TensorMap::zero(n, k, l, f);
  const int nb = d.block_count();
  // Slot = block or dangling leg; a slot carries one label in 1..n.
  int dangler_count = 0;
  std::vector<std::vector<int>> leg_slots;
  leg_slots.reserve(d.jellies.size());
  for (const auto& legs : d.jellies) {
    std::vector<int> slots;
    slots.reserve(legs.size());
    for (int t : legs) slots.push_back(t == kDangling ? nb + dangler_count++ : t);
    leg_slots.push_back(std::move(slots));
  }
  const int n_slots = nb + dangler_count;
  std::vector<std::vector<int>> bot_of(static_cast<size_t>(nb)), top_of(static_cast<size_t>(nb));
  for (int b = 0; b < nb; ++b) {
    for (int v : d.blocks[static_cast<size_t>(b)]) {
      if (v <= k) {
        bot_of[static_cast<size_t>(b)].push_back(v);
      } else {
        top_of[static_cast<size_t>(b)].push_back(v - k);
      }
    }
  }
  std::vector<int> free_slots;
  for (int b = 0; b < nb; ++b) {
    if (bot_of[static_cast<size_t>(b)].empty()) free_slots.push_back(b);
  }
  for (int t = 0; t < dangler_count; ++t) free_slots.push_back(nb + t);
  const long long free_total = pow_ll(n, static_cast<int>(free_slots.size()));
  std::vector<int> val(static_cast<size_t>(n_slots), 0);
  std::vector<int> top_tuple(static_cast<size_t>(l), 0);
  std::vector<int> leg_vals;
  for (long long col = 0; col < out.col_count(); ++col) {
    TensorIndex bi = TensorIndex::of_rank(col, n, k);
    std::fill(val.begin(), val.end(), 0);
    bool ok = true;
    for (int b = 0; b < nb && ok; ++b) {
      for (int v : bot_of[static_cast<size_t>(b)]) {
        int label = bi.entries[static_cast<size_t>(v - 1)];
        if (val[static_cast<size_t>(b)] == 0) {
          val[static_cast<size_t>(b)] = label;
        } else if (val[static_cast<size_t>(b)] != label) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    std::map<long long, Scalar> acc;
    for (long long assign = 0; assign < free_total; ++assign) {
      long long a = assign;
      for (size_t s = free_slots.size(); s-- > 0;) {
        val[static_cast<size_t>(free_slots[s])] = static_cast<int>(a % n) + 1;
        a /= n;
      }
      int sign = 1;
      for (const auto& slots : leg_slots) {
        leg_vals.clear();
        for (int s : slots) leg_vals.push_back(val[static_cast<size_t>(s)]);
        sign *= tuple_sign(leg_vals);
        if (sign == 0) break;
      }
      if (sign == 0) continue;
      for (int b = 0; b < nb; ++b) {
        for (int t : top_of[static_cast<size_t>(b)]) {
          top_tuple[static_cast<size_t>(t - 1)] = val[static_cast<size_t>(b)];
        }
      }
      long long row = 0;
      for (int t = 0; t < l; ++t) row = row * n + (top_tuple[static_cast<size_t>(t)] - 1);
      Scalar term = Scalar::of_integer(f, sign);
      auto it = acc.find(row);
      if (it == acc.end()) {
        acc.emplace(row, std::move(term));
      } else {
        it->second += term;
      }
    }
    out.cols[static_cast<size_t>(col)] = to_column(acc);
  }
  return out;
}

TensorMap phi(const PartitionDiagram& d, int n, FieldSpec f) {
  return psi_diagram(embed_diagram(d, n), n, f);
}

TensorMap phi_morphism(const Morphism& m) {
  TensorMap out = TensorMap::zero(m.n_param, m.bottom, m.top, m.field);
  for (const auto& [d, c] : m.terms) {
    out = add(out, scale(c, phi(d, m.n_param, m.field)));
  }
  return out;
}

TensorMap det_map(int n, FieldSpec f) {
  TensorMap out = TensorMap::zero(n, n, 0, f);
  for (long long col = 0; col < out.col_count(); ++col) {
    int sign = tuple_sign(TensorIndex::of_rank(col, n, n).entries);
    if (sign != 0) {
      out.cols[static_cast<size_t>(col)].emplace_back(0, Scalar::of_integer(f, sign));
    }
  }
  return out;
}

TensorMap psi(const JellyMorphism& m) {
  TensorMap out = TensorMap::zero(m.n_param, m.bottom, m.top, m.field);
  for (const auto& [d, c] : m.terms) {
    out = add(out, scale(c, psi_diagram(d, m.n_param, m.field)));
  }
  return out;
}

TensorMap f_functional(const PartitionDiagram& d, int n, FieldSpec f) {
  if (d.top != 0) throw type_mismatch_error("f_D expects a diagram of type k -> 0");
  const int k = d.bottom;
  TensorMap out = TensorMap::zero(n, k, 0, f);
  for (long long col = 0; col < out.col_count(); ++col) {
    if (pattern_of(TensorIndex::of_rank(col, n, k)) == d.parts) {
      out.cols[static_cast<size_t>(col)].emplace_back(0, Scalar::one(f));
    }
  }
  return out;
}

std::pair<JellyDiagram, TensorMap> jelly_functional(const PartitionDiagram& d, int n,
                                                    FieldSpec f) {
  JellyDiagram jd = j_diagram(d, n);
  TensorMap row = psi_diagram(jd, n, f);
  return {std::move(jd), std::move(row)};
}

std::vector<std::vector<int>> alternating_group(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> g(static_cast<size_t>(n));
  std::iota(g.begin(), g.end(), 1);
  do {
    if (tuple_sign(g) == 1) out.push_back(g);
  } while (std::next_permutation(g.begin(), g.end()));
  return out;
}

long long act_on_rank(const std::vector<int>& g, long long rank, int n, int k) {
  TensorIndex idx = TensorIndex::of_rank(rank, n, k);
  for (int& e : idx.entries) e = g[static_cast<size_t>(e - 1)];
  return idx.rank(n);
}

std::vector<OrbitClass> classify_orbits(int n, int k) {
  if (n < 2) throw std::invalid_argument("orbit classification needs n >= 2");
  std::map<SetPartition, std::vector<long long>> by_pattern;
  const long long total = pow_ll(n, k);
  for (long long r = 0; r < total; ++r) {
    by_pattern[pattern_of(TensorIndex::of_rank(r, n, k))].push_back(r);
  }
  std::vector<OrbitClass> out;
  for (const auto& p : enumerate_set_partitions(k)) {
    auto it = by_pattern.find(p);
    if (it == by_pattern.end()) continue;
    PartitionDiagram d = PartitionDiagram::of(k, 0, p);
    const int parts = p.part_count();
    if (parts <= n - 2) {
      out.push_back({"O[" + p.to_string() + "]", it->second});
      continue;
    }
    TensorMap row = jelly_functional(d, n).second;
    OrbitClass plus{"O[" + p.to_string() + "]^+", {}};
    OrbitClass minus{"O[" + p.to_string() + "]^-", {}};
    for (long long r : it->second) {
      Scalar v = row.at(0, r);
      if (v.is_zero()) throw std::logic_error("jelly functional vanished on its orbit");
      (v == Scalar::one(row.field) ? plus : minus).members.push_back(r);
    }
    out.push_back(std::move(plus));
    out.push_back(std::move(minus));
  }
  return out;
}

std::vector<std::vector<long long>> orbits_bruteforce(int n, int k) {
  const long long total = pow_ll(n, k);
  const auto group = alternating_group(n);
  std::vector<long long> root(static_cast<size_t>(total));
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](long long a) {
    while (root[static_cast<size_t>(a)] != a) {
      root[static_cast<size_t>(a)] = root[static_cast<size_t>(root[static_cast<size_t>(a)])];
      a = root[static_cast<size_t>(a)];
    }
    return a;
  };
  for (long long r = 0; r < total; ++r) {
    for (const auto& g : group) {
      long long s = find(act_on_rank(g, r, n, k));
      long long a = find(r);
      if (a != s) root[static_cast<size_t>(s)] = a;
    }
  }
  std::map<long long, std::vector<long long>> buckets;
  for (long long r = 0; r < total; ++r) buckets[find(r)].push_back(r);
  std::vector<std::vector<long long>> out;
  out.reserve(buckets.size());
  for (auto& [_, members] : buckets) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

BigInt hom_dim(int n, int k, int l) {
  if (n < 2) throw std::invalid_argument("hom_dim needs n >= 2");
  const int m = k + l;
  BigInt total = 0;
  for (int p = 0; p <= n - 2; ++p) total += stirling2(m, p);
  total += 2 * stirling2(m, n - 1);
  total += 2 * stirling2(m, n);
  return total;
}

long long hom_dim_bruteforce(int n, int k, int l, FieldSpec f) {
  if (n < 2) throw std::invalid_argument("hom_dim_bruteforce needs n >= 2");
  const auto group = alternating_group(n);
  if (!f.is_rational() && static_cast<BigInt>(group.size()) % f.p == 0) {
    throw characteristic_error("characteristic divides the group order");
  }
  const int m = k + l;
  long long rank_total = 0;
  for (const auto& orbit : orbits_bruteforce(n, m)) {
    std::map<long long, size_t> index;
    for (size_t i = 0; i < orbit.size(); ++i) index.emplace(orbit[i], i);
    // Averaging operator block: column i counts group elements sending
    // tuple i to each tuple j of the orbit.
    std::vector<std::vector<Scalar>> block(
        orbit.size(), std::vector<Scalar>(orbit.size(), Scalar::zero(f)));
    for (size_t i = 0; i < orbit.size(); ++i) {
      for (const auto& g : group) {
        size_t j = index.at(act_on_rank(g, orbit[i], n, m));
        block[j][i] += Scalar::one(f);
      }
    }
    rank_total += rank_dense(std::move(block), f);
  }
  return rank_total;
}

namespace {

long long rank_rational_rows(std::vector<std::vector<Scalar>>& rows) {
  using boost::multiprecision::gcd;
  using boost::multiprecision::lcm;
  std::vector<std::vector<BigInt>> m;
  m.reserve(rows.size());
  for (const auto& row : rows) {
    BigInt denom = 1;
    for (const Scalar& v : row) denom = lcm(denom, boost::multiprecision::denominator(v.rational()));
    std::vector<BigInt> cleared;
    cleared.reserve(row.size());
    for (const Scalar& v : row) {
      const BigRat& q = v.rational();
      cleared.push_back(boost::multiprecision::numerator(q) *
                        (denom / boost::multiprecision::denominator(q)));
    }
    m.push_back(std::move(cleared));
  }
  const size_t n_cols = m.empty() ? 0 : m.front().size();
  size_t pivot_row = 0;
  long long rank = 0;
  for (size_t col = 0; col < n_cols && pivot_row < m.size(); ++col) {
    size_t found = pivot_row;
    while (found < m.size() && m[found][col] == 0) ++found;
    if (found == m.size()) continue;
    std::swap(m[pivot_row], m[found]);
    const BigInt pv = m[pivot_row][col];
    for (size_t r = pivot_row + 1; r < m.size(); ++r) {
      if (m[r][col] == 0) continue;
      const BigInt rv = m[r][col];
      BigInt g = 0;
      for (size_t c = col; c < n_cols; ++c) {
        m[r][c] = pv * m[r][c] - rv * m[pivot_row][c];
        if (m[r][c] != 0) g = gcd(g, abs(m[r][c]));
      }
      if (g > 1) {
        for (size_t c = col; c < n_cols; ++c) m[r][c] /= g;
      }
    }
    ++pivot_row;
    ++rank;
  }
  return rank;
}

long long rank_prime_rows(std::vector<std::vector<Scalar>>& rows, FieldSpec f) {
  const size_t n_cols = rows.empty() ? 0 : rows.front().size();
  size_t pivot_row = 0;
  long long rank = 0;
  for (size_t col = 0; col < n_cols && pivot_row < rows.size(); ++col) {
    size_t found = pivot_row;
    while (found < rows.size() && rows[found][col].is_zero()) ++found;
    if (found == rows.size()) continue;
    std::swap(rows[pivot_row], rows[found]);
    const Scalar inv = rows[pivot_row][col].inverse();
    for (size_t r = pivot_row + 1; r < rows.size(); ++r) {
      if (rows[r][col].is_zero()) continue;
      const Scalar factor = rows[r][col] * inv;
      for (size_t c = col; c < n_cols; ++c) {
        rows[r][c] -= factor * rows[pivot_row][c];
      }
    }
    ++pivot_row;
    ++rank;
  }
  (void)f;
  return rank;
}

}  // namespace

long long rank_dense(std::vector<std::vector<Scalar>> rows, FieldSpec f) {
  if (rows.empty()) return 0;
  if (f.is_rational()) return rank_rational_rows(rows);
  return rank_prime_rows(rows, f);
}

}  // namespace partcat
