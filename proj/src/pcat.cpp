#include "partcat/pcat.hpp"

#include <mutex>

namespace partcat {

namespace {

void check_linear_compat(const Morphism& a, const Morphism& b) {
  if (a.field != b.field) {
    throw field_mismatch_error("morphism fields differ: " + a.field.to_string() + " vs " +
                               b.field.to_string());
  }
  if (a.n_param != b.n_param) {
    throw type_mismatch_error("morphism parameters differ: n=" + std::to_string(a.n_param) +
                              " vs n=" + std::to_string(b.n_param));
  }
}

void add_term(std::map<PartitionDiagram, Scalar>& terms, const PartitionDiagram& d,
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

}  // namespace

Morphism Morphism::zero(int bottom, int top, FieldSpec f, int n) {
  Morphism m;
  m.bottom = bottom;
  m.top = top;
  m.field = f;
  m.n_param = n;
  return m;
}

Morphism Morphism::of_diagram(const PartitionDiagram& d, FieldSpec f, int n) {
  Morphism m = zero(d.bottom, d.top, f, n);
  m.terms.emplace(d, Scalar::one(f));
  return m;
}

Morphism Morphism::identity(int k, FieldSpec f, int n) {
  return of_diagram(PartitionDiagram::identity(k), f, n);
}

Morphism add(const Morphism& m1, const Morphism& m2) {
  check_linear_compat(m1, m2);
  if (m1.bottom != m2.bottom || m1.top != m2.top) {
    throw type_mismatch_error("addition of different types");
  }
  Morphism out = m1;
  for (const auto& [d, c] : m2.terms) add_term(out.terms, d, c);
  return out;
}

Morphism scale(const Scalar& c, const Morphism& m) {
  if (c.field() != m.field) throw field_mismatch_error("scale field mismatch");
  Morphism out = Morphism::zero(m.bottom, m.top, m.field, m.n_param);
  if (c.is_zero()) return out;
  for (const auto& [d, coeff] : m.terms) out.terms.emplace(d, c * coeff);
  return out;
}

Morphism compose(const Morphism& m2, const Morphism& m1) {
  check_linear_compat(m1, m2);
  if (m1.top != m2.bottom) {
    throw type_mismatch_error("compose type mismatch: " + std::to_string(m1.bottom) + "->" +
                              std::to_string(m1.top) + " then " + std::to_string(m2.bottom) +
                              "->" + std::to_string(m2.top));
  }
  Morphism out = Morphism::zero(m1.bottom, m2.top, m1.field, m1.n_param);
  const Scalar n_scalar = Scalar::of_integer(m1.field, m1.n_param);
  for (const auto& [d2, c2] : m2.terms) {
    for (const auto& [d1, c1] : m1.terms) {
      ComposeResult r = compose_diagrams(d2, d1);
      add_term(out.terms, r.star, c2 * c1 * n_scalar.pow(static_cast<unsigned>(r.beta)));
    }
  }
  return out;
}

Morphism tensor(const Morphism& m1, const Morphism& m2) {
  check_linear_compat(m1, m2);
  Morphism out = Morphism::zero(m1.bottom + m2.bottom, m1.top + m2.top, m1.field, m1.n_param);
  for (const auto& [d1, c1] : m1.terms) {
    for (const auto& [d2, c2] : m2.terms) {
      add_term(out.terms, tensor_diagrams(d1, d2), c1 * c2);
    }
  }
  return out;
}

std::map<PartitionDiagram, Scalar> to_x_basis(const Morphism& m) {
  // D = sum over coarsenings D' >= D of x_{D'}, so the x coordinate at D' is
  // the sum of the diagram coefficients over all D <= D'.
  std::map<PartitionDiagram, Scalar> coords;
  for (const auto& [d, c] : m.terms) {
    for (const auto& q : coarsenings(d.parts)) {
      add_term(coords, PartitionDiagram::of(d.bottom, d.top, q), c);
    }
  }
  return coords;
}

std::map<PartitionDiagram, BigInt> x_expansion(const PartitionDiagram& d) {
  static std::map<PartitionDiagram, std::map<PartitionDiagram, BigInt>> cache;
  static std::mutex cache_mutex;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(d);
    if (it != cache.end()) return it->second;
  }
  // x_D = D - sum over strictly coarser D' of x_{D'}
  std::map<PartitionDiagram, BigInt> expansion;
  expansion[d] = 1;
  for (const auto& q : coarsenings(d.parts)) {
    if (q == d.parts) continue;
    auto sub = x_expansion(PartitionDiagram::of(d.bottom, d.top, q));
    for (const auto& [dd, coeff] : sub) {
      auto& slot = expansion[dd];
      slot -= coeff;
      if (slot == 0) expansion.erase(dd);
    }
  }
  std::lock_guard<std::mutex> lock(cache_mutex);
  return cache.emplace(d, std::move(expansion)).first->second;
}

Morphism from_x_basis(int bottom, int top, FieldSpec f, int n,
                      const std::map<PartitionDiagram, Scalar>& coords) {
  Morphism out = Morphism::zero(bottom, top, f, n);
  for (const auto& [d, c] : coords) {
    if (c.field() != f) throw field_mismatch_error("x coordinate field mismatch");
    if (c.is_zero()) continue;
    for (const auto& [dd, coeff] : x_expansion(d)) {
      add_term(out.terms, dd, c * Scalar::of_integer(f, coeff));
    }
  }
  return out;
}

}  // namespace partcat
