#include "partcat/field.hpp"

namespace partcat {

parse_error::parse_error(const std::string& msg, int line_, int col_)
    : std::runtime_error(msg + " (line " + std::to_string(line_) + ", column " +
                         std::to_string(col_) + ")"),
      line(line_),
      col(col_) {}

bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  if (v % 2 == 0) return v == 2;
  for (std::uint64_t d = 3; d * d <= v; d += 2) {
    if (v % d == 0) return false;
  }
  return true;
}

FieldSpec FieldSpec::prime_field(std::uint32_t p) {
  if (p == 2) throw characteristic_error("characteristic 2 is not supported");
  if (!is_prime(p)) {
    throw characteristic_error("field order " + std::to_string(p) + " is not prime");
  }
  FieldSpec f;
  f.p = p;
  return f;
}

std::string FieldSpec::to_string() const {
  return is_rational() ? "Q" : "F" + std::to_string(p);
}

namespace {

std::uint64_t mod_reduce(const BigInt& v, std::uint32_t p) {
  BigInt r = v % p;
  if (r < 0) r += p;
  return static_cast<std::uint64_t>(r);
}

// extended Euclid; requires gcd(a, p) = 1
std::uint64_t mod_inverse(std::uint64_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) {
    throw characteristic_error("residue " + std::to_string(a) +
                               " is not invertible mod " + std::to_string(p));
  }
  if (t < 0) t += p;
  return static_cast<std::uint64_t>(t);
}

}  // namespace

Scalar Scalar::zero(FieldSpec f) {
  Scalar s;
  s.field_ = f;
  return s;
}

Scalar Scalar::one(FieldSpec f) {
  Scalar s;
  s.field_ = f;
  if (f.is_rational()) {
    s.q_ = 1;
  } else {
    s.r_ = 1 % f.p;
  }
  return s;
}

Scalar Scalar::of_integer(FieldSpec f, const BigInt& v) {
  Scalar s;
  s.field_ = f;
  if (f.is_rational()) {
    s.q_ = BigRat(v);
  } else {
    s.r_ = mod_reduce(v, f.p);
  }
  return s;
}

Scalar Scalar::of_integer(FieldSpec f, long long v) { return of_integer(f, BigInt(v)); }

Scalar Scalar::of_rational(FieldSpec f, const BigRat& v) {
  Scalar s;
  s.field_ = f;
  if (f.is_rational()) {
    s.q_ = v;
  } else {
    std::uint64_t den = mod_reduce(boost::multiprecision::denominator(v), f.p);
    if (den == 0) {
      throw characteristic_error("denominator of " + v.str() +
                                 " vanishes in characteristic " + std::to_string(f.p));
    }
    std::uint64_t num = mod_reduce(boost::multiprecision::numerator(v), f.p);
    s.r_ = (num * mod_inverse(den, f.p)) % f.p;
  }
  return s;
}

bool Scalar::is_zero() const { return field_.is_rational() ? q_.is_zero() : r_ == 0; }

bool Scalar::is_one() const { return field_.is_rational() ? q_ == 1 : r_ == 1 % field_.p; }

void Scalar::check_same(const Scalar& o) const {
  if (field_ != o.field_) {
    throw field_mismatch_error("scalar arithmetic between " + field_.to_string() +
                               " and " + o.field_.to_string());
  }
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  if (field_.is_rational()) {
    s.q_ = -q_;
  } else if (r_ != 0) {
    s.r_ = field_.p - r_;
  }
  return s;
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same(o);
  Scalar s = *this;
  if (field_.is_rational()) {
    s.q_ += o.q_;
  } else {
    s.r_ = (r_ + o.r_) % field_.p;
  }
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  check_same(o);
  Scalar s = *this;
  if (field_.is_rational()) {
    s.q_ *= o.q_;
  } else {
    s.r_ = (r_ * o.r_) % field_.p;  // p < 2^32, so the product fits in 64 bits
  }
  return s;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar& Scalar::operator+=(const Scalar& o) { return *this = *this + o; }

Scalar& Scalar::operator-=(const Scalar& o) { return *this = *this - o; }

Scalar& Scalar::operator*=(const Scalar& o) { return *this = *this * o; }

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  Scalar s = *this;
  if (field_.is_rational()) {
    s.q_ = 1 / q_;
  } else {
    s.r_ = mod_inverse(r_, field_.p);
  }
  return s;
}

Scalar Scalar::pow(unsigned e) const {
  Scalar acc = one(field_);
  Scalar base = *this;
  while (e > 0) {
    if (e & 1u) acc = acc * base;
    base = base * base;
    e >>= 1u;
  }
  return acc;
}

const BigRat& Scalar::rational() const {
  if (!field_.is_rational()) throw field_mismatch_error("rational() on a residue");
  return q_;
}

std::uint64_t Scalar::residue() const {
  if (field_.is_rational()) throw field_mismatch_error("residue() on a rational");
  return r_;
}

std::string Scalar::to_string() const {
  if (field_.is_rational()) return q_.str();
  return std::to_string(r_);
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.field_ != b.field_) return false;
  return a.field_.is_rational() ? a.q_ == b.q_ : a.r_ == b.r_;
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  if (auto c = a.field_ <=> b.field_; c != 0) return c;
  if (a.field_.is_rational()) {
    if (a.q_ < b.q_) return std::strong_ordering::less;
    if (b.q_ < a.q_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  return a.r_ <=> b.r_;
}

}  // namespace partcat
