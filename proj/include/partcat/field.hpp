#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace partcat {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Error taxonomy. The CLI maps each type to a distinct exit code.
struct parse_error : std::runtime_error {
  int line = 0;
  int col = 0;
  parse_error(const std::string& msg, int line, int col);
};

struct type_mismatch_error : std::runtime_error {
  explicit type_mismatch_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct field_mismatch_error : std::runtime_error {
  explicit field_mismatch_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct characteristic_error : std::runtime_error {
  explicit characteristic_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct cap_exceeded_error : std::runtime_error {
  explicit cap_exceeded_error(const std::string& msg) : std::runtime_error(msg) {}
};

bool is_prime(std::uint64_t v);

// p == 0 selects the rationals; otherwise p must be an odd prime (p = 2 is
// rejected because the sign calculus collapses there).
struct FieldSpec {
  std::uint32_t p = 0;

  static FieldSpec rationals() { return FieldSpec{}; }
  static FieldSpec prime_field(std::uint32_t p);

  bool is_rational() const { return p == 0; }
  std::string to_string() const;  // "Q" or "F<p>"

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
  friend auto operator<=>(const FieldSpec&, const FieldSpec&) = default;
};

// Exact field element: a reduced rational when the field is Q, a residue in
// [0, p) otherwise. Arithmetic between different fields throws
// field_mismatch_error; there is no implicit coercion.
class Scalar {
 public:
  Scalar() = default;  // zero over the rationals

  static Scalar zero(FieldSpec f);
  static Scalar one(FieldSpec f);
  static Scalar of_integer(FieldSpec f, const BigInt& v);
  static Scalar of_integer(FieldSpec f, long long v);
  static Scalar of_rational(FieldSpec f, const BigRat& v);

  const FieldSpec& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar inverse() const;
  Scalar pow(unsigned e) const;

  const BigRat& rational() const;    // valid only over Q
  std::uint64_t residue() const;     // valid only over F_p

  std::string to_string() const;  // "-3/4" over Q, residue digits over F_p

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

 private:
  FieldSpec field_{};
  BigRat q_{};            // used when field_.p == 0
  std::uint64_t r_ = 0;   // used when field_.p > 0

  void check_same(const Scalar& o) const;
};

}  // namespace partcat
