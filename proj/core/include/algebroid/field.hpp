#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "algebroid/error.hpp"

namespace algebroid {

namespace detail {
struct FieldImpl;
}

class Field;

/// An element of a coefficient field.
///
/// Finite-field elements are stored as a base-p code `sum c_i p^i` of their
/// coefficient vector in the power basis of the generator; rationals as
/// reduced GMP fractions. Both representations are canonical, so equality is
/// representational. Field contexts are interned and never freed, so an
/// element stays valid for the lifetime of the program.
class Elem {
 public:
  Elem() = default;

  Field field() const;
  bool is_zero() const;
  bool is_one() const;

  Elem operator+(const Elem& o) const;
  Elem operator-(const Elem& o) const;
  Elem operator*(const Elem& o) const;
  Elem operator/(const Elem& o) const;
  Elem operator-() const;
  Elem& operator+=(const Elem& o) { return *this = *this + o; }
  Elem& operator-=(const Elem& o) { return *this = *this - o; }
  Elem& operator*=(const Elem& o) { return *this = *this * o; }

  Elem inv() const;
  Elem pow(std::uint64_t e) const;

  bool operator==(const Elem& o) const;
  bool operator!=(const Elem& o) const { return !(*this == o); }

  /// Code of a finite-field element (0 for rationals).
  std::uint64_t code() const { return code_; }
  /// The value of a rational element (0 for finite-field elements).
  const mpq_class& rational() const;

  /// Rational value if this is an element of Q or of a prime field viewed
  /// through its least non-negative representative.
  std::optional<mpq_class> as_rational() const;

  std::string to_string() const;

 private:
  friend class Field;
  friend struct detail::FieldImpl;
  Elem(const detail::FieldImpl* f, std::uint64_t code) : f_(f), code_(code) {}
  Elem(const detail::FieldImpl* f, mpq_class q) : f_(f), q_(std::move(q)) {}
  const mpq_class& q() const { return *q_; }

  const detail::FieldImpl* f_ = nullptr;
  std::uint64_t code_ = 0;
  std::optional<mpq_class> q_;  // engaged only over Q
};

/// A computable coefficient field: Q, F_p, or F_{p^k} = F_p[a]/(m(a)).
///
/// Contexts are immutable and interned. Extensions built on demand remember
/// the field they were grown from and how its generator embeds, so elements
/// can be carried up the tower with `embed`.
class Field {
 public:
  enum class Kind { Rationals, Prime, Extension };

  Field();  // Q

  static Field rationals();
  static Field prime(std::uint64_t p);
  /// `minpoly` is monic, coefficients low degree first, reduced mod p.
  static Field extension(std::uint64_t p, std::vector<std::uint64_t> minpoly,
                         std::string generator = "a");
  /// Smallest-in-lex-order extension of F_p of degree `degree`.
  static Field galois(std::uint64_t p, int degree, std::string generator = "a");
  /// Field spec grammar: `char=0` | `char=<p>` | `char=<p>; ext=<name>:<poly>`.
  static Field parse(std::string_view spec);

  Kind kind() const;
  std::uint64_t characteristic() const;
  /// Degree over the prime field (1 for Q and F_p).
  int degree() const;
  /// Number of elements, 0 for Q.
  std::uint64_t size() const;
  bool is_finite() const { return kind() != Kind::Rationals; }
  const std::string& generator_name() const;
  const std::vector<std::uint64_t>& minimal_polynomial() const;
  std::string spec() const;

  Elem zero() const;
  Elem one() const;
  Elem from_int(long long v) const;
  Elem from_rational(const mpq_class& v) const;
  Elem generator() const;
  /// Finite fields only: element with the given base-p code.
  Elem from_code(std::uint64_t code) const;
  /// All elements in code order (finite fields only).
  std::vector<Elem> elements() const;
  Elem random(std::mt19937_64& rng, bool nonzero = false) const;

  /// Field this one was grown from by `adjoin_nth_root`, if any.
  std::optional<Field> parent() const;
  /// True if `sub` embeds into this field through the recorded tower
  /// (prime fields always embed into their extensions).
  bool contains(const Field& sub) const;
  /// Image of `e` (an element of a subfield in the tower) in this field.
  Elem embed(const Elem& e) const;

  bool operator==(const Field& o) const { return impl_ == o.impl_; }
  bool operator!=(const Field& o) const { return impl_ != o.impl_; }

  const detail::FieldImpl* impl() const { return impl_; }

 private:
  friend class Elem;
  friend struct detail::FieldImpl;
  explicit Field(const detail::FieldImpl* impl) : impl_(impl) {}
  const detail::FieldImpl* impl_;
};

/// Returns a field containing `field` and an element r with r^n = a.
/// Finite fields: the smallest extension in which such an r exists. Q: only
/// succeeds if a rational root exists.
std::pair<Field, Elem> adjoin_nth_root(const Field& field, const Elem& a, int n);

/// Smallest extension containing a primitive n-th root of unity, and one
/// such root (p must not divide n).
std::pair<Field, Elem> primitive_root_of_unity(const Field& field, int n);

/// Degree-m extension of a finite field, with `field` embedded through the
/// tower (SearchSpaceTooLarge past the element limit).
Field extend(const Field& field, int m);

/// a ↦ a^p. Throws CharZero over Q.
Elem frobenius(const Field& field, const Elem& a);

bool is_prime(std::uint64_t n);

/// Brute-force irreducibility over F_p (trial division by every monic
/// polynomial of degree <= deg/2). Coefficients low degree first.
bool is_irreducible_mod_p(const std::vector<std::uint64_t>& poly, std::uint64_t p);

}  // namespace algebroid
