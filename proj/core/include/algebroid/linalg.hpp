#pragma once

#include <cstddef>
#include <vector>

#include "algebroid/field.hpp"

namespace algebroid {

using Vec = std::vector<Elem>;

/// Row space kept in reduced echelon form; vectors are added one at a time.
class RowSpace {
 public:
  RowSpace(Field field, std::size_t dim) : field_(std::move(field)), dim_(dim) {}

  /// Adds v; returns true when the rank grows.
  bool add(const Vec& v);
  /// v minus its projection onto the span (zero iff v is in the span).
  Vec reduce(const Vec& v) const;
  bool contains(const Vec& v) const;

  std::size_t rank() const { return rows_.size(); }
  std::size_t dim() const { return dim_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  const std::vector<Vec>& rows() const { return rows_; }

 private:
  Field field_;
  std::size_t dim_;
  std::vector<Vec> rows_;  // row i has a 1 at pivots_[i] and 0 at every other pivot
  std::vector<std::size_t> pivots_;
};

std::size_t rank(const Field& field, const std::vector<Vec>& rows, std::size_t dim);

/// Univariate polynomial, lowest degree first, no trailing zeros.
using UPoly = std::vector<Elem>;

void trim(UPoly& p);
int degree(const UPoly& p);  // -1 for zero
UPoly upoly_derivative(const UPoly& p);
/// Quotient and remainder; `b` nonzero.
std::pair<UPoly, UPoly> upoly_divmod(const UPoly& a, const UPoly& b);
/// Monic gcd (zero if both are zero).
UPoly upoly_gcd(UPoly a, UPoly b);
/// Product of the distinct monic irreducible factors over the algebraic
/// closure, i.e. a polynomial with the same roots, each simple. Q and finite
/// fields only.
UPoly radical(const UPoly& p, const Field& field);
/// Roots lying in the given finite field (brute force).
std::vector<Elem> roots_in(const UPoly& p, const Field& field);
Elem upoly_eval(const UPoly& p, const Elem& x);
/// Smallest extension (degree <= 12) over which p splits, with its distinct
/// roots there. Finite fields only.
std::pair<Field, std::vector<Elem>> splitting_roots(const UPoly& p, const Field& field);

}  // namespace algebroid
