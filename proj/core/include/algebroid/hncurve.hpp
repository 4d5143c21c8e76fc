#pragma once

#include <functional>
#include <string>
#include <vector>

#include "algebroid/series.hpp"

namespace algebroid {

/// A branch x = x(t), y = y(t), both series in the single variable t.
struct Parametrization {
  Series x, y;

  static Parametrization parse(std::string_view x_text, std::string_view y_text, const Field& field,
                               int precision = kExact);
  const Field& field() const { return x.field(); }
  int precision() const { return std::min(x.precision(), y.precision()); }
  /// min(ord x, ord y).
  int multiplicity() const;
  Parametrization over(const Field& bigger) const { return {x.over(bigger), y.over(bigger)}; }
};

/// One division step  v = a_1 u + ... + a_h u^h + u^h z  with ord z < ord u.
/// coeffs[j-1] holds a_j for j = 1..h; for every row but the first a_1 = 0.
struct HNRow {
  int h = 0;
  std::vector<Elem> coeffs;
};

struct HNExpansion {
  Field field;
  bool swapped = false;      // the expansion is of (y, x)
  std::vector<HNRow> rows;   // division rows 0..r-1
  Series final_series;       // last dividend as a series in the uniformizer
  /// Orders of the divisors u_0 = x, z_1, ..., z_{r-1}.
  std::vector<int> divisor_orders;

  /// The relations in the layout `y = a01*x + ... + x^h*z1`.
  std::vector<std::string> to_lines() const;
};

/// Division chain; `working_precision` bounds the series the chain creates
/// from exact polynomials (inexact input keeps its own precision).
HNExpansion hn_expand(const Parametrization& p, int working_precision = 32);

/// Back substitution, result in the uniformizer t, to precision `precision`.
Parametrization hn_to_param(const HNExpansion& h, int precision);

using ValueMap = std::function<mpq_class(const Elem&)>;
/// 0 -> 0 and every nonzero element -> 1.
mpq_class default_value_map(const Elem& a);
/// Replaces each coefficient a by F(a); the result lives over Q.
HNExpansion complex_model(const HNExpansion& h, const ValueMap& F = default_value_map);

struct Primitivity {
  bool primitive = false;
  bool precision_limited = false;  // gcd > 1 on a truncated support
  int gcd = 0;
};
Primitivity is_primitive(const Parametrization& p);

}  // namespace algebroid
