#pragma once

#include <climits>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "algebroid/field.hpp"

namespace algebroid {

using Exponent = std::vector<int>;

/// Precision of a series whose every term is known (a polynomial).
inline constexpr int kExact = INT_MAX;

/// Saturating sum for precisions: anything plus kExact stays exact.
int prec_add(int a, int b);

int total_degree(const Exponent& e);

/// Ascending total degree; inside a degree, larger exponents of earlier
/// variables come first (x^2, xy, y^2).
struct DegLex {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

struct Order {
  int value = 0;                   // meaningful when !infinite
  bool infinite = false;           // no nonzero term below the precision
  bool precision_limited = false;  // infinite only because of truncation
};

class Series {
 public:
  using Terms = std::map<Exponent, Elem, DegLex>;

  Series() = default;
  Series(Field field, std::vector<std::string> vars, int precision = kExact);

  static Series constant(const Field& field, std::vector<std::string> vars, const Elem& c,
                         int precision = kExact);
  static Series variable(const Field& field, std::vector<std::string> vars, std::size_t index,
                         int precision = kExact);
  static Series monomial(const Field& field, std::vector<std::string> vars, Exponent e, const Elem& c,
                         int precision = kExact);

  /// Parses a polynomial. When `vars` is empty the variables are the
  /// identifiers in the text, sorted. The extension generator's name is read
  /// as a field constant.
  static Series parse(std::string_view text, const Field& field, std::vector<std::string> vars = {},
                      int precision = kExact);

  const Field& field() const { return field_; }
  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  int precision() const { return prec_; }
  bool is_exact() const { return prec_ == kExact; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t var_index(std::string_view name) const;

  /// Coefficient of x^e; PrecisionExhausted if deg e is beyond the precision.
  Elem coeff(const Exponent& e) const;
  /// Coefficient of t^k for a series in one variable.
  Elem coeff(int k) const { return coeff(Exponent{k}); }
  void add_term(const Exponent& e, const Elem& c);

  Order ord() const;
  /// Order of the stored terms, or the precision when none are stored
  /// (a lower bound for the true order either way).
  int ord_bound() const;
  /// Largest total degree of a stored term; -1 for zero.
  int max_degree() const;

  Series operator+(const Series& o) const;
  Series operator-(const Series& o) const;
  Series operator*(const Series& o) const;
  Series operator-() const;
  Series& operator+=(const Series& o) { return *this = *this + o; }
  Series& operator-=(const Series& o) { return *this = *this - o; }
  Series& operator*=(const Series& o) { return *this = *this * o; }
  Series scaled(const Elem& c) const;
  Series pow(unsigned e) const;

  Series derivative(std::size_t var) const;
  Series derivative(std::string_view var) const { return derivative(var_index(var)); }

  /// Substitutes args[i] for the i-th variable; every argument must have
  /// positive order unless this series is exact and polynomial.
  Series compose(const std::vector<Series>& args) const;

  /// Terms of total degree <= k; PrecisionExhausted if k >= precision.
  Series jet(int k) const;
  /// Lowers the precision to min(precision, n), dropping terms.
  Series truncated(int n) const;
  /// Sets the precision to n (dropping terms of degree >= n). Raising it
  /// asserts that the missing terms are zero.
  Series with_precision(int n) const;

  /// Same series viewed in another variable list (a superset or a
  /// renaming by position is not implied: names must match).
  Series with_vars(const std::vector<std::string>& vars) const;
  /// Coefficients carried into a field containing this one.
  Series over(const Field& bigger) const;

  /// Coefficients as a polynomial in variable `var`, each a series in the
  /// remaining variables. Requires every term to be finite degree in var.
  std::vector<Series> coefficients_in(std::size_t var) const;

  bool operator==(const Series& o) const;
  bool operator!=(const Series& o) const { return !(*this == o); }
  /// Equal on every degree below min of the two precisions.
  bool agrees_with(const Series& o) const;

  std::string to_string() const;

 private:
  void check_compatible(const Series& o) const;
  void drop_beyond_precision();

  Field field_;
  std::vector<std::string> vars_;
  int prec_ = kExact;
  Terms terms_;
};

/// Compositional inverse of a one-variable series of order one, to the
/// precision of u (or `precision` when u is an exact polynomial).
Series invert_series(const Series& u, int precision = kExact);

/// a / b in one variable; requires ord a >= ord b and b nonzero.
Series divide(const Series& a, const Series& b, int precision = kExact);

/// n-th root of a one-variable unit with constant term 1; n must be a unit
/// in the field.
Series unit_root(const Series& e, int n, int precision = kExact);

/// Determinant of a square matrix of series, division free (Berkowitz).
Series determinant(const std::vector<std::vector<Series>>& m);

/// Coefficients of det(lambda*I - m), highest power first (c_0 = 1).
std::vector<Series> charpoly(const std::vector<std::vector<Series>>& m);

/// Resultant in z of two polynomials given by their series coefficients,
/// lowest degree first. The leading coefficients must be nonzero.
Series resultant(const std::vector<Series>& p, const std::vector<Series>& q);

/// Dimension of K[[x_1..x_n]]/m^{k+1}.
long long jet_space_dim(int n, int k);

/// All exponents of total degree exactly d in n variables, in DegLex order.
std::vector<Exponent> monomials_of_degree(int n, int d);

}  // namespace algebroid
