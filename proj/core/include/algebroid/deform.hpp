#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "algebroid/determinacy.hpp"
#include "algebroid/estype.hpp"
#include "algebroid/hncurve.hpp"

namespace algebroid {

/// A family of branches x = X(z, t), y = Y(z, t). The first variable of X
/// and Y is the uniformizer z, the others are the parameters t_1..t_m.
/// Both are exact polynomials, so specialization stays exact.
class ParamFamily {
 public:
  ParamFamily(Series x, Series y);
  static ParamFamily parse(std::string_view x_text, std::string_view y_text, const Field& field,
                           std::vector<std::string> vars);

  const Series& x() const { return x_; }
  const Series& y() const { return y_; }
  const Field& field() const { return x_.field(); }
  const std::string& uniformizer() const { return x_.vars().front(); }
  std::vector<std::string> parameters() const;
  std::size_t nparams() const { return x_.nvars() - 1; }

 private:
  Series x_, y_;
};

/// Res_z(x - X, y - Y) in the variables x, y, t_1..t_m, truncated to `precision`.
Series eliminate_parameter(const ParamFamily& f, int precision);

/// Substitutes t = t0 into a series whose first two variables are x, y.
Series specialize_equation(const Series& F, const std::vector<Elem>& t0);

/// The fiber over t0 (coordinates may lie in an extension of the base field).
Parametrization specialize(const ParamFamily& f, const std::vector<Elem>& t0);

/// Monic Weierstrass polynomial of f in variable `var`, which must be
/// regular: f(0, .., x_var, .., 0) has finite order d. Accurate below
/// degree precision - d.
Series weierstrass_polynomial(const Series& f, std::size_t var, int precision);

/// F(x, y, t0) and the implicit equation of the fiber generate the same
/// ideal: their Weierstrass polynomials agree in degrees <= `degree`.
/// DegenerateFamily when X and Y both drop degree in z at t0, or when the
/// polynomial map z -> (X, Y)(z, t0) sends a second point to the origin;
/// the resultant then vanishes or carries a further branch.
bool specialization_contract(const ParamFamily& f, const Series& F, const std::vector<Elem>& t0, int degree);

struct FiberEs {
  std::vector<Elem> point;
  std::vector<int> multiplicities;
  std::vector<int> char_exponents;
  bool agrees = false;  // same es-type as the special fiber
};

/// Fiber sampling only; a constant verdict is evidence, not a proof.
struct EsSampleReport {
  bool constant = true;
  FiberEs special;
  std::vector<FiberEs> samples;
  std::string note;
};

EsSampleReport es_constancy_sample(const ParamFamily& f, const std::vector<std::vector<Elem>>& points);

/// found[i][j]: a right coordinate change with j_k(f_{t_j}(phi)) = j_k(f_{t_i})
/// was found among coefficients in the table's field, f_t = x^a + t x^b.
struct WitnessTable {
  Field field;
  int a = 0, b = 0, k = 0;
  std::vector<Elem> params;
  std::vector<std::vector<bool>> found;
  std::string note;

  bool diagonal_only() const;
  bool all_found() const;
};

WitnessTable witness_table(int a, int b, const Field& fq, int k);
/// x^p + t x^{p+1} over F_{p^2} with k = p + 1, for p in {2, 3, 5}.
WitnessTable pathology_family(std::uint64_t p);

}  // namespace algebroid
