#include "algebroid/deform.hpp"

namespace algebroid {

namespace {

Field field_of_point(const Field& base, const std::vector<Elem>& t0) {
  if (t0.empty()) return base;
  const Field ext = t0.front().field();
  for (const Elem& e : t0)
    if (e.field() != ext) fail(ErrorCode::FieldMismatch, "point coordinates lie in different fields");
  if (!ext.contains(base)) fail(ErrorCode::FieldMismatch, "point coordinates must lie in an extension of the base field");
  return ext;
}

// Sets the last t0.size() variables to the given values and keeps the
// first `keep` variables.
Series evaluate_tail(const Series& s, std::size_t keep, const std::vector<Elem>& t0) {
  if (s.nvars() != keep + t0.size()) fail(ErrorCode::VariableMismatch, "point has the wrong number of coordinates");
  const Field ext = field_of_point(s.field(), t0);
  bool zero_point = true;
  for (const Elem& e : t0) zero_point = zero_point && e.is_zero();
  if (!s.is_exact() && !zero_point)
    fail(ErrorCode::PrecisionExhausted, "a truncated series cannot be evaluated at a nonzero parameter");
  std::vector<std::string> kept(s.vars().begin(), s.vars().begin() + static_cast<long>(keep));
  Series out(ext, kept, s.precision());
  for (const auto& [e, c] : s.terms()) {
    Elem v = ext.embed(c);
    for (std::size_t i = 0; i < t0.size(); ++i) v *= t0[i].pow(static_cast<std::uint64_t>(e[keep + i]));
    if (v.is_zero()) continue;
    out.add_term(Exponent(e.begin(), e.begin() + static_cast<long>(keep)), v);
  }
  return out;
}

// Terms with exponent of `var` at least d, shifted down by d.
Series high_part(const Series& h, std::size_t var, int d) {
  Series out(h.field(), h.vars(), h.is_exact() ? kExact : std::max(0, h.precision() - d));
  for (const auto& [e, c] : h.terms()) {
    if (e[var] < d) continue;
    Exponent f = e;
    f[var] -= d;
    out.add_term(f, c);
  }
  return out;
}

Series low_part(const Series& h, std::size_t var, int d) {
  Series out(h.field(), h.vars(), h.precision());
  for (const auto& [e, c] : h.terms())
    if (e[var] < d) out.add_term(e, c);
  return out;
}

Series unit_inverse(const Series& u, int precision) {
  const Elem c0 = u.coeff(Exponent(u.nvars(), 0));
  if (c0.is_zero()) fail(ErrorCode::InvalidArgument, "not a unit");
  const Series one = Series::constant(u.field(), u.vars(), u.field().one());
  const Series w = (one - u.scaled(c0.inv())).truncated(precision);
  Series sum = one.truncated(precision), power = one;
  for (int k = 1; k < precision; ++k) {
    power = (power * w).truncated(precision);
    if (power.is_zero()) break;
    sum += power;
  }
  return sum.scaled(c0.inv());
}

// Order of f(0, .., x_var, .., 0), or -1 when it vanishes.
int pure_order(const Series& f, std::size_t var) {
  int d = -1;
  for (const auto& [e, c] : f.terms()) {
    bool pure = true;
    for (std::size_t i = 0; i < e.size(); ++i) pure = pure && (i == var || e[i] == 0);
    if (pure && (d < 0 || e[var] < d)) d = e[var];
  }
  return d;
}

FiberEs fiber_es(const Parametrization& p, std::vector<Elem> point) {
  FiberEs out;
  out.point = std::move(point);
  out.multiplicities = mult_sequence(p);
  out.char_exponents = char_exponents(out.multiplicities);
  return out;
}

}  // namespace

ParamFamily::ParamFamily(Series x, Series y) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.field() != y_.field()) fail(ErrorCode::FieldMismatch, "X and Y over different fields");
  if (x_.vars() != y_.vars()) fail(ErrorCode::VariableMismatch, "X and Y in different variables");
  if (x_.nvars() == 0) fail(ErrorCode::VariableMismatch, "a family needs the uniformizer variable");
  if (!x_.is_exact() || !y_.is_exact()) fail(ErrorCode::InvalidArgument, "family members must be polynomials");
  for (const std::string& v : x_.vars())
    if (v == "x" || v == "y") fail(ErrorCode::VariableMismatch, "x and y are reserved for the equation");
}

ParamFamily ParamFamily::parse(std::string_view x_text, std::string_view y_text, const Field& field,
                               std::vector<std::string> vars) {
  return ParamFamily(Series::parse(x_text, field, vars), Series::parse(y_text, field, vars));
}

std::vector<std::string> ParamFamily::parameters() const { return {x_.vars().begin() + 1, x_.vars().end()}; }

Series eliminate_parameter(const ParamFamily& f, int precision) {
  const std::vector<Elem> origin(f.nparams(), f.field().zero());
  const Series x0 = evaluate_tail(f.x(), 1, origin), y0 = evaluate_tail(f.y(), 1, origin);
  const bool x_unit = !x0.coeff(0).is_zero(), y_unit = !y0.coeff(0).is_zero();
  if (x_unit || y_unit || (x0.is_zero() && y0.is_zero()))
    fail(ErrorCode::DegenerateFamily, "the special fiber is not a branch through the origin");

  std::vector<std::string> out_vars = {"x", "y"};
  for (const std::string& t : f.parameters()) out_vars.push_back(t);
  auto poly_in_z = [&](const Series& s, std::size_t coordinate) {
    std::vector<Series> c = s.coefficients_in(0);
    if (c.empty()) c.emplace_back(f.field(), f.parameters());
    std::vector<Series> out;
    for (const Series& k : c) out.push_back(-k.with_vars(out_vars));
    out[0] += Series::variable(f.field(), out_vars, coordinate);
    return out;
  };
  return resultant(poly_in_z(f.x(), 0), poly_in_z(f.y(), 1)).truncated(precision);
}

Series specialize_equation(const Series& F, const std::vector<Elem>& t0) { return evaluate_tail(F, 2, t0); }

Parametrization specialize(const ParamFamily& f, const std::vector<Elem>& t0) {
  Parametrization p{evaluate_tail(f.x(), 1, t0), evaluate_tail(f.y(), 1, t0)};
  if (!p.x.coeff(0).is_zero() || !p.y.coeff(0).is_zero())
    fail(ErrorCode::DegenerateFamily, "the fiber does not pass through the origin");
  if (p.x.is_zero() && p.y.is_zero()) fail(ErrorCode::NonPrimitiveFiber, "the fiber is the constant map");
  const bool primitive = p.x.is_zero() || p.y.is_zero() ? std::max(p.x.ord().value, p.y.ord().value) == 1
                                                        : is_primitive(p).primitive;
  if (!primitive) fail(ErrorCode::NonPrimitiveFiber, "the fiber is not a primitive parametrization");
  return p;
}

Series weierstrass_polynomial(const Series& f, std::size_t var, int precision) {
  if (var >= f.nvars()) fail(ErrorCode::VariableMismatch, "variable index out of range");
  const int d = pure_order(f, var);
  if (d < 0 || d >= f.precision()) fail(ErrorCode::InvalidArgument, "series is not regular in the chosen variable");
  const int P = std::min(precision, f.precision());
  const Series E = high_part(f, var, d), rest = low_part(f, var, d);
  const Series E_inv = unit_inverse(E, P);

  Exponent pure(f.nvars(), 0);
  pure[var] = d;
  const Series pivot = Series::monomial(f.field(), f.vars(), pure, f.field().one());
  Series h = pivot.truncated(P), remainder(f.field(), f.vars(), P);
  for (int iter = 0; iter <= P && !h.is_zero(); ++iter) {
    remainder += low_part(h, var, d);
    h = -(high_part(h, var, d) * E_inv * rest).truncated(P);
  }
  return pivot - remainder;
}

bool specialization_contract(const ParamFamily& f, const Series& F, const std::vector<Elem>& t0, int degree) {
  const auto leading_vanishes = [&](const Series& s) {
    const std::vector<Series> c = s.coefficients_in(0);
    return c.empty() || evaluate_tail(c.back(), 0, t0).is_zero();
  };
  if (leading_vanishes(f.x()) && leading_vanishes(f.y()))
    fail(ErrorCode::DegenerateFamily, "both leading coefficients in the uniformizer vanish at the point");
  const Parametrization fiber = specialize(f, t0);
  const Series F0 = specialize_equation(F, t0);
  const int mx = fiber.x.is_zero() ? kExact : fiber.x.ord().value;
  const int my = fiber.y.is_zero() ? kExact : fiber.y.ord().value;
  const std::size_t var = mx <= my ? 1 : 0;
  const int d = std::min(mx, my);
  if (pure_order(F0, var) != d)
    fail(ErrorCode::DegenerateFamily, "another point of the fiber's polynomial map lies over the origin");
  const Series G = implicitize(fiber, degree + 2 * d + 4);
  const int P = degree + 2 * d + 4;
  const Series w1 = weierstrass_polynomial(F0, var, P), w2 = weierstrass_polynomial(G, var, P);
  return w1.jet(degree) == w2.jet(degree);
}

EsSampleReport es_constancy_sample(const ParamFamily& f, const std::vector<std::vector<Elem>>& points) {
  EsSampleReport report;
  const std::vector<Elem> origin(f.nparams(), f.field().zero());
  const Parametrization special = specialize(f, origin);
  report.special = fiber_es(special, origin);
  report.special.agrees = true;
  const EsType reference = es_type({special});
  for (const auto& point : points) {
    const Parametrization fiber = specialize(f, point);
    FiberEs s = fiber_es(fiber, point);
    s.agrees = es_equal(es_type({fiber}), reference);
    report.constant = report.constant && s.agrees;
    report.samples.push_back(std::move(s));
  }
  report.note = "sampled fibers only; a constant verdict is not a proof of equisingularity";
  return report;
}

bool WitnessTable::diagonal_only() const {
  for (std::size_t i = 0; i < found.size(); ++i)
    for (std::size_t j = 0; j < found[i].size(); ++j)
      if (found[i][j] != (i == j)) return false;
  return true;
}

bool WitnessTable::all_found() const {
  for (const auto& row : found)
    for (bool b : row)
      if (!b) return false;
  return true;
}

WitnessTable witness_table(int a, int b, const Field& fq, int k) {
  if (!fq.is_finite()) fail(ErrorCode::InvalidArgument, "witness search needs a finite field");
  if (a < 1 || b <= a || k < b) fail(ErrorCode::InvalidArgument, "need 1 <= a < b <= k");
  WitnessTable t;
  t.field = fq;
  t.a = a;
  t.b = b;
  t.k = k;
  t.params = fq.elements();
  const std::vector<std::string> x = {"x"};
  std::vector<Series> members;
  for (const Elem& c : t.params) {
    Series s = Series::monomial(fq, x, {a}, fq.one());
    s.add_term({b}, c);
    members.push_back(s);
  }
  const std::size_t n = members.size();
  t.found.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      t.found[i][j] = jet_equiv_bruteforce(members[i], members[j], Flavor::Right, k, fq).found;
  t.note = "witnesses searched with coefficients in " + fq.spec() + " only; a missing witness is evidence, not proof";
  return t;
}

WitnessTable pathology_family(std::uint64_t p) {
  if (p != 2 && p != 3 && p != 5) fail(ErrorCode::SearchSpaceTooLarge, "the pathology table is run for p in {2, 3, 5}");
  const int a = static_cast<int>(p);
  return witness_table(a, a + 1, Field::galois(p, 2), a + 1);
}

}  // namespace algebroid
