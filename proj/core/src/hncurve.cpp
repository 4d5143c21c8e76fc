#include "algebroid/hncurve.hpp"

#include <numeric>
#include <set>

namespace algebroid {

namespace {

Elem leading_coeff(const Series& s) { return s.terms().begin()->second; }

// Order of a one-variable series, raising the right error when it vanishes.
int checked_ord(const Series& s, const char* what) {
  const Order o = s.ord();
  if (!o.infinite) return o.value;
  if (o.precision_limited)
    fail(ErrorCode::PrecisionExhausted, std::string(what) + " vanishes to the available precision");
  fail(ErrorCode::NonPrimitive, std::string(what) + " vanishes identically: the parametrization is not primitive");
}

Series rename(const Series& s, const std::string& name) {
  Series r(s.field(), {name}, s.precision());
  for (const auto& [e, c] : s.terms()) r.add_term(e, c);
  return r;
}

Series invert_for_chain(const Series& u, int wp) {
  if (u.is_exact() && u.max_degree() > 1) return invert_series(u, wp);
  return invert_series(u);
}

Series divide_for_chain(const Series& rem, const Series& uh, int wp) {
  if (uh.is_exact() && uh.terms().size() == 1) return divide(rem, uh);
  if (rem.is_exact() && uh.is_exact()) {
    try {
      return divide(rem, uh);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InvalidArgument) throw;
    }
    return divide(rem.truncated(prec_add(wp, uh.ord_bound())), uh);
  }
  return divide(rem, uh);
}

}  // namespace

Parametrization Parametrization::parse(std::string_view x_text, std::string_view y_text, const Field& field,
                                       int precision) {
  std::set<std::string> names;
  for (auto text : {x_text, y_text}) {
    const Series probe = Series::parse(text, field);
    names.insert(probe.vars().begin(), probe.vars().end());
  }
  if (names.size() > 1) fail(ErrorCode::VariableMismatch, "a parametrization uses a single parameter");
  const std::string var = names.empty() ? "t" : *names.begin();
  return {Series::parse(x_text, field, {var}, precision), Series::parse(y_text, field, {var}, precision)};
}

int Parametrization::multiplicity() const {
  const Order ox = x.ord(), oy = y.ord();
  if (ox.infinite && oy.infinite) fail(ErrorCode::InvalidArgument, "both coordinates vanish");
  if (ox.infinite) return oy.value;
  if (oy.infinite) return ox.value;
  return std::min(ox.value, oy.value);
}

HNExpansion hn_expand(const Parametrization& p, int wp) {
  if (p.x.nvars() != 1 || p.y.nvars() != 1 || p.x.vars() != p.y.vars())
    fail(ErrorCode::VariableMismatch, "a parametrization needs two series in the same single variable");
  if (p.x.field() != p.y.field()) fail(ErrorCode::FieldMismatch, "coordinates over different fields");
  HNExpansion h;
  h.field = p.field();
  const Order ox = p.x.ord(), oy = p.y.ord();
  if (ox.infinite && oy.infinite) fail(ErrorCode::InvalidArgument, "both coordinates vanish");
  if ((ox.infinite && ox.precision_limited) || (oy.infinite && oy.precision_limited))
    fail(ErrorCode::PrecisionExhausted, "a coordinate vanishes to the available precision");
  h.swapped = ox.infinite || (!oy.infinite && ox.value > oy.value);
  Series u = h.swapped ? p.y : p.x;
  Series v = h.swapped ? p.x : p.y;
  if (u.ord().value == 0) fail(ErrorCode::InvalidArgument, "the branch does not pass through the origin");

  while (true) {
    const int n = checked_ord(u, "divisor");
    h.divisor_orders.push_back(n);
    if (n == 1) {
      h.final_series = rename(v.compose({invert_for_chain(u, wp)}), "t");
      return h;
    }
    HNRow row;
    Series rem = v;
    const Elem lu = leading_coeff(u);
    Series upow = u;
    for (int j = 1;; ++j) {
      int o = checked_ord(rem, "remainder");
      if (o == j * n) {
        const Elem a = leading_coeff(rem) / lu.pow(static_cast<std::uint64_t>(j));
        rem -= upow.scaled(a);
        row.coeffs.push_back(a);
        o = checked_ord(rem, "remainder");
      } else {
        row.coeffs.push_back(h.field.zero());
      }
      if (o < (j + 1) * n) {
        row.h = j;
        break;
      }
      upow = upow * u;
    }
    Series z = divide_for_chain(rem, upow, wp);
    h.rows.push_back(std::move(row));
    v = u;
    u = z;
  }
}

Parametrization hn_to_param(const HNExpansion& h, int precision) {
  const Field& f = h.field;
  const std::vector<std::string> t = {"t"};
  Series U = Series::variable(f, t, 0);
  Series V = h.final_series.truncated(precision);
  for (std::size_t i = h.rows.size(); i-- > 0;) {
    const HNRow& row = h.rows[i];
    const Series nu = V, nz = U;
    Series nv(f, t, precision);
    Series power = Series::constant(f, t, f.one());
    for (int j = 1; j <= row.h; ++j) {
      power = (power * nu).truncated(precision);
      const Elem& a = row.coeffs[static_cast<std::size_t>(j - 1)];
      if (!a.is_zero()) nv += power.scaled(a);
    }
    nv += (power * nz).truncated(precision);
    U = nu;
    V = nv;
  }
  Parametrization out{U.truncated(precision), V.truncated(precision)};
  if (h.swapped) std::swap(out.x, out.y);
  return out;
}

mpq_class default_value_map(const Elem& a) { return a.is_zero() ? mpq_class(0) : mpq_class(1); }

HNExpansion complex_model(const HNExpansion& h, const ValueMap& F) {
  const Field q = Field::rationals();
  auto image = [&](const Elem& a) {
    const mpq_class v = F(a);
    if (a.is_zero() != (v == 0))
      fail(ErrorCode::ValueMapViolation, "value map sends " + a.to_string() + " to " + v.get_str());
    return q.from_rational(v);
  };
  HNExpansion m;
  m.field = q;
  m.swapped = h.swapped;
  m.divisor_orders = h.divisor_orders;
  for (const auto& row : h.rows) {
    HNRow r;
    r.h = row.h;
    for (const auto& a : row.coeffs) r.coeffs.push_back(image(a));
    m.rows.push_back(std::move(r));
  }
  m.final_series = Series(q, h.final_series.vars(), h.final_series.precision());
  for (const auto& [e, c] : h.final_series.terms()) m.final_series.add_term(e, image(c));
  return m;
}

Primitivity is_primitive(const Parametrization& p) {
  Primitivity r;
  for (const Series* s : {&p.x, &p.y})
    for (const auto& [e, c] : s->terms()) r.gcd = std::gcd(r.gcd, e[0]);
  r.primitive = r.gcd == 1;
  r.precision_limited = !r.primitive && !(p.x.is_exact() && p.y.is_exact());
  return r;
}

std::vector<std::string> HNExpansion::to_lines() const {
  std::vector<std::string> lines;
  std::string vname = swapped ? "x" : "y";
  std::string uname = swapped ? "y" : "x";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const HNRow& row = rows[i];
    const std::string zname = "z" + std::to_string(i + 1);
    std::string rhs;
    for (int j = 1; j <= row.h; ++j) {
      const Elem& a = row.coeffs[static_cast<std::size_t>(j - 1)];
      if (a.is_zero()) continue;
      std::string mono = uname + (j > 1 ? "^" + std::to_string(j) : "");
      std::string c = a.to_string();
      if (a.field().kind() == Field::Kind::Extension && c.find('+') != std::string::npos) c = "(" + c + ")";
      rhs += (rhs.empty() ? "" : " + ") + (a.is_one() ? mono : c + "*" + mono);
    }
    const std::string tail = (row.h > 1 ? uname + "^" + std::to_string(row.h) : uname) + "*" + zname;
    rhs += (rhs.empty() ? "" : " + ") + tail;
    lines.push_back(vname + " = " + rhs);
    vname = uname;
    uname = zname;
  }
  lines.push_back(vname + " = " + rename(final_series, uname).to_string());
  return lines;
}

}  // namespace algebroid
