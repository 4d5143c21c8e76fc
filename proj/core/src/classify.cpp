#include "algebroid/classify.hpp"

#include "algebroid/estype.hpp"
#include "algebroid/linalg.hpp"

namespace algebroid {

namespace {

int series_ord(const Series& f) {
  const Order o = f.ord();
  if (o.infinite) {
    if (o.precision_limited) fail(ErrorCode::PrecisionExhausted, "series vanishes to its precision");
    fail(ErrorCode::InvalidArgument, "the zero series");
  }
  return o.value;
}

Exponent unit_exp(std::size_t n, std::size_t i, int power) {
  Exponent e(n, 0);
  e[i] = power;
  return e;
}

std::vector<Series> identity_map(const Series& f, int precision) {
  std::vector<Series> id;
  for (std::size_t i = 0; i < f.nvars(); ++i) id.push_back(Series::variable(f.field(), f.vars(), i, precision));
  return id;
}

std::vector<Series> compose_maps(const std::vector<Series>& outer, const std::vector<Series>& inner) {
  std::vector<Series> out;
  for (const auto& s : outer) out.push_back(s.compose(inner));
  return out;
}

// Strict transform of the plane curve g = 0 at the point of direction
// y = a x (a given) or along x = 0 (a empty), divided by the multiplicity.
Series strict_transform(const Series& g, int m, const Elem* a) {
  const Field& k = g.field();
  const Series x = Series::variable(k, g.vars(), 0), y = Series::variable(k, g.vars(), 1);
  const Series moved = a ? g.compose({x, x * (y + Series::constant(k, g.vars(), *a))}) : g.compose({x * y, y});
  const std::size_t axis = a ? 0 : 1;
  Series out(k, g.vars());
  for (const auto& [e, c] : moved.terms()) {
    Exponent f = e;
    f[axis] -= m;
    out.add_term(f, c);
  }
  return out;
}

// delta invariant and branch count of an exact reduced plane curve, by
// blowing up every singular infinitely near point over the splitting
// fields of the tangent cones.
void resolve_curve(const Series& g, long long& delta, int& branches, int depth) {
  if (depth > 200) fail(ErrorCode::NonTerminating, "curve resolution does not terminate");
  const int m = series_ord(g);
  if (m == 0) return;
  if (m == 1) {
    ++branches;
    return;
  }
  delta += static_cast<long long>(m) * (m - 1) / 2;
  UPoly cone(static_cast<std::size_t>(m) + 1, g.field().zero());
  for (int i = 0; i <= m; ++i) cone[static_cast<std::size_t>(i)] = g.coeff(Exponent{m - i, i});
  trim(cone);
  if (degree(cone) < m) resolve_curve(strict_transform(g, m, nullptr), delta, branches, depth + 1);
  if (degree(cone) < 1) return;
  auto [ext, roots] = splitting_roots(cone, g.field());
  const Series h = ext == g.field() ? g : g.over(ext);
  for (const Elem& a : roots) resolve_curve(strict_transform(h, m, &a), delta, branches, depth + 1);
}

// Multiplicity sequence of a unibranch curve, following the single
// infinitely near point until the strict transform is smooth and meets the
// exceptional curves transversally. Empty when two directions appear.
std::vector<int> unibranch_mults(Series g) {
  bool ex_x0 = false, ex_y0 = false;
  const std::size_t limit = 10000;
  std::vector<int> seq;
  auto axis_order = [](const Series& h, std::size_t keep) {
    Series line(h.field(), h.vars());
    for (const auto& [e, c] : h.terms())
      if (e[1 - keep] == 0) line.add_term(e, c);
    return line.is_zero() ? 0 : line.ord().value;
  };
  while (true) {
    const int m = series_ord(g);
    if (!seq.empty() && m == 1 && !(ex_x0 && ex_y0) && (!ex_x0 || axis_order(g, 1) == 1) &&
        (!ex_y0 || axis_order(g, 0) == 1))
      return seq;
    if (seq.size() > limit) fail(ErrorCode::NonTerminating, "curve resolution does not terminate");
    seq.push_back(m);
    UPoly cone(static_cast<std::size_t>(m) + 1, g.field().zero());
    for (int i = 0; i <= m; ++i) cone[static_cast<std::size_t>(i)] = g.coeff(Exponent{m - i, i});
    trim(cone);
    const bool infinite = degree(cone) < m;
    const UPoly rad = degree(cone) < 1 ? UPoly{} : radical(cone, g.field());
    const int finite_lines = degree(cone) < 1 ? 0 : degree(rad);
    if (finite_lines + (infinite ? 1 : 0) != 1) return {};
    if (infinite) {
      g = strict_transform(g, m, nullptr);
      ex_y0 = true;
    } else {
      const Elem root = -rad[0] / rad[1];
      g = strict_transform(g, m, &root);
      ex_y0 = ex_y0 && root.is_zero();
      ex_x0 = true;
    }
  }
}

// Number of distinct lines in the tangent cone of a plane series of order m.
int cone_lines(const Series& g, int m) {
  UPoly cone(static_cast<std::size_t>(m) + 1, g.field().zero());
  for (int i = 0; i <= m; ++i) cone[static_cast<std::size_t>(i)] = g.coeff(Exponent{m - i, i});
  trim(cone);
  const int at_infinity = degree(cone) < m ? 1 : 0;
  return degree(radical(cone, g.field())) + at_infinity;
}

int determinacy_degree(const Series& f, const DimResult& tau) {
  const int ord = series_ord(f);
  if (f.field().characteristic() == 0) return static_cast<int>(tau.value) + 1;
  return static_cast<int>(2 * tau.value - ord + 2);
}

std::string index_name(const AdeClass& c) { return std::string(1, c.family) + std::to_string(c.index); }

}  // namespace

std::string AdeClass::name() const { return simple() ? (subtype.empty() ? index_name(*this) : subtype) : "NotSimple"; }

SplitResult split_squares(const Series& f, int k_max) {
  const Field& field = f.field();
  if (field.characteristic() == 2) fail(ErrorCode::CharTwo, "square splitting needs p != 2");
  const std::size_t n = f.nvars();
  for (const auto& [e, c] : f.terms()) {
    if (total_degree(e) >= 2) break;
    fail(ErrorCode::InvalidArgument, "f must lie in the square of the maximal ideal");
  }
  const DimResult tau = tjurina(f, k_max);
  if (!tau.finite) fail(ErrorCode::InfiniteTjurina, "the Tjurina number is infinite or beyond k_max");
  const int P = determinacy_degree(f, tau) + 1;
  if (f.precision() < P) fail(ErrorCode::PrecisionExhausted, "f is needed to degree " + std::to_string(P - 1));

  Series cur = f.truncated(P);
  SplitResult res;
  res.change = identity_map(f, P);
  std::vector<bool> split(n, false);
  const Elem two = field.from_int(2);

  while (true) {
    std::size_t pivot = n;
    for (std::size_t i = 0; i < n && pivot == n; ++i)
      if (!split[i] && !cur.coeff(unit_exp(n, i, 2)).is_zero()) pivot = i;
    if (pivot == n) {
      // Only mixed terms x_i x_j left: x_i -> x_i + x_j creates c x_j^2.
      for (std::size_t i = 0; i < n && pivot == n; ++i)
        for (std::size_t j = i + 1; j < n && pivot == n; ++j) {
          if (split[i] || split[j]) continue;
          Exponent e(n, 0);
          e[i] = e[j] = 1;
          if (cur.coeff(e).is_zero()) continue;
          std::vector<Series> lin = identity_map(f, P);
          lin[i] = lin[i] + lin[j];
          cur = cur.compose(lin);
          res.change = compose_maps(res.change, lin);
          pivot = j;
        }
    }
    if (pivot == n) break;

    const Elem inv2a = (two * cur.coeff(unit_exp(n, pivot, 2))).inv();
    const Series d_pivot = cur.derivative(pivot);
    std::vector<Series> args = identity_map(f, P);
    Series phi(field, f.vars(), P);
    for (int iter = 0; iter <= P; ++iter) {
      args[pivot] = phi;
      const Series d = d_pivot.compose(args);
      if (d.is_zero()) break;
      phi = (phi - d.scaled(inv2a)).truncated(P);
    }
    args[pivot] = phi;
    cur = cur.compose(args).truncated(P);
    std::vector<Series> shift = identity_map(f, P);
    shift[pivot] = shift[pivot] + phi;
    res.change = compose_maps(res.change, shift);
    split[pivot] = true;
    res.split_vars.push_back(pivot);
    ++res.squares;
  }
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < n; ++i)
    if (!split[i]) rest.push_back(f.vars()[i]);
  res.residual = cur.with_vars(rest);
  return res;
}

QuadChar2 quad_normal_char2(const Series& f) {
  const Field& field = f.field();
  if (field.characteristic() != 2) fail(ErrorCode::BadCharacteristic, "the alternating-form test is for p = 2");
  const std::size_t n = f.nvars();
  std::vector<Vec> b(n, Vec(n, field.zero()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Exponent e(n, 0);
      e[i] = e[j] = 1;
      b[i][j] = b[j][i] = f.coeff(e);
    }
  return n % 2 == 0 && rank(field, b, n) == n ? QuadChar2::A1Pattern : QuadChar2::Other;
}

AdeClass contact_ade(const Series& g, Evidence* ev) {
  AdeClass c;
  const std::size_t nv = g.nvars();
  c.residual_vars = static_cast<int>(nv);
  c.corank = c.residual_vars;
  if (nv == 0 || g.is_zero()) {
    if (nv == 0) {
      c.family = 'A';
      c.index = 1;
    }
    return c;
  }
  const int ord = series_ord(g);
  if (ord < 2) fail(ErrorCode::InvalidArgument, "the residual must lie in the square of the maximal ideal");
  if (nv == 1) {
    c.family = 'A';
    c.index = ord - 1;
    return c;
  }
  if (ord == 2) {
    const SplitResult s = split_squares(g);
    AdeClass inner = contact_ade(s.residual, ev);
    return inner;
  }
  if (nv > 2 || ord > 3) return c;

  const int lines = cone_lines(g, 3);
  const Field& field = g.field();
  const Series jet = g.with_precision(kExact);
  long long k = 0;
  if (field.characteristic() == 0) {
    const DimResult mu = milnor(jet);
    if (!mu.finite) fail(ErrorCode::UndeterminedDimension, "Milnor number of the residual not reached");
    k = mu.value;
  } else {
    long long delta = 0;
    int branches = 0;
    resolve_curve(jet, delta, branches, 0);
    if (ev) {
      ev->delta = delta;
      ev->branches = branches;
    }
    k = 2 * delta - branches + 1;
  }
  if (ev) {
    const std::vector<int> mults = unibranch_mults(jet);
    if (!mults.empty()) ev->char_exponents = char_exponents(mults);
  }
  if (lines >= 2) {
    c.family = 'D';
    c.index = static_cast<int>(k);
  } else if (k >= 6 && k <= 8) {
    c.family = 'E';
    c.index = static_cast<int>(k);
  }
  if (c.family == 'E' && c.index == 6 && field.characteristic() == 3) {
    // Two normal forms in characteristic 3, told apart by tau.
    const std::vector<std::string> xy = {"x", "y"};
    const long long t = tjurina(jet).value;
    const long long t0 = tjurina(Series::parse("x^3+y^4", field, xy)).value;
    const long long t1 = tjurina(Series::parse("x^3+x^2*y^2+y^4", field, xy)).value;
    if (t0 != t1) {
      if (t == t0) c.subtype = "E6^0";
      if (t == t1) c.subtype = "E6^1";
    }
  }
  return c;
}

ClassificationVerdict classify(const Series& f, int k_max) {
  ClassificationVerdict v;
  const Field& field = f.field();
  const std::uint64_t p = field.characteristic();
  const std::size_t n = f.nvars();
  v.evidence.ord = series_ord(f);
  if (v.evidence.ord < 2) fail(ErrorCode::InvalidArgument, "f must lie in the square of the maximal ideal");
  v.evidence.tau = tjurina(f, k_max);
  v.evidence.mu = milnor(f, k_max);
  auto note = [&](std::string s) { v.evidence.conditions.push_back(std::move(s)); };
  if (!v.evidence.tau.finite) {
    v.infinite_tjurina = true;
    note("tau infinite or beyond k_max: not simple");
    return v;
  }

  if (n == 1) {
    v.cls.family = 'A';
    v.cls.index = v.evidence.ord - 1;
    v.cls.residual_vars = 1;
    v.cls.corank = 1;
  } else if (p == 2) {
    if (quad_normal_char2(f) == QuadChar2::A1Pattern) {
      v.cls.family = 'A';
      v.cls.index = 1;
      note("p = 2: alternating form of full rank, n even");
    } else if (v.evidence.ord >= 3) {
      v.cls = contact_ade(f, &v.evidence);
    } else {
      v.contact_determined = false;
      note("p = 2: quadratic part outside the A1 pattern, contact class not determined");
      note("p = 2: right-simple only for the A1 pattern");
      return v;
    }
  } else {
    const SplitResult s = split_squares(f, k_max);
    v.evidence.squares = s.squares;
    v.cls = contact_ade(s.residual, &v.evidence);
  }
  v.contact_simple = v.cls.simple();
  if (v.cls.family == 'A' && v.cls.index % 2 == 0 && v.evidence.char_exponents.empty())
    v.evidence.char_exponents = {2, v.cls.index + 1};
  if (!v.contact_simple) {
    note("residual outside the ADE list");
    return v;
  }

  if (p == 0) {
    v.right_simple = true;
    note("p = 0: right-simple iff contact-simple");
    return v;
  }
  if (!v.evidence.mu.finite) {
    note("mu infinite: not right-simple");
    return v;
  }
  const int k = v.cls.index;
  const long long pp = static_cast<long long>(p);
  auto cond = [&](bool ok, const std::string& text) {
    note(text + (ok ? " holds" : " fails"));
    v.right_simple = ok;
  };
  if (p == 2) {
    cond(v.cls.family == 'A' && v.cls.index == 1 && n % 2 == 0, "p = 2: A1 with n even");
  } else if (v.cls.family == 'A') {
    cond(k < pp - 1, "A" + std::to_string(k) + ": k < p-1");
  } else if (v.cls.family == 'D') {
    cond(k >= 4 && k < pp, "D" + std::to_string(k) + ": 4 <= k < p");
  } else if (k == 8) {
    cond(pp > 5, "E8: p > 5");
  } else {
    cond(pp > 3, "E" + std::to_string(k) + ": p > 3");
  }
  note("right class read from the contact class");
  return v;
}

}  // namespace algebroid
