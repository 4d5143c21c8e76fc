#include "algebroid/estype.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace algebroid {

namespace {

constexpr int kMaxBlowups = 10000;

int ord_or_fail(const Series& s, const char* what) {
  const Order o = s.ord();
  if (!o.infinite) return o.value;
  if (o.precision_limited) fail(ErrorCode::PrecisionExhausted, std::string(what) + " vanishes to the available precision");
  return kExact;
}

Series quotient(const Series& y, const Series& x, int wp) {
  if (y.is_exact() && y.is_zero()) return y;
  if (x.is_exact() && y.is_exact() && x.terms().size() > 1) {
    try {
      return divide(y, x);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InvalidArgument) throw;
    }
    return divide(y.truncated(wp), x.truncated(wp));
  }
  return divide(y, x);
}

void require_primitive(const Parametrization& p) {
  const Primitivity pr = is_primitive(p);
  if (pr.primitive) return;
  if (pr.precision_limited) fail(ErrorCode::PrecisionExhausted, "primitivity cannot be decided at this precision");
  fail(ErrorCode::NonPrimitive, "the parametrization factors through t -> t^" + std::to_string(pr.gcd));
}

}  // namespace

bool BranchState::normal_crossings() const {
  if (multiplicity() != 1) return false;
  if (exceptional_x0 && exceptional_y0) return false;
  if (exceptional_x0) return ord_or_fail(param.x, "x") == 1;
  if (exceptional_y0) return ord_or_fail(param.y, "y") == 1;
  return true;
}

BranchState blowup_step(const BranchState& b, int wp) {
  BranchState out = b;
  Series x = b.param.x, y = b.param.y;
  const int ox = ord_or_fail(x, "x"), oy = ord_or_fail(y, "y");
  BlowupRecord rec;
  rec.multiplicity = std::min(ox, oy);
  if (rec.multiplicity == kExact) fail(ErrorCode::InvalidArgument, "both coordinates vanish");
  if (ox > oy) {
    std::swap(x, y);
    std::swap(out.exceptional_x0, out.exceptional_y0);
    rec.swapped = true;
  }
  Series q = quotient(y, x, wp);
  if (q.precision() < 1) fail(ErrorCode::PrecisionExhausted, "blowup needs more terms");
  rec.center = q.coeff(0);
  if (!rec.center.is_zero()) q.add_term({0}, -rec.center);
  out.param = {x, q};
  out.exceptional_y0 = out.exceptional_y0 && rec.center.is_zero();
  out.exceptional_x0 = true;
  out.history.push_back(rec);
  return out;
}

std::vector<int> mult_sequence(const Parametrization& p) {
  require_primitive(p);
  BranchState s(p);
  std::vector<int> seq;
  do {
    s = blowup_step(s);
    seq.push_back(s.history.back().multiplicity);
    if (seq.size() > static_cast<std::size_t>(kMaxBlowups)) fail(ErrorCode::NonTerminating, "resolution does not end");
  } while (!s.normal_crossings());
  return seq;
}

std::vector<int> char_exponents(const std::vector<int>& m) {
  auto bad = [](const std::string& why) { fail(ErrorCode::MalformedSequence, why); };
  if (m.empty()) bad("empty multiplicity sequence");
  for (int v : m)
    if (v < 1) bad("multiplicities must be positive");
  if (m.back() != 1) bad("a multiplicity sequence ends in 1");
  std::vector<std::pair<int, int>> runs;  // (value, count)
  for (int v : m) {
    if (!runs.empty() && runs.back().first == v)
      ++runs.back().second;
    else
      runs.emplace_back(v, 1);
  }
  if (runs.size() == 1) {
    if (m.size() == 1) return {1};
    bad("a smooth branch has the sequence [1]");
  }
  std::vector<int> beta = {m[0]};
  beta.push_back(runs[0].second * m[0] + runs[1].first);
  int prev = m[0];
  for (std::size_t i = 1; i < runs.size(); ++i) {
    const auto [cur, count] = runs[i];
    if (cur >= prev) bad("multiplicities must drop between runs");
    if (i + 1 == runs.size()) {
      if (cur != 1 || count != prev) bad("the trailing run of 1s must have length " + std::to_string(prev));
      break;
    }
    const int next = runs[i + 1].first;
    if (next >= cur) bad("multiplicities must drop between runs");
    if (prev - count * cur == next) {
      prev = cur;
      continue;
    }
    // A new characteristic exponent starts inside this run.
    if (prev % cur != 0) bad("run of " + std::to_string(cur) + " is inconsistent with the Euclidean algorithm");
    const int extra = count - prev / cur;
    if (extra < 0) bad("run of " + std::to_string(cur) + " is too short");
    beta.push_back(beta.back() + extra * cur + next);
    prev = cur;
  }
  return beta;
}

std::vector<int> puiseux_char_exponents(const Parametrization& p_in) {
  require_primitive(p_in);
  const Field& field = p_in.field();
  const int ox = ord_or_fail(p_in.x, "x"), oy = ord_or_fail(p_in.y, "y");
  Series x = p_in.x, y = p_in.y;
  if (ox > oy) std::swap(x, y);
  const int n = std::min(ox, oy);
  const std::uint64_t ch = field.characteristic();
  if (ch != 0 && n % static_cast<long long>(ch) == 0)
    fail(ErrorCode::BadCharacteristic, "no Puiseux expansion: the characteristic divides the multiplicity " + std::to_string(n));
  if (n == 1) return {1};

  // x = c t^n e(t) with e(0) = 1.
  const Elem c = x.coeff(n);
  const Series e = divide(x, Series::monomial(field, x.vars(), {n}, c));
  std::optional<Elem> root;
  try {
    // Absorb c^(1/n) into the new parameter when the root is available.
    auto [ext, r] = adjoin_nth_root(field, c, n);
    root = r;
    y = y.over(ext);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::NoRationalRoot && err.code() != ErrorCode::SearchSpaceTooLarge) throw;
    // x = c s^n: the constant does not change the support of y in s.
  }
  const bool exact = x.is_exact() && y.is_exact();
  const int limit = exact ? 512 : std::min(x.precision(), y.precision());
  for (int wp = std::min(4 * n + 8, limit);; wp = std::min(2 * wp, limit)) {
    Series s = Series::variable(field, x.vars(), 0) * unit_root(e.truncated(wp), n, wp);
    if (root) s = s.over(root->field()).scaled(*root);
    const Series ys = y.truncated(wp).compose({invert_series(s, wp)});
    std::vector<int> beta = {n};
    int g = n;
    for (const auto& [ex, coef] : ys.terms()) {
      if (ex[0] % g == 0) continue;
      beta.push_back(ex[0]);
      g = std::gcd(g, ex[0]);
      if (g == 1) return beta;
    }
    if (wp == limit) break;
  }
  fail(ErrorCode::PrecisionExhausted, "characteristic exponents not reached within the precision");
}

Series implicitize(const Parametrization& p, int precision) {
  const Field& f = p.field();
  const int ox = ord_or_fail(p.x, "x"), oy = ord_or_fail(p.y, "y");
  if (ox == kExact && oy == kExact) fail(ErrorCode::InvalidArgument, "both coordinates vanish");
  const bool swap = ox > oy;
  const Series& X = swap ? p.y : p.x;
  const Series& Y = swap ? p.x : p.y;
  const int n = std::min(ox, oy);
  const int Px = std::min({X.precision(), Y.precision(), (precision + 1) * n}) / n;
  const int T = Px * n;
  const std::vector<std::string> xv = {"x"};
  const Elem lc_inv = X.coeff(n).inv();

  std::vector<Series> xpow = {Series::constant(f, X.vars(), f.one())};
  auto power = [&](int q) -> const Series& {
    while (static_cast<int>(xpow.size()) <= q) xpow.push_back((xpow.back() * X).truncated(T));
    return xpow[static_cast<std::size_t>(q)];
  };
  // Coordinates of s in the basis 1, t, ..., t^(n-1) of K[[t]] over K[[X]].
  auto coordinates = [&](Series s) {
    std::vector<Series> c(static_cast<std::size_t>(n), Series(f, xv, Px));
    s = s.truncated(T);
    while (!s.is_zero()) {
      const auto& [ex, a] = *s.terms().begin();
      const int d = ex[0], q = d / n, i = d % n;
      const Elem b = a * lc_inv.pow(static_cast<std::uint64_t>(q));
      c[static_cast<std::size_t>(i)].add_term({q}, b);
      s -= (power(q) * Series::monomial(f, X.vars(), {i}, b)).truncated(T);
    }
    return c;
  };
  std::vector<std::vector<Series>> M(static_cast<std::size_t>(n), std::vector<Series>(static_cast<std::size_t>(n)));
  for (int j = 0; j < n; ++j) {
    const auto col = coordinates(Y * Series::monomial(f, Y.vars(), {j}, f.one()));
    for (int i = 0; i < n; ++i) M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = col[static_cast<std::size_t>(i)];
  }
  const std::vector<Series> cp = charpoly(M);
  int prec = kExact;
  for (int k = 0; k <= n; ++k) prec = std::min(prec, prec_add(cp[static_cast<std::size_t>(k)].precision(), n - k));
  Series out(f, {"x", "y"}, prec);
  for (int k = 0; k <= n; ++k) {
    for (const auto& [ex, a] : cp[static_cast<std::size_t>(k)].terms()) {
      const int xd = ex[0], yd = n - k;
      out.add_term(swap ? Exponent{yd, xd} : Exponent{xd, yd}, a);
    }
  }
  return out;
}

IntersectionResult intersection_mult(const Parametrization& P, const Parametrization& Q) {
  if (P.field() != Q.field()) fail(ErrorCode::FieldMismatch, "branches over different fields");
  if (P.x.vars() != P.y.vars()) fail(ErrorCode::VariableMismatch, "coordinates in different variables");
  const int cap = std::min({P.precision(), Q.precision(), 32 * std::max(1, Q.multiplicity())});
  IntersectionResult res;
  for (int n = std::min(8, cap);; n = std::min(2 * n, cap)) {
    const Series r = implicitize(Q, n).compose({P.x, P.y});
    const Order o = r.ord();
    if (!o.infinite) {
      res.value = o.value;
      return res;
    }
    if (n == cap || !o.precision_limited) {
      res.infinite = true;
      res.precision_limited = o.precision_limited;
      return res;
    }
  }
}

long long intersection_mult_noether(const Parametrization& P, const Parametrization& Q, int max_steps) {
  if (P.field() != Q.field()) fail(ErrorCode::FieldMismatch, "branches over different fields");
  require_primitive(P);
  require_primitive(Q);
  BranchState a(P), b(Q);
  long long total = 0;
  auto direction = [](const BranchState& s) {
    const int m = s.multiplicity();
    const Series& x = s.param.x;
    const Series& y = s.param.y;
    const Field& f = x.field();
    return std::pair<Elem, Elem>{x.ord_bound() == m ? x.coeff(m) : f.zero(), y.ord_bound() == m ? y.coeff(m) : f.zero()};
  };
  for (int step = 0; step < max_steps; ++step) {
    total += static_cast<long long>(a.multiplicity()) * b.multiplicity();
    const auto [ax, ay] = direction(a);
    const auto [bx, by] = direction(b);
    if (ax * by != bx * ay) return total;
    a = blowup_step(a);
    b = blowup_step(b);
  }
  fail(ErrorCode::NonTerminating, "branches do not separate within " + std::to_string(max_steps) + " blowups");
}

EsType es_type(const std::vector<Parametrization>& branches) {
  EsType t;
  const std::size_t k = branches.size();
  for (const auto& b : branches) t.sequences.push_back(mult_sequence(b));
  t.intersections.assign(k, std::vector<long long>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const IntersectionResult r = intersection_mult(branches[i], branches[j]);
      if (r.infinite)
        fail(ErrorCode::DuplicateBranch, "branches " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
      t.intersections[i][j] = t.intersections[j][i] = r.value;
    }
  return t;
}

bool es_equal(const EsType& a, const EsType& b) {
  const std::size_t k = a.sequences.size();
  if (b.sequences.size() != k) return false;
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) {
      if (a.sequences[i] != b.sequences[perm[i]]) ok = false;
      for (std::size_t j = 0; j < k && ok; ++j)
        if (i != j && a.intersections[i][j] != b.intersections[perm[i]][perm[j]]) ok = false;
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

bool good_characteristic(const std::vector<Parametrization>& branches, const Field& field) {
  const std::uint64_t p = field.characteristic();
  if (p == 0) return true;
  for (const auto& b : branches)
    if (static_cast<std::uint64_t>(b.multiplicity()) % p == 0) return false;
  return true;
}

}  // namespace algebroid
