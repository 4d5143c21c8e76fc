#include "algebroid/series.hpp"

#include <algorithm>
#include <numeric>

namespace algebroid {

int prec_add(int a, int b) {
  if (a == kExact || b == kExact) return kExact;
  const long long s = static_cast<long long>(a) + b;
  return s >= kExact ? kExact : static_cast<int>(s);
}

namespace {
int prec_mul(int a, int b) {
  if (a == kExact || b == kExact) return kExact;
  const long long s = static_cast<long long>(a) * b;
  return s >= kExact ? kExact : static_cast<int>(s);
}
}  // namespace

int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool DegLex::operator()(const Exponent& a, const Exponent& b) const {
  const int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

long long jet_space_dim(int n, int k) {
  if (k < 0) return 0;
  long long r = 1;
  for (int i = 1; i <= n; ++i) r = r * (k + i) / i;
  return r;
}

std::vector<Exponent> monomials_of_degree(int n, int d) {
  std::vector<Exponent> out;
  if (n == 0) {
    if (d == 0) out.push_back({});
    return out;
  }
  Exponent e(static_cast<std::size_t>(n), 0);
  // Enumerate with the first variable's exponent descending, which is DegLex order.
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == e.size()) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (int a = left; a >= 0; --a) {
      e[i] = a;
      self(self, i + 1, left - a);
    }
  };
  rec(rec, 0, d);
  return out;
}

Series::Series(Field field, std::vector<std::string> vars, int precision)
    : field_(std::move(field)), vars_(std::move(vars)), prec_(precision) {}

Series Series::constant(const Field& field, std::vector<std::string> vars, const Elem& c, int precision) {
  Exponent zero(vars.size(), 0);
  Series s(field, std::move(vars), precision);
  s.add_term(zero, c);
  return s;
}

Series Series::variable(const Field& field, std::vector<std::string> vars, std::size_t index, int precision) {
  Exponent e(vars.size(), 0);
  e.at(index) = 1;
  Series s(field, std::move(vars), precision);
  s.add_term(e, field.one());
  return s;
}

Series Series::monomial(const Field& field, std::vector<std::string> vars, Exponent e, const Elem& c, int precision) {
  Series s(field, std::move(vars), precision);
  s.add_term(e, c);
  return s;
}

std::size_t Series::var_index(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  fail(ErrorCode::VariableMismatch, "unknown variable '" + std::string(name) + "'");
}

Elem Series::coeff(const Exponent& e) const {
  if (e.size() != vars_.size()) fail(ErrorCode::VariableMismatch, "exponent length does not match variables");
  if (total_degree(e) >= prec_) fail(ErrorCode::PrecisionExhausted, "coefficient beyond the known precision");
  auto it = terms_.find(e);
  return it == terms_.end() ? field_.zero() : it->second;
}

void Series::add_term(const Exponent& e, const Elem& c) {
  if (e.size() != vars_.size()) fail(ErrorCode::VariableMismatch, "exponent length does not match variables");
  if (total_degree(e) >= prec_) return;
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Order Series::ord() const {
  Order o;
  if (terms_.empty()) {
    o.infinite = true;
    o.precision_limited = prec_ != kExact;
    return o;
  }
  o.value = total_degree(terms_.begin()->first);
  return o;
}

int Series::ord_bound() const { return terms_.empty() ? prec_ : total_degree(terms_.begin()->first); }

int Series::max_degree() const { return terms_.empty() ? -1 : total_degree(terms_.rbegin()->first); }

void Series::check_compatible(const Series& o) const {
  if (field_ != o.field_) fail(ErrorCode::FieldMismatch, "series over " + field_.spec() + " and " + o.field_.spec());
  if (vars_ != o.vars_) fail(ErrorCode::VariableMismatch, "series in different variables");
}

void Series::drop_beyond_precision() {
  if (prec_ == kExact) return;
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (total_degree(it->first) >= prec_)
      it = terms_.erase(it);
    else
      ++it;
  }
}

Series Series::operator+(const Series& o) const {
  check_compatible(o);
  Series r(field_, vars_, std::min(prec_, o.prec_));
  r.terms_ = terms_;
  r.drop_beyond_precision();
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

Series Series::operator-(const Series& o) const { return *this + (-o); }

Series Series::operator-() const {
  Series r(field_, vars_, prec_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

Series Series::operator*(const Series& o) const {
  check_compatible(o);
  int prec = std::min(prec_add(prec_, o.ord_bound()), prec_add(o.prec_, ord_bound()));
  if ((is_exact() && is_zero()) || (o.is_exact() && o.is_zero())) prec = kExact;
  Series r(field_, vars_, prec);
  Exponent e(vars_.size());
  for (const auto& [ea, ca] : terms_) {
    const int da = total_degree(ea);
    for (const auto& [eb, cb] : o.terms_) {
      if (da + total_degree(eb) >= prec) break;  // DegLex: degrees only grow
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Series Series::scaled(const Elem& c) const {
  Series r(field_, vars_, prec_);
  if (c.is_zero()) return r;
  for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
  return r;
}

Series Series::pow(unsigned e) const {
  Series r = constant(field_, vars_, field_.one());
  Series base = *this;
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

Series Series::derivative(std::size_t var) const {
  if (var >= vars_.size()) fail(ErrorCode::VariableMismatch, "derivative variable out of range");
  Series r(field_, vars_, prec_ == kExact ? kExact : prec_ - 1);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent d = e;
    d[var] -= 1;
    r.add_term(d, c * field_.from_int(e[var]));
  }
  return r;
}

Series Series::compose(const std::vector<Series>& args) const {
  if (args.size() != vars_.size())
    fail(ErrorCode::VariableMismatch, "compose needs one argument per variable");
  if (args.empty()) return *this;
  const Field& f = field_;
  const auto& out_vars = args.front().vars();
  bool all_exact = is_exact();
  int vmin = kExact;
  for (const auto& a : args) {
    if (a.field() != f) fail(ErrorCode::FieldMismatch, "compose arguments over a different field");
    if (a.vars() != out_vars) fail(ErrorCode::VariableMismatch, "compose arguments in different variables");
    all_exact = all_exact && a.is_exact();
    if (a.is_exact() && a.is_zero()) continue;
    vmin = std::min(vmin, a.ord_bound());
  }
  if (vmin == 0 && !all_exact) fail(ErrorCode::OrderZeroArgument, "substituted series must have positive order");

  int target = prec_mul(prec_, vmin);
  int lowest_nonconstant = kExact;
  std::vector<bool> used(vars_.size(), false);
  for (const auto& [e, c] : terms_) {
    const int d = total_degree(e);
    if (d >= 1) lowest_nonconstant = std::min(lowest_nonconstant, d);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) used[i] = true;
  }
  if (lowest_nonconstant != kExact) {
    const int slack = prec_mul(lowest_nonconstant - 1, vmin == kExact ? 0 : vmin);
    for (std::size_t i = 0; i < args.size(); ++i)
      if (used[i]) target = std::min(target, prec_add(args[i].precision(), slack));
  }

  Series result(f, out_vars, target);
  std::vector<std::vector<Series>> powers(args.size());
  auto power = [&](std::size_t i, int k) -> const Series& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(constant(f, out_vars, f.one()));
    while (static_cast<int>(cache.size()) <= k) cache.push_back((cache.back() * args[i].truncated(target)).truncated(target));
    return cache[static_cast<std::size_t>(k)];
  };
  for (const auto& [e, c] : terms_) {
    Series term = constant(f, out_vars, c, target);
    for (std::size_t i = 0; i < e.size() && !term.is_zero(); ++i)
      if (e[i] > 0) term = (term * power(i, e[i])).truncated(target);
    result += term;
  }
  return result;
}

Series Series::truncated(int n) const {
  if (n >= prec_) return *this;
  Series r(field_, vars_, n);
  for (const auto& [e, c] : terms_) {
    if (total_degree(e) >= n) break;
    r.terms_.emplace(e, c);
  }
  return r;
}

Series Series::with_precision(int n) const {
  Series r = truncated(n);
  r.prec_ = n;
  return r;
}

Series Series::jet(int k) const {
  if (k >= prec_) fail(ErrorCode::PrecisionExhausted, "jet of order " + std::to_string(k) + " needs precision > " + std::to_string(k));
  Series r(field_, vars_, kExact);
  for (const auto& [e, c] : terms_) {
    if (total_degree(e) > k) break;
    r.terms_.emplace(e, c);
  }
  return r;
}

Series Series::with_vars(const std::vector<std::string>& vars) const {
  std::vector<std::size_t> where(vars_.size(), SIZE_MAX);
  for (std::size_t i = 0; i < vars_.size(); ++i)
    for (std::size_t j = 0; j < vars.size(); ++j)
      if (vars_[i] == vars[j]) where[i] = j;
  Series r(field_, vars, prec_);
  for (const auto& [e, c] : terms_) {
    Exponent ne(vars.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (where[i] == SIZE_MAX) fail(ErrorCode::VariableMismatch, "variable '" + vars_[i] + "' not in target list");
      ne[where[i]] += e[i];
    }
    r.add_term(ne, c);
  }
  return r;
}

Series Series::over(const Field& bigger) const {
  if (bigger == field_) return *this;
  Series r(bigger, vars_, prec_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, bigger.embed(c));
  return r;
}

std::vector<Series> Series::coefficients_in(std::size_t var) const {
  if (var >= vars_.size()) fail(ErrorCode::VariableMismatch, "variable index out of range");
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (i != var) rest.push_back(vars_[i]);
  int top = -1;
  for (const auto& [e, c] : terms_) top = std::max(top, e[var]);
  std::vector<Series> out;
  for (int j = 0; j <= top; ++j) out.emplace_back(field_, rest, prec_ == kExact ? kExact : prec_ - j);
  for (const auto& [e, c] : terms_) {
    Exponent ne;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (i != var) ne.push_back(e[i]);
    out[static_cast<std::size_t>(e[var])].add_term(ne, c);
  }
  return out;
}

bool Series::operator==(const Series& o) const {
  return field_ == o.field_ && vars_ == o.vars_ && prec_ == o.prec_ && terms_.size() == o.terms_.size() &&
         std::equal(terms_.begin(), terms_.end(), o.terms_.begin(),
                    [](const auto& a, const auto& b) { return a.first == b.first && a.second == b.second; });
}

bool Series::agrees_with(const Series& o) const {
  check_compatible(o);
  const int n = std::min(prec_, o.prec_);
  return truncated(n).terms_.size() == o.truncated(n).terms_.size() && (truncated(n) - o.truncated(n)).is_zero();
}

// ---- one-variable helpers ------------------------------------------------

namespace {
void require_univariate(const Series& s, const char* what) {
  if (s.nvars() != 1) fail(ErrorCode::VariableMismatch, std::string(what) + " needs a series in one variable");
}
}  // namespace

Series invert_series(const Series& u, int precision) {
  require_univariate(u, "invert_series");
  const Order o = u.ord();
  if (o.infinite || o.value != 1) fail(ErrorCode::OrderNotOne, "compositional inverse needs order exactly one");
  const int n = std::min(u.precision(), precision);
  const Elem c1 = u.coeff(1);
  const Elem c1_inv = c1.inv();
  const Field& f = u.field();
  if (n == kExact) {
    if (u.max_degree() == 1) return Series::monomial(f, u.vars(), {1}, c1_inv);
    fail(ErrorCode::InvalidArgument, "inverse of a nonlinear polynomial needs a working precision");
  }
  // Newton iteration v <- v - (u(v) - t) / u'(v), doubling the precision.
  const Series t = Series::variable(f, u.vars(), 0);
  const Series ut = u.truncated(n), du = u.derivative(0).truncated(n);
  Series v = Series::monomial(f, u.vars(), {1}, c1_inv, std::min(n, 2));
  for (int prec = 2; prec < n;) {
    prec = std::min(2 * prec, n);
    const Series vt = v.with_precision(prec);
    const Series w = (ut.truncated(prec).compose({vt}) - t).truncated(prec);
    const Series d = du.truncated(prec).compose({vt}).truncated(prec);
    v = (vt - divide(w, d, prec)).truncated(prec);
  }
  return v.with_precision(n);
}

Series divide(const Series& a, const Series& b, int precision) {
  require_univariate(a, "divide");
  require_univariate(b, "divide");
  if (a.field() != b.field()) fail(ErrorCode::FieldMismatch, "divide over different fields");
  const Order ob = b.ord();
  if (ob.infinite) fail(ErrorCode::PrecisionExhausted, "division by a series that vanishes to its precision");
  const int vb = ob.value;
  const int va = a.ord_bound();
  if (va < vb) fail(ErrorCode::InvalidArgument, "quotient is not a power series");
  int prec = std::min(a.precision() == kExact ? kExact : a.precision() - vb,
                      b.precision() == kExact ? kExact : b.precision() - 2 * vb + va);
  prec = std::min(prec, precision);
  const Field& f = a.field();
  bool exact_check = false;
  if (prec == kExact) {
    // Exact polynomials: the quotient is a polynomial only if b divides a.
    if (a.is_zero()) return Series(f, a.vars(), kExact);
    prec = a.max_degree() - vb + 1;
    exact_check = true;
  }
  const Elem lead_inv = b.coeff(vb).inv();
  Series q(f, a.vars(), prec);
  Series rem = a.truncated(prec_add(prec, vb));
  for (int k = va - vb; k < prec; ++k) {
    const Elem c = rem.coeff(k + vb);
    if (c.is_zero()) continue;
    const Elem qk = c * lead_inv;
    q.add_term({k}, qk);
    rem -= (b * Series::monomial(f, a.vars(), {k}, qk)).truncated(rem.precision());
  }
  if (exact_check) {
    Series full = a - b * q.with_precision(kExact);
    if (!full.is_zero()) fail(ErrorCode::InvalidArgument, "polynomials do not divide exactly; supply a precision");
    return q.with_precision(kExact);
  }
  return q;
}

Series unit_root(const Series& e, int n, int precision) {
  require_univariate(e, "unit_root");
  const Field& f = e.field();
  if (e.coeff(0) != f.one()) fail(ErrorCode::InvalidArgument, "unit_root needs constant term 1");
  if (f.characteristic() != 0 && n % static_cast<long long>(f.characteristic()) == 0)
    fail(ErrorCode::BadCharacteristic, "root index divisible by the characteristic");
  const int prec = std::min(e.precision(), precision);
  if (prec == kExact) {
    if (e.max_degree() == 0) return e;
    fail(ErrorCode::InvalidArgument, "root of a nonconstant polynomial needs a working precision");
  }
  const Elem n_inv = f.from_int(n).inv();
  Series r = Series::constant(f, e.vars(), f.one(), prec);
  for (int k = 1; k < prec; ++k) {
    const Series rk = r.truncated(k + 1).pow(static_cast<unsigned>(n)).truncated(k + 1);
    const Elem diff = e.coeff(k) - rk.coeff(k);
    if (!diff.is_zero()) r.add_term({k}, diff * n_inv);
  }
  return r;
}

}  // namespace algebroid
