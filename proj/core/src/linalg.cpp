#include "algebroid/linalg.hpp"

#include <algorithm>

namespace algebroid {

Vec RowSpace::reduce(const Vec& v) const {
  if (v.size() != dim_) fail(ErrorCode::InvalidArgument, "vector length does not match the space");
  Vec w = v;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Elem c = w[pivots_[i]];
    if (c.is_zero()) continue;
    const Vec& r = rows_[i];
    for (std::size_t j = 0; j < dim_; ++j)
      if (!r[j].is_zero()) w[j] -= c * r[j];
  }
  return w;
}

bool RowSpace::contains(const Vec& v) const {
  const Vec w = reduce(v);
  return std::all_of(w.begin(), w.end(), [](const Elem& e) { return e.is_zero(); });
}

bool RowSpace::add(const Vec& v) {
  Vec w = reduce(v);
  std::size_t piv = dim_;
  for (std::size_t j = 0; j < dim_; ++j)
    if (!w[j].is_zero()) {
      piv = j;
      break;
    }
  if (piv == dim_) return false;
  const Elem inv = w[piv].inv();
  for (auto& e : w)
    if (!e.is_zero()) e *= inv;
  // Keep the basis fully reduced so `reduce` is a single pass.
  for (auto& r : rows_) {
    const Elem c = r[piv];
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < dim_; ++j)
      if (!w[j].is_zero()) r[j] -= c * w[j];
  }
  rows_.push_back(std::move(w));
  pivots_.push_back(piv);
  return true;
}

std::size_t rank(const Field& field, const std::vector<Vec>& rows, std::size_t dim) {
  RowSpace s(field, dim);
  for (const auto& r : rows) s.add(r);
  return s.rank();
}

void trim(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int degree(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly upoly_derivative(const UPoly& p) {
  UPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * p[i].field().from_int(static_cast<long long>(i)));
  trim(d);
  return d;
}

std::pair<UPoly, UPoly> upoly_divmod(const UPoly& a, const UPoly& b) {
  UPoly bb = b;
  trim(bb);
  if (bb.empty()) fail(ErrorCode::InvalidArgument, "polynomial division by zero");
  UPoly r = a;
  trim(r);
  if (r.size() < bb.size()) return {UPoly{}, r};
  UPoly q(r.size() - bb.size() + 1, bb.back().field().zero());
  const Elem lead_inv = bb.back().inv();
  while (r.size() >= bb.size()) {
    const std::size_t shift = r.size() - bb.size();
    const Elem c = r.back() * lead_inv;
    q[shift] = c;
    for (std::size_t i = 0; i < bb.size(); ++i) r[shift + i] -= c * bb[i];
    trim(r);
  }
  trim(q);
  return {q, r};
}

UPoly upoly_gcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = upoly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  const Elem inv = a.back().inv();
  for (auto& c : a) c *= inv;
  return a;
}

Elem upoly_eval(const UPoly& p, const Elem& x) {
  Elem acc = x.field().zero();
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

namespace {

UPoly lcm(const UPoly& a, const UPoly& b) {
  const UPoly g = upoly_gcd(a, b);
  UPoly prod(a.size() + b.size() - 1, a.front().field().zero());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];
  return upoly_divmod(prod, g).first;
}

}  // namespace

UPoly radical(const UPoly& p_in, const Field& field) {
  UPoly p = p_in;
  trim(p);
  if (p.size() <= 1) return {field.one()};
  const UPoly d = upoly_derivative(p);
  if (d.empty()) {
    // p(x) = h(x^p) = h~(x)^p where h~ has the p-th roots of the coefficients.
    const std::uint64_t ch = field.characteristic();
    const std::uint64_t root_exp = field.size() / ch;  // a -> a^(q/p) inverts Frobenius
    UPoly h;
    for (std::size_t i = 0; i < p.size(); i += ch) h.push_back(p[i].pow(root_exp));
    return radical(h, field);
  }
  const UPoly g = upoly_gcd(p, d);
  UPoly head = upoly_divmod(p, g).first;
  const Elem inv = head.back().inv();
  for (auto& c : head) c *= inv;
  if (g.size() <= 1) return head;
  return lcm(head, radical(g, field));
}

std::vector<Elem> roots_in(const UPoly& p, const Field& field) {
  if (!field.is_finite()) fail(ErrorCode::InvalidArgument, "root search needs a finite field");
  std::vector<Elem> out;
  for (const Elem& x : field.elements())
    if (upoly_eval(p, x).is_zero()) out.push_back(x);
  return out;
}

std::pair<Field, std::vector<Elem>> splitting_roots(const UPoly& p_in, const Field& field) {
  UPoly p = p_in;
  trim(p);
  if (p.empty()) fail(ErrorCode::ZeroPolynomial, "the zero polynomial has no finite root set");
  const std::size_t distinct = static_cast<std::size_t>(degree(radical(p, field)));
  for (int m = 1; m <= 12; ++m) {
    const Field ext = extend(field, m);
    UPoly q;
    for (const auto& c : p) q.push_back(ext.embed(c));
    std::vector<Elem> r = roots_in(q, ext);
    if (r.size() == distinct) return {ext, r};
  }
  fail(ErrorCode::SearchSpaceTooLarge, "polynomial does not split in extensions of degree <= 12");
}

}  // namespace algebroid
