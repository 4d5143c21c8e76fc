#include "algebroid/series.hpp"

namespace algebroid {

namespace {

constexpr std::size_t kMaxDeterminantSize = 48;

const Series& sample_entry(const std::vector<std::vector<Series>>& m) {
  if (m.empty() || m.size() != m.front().size()) fail(ErrorCode::InvalidArgument, "matrix must be square and nonempty");
  if (m.size() > kMaxDeterminantSize)
    fail(ErrorCode::SearchSpaceTooLarge, "determinant of size " + std::to_string(m.size()) + " exceeds the limit");
  return m.front().front();
}

}  // namespace

// Berkowitz: the characteristic polynomial of the leading (r+1)x(r+1) block
// is a Toeplitz matrix built from R M^k S times the one of the r x r block.
std::vector<Series> charpoly(const std::vector<std::vector<Series>>& m) {
  const Series& any = sample_entry(m);
  const Field& f = any.field();
  const auto& vars = any.vars();
  const Series one = Series::constant(f, vars, f.one());
  const std::size_t n = m.size();

  std::vector<Series> c = {one, -m[0][0]};
  for (std::size_t r = 1; r < n; ++r) {
    // t_0 = 1, t_1 = -a_rr, t_{k+2} = -R M^k S.
    std::vector<Series> t = {one, -m[r][r]};
    std::vector<Series> v(r);
    for (std::size_t i = 0; i < r; ++i) v[i] = m[i][r];
    for (std::size_t k = 0; k < r; ++k) {
      Series dot(f, vars);
      for (std::size_t i = 0; i < r; ++i) dot += m[r][i] * v[i];
      t.push_back(-dot);
      if (k + 1 < r) {
        std::vector<Series> next(r, Series(f, vars));
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j)
            if (!m[i][j].is_zero() && !v[j].is_zero()) next[i] += m[i][j] * v[j];
        v = std::move(next);
      }
    }
    std::vector<Series> nc(r + 2, Series(f, vars));
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j)
        if (!t[i - j].is_zero() && !c[j].is_zero()) nc[i] += t[i - j] * c[j];
    c = std::move(nc);
  }
  return c;
}

Series determinant(const std::vector<std::vector<Series>>& m) {
  std::vector<Series> c = charpoly(m);
  return m.size() % 2 == 0 ? c.back() : -c.back();
}

Series resultant(const std::vector<Series>& p, const std::vector<Series>& q) {
  if (p.empty() || q.empty() || p.back().is_zero() || q.back().is_zero())
    fail(ErrorCode::ZeroPolynomial, "resultant needs polynomials with known nonzero leading coefficients");
  const std::size_t dp = p.size() - 1, dq = q.size() - 1;
  const Field& f = p.back().field();
  const auto& vars = p.back().vars();
  if (dp == 0 && dq == 0) return Series::constant(f, vars, f.one());
  if (dp == 0) return p[0].pow(static_cast<unsigned>(dq));
  if (dq == 0) return q[0].pow(static_cast<unsigned>(dp));
  const std::size_t n = dp + dq;
  std::vector<std::vector<Series>> s(n, std::vector<Series>(n, Series(f, vars)));
  // Rows 0..dq-1 carry p shifted, rows dq..n-1 carry q shifted; coefficients
  // from the leading one down.
  for (std::size_t r = 0; r < dq; ++r)
    for (std::size_t k = 0; k <= dp; ++k) s[r][r + k] = p[dp - k];
  for (std::size_t r = 0; r < dp; ++r)
    for (std::size_t k = 0; k <= dq; ++k) s[dq + r][r + k] = q[dq - k];
  return determinant(s);
}

}  // namespace algebroid
