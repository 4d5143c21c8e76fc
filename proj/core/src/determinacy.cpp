#include "algebroid/determinacy.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "algebroid/linalg.hpp"

namespace algebroid {

namespace {

// Degree-bound certificates are only attempted up to this jet degree.
constexpr int kCertifyDegree = 32;
constexpr std::size_t kMaxMinors = 2000;

void push_unique(std::vector<std::vector<Series>>& gens, std::vector<Series> t) {
  if (std::all_of(t.begin(), t.end(), [](const Series& s) { return s.is_zero(); })) return;
  if (std::find(gens.begin(), gens.end(), t) != gens.end()) return;
  gens.push_back(std::move(t));
}

// Calls fn on every increasing k-subset of {0..n-1}; stops when fn returns false.
template <class Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    if (!fn(idx)) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > (1ULL << 40)) return r;
  }
  return r;
}

int nonzero_ord(const Series& f) {
  if (f.is_zero()) fail(ErrorCode::InvalidArgument, "f is zero");
  return f.ord().value;
}

std::vector<Series> jacobian_minors(const std::vector<Series>& gens, std::size_t r) {
  const std::size_t n = gens.front().nvars();
  std::vector<Series> minors;
  for_each_subset(n, r, [&](const std::vector<std::size_t>& cols) {
    std::vector<std::vector<Series>> m(r, std::vector<Series>(r));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) m[i][j] = gens[i].derivative(cols[j]);
    Series d = determinant(m);
    if (!d.is_zero()) minors.push_back(std::move(d));
    return true;
  });
  return minors;
}

}  // namespace

SeriesMatrix::SeriesMatrix(std::vector<std::vector<Series>> entries) : entries_(std::move(entries)) {
  if (entries_.empty() || entries_[0].empty()) fail(ErrorCode::InvalidArgument, "empty matrix");
  rows_ = entries_.size();
  cols_ = entries_[0].size();
  for (const auto& row : entries_) {
    if (row.size() != cols_) fail(ErrorCode::InvalidArgument, "ragged matrix");
    for (const auto& e : row) {
      if (e.field() != entries_[0][0].field()) fail(ErrorCode::FieldMismatch, "matrix entries over different fields");
      if (e.vars() != entries_[0][0].vars()) fail(ErrorCode::VariableMismatch, "matrix entries in different variables");
    }
  }
  if (rows_ < cols_) {
    std::vector<std::vector<Series>> t(cols_, std::vector<Series>(rows_));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t[j][i] = entries_[i][j];
    entries_ = std::move(t);
    std::swap(rows_, cols_);
    transposed_ = true;
  }
}

TangentImage tangent_image(const Series& f, Flavor flavor) {
  if (flavor == Flavor::MatrixG) return tangent_image(SeriesMatrix({{f}}));
  TangentImage t;
  t.flavor = flavor;
  if (flavor == Flavor::Contact) push_unique(t.generators, {f});
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    const Series d = f.derivative(i);
    for (std::size_t j = 0; j < f.nvars(); ++j)
      push_unique(t.generators, {Series::variable(f.field(), f.vars(), j) * d});
  }
  return t;
}

TangentImage tangent_image(const SeriesMatrix& a) {
  TangentImage t;
  t.flavor = Flavor::MatrixG;
  t.rows = a.rows();
  t.cols = a.cols();
  const std::size_t r = a.rows(), s = a.cols();
  const Series zero(a.field(), a.vars());
  auto flat = [&](auto entry) {
    std::vector<Series> v;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < s; ++j) v.push_back(entry(i, j));
    return v;
  };
  for (std::size_t p = 0; p < r; ++p)
    for (std::size_t q = 0; q < r; ++q)
      push_unique(t.generators, flat([&](std::size_t i, std::size_t j) { return i == p ? a.at(q, j) : zero; }));
  for (std::size_t c = 0; c < s; ++c)
    for (std::size_t d = 0; d < s; ++d)
      push_unique(t.generators, flat([&](std::size_t i, std::size_t j) { return j == d ? a.at(i, c) : zero; }));
  const std::size_t n = a.vars().size();
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w) {
      const Series xw = Series::variable(a.field(), a.vars(), w);
      push_unique(t.generators, flat([&](std::size_t i, std::size_t j) { return xw * a.at(i, j).derivative(v); }));
    }
  return t;
}

long long jet_image_dim(const TangentImage& t, int k) {
  if (k < 0) fail(ErrorCode::InvalidArgument, "negative jet degree");
  return jet_ranks(t.generators, k).back();
}

DimResult codim_tangent_image(const TangentImage& t, int k_max) { return quotient_dim_module(t.generators, k_max); }

Colength colength(const std::vector<std::vector<Series>>& gens_in, int k_max) {
  std::vector<std::vector<Series>> gens;
  for (const auto& g : gens_in) push_unique(gens, g);
  Colength out;
  if (gens.empty()) {
    out.kind = Colength::Kind::Infinite;
    return out;
  }
  const DimResult d = quotient_dim_module(gens, k_max);
  out.k_reached = d.k_reached;
  if (d.finite) {
    out.kind = Colength::Kind::Finite;
    out.value = d.value;
    return out;
  }
  for (const auto& g : gens)
    for (const auto& c : g)
      if (!c.is_exact()) return out;

  // An m-primary ideal generated in degree <= D has colength <= D^n, and a
  // module has finite colength iff its 0-th Fitting ideal is m-primary.
  const std::size_t N = gens.front().size();
  std::vector<Series> ideal;
  if (N == 1) {
    for (const auto& g : gens) ideal.push_back(g[0]);
  } else {
    if (binomial(gens.size(), N) > kMaxMinors) return out;
    for_each_subset(gens.size(), N, [&](const std::vector<std::size_t>& cols) {
      std::vector<std::vector<Series>> m(N, std::vector<Series>(N));
      for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) m[i][j] = gens[cols[j]][i];
      Series det = determinant(m);
      if (!det.is_zero()) ideal.push_back(std::move(det));
      return true;
    });
  }
  if (ideal.empty()) {
    out.kind = Colength::Kind::Infinite;
    return out;
  }
  int D = 0;
  for (const auto& g : ideal) D = std::max(D, g.max_degree());
  long long bound = 1;
  for (std::size_t i = 0; i < ideal.front().nvars(); ++i) {
    bound *= D;
    if (bound > kCertifyDegree) return out;
  }
  const DimResult fitting = quotient_dim(ideal, static_cast<int>(bound));
  if (!fitting.finite) {
    out.kind = Colength::Kind::Infinite;
    out.k_reached = static_cast<int>(bound);
    return out;
  }
  // The module colength is at most that of its Fitting ideal.
  const DimResult again = quotient_dim_module(gens, static_cast<int>(std::max<long long>(fitting.value, 1)));
  if (!again.finite) fail(ErrorCode::UndeterminedDimension, "colength certificate inconsistent");
  out.kind = Colength::Kind::Finite;
  out.value = again.value;
  out.k_reached = again.k_reached;
  return out;
}

int right_bound(const Series& f, int k_max) {
  const DimResult mu = milnor(f, k_max);
  if (!mu.finite) fail(ErrorCode::InfiniteInvariant, "the Milnor number is infinite or beyond k_max");
  const int ord = nonzero_ord(f);
  if (f.field().characteristic() == 0) return static_cast<int>(mu.value) + 1;
  return static_cast<int>(2 * mu.value - ord + 2);
}

int contact_bound(const Series& f, int k_max) {
  const DimResult tau = tjurina(f, k_max);
  if (!tau.finite) fail(ErrorCode::InfiniteInvariant, "the Tjurina number is infinite or beyond k_max");
  const int ord = nonzero_ord(f);
  if (f.field().characteristic() == 0) return static_cast<int>(tau.value) + 1;
  return static_cast<int>(2 * tau.value - ord + 2);
}

IdealFdResult fd_test_ideal(const std::vector<Series>& gens_in, int k_max) {
  std::vector<Series> gens;
  for (const auto& g : gens_in)
    if (!g.is_zero()) gens.push_back(g);
  if (gens.empty()) fail(ErrorCode::InvalidArgument, "the zero ideal");
  int min_prec = kExact;
  for (const auto& g : gens) {
    if (g.vars() != gens.front().vars()) fail(ErrorCode::VariableMismatch, "generators in different variables");
    min_prec = std::min(min_prec, g.precision());
  }
  const int K = k_max >= 0 ? k_max : default_kmax(min_prec == kExact ? kExact : min_prec - 1);
  require_minimal_generators(gens, std::min(K, min_prec == kExact ? K : min_prec - 1));
  const std::size_t r = gens.size(), n = gens.front().nvars();

  auto as_tuples = [](const std::vector<Series>& v) {
    std::vector<std::vector<Series>> t;
    for (const auto& s : v) t.push_back({s});
    return t;
  };
  Colength big, small;
  if (r >= n) big = colength(as_tuples(gens), K);
  if (r <= n) {
    std::vector<Series> with_minors = gens;
    for (auto& m : jacobian_minors(gens, r)) with_minors.push_back(std::move(m));
    small = colength(as_tuples(with_minors), K);
  }
  if (r == n && big.kind != Colength::Kind::Undetermined && small.kind != Colength::Kind::Undetermined &&
      big.kind != small.kind)
    fail(ErrorCode::UndeterminedDimension, "the two finite determinacy criteria disagree");
  IdealFdResult res;
  res.evidence = r >= n ? big : small;
  if (r == n && big.kind == Colength::Kind::Undetermined) res.evidence = small;
  if (res.evidence.kind == Colength::Kind::Undetermined)
    fail(ErrorCode::UndeterminedDimension, "colength not decided up to jet degree " + std::to_string(res.evidence.k_reached));
  res.verdict = res.evidence.kind == Colength::Kind::Finite ? IdealVerdict::FinitelyDetermined
                                                            : IdealVerdict::NotFinitelyDetermined;
  return res;
}

MatrixFdResult fd_test_matrix(const SeriesMatrix& a, int k_max) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a.at(i, j).coeff(Exponent(a.vars().size(), 0)).is_zero()) fail(ErrorCode::InvalidArgument, "matrix entries must lie in the maximal ideal");
  MatrixFdResult res;
  res.codim = colength(tangent_image(a).generators, k_max);
  switch (res.codim.kind) {
    case Colength::Kind::Finite:
      res.verdict = MatrixVerdict::FiniteBySufficientCriterion;
      break;
    case Colength::Kind::Infinite:
      res.verdict = a.cols() == 1 ? MatrixVerdict::NecessaryConditionFails : MatrixVerdict::Unknown;
      break;
    case Colength::Kind::Undetermined:
      res.verdict = MatrixVerdict::Unknown;
      break;
  }
  return res;
}

EquivalenceWitness jet_equiv_bruteforce(const Series& f_in, const Series& g_in, Flavor flavor, int k,
                                        const Field& fq) {
  if (!fq.is_finite()) fail(ErrorCode::InvalidArgument, "brute force search needs a finite field");
  if (flavor == Flavor::MatrixG) fail(ErrorCode::InvalidArgument, "brute force search covers right and contact equivalence");
  if (f_in.vars() != g_in.vars()) fail(ErrorCode::VariableMismatch, "f and g in different variables");
  auto lift = [&](const Series& s) {
    if (s.precision() <= k) fail(ErrorCode::PrecisionExhausted, "series known below the jet degree");
    if (s.field() == fq) return s.truncated(k + 1);
    if (!fq.contains(s.field())) fail(ErrorCode::FieldMismatch, "the search field does not contain the coefficients");
    return s.over(fq).truncated(k + 1);
  };
  const Series f = lift(f_in), g = lift(g_in);
  const auto& vars = g.vars();
  const std::size_t n = vars.size();
  const int og = g.is_zero() ? k + 1 : g.ord().value;
  const int D = std::max(1, k - og + 1);
  const int E = flavor == Flavor::Contact ? std::max(0, k - og) : -1;

  std::vector<std::pair<std::size_t, Exponent>> phi_slots;
  for (std::size_t i = 0; i < n; ++i)
    for (int d = 1; d <= D; ++d)
      for (auto& e : monomials_of_degree(static_cast<int>(n), d)) phi_slots.emplace_back(i, e);
  std::vector<Exponent> unit_slots;
  for (int d = 0; d <= E; ++d)
    for (auto& e : monomials_of_degree(static_cast<int>(n), d)) unit_slots.push_back(e);

  const std::uint64_t q = fq.size();
  EquivalenceWitness w;
  w.candidates = 1;
  for (std::size_t i = 0; i < phi_slots.size() + unit_slots.size(); ++i) {
    if (w.candidates > kBruteForceLimit / q)
      fail(ErrorCode::SearchSpaceTooLarge, "more than " + std::to_string(kBruteForceLimit) + " candidates");
    w.candidates *= q;
  }
  const std::vector<Elem> elems = fq.elements();
  const Series one = Series::constant(fq, vars, fq.one());

  auto image = [&](const std::vector<Series>& phi) { return g.compose(phi).truncated(k + 1); };
  auto invertible = [&](const std::vector<Series>& phi) {
    std::vector<Vec> lin;
    for (const auto& p : phi) {
      Vec row;
      for (std::size_t j = 0; j < n; ++j) {
        Exponent e(n, 0);
        e[j] = 1;
        row.push_back(p.coeff(e));
      }
      lin.push_back(row);
    }
    return rank(fq, lin, n) == n;
  };
  // Returns the unit making u * h agree with f, if any.
  auto match = [&](const Series& h) -> std::optional<Series> {
    if (flavor == Flavor::Right) return h == f ? std::optional<Series>(one) : std::nullopt;
    std::vector<std::size_t> codes(unit_slots.size(), 0);
    while (true) {
      Series u(fq, vars);
      for (std::size_t i = 0; i < codes.size(); ++i)
        if (codes[i] != 0) u.add_term(unit_slots[i], elems[codes[i]]);
      if (!u.coeff(0).is_zero() && (u * h).truncated(k + 1) == f) return u;
      std::size_t i = codes.size();
      while (i > 0 && ++codes[i - 1] == q) codes[--i] = 0;
      if (i == 0) return std::nullopt;
    }
  };

  std::vector<Series> identity;
  for (std::size_t i = 0; i < n; ++i) identity.push_back(Series::variable(fq, vars, i));
  if (auto u = match(g)) {
    w.found = true;
    w.phi = identity;
    w.unit = *u;
    return w;
  }
  std::vector<std::size_t> codes(phi_slots.size(), 0);
  while (true) {
    std::vector<Series> phi(n, Series(fq, vars));
    for (std::size_t i = 0; i < codes.size(); ++i)
      if (codes[i] != 0) phi[phi_slots[i].first].add_term(phi_slots[i].second, elems[codes[i]]);
    if (invertible(phi)) {
      if (auto u = match(image(phi))) {
        w.found = true;
        w.phi = std::move(phi);
        w.unit = *u;
        return w;
      }
    }
    std::size_t i = codes.size();
    while (i > 0 && ++codes[i - 1] == q) codes[--i] = 0;
    if (i == 0) return w;
  }
}

std::string to_string(Flavor f) {
  switch (f) {
    case Flavor::Right:
      return "right";
    case Flavor::Contact:
      return "contact";
    case Flavor::MatrixG:
      return "matrix";
  }
  return "";
}

std::string to_string(IdealVerdict v) {
  return v == IdealVerdict::FinitelyDetermined ? "FinitelyDetermined" : "NotFinitelyDetermined";
}

std::string to_string(MatrixVerdict v) {
  switch (v) {
    case MatrixVerdict::FiniteBySufficientCriterion:
      return "FiniteBySufficientCriterion";
    case MatrixVerdict::NecessaryConditionFails:
      return "NecessaryConditionFails";
    case MatrixVerdict::Unknown:
      return "Unknown";
  }
  return "";
}

}  // namespace algebroid
