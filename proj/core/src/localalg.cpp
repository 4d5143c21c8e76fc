#include "algebroid/localalg.hpp"

#include <algorithm>
#include <map>

#include "algebroid/linalg.hpp"

namespace algebroid {

int default_kmax(int precision) { return precision == kExact ? kDefaultKMax : (2 * precision) / 3; }

namespace {

struct Shape {
  Field field;
  std::vector<std::string> vars;
  std::size_t rank = 0;
  int min_precision = kExact;
};

Shape shape_of(const std::vector<std::vector<Series>>& gens) {
  Shape s;
  for (const auto& g : gens) {
    if (s.rank == 0) s.rank = g.size();
    if (g.size() != s.rank) fail(ErrorCode::InvalidArgument, "module generators of different ranks");
    for (const auto& c : g) {
      if (s.vars.empty() && !c.vars().empty()) {
        s.field = c.field();
        s.vars = c.vars();
      }
      if (c.field() != s.field && !s.vars.empty()) fail(ErrorCode::FieldMismatch, "generators over different fields");
      if (c.vars() != s.vars) fail(ErrorCode::VariableMismatch, "generators in different variables");
      s.min_precision = std::min(s.min_precision, c.precision());
    }
  }
  return s;
}

bool is_zero_tuple(const std::vector<Series>& g) {
  return std::all_of(g.begin(), g.end(), [](const Series& s) { return s.is_zero(); });
}

// Column layout: monomials in DegLex order, each followed by the r components.
class JetIndex {
 public:
  JetIndex(int nvars, int K) {
    for (int d = 0; d <= K; ++d) {
      for (auto& e : monomials_of_degree(nvars, d)) index_.emplace(e, index_.size());
      upto_.push_back(index_.size());
    }
  }
  std::size_t monomials_upto(int k) const { return k < 0 ? 0 : upto_[static_cast<std::size_t>(k)]; }
  std::size_t at(const Exponent& e) const { return index_.at(e); }

 private:
  std::map<Exponent, std::size_t> index_;
  std::vector<std::size_t> upto_;
};

}  // namespace

std::vector<long long> jet_ranks(const std::vector<std::vector<Series>>& gens_in, int K) {
  std::vector<std::vector<Series>> gens;
  for (const auto& g : gens_in)
    if (!is_zero_tuple(g)) gens.push_back(g);
  std::vector<long long> ranks(static_cast<std::size_t>(K) + 1, 0);
  if (gens.empty()) return ranks;
  const Shape sh = shape_of(gens);
  if (K >= sh.min_precision)
    fail(ErrorCode::PrecisionExhausted,
         "jet degree " + std::to_string(K) + " needs generators known beyond precision " + std::to_string(sh.min_precision));
  const int n = static_cast<int>(sh.vars.size());
  const std::size_t r = sh.rank;
  const JetIndex idx(n, K);
  const std::size_t dim = idx.monomials_upto(K) * r;
  RowSpace space(sh.field, dim);

  for (int a = 0; a <= K; ++a) {
    for (const Exponent& alpha : monomials_of_degree(n, a)) {
      for (const auto& g : gens) {
        Vec v(dim, sh.field.zero());
        bool any = false;
        for (std::size_t c = 0; c < r; ++c) {
          for (const auto& [e, coef] : g[c].terms()) {
            if (total_degree(e) + a > K) break;
            Exponent sum = e;
            for (int i = 0; i < n; ++i) sum[static_cast<std::size_t>(i)] += alpha[static_cast<std::size_t>(i)];
            v[idx.at(sum) * r + c] = coef;
            any = true;
          }
        }
        if (any) space.add(v);
      }
    }
  }
  // In echelon form with leading-entry pivots, the projection to the first
  // columns has rank equal to the number of pivots among them.
  std::vector<std::size_t> pivots = space.pivots();
  std::sort(pivots.begin(), pivots.end());
  for (int k = 0; k <= K; ++k) {
    const std::size_t limit = idx.monomials_upto(k) * r;
    ranks[static_cast<std::size_t>(k)] =
        static_cast<long long>(std::lower_bound(pivots.begin(), pivots.end(), limit) - pivots.begin());
  }
  return ranks;
}

DimResult quotient_dim_module(const std::vector<std::vector<Series>>& gens_in, int k_max) {
  std::vector<std::vector<Series>> gens;
  for (const auto& g : gens_in)
    if (!is_zero_tuple(g)) gens.push_back(g);
  DimResult res;
  if (gens.empty()) return res;  // zero module: infinite
  const Shape sh = shape_of(gens);
  if (k_max < 0) k_max = default_kmax(sh.min_precision);
  if (k_max >= sh.min_precision)
    fail(ErrorCode::PrecisionExhausted, "k_max must stay below the generator precision");
  const int n = static_cast<int>(sh.vars.size());
  const long long r = static_cast<long long>(sh.rank);

  // Grow the examined jet degree geometrically; ranks below K are exact for
  // every K, so a smaller K only risks missing a later saturation.
  int K = std::min(k_max, 8);
  while (true) {
    const std::vector<long long> ranks = jet_ranks(gens, K);
    for (int k = 0; k <= K; ++k) {
      const long long prev = k == 0 ? 0 : ranks[static_cast<std::size_t>(k - 1)];
      const long long slice = r * (jet_space_dim(n, k) - jet_space_dim(n, k - 1));
      if (ranks[static_cast<std::size_t>(k)] - prev == slice) {
        res.finite = true;
        res.saturated_at = k;
        res.value = r * jet_space_dim(n, k - 1) - prev;
        res.last_codim = res.value;
        res.k_reached = k;
        return res;
      }
    }
    res.k_reached = K;
    res.last_codim = r * jet_space_dim(n, K) - ranks.back();
    if (K == k_max) return res;
    K = std::min(k_max, 2 * K);
  }
}

DimResult quotient_dim(const std::vector<Series>& gens, int k_max) {
  std::vector<std::vector<Series>> tuples;
  for (const auto& g : gens) tuples.push_back({g});
  return quotient_dim_module(tuples, k_max);
}

namespace {
std::vector<Series> partials(const Series& f) {
  std::vector<Series> out;
  for (std::size_t i = 0; i < f.nvars(); ++i) out.push_back(f.derivative(i));
  return out;
}

int kmax_for(const Series& f, int k_max) {
  // Derivatives lose one degree of precision.
  if (k_max >= 0) return k_max;
  return default_kmax(f.is_exact() ? kExact : f.precision() - 1);
}
}  // namespace

DimResult milnor(const Series& f, int k_max) { return quotient_dim(partials(f), kmax_for(f, k_max)); }

DimResult tjurina(const Series& f, int k_max) {
  std::vector<Series> gens = partials(f);
  gens.push_back(f);
  return quotient_dim(gens, kmax_for(f, k_max));
}

void require_minimal_generators(const std::vector<Series>& gens, int K) {
  if (gens.empty()) return;
  const Field& field = gens.front().field();
  const auto& vars = gens.front().vars();
  // The f_i must stay independent modulo m*I (checked on jets).
  std::vector<std::vector<Series>> mI;
  for (const auto& g : gens)
    for (std::size_t i = 0; i < vars.size(); ++i) mI.push_back({g * Series::variable(field, vars, i)});
  std::vector<std::vector<Series>> all = mI;
  for (const auto& g : gens) all.push_back({g});
  const long long base = jet_ranks(mI, K).back();
  const long long full = jet_ranks(all, K).back();
  if (full - base < static_cast<long long>(gens.size()))
    fail(ErrorCode::NotMinimalGenerators, "the generators are not minimal");
}

DimResult tjurina_ideal(const std::vector<Series>& fs, int k_max) {
  std::vector<Series> gens;
  for (const auto& f : fs)
    if (!f.is_zero()) gens.push_back(f);
  if (gens.empty()) return {};
  const std::size_t r = gens.size();
  const Field& field = gens.front().field();
  const auto& vars = gens.front().vars();
  const std::size_t n = vars.size();
  int min_prec = kExact;
  for (const auto& g : gens) min_prec = std::min(min_prec, g.precision());
  if (k_max < 0) k_max = default_kmax(min_prec == kExact ? kExact : min_prec - 1);

  require_minimal_generators(gens, std::min(k_max, min_prec == kExact ? k_max : min_prec - 1));

  const Series zero(field, vars);
  std::vector<std::vector<Series>> module;
  for (std::size_t c = 0; c < r; ++c)
    for (const auto& g : gens) {
      std::vector<Series> t(r, zero);
      t[c] = g;
      module.push_back(t);
    }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Series> t;
    for (const auto& g : gens) t.push_back(g.derivative(i));
    module.push_back(t);
  }
  return quotient_dim_module(module, k_max);
}

}  // namespace algebroid
