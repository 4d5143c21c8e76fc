#pragma once

#include <cstdint>
#include <vector>

#include "algebroid/localalg.hpp"

namespace algebroid {

enum class Flavor { Right, Contact, MatrixG };

/// r x s matrix of series with r >= s (the constructor transposes otherwise).
class SeriesMatrix {
 public:
  explicit SeriesMatrix(std::vector<std::vector<Series>> entries);
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Series& at(std::size_t i, std::size_t j) const { return entries_[i][j]; }
  bool transposed() const { return transposed_; }
  const Field& field() const { return entries_[0][0].field(); }
  const std::vector<std::string>& vars() const { return entries_[0][0].vars(); }

 private:
  std::vector<std::vector<Series>> entries_;
  std::size_t rows_ = 0, cols_ = 0;
  bool transposed_ = false;
};

/// Generators of the extended tangent image, as tuples of length rows*cols
/// (row-major for matrices, length 1 for a single series).
struct TangentImage {
  Flavor flavor = Flavor::Right;
  std::size_t rows = 1, cols = 1;
  std::vector<std::vector<Series>> generators;
};

TangentImage tangent_image(const Series& f, Flavor flavor);
TangentImage tangent_image(const SeriesMatrix& a);

/// dim of the span of all jet(x^a * g, k) in the k-jets, for g in the image.
long long jet_image_dim(const TangentImage& t, int k);
DimResult codim_tangent_image(const TangentImage& t, int k_max = -1);

/// Finite, certified infinite, or not decided within the search limits.
struct Colength {
  enum class Kind { Finite, Infinite, Undetermined };
  Kind kind = Kind::Undetermined;
  long long value = 0;
  int k_reached = -1;
};

/// Colength of a submodule of K[[x]]^r. When the jet search up to k_max does
/// not saturate and the generators are polynomials, infinite colength is
/// certified by a degree bound (through the Fitting ideal for r > 1).
Colength colength(const std::vector<std::vector<Series>>& gens, int k_max = -1);

/// 2mu - ord + 2 in positive characteristic, mu + 1 in characteristic 0.
int right_bound(const Series& f, int k_max = -1);
/// 2tau - ord + 2 in positive characteristic, tau + 1 in characteristic 0.
int contact_bound(const Series& f, int k_max = -1);

enum class IdealVerdict { FinitelyDetermined, NotFinitelyDetermined };
struct IdealFdResult {
  IdealVerdict verdict = IdealVerdict::NotFinitelyDetermined;
  /// Colength of I (r >= n) or of I + I_r (r <= n); for r = n the first.
  Colength evidence;
};
/// Finite contact determinacy of I = <f_1..f_r>: dim K[[x]]/I < oo when
/// r >= n, dim K[[x]]/(I + I_r) < oo when r <= n, with I_r the r x r minors
/// of the Jacobian matrix.
IdealFdResult fd_test_ideal(const std::vector<Series>& gens, int k_max = -1);

enum class MatrixVerdict { FiniteBySufficientCriterion, NecessaryConditionFails, Unknown };
struct MatrixFdResult {
  MatrixVerdict verdict = MatrixVerdict::Unknown;
  Colength codim;
};
MatrixFdResult fd_test_matrix(const SeriesMatrix& a, int k_max = -1);

/// Search result of jet_equiv_bruteforce: phi (and unit for contact) with
/// j_k(u * g(phi)) = j_k(f).
struct EquivalenceWitness {
  bool found = false;
  std::vector<Series> phi;
  Series unit;
  std::uint64_t candidates = 0;  // size of the enumerated space
};

inline constexpr std::uint64_t kBruteForceLimit = 100'000'000;

/// Exhaustive search over coordinate changes (and units) with coefficients
/// in the finite field `fq`, in a fixed lexicographic order. Not finding a
/// witness says nothing about equivalence over the algebraic closure.
EquivalenceWitness jet_equiv_bruteforce(const Series& f, const Series& g, Flavor flavor, int k, const Field& fq);

std::string to_string(Flavor f);
std::string to_string(IdealVerdict v);
std::string to_string(MatrixVerdict v);

}  // namespace algebroid
