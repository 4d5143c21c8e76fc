#pragma once

#include <vector>

#include "algebroid/hncurve.hpp"

namespace algebroid {

struct BlowupRecord {
  int multiplicity = 0;
  Elem center;           // constant subtracted from y/x on the chart
  bool swapped = false;  // coordinates exchanged before blowing up
};

/// A branch on the current chart of its resolution. `exceptional_x0` means
/// the line {x = 0} of this chart is an exceptional component through the
/// branch point, `exceptional_y0` likewise for {y = 0}.
struct BranchState {
  Parametrization param;
  std::vector<BlowupRecord> history;
  bool exceptional_x0 = false;
  bool exceptional_y0 = false;

  explicit BranchState(Parametrization p) : param(std::move(p)) {}
  int multiplicity() const { return param.multiplicity(); }
  /// Smooth, on at most one exceptional component, and transverse to it.
  bool normal_crossings() const;
};

/// One point blowup: (x, y) -> (x, y/x - c), swapping first if ord x > ord y.
BranchState blowup_step(const BranchState& b, int working_precision = 64);

std::vector<int> mult_sequence(const Parametrization& p);

/// Characteristic exponents recovered from a multiplicity sequence by
/// running the Euclidean algorithm backwards.
std::vector<int> char_exponents(const std::vector<int>& mults);

/// Characteristic exponents read from the support of y after normalising
/// x = s^n. Requires p = 0 or p not dividing n.
std::vector<int> puiseux_char_exponents(const Parametrization& p);

struct IntersectionResult {
  bool infinite = false;
  bool precision_limited = false;
  long long value = 0;
};

/// ord_t f_Q(x_P(t), y_P(t)) with f_Q the implicit equation of Q.
IntersectionResult intersection_mult(const Parametrization& P, const Parametrization& Q);
/// Sum over common infinitely near points of the products of multiplicities.
long long intersection_mult_noether(const Parametrization& P, const Parametrization& Q, int max_steps = 1000);

/// Implicit equation (Weierstrass polynomial in the variable of larger
/// order), as a series in x, y, accurate to about `precision` in x.
Series implicitize(const Parametrization& p, int precision = 32);

struct EsType {
  std::vector<std::vector<int>> sequences;
  std::vector<std::vector<long long>> intersections;  // symmetric, diagonal 0
};

EsType es_type(const std::vector<Parametrization>& branches);
/// Equality up to a simultaneous permutation of the branches.
bool es_equal(const EsType& a, const EsType& b);

bool good_characteristic(const std::vector<Parametrization>& branches, const Field& field);

}  // namespace algebroid
