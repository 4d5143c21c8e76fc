#pragma once

#include <vector>

#include "algebroid/series.hpp"

namespace algebroid {

/// Outcome of a jet-saturation dimension computation.
struct DimResult {
  bool finite = false;
  long long value = 0;       // the dimension when finite
  long long last_codim = 0;  // codimension in the last jet space examined
  int saturated_at = -1;     // k with m^k K^r inside the module (finite case)
  int k_reached = -1;        // highest jet degree examined
};

/// Largest jet degree searched when the caller gives none: two thirds of
/// the smallest input precision, or kDefaultKMax for exact input.
inline constexpr int kDefaultKMax = 24;
int default_kmax(int precision);

/// dim K[[x]]^r / M for M generated by r-tuples of series, by saturation
/// of the jet images L_k until the whole degree-k slice is reached.
/// `k_max < 0` means default_kmax of the inputs.
DimResult quotient_dim_module(const std::vector<std::vector<Series>>& gens, int k_max = -1);

/// dim K[[x]]/I.
DimResult quotient_dim(const std::vector<Series>& gens, int k_max = -1);

DimResult milnor(const Series& f, int k_max = -1);
DimResult tjurina(const Series& f, int k_max = -1);

/// dim K[[x]]^r / (I K[[x]]^r + <df/dx_1, ..., df/dx_n>) for I = <f_1..f_r>.
/// Throws NotMinimalGenerators when some f_i is redundant modulo m I at
/// the examined jet level.
DimResult tjurina_ideal(const std::vector<Series>& gens, int k_max = -1);

/// Throws NotMinimalGenerators unless the f_i are independent modulo m I
/// on k-jets.
void require_minimal_generators(const std::vector<Series>& gens, int k);

/// Rank of the images in J^(k)^r of all x^a * g (|a| <= k) for the given
/// tuples, per jet degree 0..K. Exposed for the determinacy module.
std::vector<long long> jet_ranks(const std::vector<std::vector<Series>>& gens, int K);

}  // namespace algebroid
