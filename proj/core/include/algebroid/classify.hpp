#pragma once

#include <string>
#include <vector>

#include "algebroid/localalg.hpp"

namespace algebroid {

struct SplitResult {
  int squares = 0;
  /// g in the variables that were not split off, f ~ x_1^2 + ... + x_c^2 + g.
  Series residual;
  /// Substitution psi (image of every variable) with f(psi) - g in <x_1..x_c>^2.
  std::vector<Series> change;
  std::vector<std::size_t> split_vars;  // indices into f.vars()
};

/// Splitting lemma for p != 2, carried out to the contact determinacy bound.
SplitResult split_squares(const Series& f, int k_max = -1);

enum class QuadChar2 { A1Pattern, Other };
/// p = 2: A1 iff the alternating form of the quadratic part has full rank n
/// (so n is even).
QuadChar2 quad_normal_char2(const Series& f);

struct AdeClass {
  char family = 0;  // 'A', 'D', 'E', or 0 when not simple
  int index = 0;
  std::string subtype;  // e.g. "E6^0"; empty when unspecified
  int corank = 0;
  int residual_vars = 0;

  bool simple() const { return family != 0; }
  std::string name() const;
};

struct Evidence {
  int ord = 0;
  DimResult mu, tau;
  int squares = 0;
  /// Resolution data of the residual plane curve (corank 2 only).
  long long delta = -1;
  int branches = -1;
  /// Characteristic exponents of the associated plane curve when it is a
  /// single branch; empty otherwise.
  std::vector<int> char_exponents;
  std::vector<std::string> conditions;
};

struct ClassificationVerdict {
  bool contact_simple = false;
  bool right_simple = false;
  bool infinite_tjurina = false;
  /// False only for p = 2 quadratic parts outside the A1 pattern; then
  /// contact_simple carries no information.
  bool contact_determined = true;
  AdeClass cls;
  Evidence evidence;
};

/// Contact class of a residual in at most two variables with no quadratic
/// part in more than one of them.
AdeClass contact_ade(const Series& g, Evidence* evidence = nullptr);

/// Both verdicts are computed; the two entry points differ only in name.
ClassificationVerdict classify(const Series& f, int k_max = -1);
inline ClassificationVerdict right_simple(const Series& f, int k_max = -1) { return classify(f, k_max); }
inline ClassificationVerdict contact_simple(const Series& f, int k_max = -1) { return classify(f, k_max); }

}  // namespace algebroid
