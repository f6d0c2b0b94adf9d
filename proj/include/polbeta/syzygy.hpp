#pragma once

// Property (N_p) consequences of threshold bounds and of (g, d) arithmetic.
// p = -1 stands for basepoint freeness, p = 0 for projective normality.

#include <optional>
#include <string>
#include <vector>

#include "polbeta/exactmath.hpp"
#include "polbeta/threshold.hpp"

namespace polbeta {

/// sum_{i=0}^{g} (p+2)^i; equals g+1 for p = -1.
Integer np_threshold(int g, int p);

/// Largest p >= -1 with d >= np_threshold(g, p); nullopt when d <= g.
std::optional<int> max_np_arithmetic(int g, const Integer& d);

/// Largest p >= -1 whose condition beta < 1/(p+2) follows from the upper end
/// of the interval; nullopt when the upper end certifies nothing below 1.
std::optional<int> np_from_beta(const BetaInterval& interval);

struct NecessaryBound {
  Rational bound;
  bool strict = false;
  std::string justification;
};

/// Lower bounds forced on the general member of type (1, ..., 1, d) because a
/// property (N_p) it must fail would otherwise hold:
///   d <= g                  -> not basepoint free    -> beta >= 1
///   d (d+1) / 2 < 2^g d     -> not projectively normal -> beta >= 1/2
std::vector<NecessaryBound> necessary_lower_bounds(int g, const Integer& d);

/// The same bounds as lower-side candidates for combine_interval.
std::vector<BoundCandidate> necessary_lower_candidates(int g, const Integer& d);

enum class NpSource { none, beta_bound, arithmetic };
std::string to_string(NpSource s);

struct NpCertificate {
  int g = 0;
  Integer d;
  std::optional<int> p_from_beta;
  std::optional<int> p_arithmetic;
  std::optional<int> guaranteed;
  NpSource source = NpSource::none;
  bool basepoint_free_possible = false;      // d >= g + 1
  bool projectively_normal_possible = false;  // d (d+1) / 2 >= 2^g d
};

NpCertificate np_certificate(int g, const Integer& d, const BetaInterval& interval);

}  // namespace polbeta
