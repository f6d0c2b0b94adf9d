#pragma once

// Certified bounds for the basepoint-freeness threshold. Nothing here computes
// the threshold itself; every function returns a bound together with enough
// bookkeeping (strictness, scope, source) to audit it.

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polbeta/exactmath.hpp"
#include "polbeta/torusmodel.hpp"

namespace polbeta {

/// A positive number of the form base^(1/degree) with rational base. Plain
/// rationals have degree 1; chi^(-1/g) has base 1/chi and degree g unless chi
/// is a perfect g-th power, in which case it is stored as the rational 1/root.
class BoundValue {
 public:
  static BoundValue rational(const Rational& q);
  static BoundValue inverse_root(const Integer& radicand, unsigned degree);

  bool is_rational() const { return degree_ == 1; }
  const Rational& base() const { return base_; }
  unsigned degree() const { return degree_; }
  /// Only valid when is_rational().
  const Rational& as_rational() const;

  /// "p/q" for rationals, "n^(-1/g)" otherwise.
  std::string to_string() const;

  /// Decided by integer power comparison.
  friend std::strong_ordering operator<=>(const BoundValue& x, const BoundValue& y);
  friend bool operator==(const BoundValue& x, const BoundValue& y) { return (x <=> y) == 0; }

 private:
  BoundValue(Rational base, unsigned degree) : base_(std::move(base)), degree_(degree) {}
  Rational base_;
  unsigned degree_;
};

enum class Scope { specific_construction, general_member, all_members };
std::string to_string(Scope s);

struct BetaInterval {
  BoundValue lower = BoundValue::rational(0);
  bool lower_strict = false;
  std::string lower_source;
  BoundValue upper = BoundValue::rational(1);
  bool upper_strict = false;
  std::string upper_source;
  bool exact = false;
  Scope scope = Scope::all_members;
  /// Set when the upper bound is known to lie strictly below this value.
  std::optional<Rational> strictly_below;
};

enum class Side { lower, upper };

struct BoundCandidate {
  Side side = Side::upper;
  BoundValue value = BoundValue::rational(1);
  bool strict = false;
  Scope scope = Scope::all_members;
  std::string source;
  std::optional<Rational> strictly_below;
};

/// Flag upper bound: restricting along X = X_0 > X_1 > ... > X_{g-1} where X_i
/// drops the first i factors of `order`.
struct FlagBound {
  Rational bound;
  std::vector<int> order;     // 0-based factor indices; the last one is the surviving curve
  std::vector<Integer> chis;  // chis[i] = chi(l | X_i), i = 0 .. g-1
};

/// A restriction along a flag failed to be ample, so the flag certifies nothing.
class NonAmpleRestriction : public std::runtime_error {
 public:
  NonAmpleRestriction(int level, const std::string& what) : std::runtime_error(what), level_(level) {}
  int level() const { return level_; }

 private:
  int level_;
};

/// chi^(-1/g): a lower bound valid for every polarization with that chi.
BoundValue beta_lower_chi(const Integer& chi, unsigned g);

FlagBound flag_upper_bound(const DivisorClass& cls, const std::vector<int>& order);

/// Minimum over all g! coordinate flags, ties to the lexicographically
/// smallest order. Orders whose flag is not ample are skipped. Requires g <= 8.
FlagBound best_flag_bound(const DivisorClass& cls);

/// Closed form for a F_1 + F_2 + ... + b F_g + Gamma with the identity flag.
Rational prop52_bound(const ConstructionSpace& space, long a, long b);

/// max over coordinate curves of 1 / deg(l | curve).
Rational flag_lower_bound(const DivisorClass& cls);

/// Interval for the general member of type (1, ..., 1, d) in dimension g.
/// Construction bounds are promoted to general-member scope; the bound
/// d^(-1/g) and the trivial bound 1 are always included. Throws
/// OracleMismatch if the chosen lower bound exceeds the chosen upper bound.
BetaInterval combine_interval(int g, const Integer& d, const std::vector<BoundCandidate>& construction_bounds,
                              const std::vector<BoundCandidate>& rule_bounds);

/// Interval for one specific construction: lower from chi^(-1/g) and the
/// coordinate curves, upper from the best flag (capped by the trivial bound 1).
BetaInterval construction_interval(const DivisorClass& cls);

}  // namespace polbeta
