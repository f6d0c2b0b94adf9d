#pragma once

// Threshold values and bounds for the general abelian surface of type (1, d).

#include <string>
#include <vector>

#include "polbeta/threshold.hpp"

namespace polbeta {

enum class SurfaceRule {
  not_basepoint_free,          // d <= 2
  perfect_square,              // d = m^2
  odd_m_square_plus_m,         // d = m^2 + m, m odd
  odd_m_near_square,           // d = (m+1)^2 - 1 or (m+1)^2 - 2, m odd
  projective_normality_pinch,  // d = 5, 6
  generic_bounds,
};

std::string to_string(SurfaceRule rule);

struct SurfaceRuleResult {
  Integer d;
  BetaInterval interval;
  SurfaceRule rule = SurfaceRule::generic_bounds;
};

/// Upper bound from the surface constructions with m = floor(sqrt d):
/// (m+1)/d, strictly below 1/m, once d >= m^2 + m + 1; otherwise 1/m.
BoundCandidate surface_construction_upper(const Integer& d);

/// The rule that fires for d and the lower bounds it contributes.
struct SurfaceRuleBounds {
  SurfaceRule rule = SurfaceRule::generic_bounds;
  std::vector<BoundCandidate> lowers;
};
SurfaceRuleBounds surface_rule_bounds(const Integer& d);

/// Exactly one rule fires, in the priority order of SurfaceRule.
SurfaceRuleResult surface_beta(const Integer& d);

std::vector<SurfaceRuleResult> generate_table(long d_max);

/// "2/3" for exact values, "≤3/7" for upper bounds.
std::string table_cell(const SurfaceRuleResult& row);

std::string render_table_markdown(const std::vector<SurfaceRuleResult>& rows);
std::string render_table_csv(const std::vector<SurfaceRuleResult>& rows);

}  // namespace polbeta
