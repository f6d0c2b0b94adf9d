#include "polbeta/surfacetable.hpp"

#include <sstream>
#include <stdexcept>

#include "polbeta/syzygy.hpp"

namespace polbeta {

std::string to_string(SurfaceRule rule) {
  switch (rule) {
    case SurfaceRule::not_basepoint_free: return "not-basepoint-free";
    case SurfaceRule::perfect_square: return "perfect-square";
    case SurfaceRule::odd_m_square_plus_m: return "odd-m-square-plus-m";
    case SurfaceRule::odd_m_near_square: return "odd-m-near-square";
    case SurfaceRule::projective_normality_pinch: return "projective-normality-pinch";
    case SurfaceRule::generic_bounds: return "generic-bounds";
  }
  return "unknown";
}

BoundCandidate surface_construction_upper(const Integer& d) {
  const Integer m = integer_root(d, 2);
  BoundCandidate up{Side::upper, BoundValue::rational(make_rational(1, m)), false, Scope::general_member,
                    "upper:surface-construction", {}};
  if (d >= m * m + m + 1) {
    up.value = BoundValue::rational(make_rational(m + 1, d));
    up.strictly_below = make_rational(1, m);
  }
  return up;
}

SurfaceRuleBounds surface_rule_bounds(const Integer& d) {
  if (d < 1) throw std::invalid_argument("surface_beta: d must be >= 1");
  const Integer m = integer_root(d, 2);
  const bool m_odd = (m % 2) != 0;

  SurfaceRule rule = SurfaceRule::generic_bounds;
  std::vector<BoundCandidate> lowers;
  auto lower = [&](const Rational& q, const char* source) {
    lowers.push_back({Side::lower, BoundValue::rational(q), false, Scope::all_members, source, {}});
  };

  if (d <= 2) {
    rule = SurfaceRule::not_basepoint_free;
    for (auto& c : necessary_lower_candidates(2, d))
      if (c.source == "rule:not-basepoint-free") lowers.push_back(c);
  } else if (d == m * m) {
    rule = SurfaceRule::perfect_square;  // d^(-1/2) is already 1/m
  } else if (m_odd && d == m * m + m) {
    rule = SurfaceRule::odd_m_square_plus_m;
    lower(make_rational(1, m), "rule:odd-m-square-plus-m");
  } else if (m_odd && (d == (m + 1) * (m + 1) - 1 || d == (m + 1) * (m + 1) - 2)) {
    rule = SurfaceRule::odd_m_near_square;
    lower(make_rational(m + 1, d), "rule:odd-m-near-square");
  } else if (d == 5 || d == 6) {
    rule = SurfaceRule::projective_normality_pinch;
    for (auto& c : necessary_lower_candidates(2, d))
      if (c.source == "rule:not-projectively-normal") lowers.push_back(c);
  }

  return {rule, std::move(lowers)};
}

SurfaceRuleResult surface_beta(const Integer& d) {
  SurfaceRuleBounds rb = surface_rule_bounds(d);
  SurfaceRuleResult out;
  out.d = d;
  out.rule = rb.rule;
  out.interval = combine_interval(2, d, {surface_construction_upper(d)}, rb.lowers);
  return out;
}

std::vector<SurfaceRuleResult> generate_table(long d_max) {
  if (d_max < 1) throw std::invalid_argument("generate_table: d_max must be >= 1");
  std::vector<SurfaceRuleResult> rows;
  for (long d = 1; d <= d_max; ++d) rows.push_back(surface_beta(d));
  return rows;
}

std::string table_cell(const SurfaceRuleResult& row) {
  const std::string value = row.interval.upper.to_string();
  return row.interval.exact ? value : "≤" + value;
}

std::string render_table_markdown(const std::vector<SurfaceRuleResult>& rows) {
  std::ostringstream head, sep, body;
  head << "| d |";
  sep << "|---|";
  body << "| β(l) |";
  for (const auto& r : rows) {
    head << ' ' << r.d.get_str() << " |";
    sep << "---|";
    body << ' ' << table_cell(r) << " |";
  }
  return head.str() + "\n" + sep.str() + "\n" + body.str() + "\n";
}

std::string render_table_csv(const std::vector<SurfaceRuleResult>& rows) {
  std::ostringstream out;
  out << "d,beta,exact,lower,upper,rule\n";
  for (const auto& r : rows)
    out << r.d.get_str() << ',' << table_cell(r) << ',' << (r.interval.exact ? "true" : "false") << ','
        << r.interval.lower.to_string() << ',' << r.interval.upper.to_string() << ',' << to_string(r.rule) << '\n';
  return out.str();
}

}  // namespace polbeta
