#include <doctest.h>

#include "polbeta/constructor.hpp"
#include "polbeta/surfacetable.hpp"

using namespace polbeta;

namespace {

BoundValue q(long p, long r) { return BoundValue::rational(make_rational(p, r)); }

}  // namespace

TEST_CASE("surface values") {
  SurfaceRuleResult twelve = surface_beta(12);
  CHECK(twelve.interval.exact);
  CHECK(twelve.interval.upper == q(1, 3));
  CHECK(twelve.rule == SurfaceRule::odd_m_square_plus_m);

  SurfaceRuleResult fourteen = surface_beta(14);
  CHECK(fourteen.interval.exact);
  CHECK(fourteen.interval.upper == q(2, 7));
  CHECK(fourteen.rule == SurfaceRule::odd_m_near_square);

  SurfaceRuleResult seven = surface_beta(7);
  CHECK_FALSE(seven.interval.exact);
  CHECK(seven.interval.lower == BoundValue::inverse_root(7, 2));
  CHECK(seven.interval.upper == q(3, 7));
  CHECK(seven.interval.strictly_below == make_rational(1, 2));
  CHECK(seven.rule == SurfaceRule::generic_bounds);

  CHECK(surface_beta(3).interval.upper == q(2, 3));
  CHECK(surface_beta(3).interval.exact);
  CHECK(surface_beta(16).rule == SurfaceRule::perfect_square);
  CHECK(surface_beta(2).rule == SurfaceRule::not_basepoint_free);
  CHECK(surface_beta(6).rule == SurfaceRule::projective_normality_pinch);
  CHECK(surface_beta(6).interval.upper == q(1, 2));
  CHECK(surface_beta(6).interval.exact);
  CHECK_THROWS_AS(surface_beta(0), std::invalid_argument);
}

TEST_CASE("table cells and rendering") {
  auto rows = generate_table(16);
  REQUIRE(rows.size() == 16);
  const std::vector<std::string> expected{"1",   "1",    "2/3",  "1/2", "1/2",    "1/2", "≤3/7", "≤3/8",
                                          "1/3", "≤1/3", "≤1/3", "1/3", "≤4/13", "2/7", "4/15", "1/4"};
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(table_cell(rows[i]) == expected[i]);

  std::string md = render_table_markdown(generate_table(3));
  CHECK(md == "| d | 1 | 2 | 3 |\n|---|---|---|---|\n| β(l) | 1 | 1 | 2/3 |\n");
  std::string csv = render_table_csv(generate_table(2));
  CHECK(csv ==
        "d,beta,exact,lower,upper,rule\n"
        "1,1,true,1,1,not-basepoint-free\n"
        "2,1,true,1,1,not-basepoint-free\n");
  CHECK_THROWS_AS(generate_table(0), std::invalid_argument);
}

TEST_CASE("property: exact rows have coinciding bounds, generic rows do not") {
  for (long d = 1; d <= 400; ++d) {
    SurfaceRuleResult r = surface_beta(d);
    CHECK(r.interval.lower <= r.interval.upper);
    CHECK(r.interval.exact == (r.interval.lower == r.interval.upper));
    if (r.rule != SurfaceRule::generic_bounds) CHECK(r.interval.exact);
    CHECK(r.interval.upper <= q(1, 1));
  }
}

TEST_CASE("property: the odd-m rules never fire for even m") {
  for (long d = 1; d <= 2000; ++d) {
    SurfaceRuleResult r = surface_beta(d);
    const long m = integer_root(d, 2).get_si();
    if (r.rule == SurfaceRule::odd_m_square_plus_m || r.rule == SurfaceRule::odd_m_near_square) {
      CHECK(m % 2 == 1);
    }
    if (m % 2 == 0 && d > 6) {
      CHECK(r.rule != SurfaceRule::odd_m_square_plus_m);
      CHECK(r.rule != SurfaceRule::odd_m_near_square);
    }
  }
}

TEST_CASE("property: table upper bounds are realized by certified constructions") {
  for (long d = 1; d <= 30; ++d) {
    SurfaceRuleResult r = surface_beta(d);
    GeneralBeta gb = general_beta(2, d, SearchBox::defaults(2, d));
    REQUIRE(!gb.witnesses.empty());
    Rational best = gb.witnesses.front().flag.bound;
    for (const auto& w : gb.witnesses) best = std::min(best, w.flag.bound);
    CHECK(BoundValue::rational(best) <= r.interval.upper);
    CHECK(gb.interval.scope != Scope::specific_construction);
    CHECK(gb.interval.upper == r.interval.upper);
    CHECK(gb.interval.exact == r.interval.exact);
  }
}
