#include <doctest.h>

#include "polbeta/constructor.hpp"
#include "polbeta/syzygy.hpp"
#include "support.hpp"

using namespace polbeta;
using namespace testing_support;

namespace {

BetaInterval upper_only(const Rational& u, bool strict = false) {
  BetaInterval iv;
  iv.lower = BoundValue::rational(make_rational(1, 100));
  iv.upper = BoundValue::rational(u);
  iv.upper_strict = strict;
  return iv;
}

}  // namespace

TEST_CASE("threshold sums") {
  CHECK(np_threshold(2, 0) == 7);
  CHECK(np_threshold(2, 1) == 13);
  CHECK(np_threshold(3, 0) == 15);
  CHECK(np_threshold(3, 1) == 40);
  CHECK(np_threshold(5, -1) == 6);
  CHECK_THROWS_AS(np_threshold(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(np_threshold(2, -2), std::invalid_argument);
  for (int g = 1; g <= 8; ++g) {
    CHECK(np_threshold(g, 0) == ipow(2, g + 1) - 1);
    for (int p = 0; p <= 4; ++p)
      CHECK(np_threshold(g, p) * (p + 1) == ipow(p + 2, g + 1) - 1);
  }
}

TEST_CASE("arithmetic property (N_p)") {
  CHECK(max_np_arithmetic(3, 40) == 1);
  CHECK(max_np_arithmetic(3, 39) == 0);
  CHECK(max_np_arithmetic(2, 7) == 0);
  CHECK(max_np_arithmetic(2, 6) == -1);
  CHECK_FALSE(max_np_arithmetic(2, 2).has_value());
}

TEST_CASE("property (N_p) from threshold bounds") {
  CHECK(np_from_beta(upper_only(make_rational(13, 40))) == 1);
  CHECK(np_from_beta(upper_only(make_rational(1, 2))) == -1);
  CHECK(np_from_beta(upper_only(make_rational(1, 2), true)) == 0);
  CHECK(np_from_beta(upper_only(make_rational(7, 15))) == 0);
  CHECK_FALSE(np_from_beta(upper_only(1)).has_value());
  CHECK(np_from_beta(upper_only(1, true)) == -1);
  CHECK(np_from_beta(upper_only(make_rational(1, 7))) == 4);

  BetaInterval root;
  root.upper = BoundValue::inverse_root(10, 2);  // between 1/4 and 1/3
  CHECK(np_from_beta(root) == 1);
}

TEST_CASE("property: np_from_beta is monotone in the upper bound") {
  auto gen = rng(41);
  for (int trial = 0; trial < 1000; ++trial) {
    Rational x = make_rational(uniform(gen, 1, 50), uniform(gen, 50, 400));
    Rational y = make_rational(uniform(gen, 1, 50), uniform(gen, 50, 400));
    if (x > y) std::swap(x, y);
    auto px = np_from_beta(upper_only(x)), py = np_from_beta(upper_only(y));
    REQUIRE(px.has_value());
    if (py) CHECK(*px >= *py);
    // brute force: largest t with x < 1/t
    long t = 1;
    while (x * (t + 1) < 1) ++t;
    CHECK(*px == t - 2);
  }
}

TEST_CASE("necessary lower bounds") {
  auto five = necessary_lower_bounds(2, 5);
  REQUIRE(five.size() == 1);
  CHECK(five[0].bound == make_rational(1, 2));
  CHECK(five[0].justification == "rule:not-projectively-normal");

  auto two = necessary_lower_bounds(2, 2);
  REQUIRE(!two.empty());
  CHECK(two[0].bound == 1);
  CHECK(two[0].justification == "rule:not-basepoint-free");

  auto three = necessary_lower_bounds(3, 3);
  REQUIRE(!three.empty());
  CHECK(three[0].bound == 1);

  CHECK(necessary_lower_bounds(2, 7).empty());
  CHECK(necessary_lower_bounds(3, 15).empty());
  CHECK(necessary_lower_bounds(3, 14).size() == 1);
  for (const auto& c : necessary_lower_candidates(2, 6)) CHECK(c.scope == Scope::general_member);
}

TEST_CASE("N_p certificates") {
  BetaInterval iv = upper_only(make_rational(7, 15));
  NpCertificate np = np_certificate(3, 15, iv);
  CHECK(np.p_from_beta == 0);
  CHECK(np.p_arithmetic == 0);
  CHECK(np.guaranteed == 0);
  CHECK(np.source == NpSource::beta_bound);
  CHECK(np.basepoint_free_possible);
  CHECK(np.projectively_normal_possible);

  NpCertificate none = np_certificate(3, 3, upper_only(1));
  CHECK_FALSE(none.guaranteed.has_value());
  CHECK(none.source == NpSource::none);
  CHECK_FALSE(none.basepoint_free_possible);
}

TEST_CASE("property: constructions are at least as strong as the arithmetic thresholds") {
  for (int g = 1; g <= 4; ++g)
    for (long d = 1; d <= 100; ++d) {
      GeneralBeta gb = general_beta(g, d, std::nullopt);  // throws if a necessary bound contradicts a construction
      CHECK(gb.interval.lower <= gb.interval.upper);
      auto arith = max_np_arithmetic(g, d);
      auto beta = np_from_beta(gb.interval);
      if (arith && beta) CHECK(*arith <= *beta);
    }
}
