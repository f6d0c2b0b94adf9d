#include <doctest.h>

#include "polbeta/errors.hpp"
#include "polbeta/torusmodel.hpp"
#include "support.hpp"

using namespace polbeta;
using namespace testing_support;

namespace {

const DivisorClass& example_40() {
  static const DivisorClass cls = DivisorClass::paper_shaped(ConstructionSpace(3, {9, 3}), 1, 3);
  return cls;
}

DivisorClass random_class(std::mt19937_64& gen, int max_g, long max_a, long max_c, long max_k) {
  for (;;) {
    const int g = static_cast<int>(uniform(gen, 1, max_g));
    std::vector<long> k(g - 1), a(g);
    for (auto& x : k) x = uniform(gen, 1, max_k);
    for (auto& x : a) x = uniform(gen, 0, max_a);
    const long c = uniform(gen, 0, max_c);
    if (c == 0 && std::all_of(a.begin(), a.end(), [](long x) { return x == 0; })) continue;
    return DivisorClass::make(ConstructionSpace(g, k), a, c);
  }
}

}  // namespace

TEST_CASE("construction space validation and tail sums") {
  CHECK_THROWS_AS(ConstructionSpace(0, {}), std::invalid_argument);
  CHECK_THROWS_AS(ConstructionSpace(3, {1}), std::invalid_argument);
  CHECK_THROWS_AS(ConstructionSpace(2, {0}), std::invalid_argument);
  ConstructionSpace s(3, {9, 3});
  CHECK(s.degree(0) == 9);
  CHECK(s.degree(2) == 1);
  CHECK(s.tail_sum(1) == 4);
  CHECK(s.tail_sum(2) == 1);
  CHECK(s.tail_sum(3) == 0);
  CHECK_THROWS_AS(DivisorClass::make(s, {0, 0, 0}, 0), std::invalid_argument);
  CHECK_THROWS_AS(DivisorClass::make(s, {1, -1, 0}, 1), std::invalid_argument);
  CHECK_THROWS_AS(DivisorClass::make(s, {1, 1}, 1), std::invalid_argument);
}

TEST_CASE("lattice data") {
  LatticeData two = build_lattice_data(ConstructionSpace(2, {3}));
  REQUIRE(two.f_matrices.size() == 1);
  CHECK(two.f_matrices[0] == IntMatrix::diagonal({3, 1}));
  CHECK(determinant(two.f_matrices[0]) == 3);

  LatticeData one = build_lattice_data(ConstructionSpace(1, {}));
  CHECK(one.f_matrices.empty());
  CHECK(one.J == RatMatrix{{0, -1}, {1, 0}});

  LatticeData three = build_lattice_data(ConstructionSpace(3, {9, 3}));
  CHECK(three.J(0, 1) == make_rational(-1, 9));
  CHECK(three.J(1, 0) == 9);
  CHECK(three.J(2, 3) == make_rational(-1, 3));
  CHECK(three.J(3, 2) == 3);
  CHECK(three.J(4, 5) == -1);
  CHECK(three.J(5, 4) == 1);
  CHECK(three.J * three.J == RatMatrix::identity(6) * Rational(-1));
}

TEST_CASE("alternating forms") {
  AltForm principal = alt_form(DivisorClass::principal(ConstructionSpace(3, {2, 5})));
  IntMatrix expected(6, 6);
  for (int i = 0; i < 3; ++i) {
    expected(2 * i, 2 * i + 1) = 1;
    expected(2 * i + 1, 2 * i) = -1;
  }
  CHECK(principal.E == expected);

  CHECK(chi_pfaffian(alt_form(DivisorClass::make(ConstructionSpace(2, {2}), {2, 1}, 1))) == 6);
  CHECK(chi_pfaffian(alt_form(example_40())) == 40);
}

TEST_CASE("chi from the intersection table") {
  CHECK(chi_multilinear(DivisorClass::principal(ConstructionSpace(4, {2, 3, 4}))) == 1);
  CHECK(chi_multilinear(example_40()) == 40);
  CHECK(chi_multilinear(DivisorClass::make(ConstructionSpace(2, {2}), {2, 1}, 1)) == 6);
  CHECK(chi_pfaffian(alt_form(DivisorClass::principal(ConstructionSpace(2, {7})))) == 1);
  CHECK(chi_pfaffian(alt_form(DivisorClass::make(ConstructionSpace(2, {3}), {0, 1}, 1))) == 3);
  CHECK(chi_multilinear(example_40(), {1, 2}) == 13);
  CHECK(chi_multilinear(example_40(), {2}) == 4);
  CHECK_THROWS_AS(chi_multilinear(example_40(), {}), std::invalid_argument);
}

TEST_CASE("polarization types and K(l)") {
  CHECK(polarization_type(alt_form(DivisorClass::principal(ConstructionSpace(3, {4, 4})))).d ==
        std::vector<Integer>{1, 1, 1});
  CHECK(polarization_type(alt_form(example_40())).d == std::vector<Integer>{1, 1, 40});
  DivisorClass small = DivisorClass::make(ConstructionSpace(2, {3}), {0, 1}, 1);
  CHECK(polarization_type(alt_form(small)).d == std::vector<Integer>{1, 3});

  CHECK(k_group(alt_form(DivisorClass::principal(ConstructionSpace(2, {5})))).divisors.empty());
  FiniteGroupShape k40 = k_group(alt_form(example_40()));
  CHECK(k40.divisors == std::vector<Integer>{40, 40});
  CHECK(k40.order() == 1600);
  CHECK(k_group(alt_form(small)).divisors == std::vector<Integer>{3, 3});
  CHECK(k_group(alt_form(small), true).divisors == std::vector<Integer>{1, 1, 3, 3});

  AltForm gamma = alt_form(DivisorClass::make(ConstructionSpace(2, {2}), {0, 0}, 1));
  CHECK(chi_pfaffian(gamma) == 0);
  CHECK_THROWS_AS(polarization_type(gamma), std::domain_error);
  CHECK_THROWS_AS(k_group(gamma), std::domain_error);
}

TEST_CASE("ampleness") {
  CHECK(is_ample(alt_form(DivisorClass::principal(ConstructionSpace(3, {2, 2})))));
  CHECK_FALSE(is_ample(alt_form(DivisorClass::make(ConstructionSpace(3, {2, 2}), {0, 0, 0}, 1))));
  CHECK_FALSE(is_ample(alt_form(DivisorClass::make(ConstructionSpace(2, {1}), {1, 0}, 0))));
  CHECK(is_ample(alt_form(example_40())));
}

TEST_CASE("restrictions") {
  AltForm form = alt_form(example_40());
  CHECK(chi_pfaffian(restrict(form, {1, 2})) == 13);
  CHECK(chi_pfaffian(restrict(form, {2})) == 4);
  AltForm all = restrict(form, {0, 1, 2});
  CHECK(all.E == form.E);
  CHECK(all.J == form.J);
  CHECK_THROWS_AS(restrict(form, {}), std::invalid_argument);
  CHECK_THROWS_AS(restrict(form, {1, 1}), std::invalid_argument);
  AltForm sub = restrict(form, {1, 2});
  CHECK_THROWS_AS(restrict(sub, {0}), std::invalid_argument);
  CHECK(chi_pfaffian(restrict(sub, {2})) == 4);
}

TEST_CASE("property: the two chi oracles agree with the closed form") {
  auto gen = rng(21);
  for (int trial = 0; trial < 1500; ++trial) {
    DivisorClass cls = random_class(gen, 4, 4, 2, 6);
    AltForm form = alt_form(cls);
    const Integer pf = chi_pfaffian(form);
    CHECK(chi_multilinear(cls) == pf);
    CHECK(pf == closed_form_chi(cls.a, cls.c, cls.space.k()));
    CHECK(pf >= 0);
    if (pf > 0) {
      CHECK(polarization_type(form).product() == pf);
      CHECK(k_group(form).order() == pf * pf);
    }
    auto diag = smith_normal_form(form.E).diagonal();
    for (std::size_t i = 0; i < diag.size(); i += 2) CHECK(diag[i] == diag[i + 1]);
  }
}

TEST_CASE("property: restrictions match the restricted intersection numbers") {
  auto gen = rng(22);
  for (int trial = 0; trial < 300; ++trial) {
    DivisorClass cls = random_class(gen, 4, 3, 2, 5);
    const int g = cls.space.g();
    AltForm form = alt_form(cls);
    const unsigned mask = static_cast<unsigned>(uniform(gen, 1, (1 << g) - 1));
    std::vector<int> keep;
    for (int i = 0; i < g; ++i)
      if (mask & (1u << i)) keep.push_back(i);
    CHECK(chi_pfaffian(restrict(form, keep)) == chi_multilinear(cls, keep));
  }
}

TEST_CASE("property: complex structure squares to -1 and E(x, Jy) is symmetric") {
  auto gen = rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    DivisorClass cls = random_class(gen, 4, 4, 2, 9);
    AltForm form = alt_form(cls);
    const std::size_t n = form.E.rows();
    CHECK(form.J * form.J == RatMatrix::identity(n) * Rational(-1));
    CHECK(is_symmetric(form.hermitian()));
  }
}

TEST_CASE("property: surface classes (a, b; 1) have type (1, a + ab + bk) and are ample") {
  for (long a = 0; a <= 5; ++a)
    for (long b = 0; b <= 5; ++b)
      for (long k = 1; k <= 7; ++k) {
        if (a == 0 && b == 0) continue;
        AltForm form = alt_form(DivisorClass::paper_shaped(ConstructionSpace(2, {k}), a, b));
        const Integer d = a + a * b + b * k;
        CHECK(polarization_type(form).d == std::vector<Integer>{1, d});
        CHECK(is_ample(form));
      }
}

TEST_CASE("property: restrictions of (a,1,...,1,b;1) classes have chi 1 + b N_i") {
  auto gen = rng(24);
  for (int trial = 0; trial < 200; ++trial) {
    const int g = static_cast<int>(uniform(gen, 2, 5));
    std::vector<long> k(g - 1);
    for (auto& x : k) x = uniform(gen, 1, 6);
    const long a = uniform(gen, 0, 4), b = uniform(gen, 1, 4);
    ConstructionSpace space(g, k);
    AltForm form = alt_form(DivisorClass::paper_shaped(space, a, b));
    for (int i = 1; i < g; ++i) {
      std::vector<int> keep;
      for (int j = i; j < g; ++j) keep.push_back(j);
      CHECK(chi_pfaffian(restrict(form, keep)) == 1 + b * space.tail_sum(i));
    }
  }
}
