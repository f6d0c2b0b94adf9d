#include "polbeta/torusmodel.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "polbeta/errors.hpp"

namespace polbeta {

ConstructionSpace::ConstructionSpace(int g, std::vector<long> k) : g_(g), k_(std::move(k)) {
  if (g_ < 1) throw std::invalid_argument("construction space: g must be >= 1");
  if (static_cast<int>(k_.size()) != g_ - 1)
    throw std::invalid_argument("construction space: expected " + std::to_string(g_ - 1) + " isogeny degrees");
  for (long ki : k_)
    if (ki < 1) throw std::invalid_argument("construction space: isogeny degrees must be >= 1");
}

long ConstructionSpace::degree(int factor) const {
  if (factor < 0 || factor >= g_) throw std::out_of_range("construction space: factor index");
  return factor == g_ - 1 ? 1 : k_[factor];
}

long ConstructionSpace::tail_sum(int i) const {
  if (i < 1 || i > g_) throw std::out_of_range("construction space: N_i index");
  long n = 0;
  for (int j = i; j < g_; ++j) n += degree(j);  // 0-based j covers k_{i+1} .. k_g
  return n;
}

DivisorClass DivisorClass::make(ConstructionSpace space, std::vector<long> a, long c) {
  if (static_cast<int>(a.size()) != space.g())
    throw std::invalid_argument("divisor class: expected " + std::to_string(space.g()) + " F-coefficients");
  if (c < 0 || std::any_of(a.begin(), a.end(), [](long x) { return x < 0; }))
    throw std::invalid_argument("divisor class: coefficients must be nonnegative");
  if (c == 0 && std::all_of(a.begin(), a.end(), [](long x) { return x == 0; }))
    throw std::invalid_argument("divisor class: zero class");
  return DivisorClass{std::move(space), std::move(a), c};
}

DivisorClass DivisorClass::paper_shaped(ConstructionSpace space, long a, long b) {
  const int g = space.g();
  if (g < 2) throw std::invalid_argument("divisor class: the (a, b) family needs g >= 2");
  if (a < 0 || b < 0 || (a == 0 && b == 0)) throw std::invalid_argument("divisor class: need a, b >= 0 and (a, b) != (0, 0)");
  std::vector<long> coeffs(g, 1);
  coeffs.front() = a;
  coeffs.back() = b;
  return make(std::move(space), std::move(coeffs), 1);
}

DivisorClass DivisorClass::principal(ConstructionSpace space) {
  std::vector<long> ones(space.g(), 1);
  return make(std::move(space), std::move(ones), 0);
}

LatticeData build_lattice_data(const ConstructionSpace& space) {
  const int g = space.g();
  LatticeData data;
  data.J = RatMatrix(2 * g, 2 * g);
  for (int i = 0; i < g; ++i) {
    const long k = space.degree(i);
    data.tau_denominators.push_back(k);
    // i * (x + y tau/k) = (-y/k) + (k x) tau/k
    data.J(2 * i, 2 * i + 1) = make_rational(-1, k);
    data.J(2 * i + 1, 2 * i) = k;
    if (i < g - 1) data.f_matrices.push_back(IntMatrix::diagonal({Integer(k), Integer(1)}));
  }
  return data;
}

namespace {

const IntMatrix& point_class() {
  static const IntMatrix e{{0, 1}, {-1, 0}};
  return e;
}

// Pullback of the point class of E_g along a lattice map given by a 2 x 2g matrix.
IntMatrix pullback(const IntMatrix& map) { return map.transpose() * point_class() * map; }

}  // namespace

RatMatrix AltForm::hermitian() const { return to_rational(E) * J; }

AltForm alt_form(const DivisorClass& cls) {
  const ConstructionSpace& space = cls.space;
  const int g = space.g();
  const std::size_t n = 2 * static_cast<std::size_t>(g);
  LatticeData lattice = build_lattice_data(space);

  IntMatrix E(n, n);
  for (int i = 0; i < g; ++i) {
    if (cls.a[i] == 0) continue;
    IntMatrix proj(2, n);
    proj(0, 2 * i) = 1;
    proj(1, 2 * i + 1) = 1;
    E += pullback(proj) * Integer(cls.a[i]);
  }
  if (cls.c != 0) {
    // Gamma is the kernel of s(p) = p_g - sum_i f_i(p_i).
    IntMatrix s(2, n);
    for (int i = 0; i < g - 1; ++i) {
      const IntMatrix& f = lattice.f_matrices[i];
      for (int r = 0; r < 2; ++r)
        for (int col = 0; col < 2; ++col) s(r, 2 * i + col) = -f(r, col);
    }
    s(0, n - 2) = 1;
    s(1, n - 1) = 1;
    E += pullback(s) * Integer(cls.c);
  }

  std::vector<int> factors(g);
  for (int i = 0; i < g; ++i) factors[i] = i;
  AltForm form{space, std::move(factors), std::move(E), std::move(lattice.J)};
  if (!is_alternating(form.E)) throw OracleMismatch("alt_form: E is not alternating");
  if (!is_symmetric(form.hermitian())) throw OracleMismatch("alt_form: E(x, Jy) is not symmetric");
  return form;
}

namespace {

// Divisors are indexed 0..g-1 for F_1..F_g and g for Gamma. `members` lists g
// distinct divisors.
Integer intersection(const ConstructionSpace& space, const std::vector<int>& members) {
  const int g = space.g();
  if (std::find(members.begin(), members.end(), g) == members.end()) return 1;
  // Gamma together with every F_j except one F_i.
  for (int i = 0; i < g; ++i)
    if (std::find(members.begin(), members.end(), i) == members.end()) return space.degree(i);
  throw std::logic_error("intersection: malformed divisor set");
}

}  // namespace

Integer chi_multilinear(const DivisorClass& cls, const std::vector<int>& keep) {
  const int g = cls.space.g();
  std::vector<bool> kept(g, false);
  for (int f : keep) {
    if (f < 0 || f >= g) throw std::out_of_range("chi_multilinear: factor index");
    kept[f] = true;
  }
  std::vector<int> dropped;
  std::vector<int> candidates;  // divisors that can still appear: kept F_j and Gamma
  for (int i = 0; i < g; ++i) (kept[i] ? candidates : dropped).push_back(i);
  candidates.push_back(g);
  const int dim = g - static_cast<int>(dropped.size());
  if (dim == 0) throw std::invalid_argument("chi_multilinear: empty factor set");

  auto coefficient = [&](int divisor) -> long { return divisor == g ? cls.c : cls.a[divisor]; };

  // (sum x_D D)^dim / dim! against prod_{dropped} F_j: squares vanish, so only
  // sets of dim distinct candidates contribute, each with weight prod x_D.
  Integer total = 0;
  const int count = static_cast<int>(candidates.size());
  for (unsigned mask = 0; mask < (1u << count); ++mask) {
    if (__builtin_popcount(mask) != dim) continue;
    Integer weight = 1;
    std::vector<int> members = dropped;
    for (int j = 0; j < count; ++j)
      if (mask & (1u << j)) {
        weight *= coefficient(candidates[j]);
        members.push_back(candidates[j]);
      }
    if (weight == 0) continue;
    total += weight * intersection(cls.space, members);
  }
  return total;
}

Integer chi_multilinear(const DivisorClass& cls) {
  std::vector<int> all(cls.space.g());
  for (int i = 0; i < cls.space.g(); ++i) all[i] = i;
  return chi_multilinear(cls, all);
}

Integer chi_pfaffian(const AltForm& form) { return pfaffian(form.E); }

Integer PolarizationType::product() const {
  Integer p = 1;
  for (const auto& x : d) p *= x;
  return p;
}

bool PolarizationType::is_one_one(const Integer& value) const {
  if (d.empty() || d.back() != value) return false;
  return std::all_of(d.begin(), d.end() - 1, [](const Integer& x) { return x == 1; });
}

Integer FiniteGroupShape::order() const {
  Integer p = 1;
  for (const auto& x : divisors) p *= x;
  return p;
}

PolarizationType polarization_type(const AltForm& form) {
  std::vector<Integer> diag = smith_normal_form(form.E).diagonal();
  PolarizationType type;
  for (std::size_t i = 0; i < diag.size(); i += 2) {
    if (diag[i] == 0) throw std::domain_error("polarization_type: degenerate form");
    type.d.push_back(diag[i]);
  }
  return type;
}

FiniteGroupShape k_group(const AltForm& form, bool doubled) {
  std::vector<Integer> diag = smith_normal_form(form.E).diagonal();
  FiniteGroupShape shape;
  for (const auto& x : diag) {
    if (x == 0) throw std::domain_error("k_group: degenerate form");
    if (doubled || x > 1) shape.divisors.push_back(x);
  }
  return shape;
}

bool is_ample(const AltForm& form) { return is_positive_definite(form.hermitian()); }

AltForm restrict(const AltForm& form, const std::vector<int>& keep) {
  if (keep.empty()) throw std::invalid_argument("restrict: empty factor subset");
  std::vector<int> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("restrict: repeated factor index");
  std::vector<std::size_t> idx;
  for (int f : sorted) {
    auto it = std::find(form.factors.begin(), form.factors.end(), f);
    if (it == form.factors.end()) throw std::invalid_argument("restrict: factor " + std::to_string(f) + " not present");
    const std::size_t pos = static_cast<std::size_t>(it - form.factors.begin());
    idx.push_back(2 * pos);
    idx.push_back(2 * pos + 1);
  }
  return AltForm{form.space, sorted, form.E.principal(idx), form.J.principal(idx)};
}

}  // namespace polbeta
