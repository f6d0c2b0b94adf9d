#pragma once

// Products E_1 x ... x E_g of elliptic curves linked by isogenies
// f_i : E_i -> E_g of degree k_i, and divisor classes in the basis
// {F_1, ..., F_g, Gamma}.
//
// Factor i is C / (Z + (tau / k_i) Z) with tau = sqrt(-1) and k_g = 1, so the
// complex structure is rational. Lattice coordinates are ordered factor by
// factor, (1, tau / k_i) for each factor.

#include <vector>

#include "polbeta/exactmath.hpp"

namespace polbeta {

class ConstructionSpace {
 public:
  /// k holds k_1 .. k_{g-1}; every entry must be >= 1.
  ConstructionSpace(int g, std::vector<long> k);

  int g() const { return g_; }
  const std::vector<long>& k() const { return k_; }
  /// k_i for a 0-based factor index, with the last factor reporting 1.
  long degree(int factor) const;
  /// N_i = k_{i+1} + ... + k_g for 1 <= i <= g (N_g = 0).
  long tail_sum(int i) const;

  friend bool operator==(const ConstructionSpace&, const ConstructionSpace&) = default;

 private:
  int g_;
  std::vector<long> k_;
};

/// a_1 F_1 + ... + a_g F_g + c Gamma with nonnegative coefficients.
struct DivisorClass {
  ConstructionSpace space;
  std::vector<long> a;
  long c = 0;

  /// Validates coefficient count, signs, and that the class is nonzero.
  static DivisorClass make(ConstructionSpace space, std::vector<long> a, long c);
  /// a F_1 + F_2 + ... + F_{g-1} + b F_g + Gamma (g >= 2).
  static DivisorClass paper_shaped(ConstructionSpace space, long a, long b);
  /// F_1 + ... + F_g.
  static DivisorClass principal(ConstructionSpace space);

  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
};

struct LatticeData {
  std::vector<long> tau_denominators;  // factor i has basis (1, tau / tau_denominators[i])
  std::vector<IntMatrix> f_matrices;   // lattice matrix of f_i : E_i -> E_g, i < g-1
  RatMatrix J;                         // complex structure, block diagonal
};

LatticeData build_lattice_data(const ConstructionSpace& space);

/// First Chern class as an alternating form on the period lattice.
struct AltForm {
  ConstructionSpace space;
  std::vector<int> factors;  // original 0-based factor index of each coordinate pair
  IntMatrix E;
  RatMatrix J;

  /// Matrix of the pairing (x, y) -> E(x, J y); symmetric for classes of divisors.
  RatMatrix hermitian() const;
};

struct PolarizationType {
  std::vector<Integer> d;
  Integer product() const;
  /// True for (1, ..., 1, value).
  bool is_one_one(const Integer& value) const;
  friend bool operator==(const PolarizationType&, const PolarizationType&) = default;
};

struct FiniteGroupShape {
  std::vector<Integer> divisors;  // each divides the next
  Integer order() const;
  friend bool operator==(const FiniteGroupShape&, const FiniteGroupShape&) = default;
};

/// Throws OracleMismatch if E(x, J y) fails to be symmetric.
AltForm alt_form(const DivisorClass& cls);

/// chi(l) = (l^g) / g! from the intersection table of {F_i, Gamma}:
/// F_i^2 = Gamma^2 = 0, (F_1 ... F_g) = 1, and the product of Gamma with all
/// F_j except F_i equals k_i.
Integer chi_multilinear(const DivisorClass& cls);

/// chi of the restriction to the coordinate subtorus on the kept factors,
/// computed as (prod_{j dropped} F_j . l^{|keep|}) / |keep|! with the same table.
Integer chi_multilinear(const DivisorClass& cls, const std::vector<int>& keep);

/// Signed Pfaffian of E.
Integer chi_pfaffian(const AltForm& form);

/// Every second entry of the Smith diagonal of E. Throws std::domain_error when degenerate.
PolarizationType polarization_type(const AltForm& form);

/// Cokernel of E : lattice -> dual lattice. By default only divisors > 1 are
/// listed; `doubled` returns the full Smith diagonal.
FiniteGroupShape k_group(const AltForm& form, bool doubled = false);

/// Positive definiteness of E(x, J y).
bool is_ample(const AltForm& form);

/// Principal restriction to the kept factors (0-based original indices, all present in form.factors).
AltForm restrict(const AltForm& form, const std::vector<int>& keep);

}  // namespace polbeta
