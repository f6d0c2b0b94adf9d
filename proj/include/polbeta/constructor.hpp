#pragma once

// Explicit polarizations of type (1, ..., 1, d) on products of elliptic
// curves: the two (m, r, s) recipes, certification against the lattice
// oracles, and a box search over the isogeny degrees and coefficients.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "polbeta/syzygy.hpp"
#include "polbeta/threshold.hpp"
#include "polbeta/torusmodel.hpp"

namespace polbeta {

enum class RecipeCase { cor56_case1, cor56_case2, explicit_class };
std::string to_string(RecipeCase c);

struct ConstructionParams {
  RecipeCase kind = RecipeCase::explicit_class;
  int g = 1;
  std::vector<long> k;       // k_1 .. k_{g-1}
  std::vector<long> coeffs;  // a_1 .. a_g
  long c = 1;
  std::optional<long> m, r, s;

  long a() const { return coeffs.front(); }
  long b() const { return coeffs.back(); }
  DivisorClass divisor_class() const;

  static ConstructionParams from_class(const DivisorClass& cls);
  /// a F_1 + F_2 + ... + F_{g-1} + b F_g + Gamma on the given degrees.
  static ConstructionParams paper_shaped(std::vector<long> k, long a, long b);
};

/// Returned instead of parameters when m = 1: beta <= 1 holds for every
/// polarization, no construction needed.
struct TrivialBoundMarker {};

/// d = (m-1) s + r with 1 <= r <= m-1, m = floor(d^(1/g)); class l_{r, m-1}.
/// Requires g >= 2.
std::variant<ConstructionParams, TrivialBoundMarker> cor56_case1(int g, long d);

/// d = m s + r with 1 <= r <= m, m the largest integer with
/// d >= m^g + ... + m + 1; class l_{r, m}. Throws std::domain_error when no
/// m >= 1 qualifies (d <= g). Requires g >= 2.
ConstructionParams cor56_case2(int g, long d);
ConstructionParams cor56_case2(int g, long d, long m);

struct Certificate {
  ConstructionParams params;
  DivisorClass cls;
  PolarizationType type{};
  Integer chi_multilinear{};
  Integer chi_pfaffian{};
  FiniteGroupShape k_group{};  // nontrivial elementary divisors of the cokernel
  bool ample = false;
  FlagBound flag{};          // best coordinate flag
  Rational flag_lower{};
  BetaInterval interval{};   // general member of the certified type
  NpCertificate np{};
};

/// Runs both chi oracles, the Smith type, the cokernel order, ampleness and the
/// flag bounds. Recipe parameters are additionally held to their claims
/// (type (1, ..., 1, d); bound <= 1/m, resp. < 1/m). Any disagreement throws
/// OracleMismatch.
Certificate certify(const ConstructionParams& params);

struct SearchBox {
  long max_a = 0;
  long max_b = 0;
  long max_k = 0;
  long max_c = 1;            // only used by the generalized search
  bool generalized = false;  // let middle coefficients and c vary
  std::size_t limit = 0;     // certificates to return, 0 = all
  unsigned threads = 0;      // 0 = ABSL_THREADS or hardware concurrency

  /// a, b <= 2m and k_i <= d, with m = floor(d^(1/g)).
  static SearchBox defaults(int g, long d);
};

struct SearchResult {
  std::vector<Certificate> certificates;  // ranked
  std::size_t candidates = 0;             // tuples with chi = d before type certification
  std::string diagnostic;
};

/// All tuples in the box whose certified type is (1, ..., 1, d), ranked by best
/// flag bound, then the chi vector along the witness flag, then the parameters
/// (coefficients, c, k) lexicographically.
SearchResult brute_search(int g, long d, const SearchBox& box);

/// Every construction-based upper bound available for the general member of
/// type (1, ..., 1, d): the recipes and, when `search` is set, the top search
/// result. Each entry carries the certificate that produced it.
struct GeneralBeta {
  BetaInterval interval;
  std::vector<Certificate> witnesses;  // certificates contributing construction bounds
  std::optional<Certificate> best;     // the witness behind the chosen upper bound, if any
  bool trivial_marker = false;         // case 1 fell back to the trivial bound (m = 1)
};

GeneralBeta general_beta(int g, long d, const std::optional<SearchBox>& search);

}  // namespace polbeta
