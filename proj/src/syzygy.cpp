#include "polbeta/syzygy.hpp"

#include <stdexcept>

namespace polbeta {

Integer np_threshold(int g, int p) {
  if (g < 1 || p < -1) throw std::invalid_argument("np_threshold: need g >= 1, p >= -1");
  Integer total = 0;
  for (int i = 0; i <= g; ++i) total += ipow(Integer(p + 2), static_cast<unsigned>(i));
  return total;
}

std::optional<int> max_np_arithmetic(int g, const Integer& d) {
  if (g < 1 || d < 1) throw std::invalid_argument("max_np_arithmetic: need g, d >= 1");
  std::optional<int> best;
  for (int p = -1; np_threshold(g, p) <= d; ++p) best = p;
  return best;
}

std::optional<int> np_from_beta(const BetaInterval& interval) {
  // Find the largest t = p + 2 >= 1 with upper < 1/t (or upper <= 1/t when strict).
  auto certifies = [&](long t) {
    auto c = interval.upper <=> BoundValue::rational(make_rational(1, t));
    return interval.upper_strict ? c <= 0 : c < 0;
  };
  if (!certifies(1)) return std::nullopt;
  long t = 1;
  if (interval.upper.is_rational()) {
    const Rational& u = interval.upper.as_rational();
    Integer q = u.get_den() / u.get_num();  // floor(1/u)
    t = q.get_si();
    while (t > 1 && !certifies(t)) --t;
    while (certifies(t + 1)) ++t;
  } else {
    while (certifies(t + 1)) ++t;
  }
  return static_cast<int>(t) - 2;
}

namespace {

bool projective_normality_possible(int g, const Integer& d) {
  // dim Sym^2 H^0(L) = d (d+1) / 2 must reach dim H^0(L^2) = 2^g d.
  return d * (d + 1) >= ipow(Integer(2), static_cast<unsigned>(g) + 1) * d;
}

}  // namespace

std::vector<NecessaryBound> necessary_lower_bounds(int g, const Integer& d) {
  if (g < 1 || d < 1) throw std::invalid_argument("necessary_lower_bounds: need g, d >= 1");
  std::vector<NecessaryBound> out;
  if (d <= g) out.push_back({Rational(1), false, "rule:not-basepoint-free"});
  if (!projective_normality_possible(g, d)) out.push_back({make_rational(1, 2), false, "rule:not-projectively-normal"});
  return out;
}

std::vector<BoundCandidate> necessary_lower_candidates(int g, const Integer& d) {
  std::vector<BoundCandidate> out;
  for (const auto& nb : necessary_lower_bounds(g, d))
    out.push_back({Side::lower, BoundValue::rational(nb.bound), nb.strict, Scope::general_member, nb.justification, {}});
  return out;
}

std::string to_string(NpSource s) {
  switch (s) {
    case NpSource::none: return "none";
    case NpSource::beta_bound: return "beta-bound";
    case NpSource::arithmetic: return "arithmetic";
  }
  return "unknown";
}

NpCertificate np_certificate(int g, const Integer& d, const BetaInterval& interval) {
  NpCertificate np;
  np.g = g;
  np.d = d;
  np.p_from_beta = np_from_beta(interval);
  np.p_arithmetic = max_np_arithmetic(g, d);
  np.basepoint_free_possible = d >= g + 1;
  np.projectively_normal_possible = projective_normality_possible(g, d);
  if (np.p_from_beta && (!np.p_arithmetic || *np.p_from_beta >= *np.p_arithmetic)) {
    np.guaranteed = np.p_from_beta;
    np.source = NpSource::beta_bound;
  } else if (np.p_arithmetic) {
    np.guaranteed = np.p_arithmetic;
    np.source = NpSource::arithmetic;
  }
  return np;
}

}  // namespace polbeta
