#include "polbeta/threshold.hpp"

#include <algorithm>
#include <numeric>

#include "polbeta/errors.hpp"

namespace polbeta {

BoundValue BoundValue::rational(const Rational& q) { return BoundValue(q, 1); }

BoundValue BoundValue::inverse_root(const Integer& radicand, unsigned degree) {
  if (radicand < 1 || degree < 1) throw std::invalid_argument("inverse_root: need radicand >= 1 and degree >= 1");
  Integer root = integer_root(radicand, degree);
  if (ipow(root, degree) == radicand) return BoundValue(make_rational(1, root), 1);
  return BoundValue(make_rational(1, radicand), degree);
}

const Rational& BoundValue::as_rational() const {
  if (!is_rational()) throw std::logic_error("BoundValue: not rational");
  return base_;
}

std::string BoundValue::to_string() const {
  if (is_rational()) return polbeta::to_string(base_);
  // base is 1/n
  return polbeta::to_string(base_.get_den()) + "^(-1/" + std::to_string(degree_) + ")";
}

std::strong_ordering operator<=>(const BoundValue& x, const BoundValue& y) {
  // (p1/q1)^(1/e1) vs (p2/q2)^(1/e2)  <=>  p1^e2 q2^e1 vs p2^e1 q1^e2
  const Integer lhs = ipow(x.base_.get_num(), y.degree_) * ipow(y.base_.get_den(), x.degree_);
  const Integer rhs = ipow(y.base_.get_num(), x.degree_) * ipow(x.base_.get_den(), y.degree_);
  const int c = cmp(lhs, rhs);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string to_string(Scope s) {
  switch (s) {
    case Scope::specific_construction: return "specific-construction";
    case Scope::general_member: return "general-member";
    case Scope::all_members: return "all-members";
  }
  return "unknown";
}

BoundValue beta_lower_chi(const Integer& chi, unsigned g) { return BoundValue::inverse_root(chi, g); }

namespace {

// chi and ampleness of every coordinate restriction, indexed by the bitmask of
// kept factors. Filled lazily from the lattice form.
class RestrictionTable {
 public:
  explicit RestrictionTable(const DivisorClass& cls)
      : form_(alt_form(cls)), g_(cls.space.g()), entries_(std::size_t{1} << g_) {}

  struct Entry {
    bool ready = false;
    Integer chi;
    bool ample = false;
  };

  const Entry& at(unsigned mask) {
    Entry& e = entries_[mask];
    if (!e.ready) {
      std::vector<int> keep;
      for (int i = 0; i < g_; ++i)
        if (mask & (1u << i)) keep.push_back(i);
      AltForm sub = restrict(form_, keep);
      e.chi = chi_pfaffian(sub);
      e.ample = is_ample(sub);
      e.ready = true;
    }
    return e;
  }

  int g() const { return g_; }

 private:
  AltForm form_;
  int g_;
  std::vector<Entry> entries_;
};

void check_order(const std::vector<int>& order, int g) {
  if (static_cast<int>(order.size()) != g) throw std::invalid_argument("flag order: wrong length");
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < g; ++i)
    if (sorted[i] != i) throw std::invalid_argument("flag order: not a permutation");
}

FlagBound evaluate_flag(RestrictionTable& table, const std::vector<int>& order) {
  const int g = table.g();
  unsigned mask = (1u << g) - 1;
  FlagBound fb;
  fb.order = order;
  for (int level = 0; level < g; ++level) {
    const auto& e = table.at(mask);
    if (!e.ample)
      throw NonAmpleRestriction(level, "flag restriction at level " + std::to_string(level) + " is not ample");
    fb.chis.push_back(e.chi);
    mask &= ~(1u << order[level]);
  }
  // max{ 1/chi_{g-1}, chi_{g-1}/chi_{g-2}, ..., chi_1/chi_0 }
  fb.bound = make_rational(1, fb.chis.back());
  for (int i = 1; i < g; ++i) fb.bound = std::max(fb.bound, make_rational(fb.chis[i], fb.chis[i - 1]));
  return fb;
}

}  // namespace

FlagBound flag_upper_bound(const DivisorClass& cls, const std::vector<int>& order) {
  check_order(order, cls.space.g());
  RestrictionTable table(cls);
  return evaluate_flag(table, order);
}

FlagBound best_flag_bound(const DivisorClass& cls) {
  const int g = cls.space.g();
  if (g > 8) throw std::invalid_argument("best_flag_bound: exhaustive search limited to g <= 8");
  RestrictionTable table(cls);
  std::vector<int> order(g);
  std::iota(order.begin(), order.end(), 0);
  std::optional<FlagBound> best;
  std::optional<NonAmpleRestriction> first_failure;
  do {
    try {
      FlagBound fb = evaluate_flag(table, order);
      if (!best || fb.bound < best->bound) best = std::move(fb);
    } catch (const NonAmpleRestriction& e) {
      if (!first_failure) first_failure = e;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  if (!best) throw *first_failure;
  return *best;
}

Rational prop52_bound(const ConstructionSpace& space, long a, long b) {
  const int g = space.g();
  if (g < 2) throw std::invalid_argument("prop52_bound: needs g >= 2");
  if (a < 0 || b < 0 || (a == 0 && b == 0)) throw std::invalid_argument("prop52_bound: need a, b >= 0, (a, b) != (0, 0)");
  auto chi_tail = [&](int i) -> Integer { return Integer(1) + Integer(b) * space.tail_sum(i); };  // 1 + b N_i
  const Integer d = Integer(a) + Integer(a) * b * space.tail_sum(1) + Integer(b) * space.degree(0);
  Rational bound = make_rational(chi_tail(1), d);
  for (int i = 1; i <= g - 1; ++i) bound = std::max(bound, make_rational(chi_tail(i + 1), chi_tail(i)));
  return bound;
}

Rational flag_lower_bound(const DivisorClass& cls) {
  AltForm form = alt_form(cls);
  Rational best = 0;
  for (int i = 0; i < cls.space.g(); ++i) {
    Integer deg = chi_pfaffian(restrict(form, {i}));
    if (deg <= 0) throw std::domain_error("flag_lower_bound: restriction to a coordinate curve is not ample");
    best = std::max(best, make_rational(1, deg));
  }
  return best;
}

namespace {

// Larger lower bounds win; on ties a strict bound wins.
bool better_lower(const BoundCandidate& x, const BoundCandidate& y) {
  auto c = x.value <=> y.value;
  if (c != 0) return c > 0;
  return x.strict && !y.strict;
}

// Smaller upper bounds win; on ties a strict bound wins, then one carrying a note.
bool better_upper(const BoundCandidate& x, const BoundCandidate& y) {
  auto c = x.value <=> y.value;
  if (c != 0) return c < 0;
  if (x.strict != y.strict) return x.strict;
  return x.strictly_below.has_value() && !y.strictly_below.has_value();
}

BetaInterval assemble(const BoundCandidate& lo, const BoundCandidate& up, Scope scope) {
  auto c = lo.value <=> up.value;
  if (c > 0 || (c == 0 && (lo.strict || up.strict)))
    throw OracleMismatch("combine_interval: inconsistent bounds, lower " + lo.value.to_string() + " (" + lo.source +
                         ") vs upper " + up.value.to_string() + " (" + up.source + ")");
  BetaInterval iv;
  iv.lower = lo.value;
  iv.lower_strict = lo.strict;
  iv.lower_source = lo.source;
  iv.upper = up.value;
  iv.upper_strict = up.strict;
  iv.upper_source = up.source;
  iv.exact = (c == 0);
  iv.scope = scope;
  iv.strictly_below = up.strictly_below;
  return iv;
}

}  // namespace

BetaInterval combine_interval(int g, const Integer& d, const std::vector<BoundCandidate>& construction_bounds,
                              const std::vector<BoundCandidate>& rule_bounds) {
  if (g < 1 || d < 1) throw std::invalid_argument("combine_interval: need g, d >= 1");
  std::vector<BoundCandidate> lowers{
      {Side::lower, beta_lower_chi(d, static_cast<unsigned>(g)), false, Scope::all_members, "lower:inverse-root-chi", {}}};
  std::vector<BoundCandidate> uppers{{Side::upper, BoundValue::rational(1), false, Scope::all_members, "upper:trivial", {}}};
  for (BoundCandidate b : construction_bounds) {
    if (b.side != Side::upper) throw std::invalid_argument("combine_interval: constructions only give upper bounds");
    // A bound at one member of the family holds for the general member.
    b.scope = Scope::general_member;
    uppers.push_back(std::move(b));
  }
  for (const BoundCandidate& b : rule_bounds) (b.side == Side::lower ? lowers : uppers).push_back(b);

  const BoundCandidate* lo = &lowers.front();
  for (const auto& b : lowers)
    if (better_lower(b, *lo)) lo = &b;
  const BoundCandidate* up = &uppers.front();
  for (const auto& b : uppers)
    if (better_upper(b, *up)) up = &b;

  const Scope scope =
      (lo->scope == Scope::all_members && up->scope == Scope::all_members) ? Scope::all_members : Scope::general_member;
  return assemble(*lo, *up, scope);
}

BetaInterval construction_interval(const DivisorClass& cls) {
  const int g = cls.space.g();
  const Integer chi = chi_pfaffian(alt_form(cls));
  if (chi <= 0) throw std::domain_error("construction_interval: class is not ample");
  FlagBound flag = best_flag_bound(cls);

  BoundCandidate root{Side::lower, beta_lower_chi(chi, static_cast<unsigned>(g)), false, Scope::specific_construction,
                      "lower:inverse-root-chi", {}};
  BoundCandidate curve{Side::lower, BoundValue::rational(flag_lower_bound(cls)), false, Scope::specific_construction,
                       "lower:coordinate-curve-restriction", {}};
  BoundCandidate upper{Side::upper, BoundValue::rational(flag.bound), false, Scope::specific_construction,
                       "upper:flag-restriction", {}};
  BoundCandidate trivial{Side::upper, BoundValue::rational(1), false, Scope::all_members, "upper:trivial", {}};
  const BoundCandidate& lo = better_lower(curve, root) ? curve : root;
  const BoundCandidate& up = better_upper(trivial, upper) ? trivial : upper;
  return assemble(lo, up, Scope::specific_construction);
}

}  // namespace polbeta
