#include "polbeta/constructor.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "polbeta/errors.hpp"
#include "polbeta/surfacetable.hpp"

namespace polbeta {

std::string to_string(RecipeCase c) {
  switch (c) {
    case RecipeCase::cor56_case1: return "cor56-case1";
    case RecipeCase::cor56_case2: return "cor56-case2";
    case RecipeCase::explicit_class: return "explicit";
  }
  return "unknown";
}

DivisorClass ConstructionParams::divisor_class() const {
  return DivisorClass::make(ConstructionSpace(g, k), coeffs, c);
}

ConstructionParams ConstructionParams::from_class(const DivisorClass& cls) {
  ConstructionParams p;
  p.kind = RecipeCase::explicit_class;
  p.g = cls.space.g();
  p.k = cls.space.k();
  p.coeffs = cls.a;
  p.c = cls.c;
  return p;
}

ConstructionParams ConstructionParams::paper_shaped(std::vector<long> k, long a, long b) {
  const int g = static_cast<int>(k.size()) + 1;
  return from_class(DivisorClass::paper_shaped(ConstructionSpace(g, std::move(k)), a, b));
}

namespace {

long geometric(long m, int top) {  // m^top + ... + m + 1
  long sum = 0, term = 1;
  for (int i = 0; i <= top; ++i) {
    sum += term;
    term *= m;
  }
  return sum;
}

long lpow(long base, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

ConstructionParams recipe(RecipeCase kind, int g, long m, long r, long s, long b) {
  ConstructionParams p;
  p.kind = kind;
  p.g = g;
  p.m = m;
  p.r = r;
  p.s = s;
  const long k1 = s - geometric(m, g - 2) * r;
  if (k1 < 1) throw OracleMismatch("recipe: k_1 = " + std::to_string(k1) + " < 1");
  p.k.push_back(k1);
  for (int i = 2; i <= g - 1; ++i) p.k.push_back(lpow(m, g - i));
  p.coeffs.assign(g, 1);
  p.coeffs.front() = r;
  p.coeffs.back() = b;
  p.c = 1;
  return p;
}

}  // namespace

std::variant<ConstructionParams, TrivialBoundMarker> cor56_case1(int g, long d) {
  if (g < 2 || d < 1) throw std::invalid_argument("cor56_case1: need g >= 2, d >= 1");
  const long m = integer_root(Integer(d), static_cast<unsigned>(g)).get_si();
  if (m == 1) return TrivialBoundMarker{};
  const long r = (d - 1) % (m - 1) + 1;
  const long s = (d - r) / (m - 1);
  return recipe(RecipeCase::cor56_case1, g, m, r, s, m - 1);
}

ConstructionParams cor56_case2(int g, long d, long m) {
  if (g < 2 || d < 1 || m < 1) throw std::invalid_argument("cor56_case2: need g >= 2, d >= 1, m >= 1");
  if (d < geometric(m, g)) throw std::invalid_argument("cor56_case2: d below m^g + ... + m + 1");
  const long r = (d - 1) % m + 1;
  const long s = (d - r) / m;
  return recipe(RecipeCase::cor56_case2, g, m, r, s, m);
}

ConstructionParams cor56_case2(int g, long d) {
  if (g < 2 || d < 1) throw std::invalid_argument("cor56_case2: need g >= 2, d >= 1");
  if (d < geometric(1, g)) throw std::domain_error("cor56_case2: no m >= 1 with d >= m^g + ... + 1");
  long m = 1;
  while (geometric(m + 1, g) <= d) ++m;
  return cor56_case2(g, d, m);
}

namespace {

bool is_paper_shaped(const ConstructionParams& p) {
  if (p.g < 2 || p.c != 1) return false;
  for (int i = 1; i + 1 < p.g; ++i)
    if (p.coeffs[i] != 1) return false;
  return !(p.a() == 0 && p.b() == 0);
}

}  // namespace

Certificate certify(const ConstructionParams& params) {
  Certificate cert{.params = params, .cls = params.divisor_class()};
  const int g = params.g;
  AltForm form = alt_form(cert.cls);

  cert.chi_multilinear = chi_multilinear(cert.cls);
  cert.chi_pfaffian = chi_pfaffian(form);
  if (cert.chi_multilinear != cert.chi_pfaffian)
    throw OracleMismatch("certify: chi_multilinear = " + cert.chi_multilinear.get_str() +
                         " but chi_pfaffian = " + cert.chi_pfaffian.get_str());
  const Integer& chi = cert.chi_pfaffian;
  if (chi <= 0) throw std::domain_error("certify: class is degenerate (chi = " + chi.get_str() + ")");

  cert.type = polarization_type(form);
  if (cert.type.product() != chi) throw OracleMismatch("certify: type product differs from chi");
  cert.k_group = k_group(form);
  if (cert.k_group.order() != chi * chi) throw OracleMismatch("certify: |K(l)| differs from chi^2");
  cert.ample = is_ample(form);
  // Nonnegative combinations of F_i and Gamma are nef; nef with chi > 0 is ample.
  if (!cert.ample) throw OracleMismatch("certify: nef class with chi > 0 failed the definiteness test");

  cert.flag = best_flag_bound(cert.cls);
  cert.flag_lower = flag_lower_bound(cert.cls);

  if (is_paper_shaped(params)) {
    const ConstructionSpace& space = cert.cls.space;
    const Integer d = Integer(params.a()) + Integer(params.a()) * params.b() * space.tail_sum(1) +
                      Integer(params.b()) * space.degree(0);
    if (d != chi || !cert.type.is_one_one(d))
      throw OracleMismatch("certify: (a, b) class is not of type (1, ..., 1, a + a b N_1 + b k_1)");
    std::vector<int> identity(g);
    std::iota(identity.begin(), identity.end(), 0);
    if (flag_upper_bound(cert.cls, identity).bound != prop52_bound(space, params.a(), params.b()))
      throw OracleMismatch("certify: identity flag bound differs from the closed form");
  }

  std::optional<Rational> strictly_below;
  if (params.kind != RecipeCase::explicit_class) {
    const long m = *params.m;
    const Integer target = Integer(*params.r) + Integer(params.b()) * *params.s;
    if (!cert.type.is_one_one(target)) throw OracleMismatch("certify: recipe did not produce type (1, ..., 1, d)");
    const Rational inv_m = make_rational(1, m);
    if (params.kind == RecipeCase::cor56_case1 && cert.flag.bound > inv_m)
      throw OracleMismatch("certify: case-1 bound exceeds 1/m");
    if (params.kind == RecipeCase::cor56_case2) {
      if (cert.flag.bound >= inv_m) throw OracleMismatch("certify: case-2 bound is not below 1/m");
      strictly_below = inv_m;
    }
  }

  BoundCandidate upper{Side::upper, BoundValue::rational(cert.flag.bound), false, Scope::specific_construction,
                       "construction:" + to_string(params.kind), strictly_below};
  std::vector<BoundCandidate> rules;
  if (cert.type.is_one_one(chi)) rules = necessary_lower_candidates(g, chi);
  cert.interval = combine_interval(g, chi, {upper}, rules);
  cert.np = np_certificate(g, chi, cert.interval);
  return cert;
}

SearchBox SearchBox::defaults(int g, long d) {
  if (g < 1 || d < 1) throw std::invalid_argument("SearchBox: need g, d >= 1");
  const long m = integer_root(Integer(d), static_cast<unsigned>(g)).get_si();
  SearchBox box;
  box.max_a = 2 * m;
  box.max_b = 2 * m;
  box.max_k = d;
  return box;
}

namespace {

using i128 = __int128;

struct Fraction {
  long long num;
  long long den;
};

bool less(const Fraction& x, const Fraction& y) { return static_cast<i128>(x.num) * y.den < static_cast<i128>(y.num) * x.den; }

// A tuple with chi = d and its flag bound computed from the intersection
// formula alone. Certification recomputes everything on the lattice.
struct Candidate {
  std::vector<long> coeffs;
  long c = 0;
  std::vector<long> k;
  Fraction bound{1, 1};
  std::vector<long long> chis;
  std::vector<int> order;
};

bool rank_less(const Candidate& x, const Candidate& y) {
  if (less(x.bound, y.bound)) return true;
  if (less(y.bound, x.bound)) return false;
  if (x.chis != y.chis) return x.chis < y.chis;
  if (x.coeffs != y.coeffs) return x.coeffs < y.coeffs;
  if (x.c != y.c) return x.c < y.c;
  return x.k < y.k;
}

long long narrow(i128 v) {
  if (v > static_cast<i128>(1) << 62) throw std::overflow_error("search: intersection number overflow");
  return static_cast<long long>(v);
}

// chi of every coordinate restriction (by kept-factor mask). Nonnegative
// classes are nef, so a restriction is ample exactly when its chi is positive.
std::vector<long long> subset_chis(const std::vector<long>& a, long c, const std::vector<long>& kfull) {
  const int g = static_cast<int>(a.size());
  std::vector<long long> out(std::size_t{1} << g, 0);
  for (unsigned mask = 1; mask < out.size(); ++mask) {
    i128 prod = 1;
    for (int j = 0; j < g; ++j)
      if (mask & (1u << j)) prod *= a[j];
    i128 total = prod;
    for (int i = 0; i < g; ++i) {
      if (!(mask & (1u << i))) continue;
      i128 term = static_cast<i128>(c) * kfull[i];
      for (int j = 0; j < g && term != 0; ++j)
        if (j != i && (mask & (1u << j))) term *= a[j];
      total += term;
    }
    out[mask] = narrow(total);
  }
  return out;
}

bool fast_best_flag(const std::vector<long long>& chis, int g, Candidate& cand) {
  std::vector<int> order(g);
  std::iota(order.begin(), order.end(), 0);
  bool found = false;
  std::vector<long long> along(g);
  do {
    unsigned mask = (1u << g) - 1;
    bool ok = true;
    for (int level = 0; level < g; ++level) {
      along[level] = chis[mask];
      if (along[level] <= 0) {
        ok = false;
        break;
      }
      mask &= ~(1u << order[level]);
    }
    if (!ok) continue;
    Fraction bound{1, along[g - 1]};
    for (int i = 1; i < g; ++i) {
      Fraction step{along[i], along[i - 1]};
      if (less(bound, step)) bound = step;
    }
    if (!found || less(bound, cand.bound)) {
      found = true;
      cand.bound = bound;
      cand.order = order;
      cand.chis = along;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return found;
}

struct CoefficientChoice {
  std::vector<long> coeffs;
  long c;
};

std::vector<CoefficientChoice> coefficient_choices(int g, const SearchBox& box) {
  std::vector<CoefficientChoice> out;
  if (g == 1) {
    // Gamma coincides with F_1 on a single curve.
    for (long c = 0; c <= std::min<long>(box.max_c, 1); ++c)
      for (long a = 0; a <= box.max_a; ++a)
        if (a + c > 0) out.push_back({{a}, c});
    return out;
  }
  if (!box.generalized) {
    for (long a = 0; a <= box.max_a; ++a)
      for (long b = 0; b <= box.max_b; ++b) {
        if (a == 0 && b == 0) continue;
        std::vector<long> coeffs(g, 1);
        coeffs.front() = a;
        coeffs.back() = b;
        out.push_back({std::move(coeffs), 1});
      }
    return out;
  }
  std::vector<long> coeffs(g, 0);
  for (long c = 0; c <= box.max_c; ++c) {
    std::fill(coeffs.begin(), coeffs.end(), 0);
    for (;;) {
      if (c > 0 || std::any_of(coeffs.begin(), coeffs.end(), [](long x) { return x != 0; }))
        out.push_back({coeffs, c});
      int i = g - 1;
      for (; i >= 0; --i) {
        const long cap = (i == g - 1) ? box.max_b : box.max_a;
        if (coeffs[i] < cap) {
          ++coeffs[i];
          break;
        }
        coeffs[i] = 0;
      }
      if (i < 0) break;
    }
  }
  return out;
}

// chi = P + c * sum_i k_i Q_i with Q_i = prod_{j != i} a_j and k_g = 1. It is
// affine in k_1 and nondecreasing in every k_i, which drives the enumeration.
class TupleEnumerator {
 public:
  TupleEnumerator(int g, long d, const SearchBox& box, std::vector<Candidate>& sink)
      : g_(g), d_(d), box_(box), sink_(sink) {}

  void run(const CoefficientChoice& choice) {
    choice_ = &choice;
    const auto& a = choice.coeffs;
    if (g_ == 1) {
      if (a[0] + choice.c == d_) emit({});
      return;
    }
    weights_.assign(g_, 0);
    i128 p = 1;
    for (long x : a) p *= x;
    for (int i = 0; i < g_; ++i) {
      i128 q = choice.c;
      for (int j = 0; j < g_ && q != 0; ++j)
        if (j != i) q *= a[j];
      weights_[i] = narrow(q);
    }
    i128 alpha = p + weights_[g_ - 1];
    for (int i = 1; i < g_ - 1; ++i) alpha += weights_[i];  // later k_i start at 1
    k_.assign(g_ - 1, 1);
    descend(1, narrow(alpha));
  }

 private:
  void descend(int i, long long alpha) {
    if (alpha > d_) return;
    if (i == g_ - 1) {
      const long long beta = weights_[0];
      if (beta > 0) {
        const long long rest = d_ - alpha;
        if (rest > 0 && rest % beta == 0 && rest / beta <= box_.max_k) {
          k_[0] = static_cast<long>(rest / beta);
          emit(k_);
        }
      } else if (alpha == d_) {
        for (long k1 = 1; k1 <= box_.max_k; ++k1) {
          k_[0] = k1;
          emit(k_);
        }
      }
      return;
    }
    for (long v = 1; v <= box_.max_k; ++v) {
      const long long next = alpha + weights_[i] * (v - 1);
      if (next > d_) break;
      k_[i] = v;
      descend(i + 1, next);
    }
    k_[i] = 1;
  }

  void emit(const std::vector<long>& k) {
    std::vector<long> kfull = k;
    kfull.push_back(1);
    Candidate cand;
    cand.coeffs = choice_->coeffs;
    cand.c = choice_->c;
    cand.k = k;
    if (fast_best_flag(subset_chis(cand.coeffs, cand.c, kfull), g_, cand)) sink_.push_back(std::move(cand));
  }

  int g_;
  long d_;
  const SearchBox& box_;
  std::vector<Candidate>& sink_;
  const CoefficientChoice* choice_ = nullptr;
  std::vector<long long> weights_;
  std::vector<long> k_;
};

unsigned thread_count(const SearchBox& box) {
  if (box.threads > 0) return box.threads;
  if (const char* env = std::getenv("ABSL_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

SearchResult brute_search(int g, long d, const SearchBox& box) {
  if (g < 1 || g > 8) throw std::invalid_argument("brute_search: need 1 <= g <= 8");
  if (d < 1) throw std::invalid_argument("brute_search: d must be >= 1");
  if (box.max_a < 0 || box.max_b < 0 || box.max_k < 1 || box.max_c < 0)
    throw std::invalid_argument("brute_search: invalid box limits");

  const std::vector<CoefficientChoice> choices = coefficient_choices(g, box);
  const unsigned workers = std::min<unsigned>(thread_count(box), std::max<std::size_t>(choices.size(), 1));
  std::vector<std::vector<Candidate>> buckets(workers);
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](unsigned w) {
    try {
      TupleEnumerator en(g, d, box, buckets[w]);
      for (std::size_t i = w; i < choices.size(); i += workers) en.run(choices[i]);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<Candidate> all;
  for (auto& b : buckets) std::move(b.begin(), b.end(), std::back_inserter(all));
  std::sort(all.begin(), all.end(), rank_less);

  SearchResult result;
  result.candidates = all.size();
  for (const Candidate& cand : all) {
    if (box.limit > 0 && result.certificates.size() >= box.limit) break;
    ConstructionParams params;
    params.kind = RecipeCase::explicit_class;
    params.g = g;
    params.k = cand.k;
    params.coeffs = cand.coeffs;
    params.c = cand.c;
    Certificate cert = certify(params);
    if (cert.flag.bound != make_rational(Integer(static_cast<long>(cand.bound.num)), Integer(static_cast<long>(cand.bound.den))) || cert.flag.order != cand.order)
      throw OracleMismatch("brute_search: lattice flag bound disagrees with the intersection formula");
    if (!cert.type.is_one_one(Integer(d))) continue;
    result.certificates.push_back(std::move(cert));
  }
  if (result.certificates.empty())
    result.diagnostic = "no tuple in the box certifies type (1, ..., 1, " + std::to_string(d) + ")";
  return result;
}

GeneralBeta general_beta(int g, long d, const std::optional<SearchBox>& search) {
  if (g < 1 || d < 1) throw std::invalid_argument("general_beta: need g, d >= 1");
  GeneralBeta out;
  std::vector<BoundCandidate> constructions;
  auto add = [&](Certificate cert, const std::string& source) {
    constructions.push_back({Side::upper, BoundValue::rational(cert.flag.bound), false, Scope::specific_construction,
                             source, cert.interval.strictly_below});
    out.witnesses.push_back(std::move(cert));
  };

  if (g == 1) {
    ConstructionParams curve;
    curve.g = 1;
    curve.coeffs = {d};
    curve.c = 0;
    add(certify(curve), "construction:curve");
  } else {
    auto c1 = cor56_case1(g, d);
    if (auto* p = std::get_if<ConstructionParams>(&c1))
      add(certify(*p), "construction:cor56-case1");
    else
      out.trivial_marker = true;
    if (d >= g + 1) add(certify(cor56_case2(g, d)), "construction:cor56-case2");
  }
  if (search) {
    SearchBox box = *search;
    box.limit = 1;
    SearchResult sr = brute_search(g, d, box);
    if (!sr.certificates.empty()) add(std::move(sr.certificates.front()), "construction:search");
  }

  std::vector<BoundCandidate> rules = necessary_lower_candidates(g, Integer(d));
  if (g == 2)
    for (auto& c : surface_rule_bounds(Integer(d)).lowers) rules.push_back(std::move(c));
  out.interval = combine_interval(g, Integer(d), constructions, rules);
  for (std::size_t i = 0; i < constructions.size(); ++i)
    if (constructions[i].source == out.interval.upper_source) {
      out.best = out.witnesses[i];
      break;
    }
  return out;
}

}  // namespace polbeta
