#include "polbeta/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>

#include "polbeta/constructor.hpp"
#include "polbeta/errors.hpp"
#include "polbeta/surfacetable.hpp"
#include "polbeta/syzygy.hpp"

namespace polbeta::cli {

namespace {

using json = nlohmann::ordered_json;

class NoCertificate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json to_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

json to_json(const Rational& q) { return to_string(q); }

json to_json(const std::vector<Integer>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

json to_json(const BetaInterval& iv) {
  json j;
  j["lower"] = iv.lower.to_string();
  j["lower_strict"] = iv.lower_strict;
  j["upper"] = iv.upper.to_string();
  j["upper_strict"] = iv.upper_strict;
  j["exact"] = iv.exact;
  j["scope"] = to_string(iv.scope);
  j["strictly_below"] = iv.strictly_below ? json(to_string(*iv.strictly_below)) : json(nullptr);
  return j;
}

json interval_citations(const BetaInterval& iv) {
  return json{{"lower", iv.lower_source}, {"upper", iv.upper_source}};
}

json optional_int(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

json to_json(const NpCertificate& np) {
  json j;
  j["p_from_beta"] = optional_int(np.p_from_beta);
  j["p_arithmetic"] = optional_int(np.p_arithmetic);
  j["guaranteed"] = optional_int(np.guaranteed);
  j["source"] = to_string(np.source);
  j["basepoint_free_possible"] = np.basepoint_free_possible;
  j["projectively_normal_possible"] = np.projectively_normal_possible;
  return j;
}

json one_based(const std::vector<int>& order) {
  json out = json::array();
  for (int f : order) out.push_back(f + 1);
  return out;
}

json to_json(const FlagBound& fb) {
  return json{{"bound", to_string(fb.bound)}, {"order", one_based(fb.order)}, {"chis", to_json(fb.chis)}};
}

json to_json(const Certificate& c) {
  json j;
  j["kind"] = to_string(c.params.kind);
  j["g"] = c.params.g;
  j["k"] = c.params.k;
  j["coeffs"] = c.params.coeffs;
  j["c"] = c.params.c;
  if (c.params.m) {
    j["m"] = *c.params.m;
    j["r"] = *c.params.r;
    j["s"] = *c.params.s;
  }
  j["chi"] = to_json(c.chi_pfaffian);
  j["type"] = to_json(c.type.d);
  j["k_group"] = to_json(c.k_group.divisors);
  j["ample"] = c.ample;
  j["flag"] = to_json(c.flag);
  j["flag_lower"] = to_json(c.flag_lower);
  j["interval"] = to_json(c.interval);
  j["np"] = to_json(c.np);
  return j;
}

json certificate_citations(const Certificate& c) {
  return json{{"chi", "oracle:lattice-pfaffian+intersection-numbers"},
              {"type", "oracle:smith-normal-form"},
              {"k_group", "oracle:smith-normal-form"},
              {"ample", "oracle:positive-definite-hermitian-form"},
              {"flag", "upper:flag-restriction"},
              {"flag_lower", "lower:coordinate-curve-restriction"},
              {"interval", interval_citations(c.interval)},
              {"np", "rule:np-from-beta-and-threshold-sums"}};
}

struct ClassOptions {
  int g = 0;
  std::vector<long> k;
  std::vector<long> a;
  long c = 1;

  void attach(CLI::App* app, bool required) {
    auto* go = app->add_option("--g", g, "dimension");
    app->add_option("--k", k, "isogeny degrees k1,...,k_{g-1}")->delimiter(',');
    auto* ao = app->add_option("--a", a, "coefficients a1,...,ag of F_1..F_g")->delimiter(',');
    app->add_option("--c", c, "coefficient of the graph divisor")->capture_default_str();
    if (required) {
      go->required();
      ao->required();
    }
  }

  DivisorClass build() const { return DivisorClass::make(ConstructionSpace(g, k), a, c); }

  json inputs() const { return json{{"g", g}, {"k", k}, {"a", a}, {"c", c}}; }
};

struct BoxOptions {
  std::optional<long> max_a, max_b, max_k, max_c;
  bool generalized = false;
  std::size_t limit = 0;

  void attach(CLI::App* app) {
    app->add_option("--max-a", max_a, "largest coefficient a1 (default 2m)");
    app->add_option("--max-b", max_b, "largest coefficient ag (default 2m)");
    app->add_option("--max-k", max_k, "largest isogeny degree (default d)");
    app->add_option("--max-c", max_c, "largest graph coefficient (generalized search)");
    app->add_flag("--generalized", generalized, "let the middle coefficients and c vary");
    app->add_option("--limit", limit, "certificates to return, 0 = all");
  }

  bool any() const { return max_a || max_b || max_k || max_c || generalized; }

  SearchBox build(int g, long d) const {
    SearchBox box = SearchBox::defaults(g, d);
    if (max_a) box.max_a = *max_a;
    if (max_b) box.max_b = *max_b;
    if (max_k) box.max_k = *max_k;
    if (max_c) box.max_c = *max_c;
    box.generalized = generalized;
    box.limit = limit;
    return box;
  }
};

json box_json(const SearchBox& box) {
  return json{{"max_a", box.max_a}, {"max_b", box.max_b}, {"max_k", box.max_k},
              {"max_c", box.max_c}, {"generalized", box.generalized}, {"limit", box.limit}};
}

struct Envelope {
  json inputs = json::object();
  json results = json::object();
  json citations = json::object();
  // Optional row view for csv / markdown.
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::optional<std::string> markdown_override, csv_override;
};

// chi from both oracles; disagreement is a bug.
void add_chi(const DivisorClass& cls, const AltForm& form, Envelope& env) {
  const Integer multilinear = chi_multilinear(cls);
  const Integer pf = chi_pfaffian(form);
  if (multilinear != pf)
    throw OracleMismatch("chi oracles disagree: multilinear " + multilinear.get_str() + ", pfaffian " + pf.get_str());
  env.results["chi"] = to_json(pf);
  env.results["chi_multilinear"] = to_json(multilinear);
  env.results["chi_pfaffian"] = to_json(pf);
  env.citations["chi_multilinear"] = "oracle:intersection-numbers";
  env.citations["chi_pfaffian"] = "oracle:lattice-pfaffian";
}

Envelope cmd_chi(const ClassOptions& opt) {
  Envelope env;
  env.inputs = opt.inputs();
  DivisorClass cls = opt.build();
  add_chi(cls, alt_form(cls), env);
  return env;
}

Envelope cmd_type(const ClassOptions& opt) {
  Envelope env;
  env.inputs = opt.inputs();
  DivisorClass cls = opt.build();
  AltForm form = alt_form(cls);
  add_chi(cls, form, env);
  const Integer chi = chi_pfaffian(form);
  if (chi == 0) {
    env.results["degenerate"] = true;
    env.results["type"] = nullptr;
  } else {
    PolarizationType type = polarization_type(form);
    if (type.product() != chi) throw OracleMismatch("type product differs from chi");
    env.results["degenerate"] = false;
    env.results["type"] = to_json(type.d);
    env.results["one_one"] = type.is_one_one(type.d.back());
  }
  env.citations["type"] = "oracle:smith-normal-form";
  return env;
}

Envelope cmd_kgroup(const ClassOptions& opt) {
  Envelope env;
  env.inputs = opt.inputs();
  DivisorClass cls = opt.build();
  AltForm form = alt_form(cls);
  add_chi(cls, form, env);
  const Integer chi = chi_pfaffian(form);
  if (chi == 0) {
    env.results["degenerate"] = true;
    env.results["k_group"] = nullptr;
  } else {
    FiniteGroupShape shape = k_group(form);
    if (shape.order() != chi * chi) throw OracleMismatch("|K(l)| differs from chi^2");
    env.results["degenerate"] = false;
    env.results["k_group"] = to_json(shape.divisors);
    env.results["order"] = to_json(shape.order());
  }
  env.citations["k_group"] = "oracle:smith-normal-form";
  env.citations["order"] = "oracle:smith-normal-form";
  return env;
}

Envelope cmd_ample(const ClassOptions& opt) {
  Envelope env;
  env.inputs = opt.inputs();
  DivisorClass cls = opt.build();
  AltForm form = alt_form(cls);
  add_chi(cls, form, env);
  RatMatrix h = form.hermitian();
  json minors = json::array();
  for (const auto& m : leading_principal_minors(h)) minors.push_back(to_json(m));
  env.results["ample"] = is_ample(form);
  env.results["leading_minors"] = minors;
  env.citations["ample"] = "oracle:positive-definite-hermitian-form";
  env.citations["leading_minors"] = "oracle:positive-definite-hermitian-form";
  return env;
}

Envelope beta_explicit(const ClassOptions& opt) {
  Envelope env;
  env.inputs = opt.inputs();
  DivisorClass cls = opt.build();
  std::optional<Certificate> certified;
  try {
    certified = certify(ConstructionParams::from_class(cls));
  } catch (const NonAmpleRestriction& e) {
    throw NoCertificate(e.what());
  } catch (const std::domain_error& e) {
    throw NoCertificate(e.what());
  }
  const Certificate& cert = *certified;
  BetaInterval own = construction_interval(cls);
  env.results["construction_interval"] = to_json(own);
  env.results["general_interval"] = to_json(cert.interval);
  env.results["certificate"] = to_json(cert);
  env.citations["construction_interval"] = interval_citations(own);
  env.citations["general_interval"] = interval_citations(cert.interval);
  env.citations["certificate"] = certificate_citations(cert);
  return env;
}

Envelope beta_general(int g, long d, const BoxOptions& box_opt, std::optional<bool> search) {
  Envelope env;
  if (g < 1 || d < 1) throw std::invalid_argument("--general: need g, d >= 1");
  const bool do_search = search.value_or(box_opt.any() || g <= 3);
  std::optional<SearchBox> box;
  if (do_search) box = box_opt.build(g, d);
  env.inputs = json{{"g", g}, {"d", d}, {"search", do_search}};
  if (box) env.inputs["box"] = box_json(*box);

  GeneralBeta gb = general_beta(g, d, box);
  if (gb.witnesses.empty()) throw NoCertificate("no construction certifies an upper bound");
  env.results["interval"] = to_json(gb.interval);
  env.results["best"] = gb.best ? json(gb.interval.upper_source) : json(nullptr);
  env.results["trivial_marker"] = gb.trivial_marker;
  json witnesses = json::array(), witness_cites = json::array();
  for (const auto& w : gb.witnesses) {
    witnesses.push_back(to_json(w));
    witness_cites.push_back(certificate_citations(w));
  }
  env.results["witnesses"] = witnesses;
  env.results["np"] = to_json(np_certificate(g, d, gb.interval));
  env.citations["interval"] = interval_citations(gb.interval);
  env.citations["witnesses"] = witness_cites;
  env.citations["np"] = "rule:np-from-beta-and-threshold-sums";
  return env;
}

Envelope cmd_search(int g, long d, const BoxOptions& box_opt) {
  Envelope env;
  SearchBox box = box_opt.build(g, d);
  env.inputs = json{{"g", g}, {"d", d}, {"box", box_json(box)}};
  SearchResult sr = brute_search(g, d, box);
  json certs = json::array();
  env.columns = {"rank", "bound", "order", "chis", "k", "coeffs", "c", "type"};
  auto list = [](const auto& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ' ';
      if constexpr (std::is_same_v<std::decay_t<decltype(v[i])>, Integer>)
        s += v[i].get_str();
      else
        s += std::to_string(v[i]);
    }
    return s;
  };
  for (std::size_t i = 0; i < sr.certificates.size(); ++i) {
    const Certificate& c = sr.certificates[i];
    json j = to_json(c);
    j["rank"] = i + 1;
    certs.push_back(j);
    std::vector<int> order1;
    for (int f : c.flag.order) order1.push_back(f + 1);
    env.rows.push_back({std::to_string(i + 1), to_string(c.flag.bound), list(order1), list(c.flag.chis), list(c.params.k),
                        list(c.params.coeffs), std::to_string(c.params.c), list(c.type.d)});
  }
  env.results["candidates"] = sr.candidates;
  env.results["certificates"] = certs;
  env.results["diagnostic"] = sr.diagnostic.empty() ? json(nullptr) : json(sr.diagnostic);
  env.citations["certificates"] = "upper:flag-restriction; oracle:smith-normal-form";
  return env;
}

Envelope cmd_np(int g, long d, std::optional<bool> search) {
  Envelope env;
  if (g < 1 || d < 1) throw std::invalid_argument("np: need g, d >= 1");
  const bool do_search = search.value_or(false);
  env.inputs = json{{"g", g}, {"d", d}, {"search", do_search}};
  std::optional<SearchBox> box;
  if (do_search) box = SearchBox::defaults(g, d);
  GeneralBeta gb = general_beta(g, d, box);
  NpCertificate np = np_certificate(g, d, gb.interval);

  json thresholds = json::object();
  json boundary = json::array();
  const auto top = np.p_arithmetic.value_or(-1) + 1;
  for (int p = -1; p <= top; ++p) {
    const Integer t = np_threshold(g, p);
    thresholds[std::to_string(p)] = to_json(t);
    if (t == d) boundary.push_back(p);
  }
  json necessary = json::array();
  for (const auto& nb : necessary_lower_bounds(g, d))
    necessary.push_back(json{{"bound", to_string(nb.bound)}, {"strict", nb.strict}, {"justification", nb.justification}});

  env.results = to_json(np);
  env.results["p"] = optional_int(np.guaranteed);
  env.results["thresholds"] = thresholds;
  env.results["at_threshold"] = boundary;
  env.results["necessary_lower_bounds"] = necessary;
  env.results["interval"] = to_json(gb.interval);
  env.citations["p_from_beta"] = "rule:beta-below-1/(p+2)";
  env.citations["p_arithmetic"] = "rule:threshold-sum";
  env.citations["thresholds"] = "rule:threshold-sum";
  env.citations["necessary_lower_bounds"] = "rule:dimension-count";
  env.citations["interval"] = interval_citations(gb.interval);
  return env;
}

Envelope cmd_table(long d_max) {
  Envelope env;
  env.inputs = json{{"max", d_max}};
  std::vector<SurfaceRuleResult> rows = generate_table(d_max);
  json out = json::array(), cites = json::array();
  env.columns = {"d", "beta", "exact", "lower", "upper", "rule"};
  for (const auto& r : rows) {
    out.push_back(json{{"d", to_json(r.d)},
                       {"beta", table_cell(r)},
                       {"exact", r.interval.exact},
                       {"interval", to_json(r.interval)},
                       {"rule", to_string(r.rule)}});
    cites.push_back(json{{"d", to_json(r.d)}, {"rule", to_string(r.rule)}, {"interval", interval_citations(r.interval)}});
  }
  env.results["rows"] = out;
  env.citations["rows"] = cites;
  env.markdown_override = render_table_markdown(rows);
  env.csv_override = render_table_csv(rows);
  return env;
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const json& x) { return x.is_structured(); })) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += (ch == '"') ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

void render(const Envelope& env, const std::string& format, std::ostream& out, const json& full) {
  if (format == "json") {
    out << full.dump(2) << '\n';
    return;
  }
  const bool csv = (format == "csv");
  if (csv && env.csv_override) {
    out << *env.csv_override;
    return;
  }
  if (!csv && env.markdown_override) {
    out << *env.markdown_override;
    return;
  }
  std::vector<std::string> columns = env.columns;
  std::vector<std::vector<std::string>> rows = env.rows;
  if (columns.empty()) {
    columns = {"key", "value"};
    std::vector<std::pair<std::string, std::string>> kv;
    flatten(env.results, "", kv);
    for (auto& [k, v] : kv) rows.push_back({k, v});
  }
  if (csv) {
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << csv_field(columns[i]);
    out << '\n';
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csv_field(r[i]);
      out << '\n';
    }
    return;
  }
  out << '|';
  for (const auto& c : columns) out << ' ' << c << " |";
  out << "\n|";
  for (std::size_t i = 0; i < columns.size(); ++i) out << "---|";
  out << '\n';
  for (const auto& r : rows) {
    out << '|';
    for (const auto& cell : r) out << ' ' << cell << " |";
    out << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact polarization and basepoint-freeness threshold bounds on products of elliptic curves", "polbeta"};
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format, "json | csv | markdown")
      ->check(CLI::IsMember({"json", "csv", "markdown"}))
      ->capture_default_str();

  ClassOptions cls_opt;
  std::vector<CLI::App*> class_cmds;
  for (const char* name : {"chi", "type", "kgroup", "ample"}) {
    auto* sub = app.add_subcommand(name, std::string("class ") + name);
    cls_opt.attach(sub, true);
    class_cmds.push_back(sub);
  }

  BoxOptions box_opt;
  std::vector<long> general;
  std::optional<bool> search;
  auto* beta = app.add_subcommand("beta", "threshold interval for a class or for the general member of type (1,...,1,d)");
  cls_opt.attach(beta, false);
  beta->add_option("--general", general, "g d")->expected(2);
  box_opt.attach(beta);
  beta->add_flag("--search,!--no-search", search, "include the box search (default: on for g <= 3)");

  int g = 0;
  long d = 0;
  auto* search_cmd = app.add_subcommand("search", "ranked certificates over a parameter box");
  search_cmd->add_option("--g", g, "dimension")->required();
  search_cmd->add_option("--d", d, "target chi")->required();
  box_opt.attach(search_cmd);

  auto* np_cmd = app.add_subcommand("np", "property (N_p) verdicts for type (1,...,1,d)");
  np_cmd->add_option("--g", g, "dimension")->required();
  np_cmd->add_option("--d", d, "type")->required();
  np_cmd->add_flag("--search,!--no-search", search, "include the default box search (default: off)");

  long d_max = 16;
  auto* table_cmd = app.add_subcommand("table", "threshold table for abelian surfaces of type (1,d)");
  table_cmd->add_option("--max", d_max, "largest d")->capture_default_str();
  for (auto* sub : class_cmds) sub->fallthrough();
  for (auto* sub : {beta, search_cmd, np_cmd, table_cmd}) sub->fallthrough();

  std::string command;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    command = app.get_subcommands().front()->get_name();
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_parse;
  }

  auto fail = [&](int code, const std::string& kind, const std::string& message) {
    err << "error: " << message << '\n';
    if (format == "json") {
      json j;
      j["schema"] = 1;
      j["command"] = command;
      j["argv"] = args;
      j["error"] = json{{"kind", kind}, {"message", message}, {"exit_code", code}};
      out << j.dump(2) << '\n';
    }
    return code;
  };

  try {
    Envelope env;
    if (command == "chi") env = cmd_chi(cls_opt);
    else if (command == "type") env = cmd_type(cls_opt);
    else if (command == "kgroup") env = cmd_kgroup(cls_opt);
    else if (command == "ample") env = cmd_ample(cls_opt);
    else if (command == "beta") {
      if (!general.empty()) {
        if (!cls_opt.a.empty()) throw std::invalid_argument("beta: give either --general or a class, not both");
        env = beta_general(static_cast<int>(general[0]), general[1], box_opt, search);
      } else {
        if (cls_opt.a.empty()) throw std::invalid_argument("beta: need --general g d or a class (--g, --k, --a, --c)");
        env = beta_explicit(cls_opt);
      }
    } else if (command == "search") env = cmd_search(g, d, box_opt);
    else if (command == "np") env = cmd_np(g, d, search);
    else env = cmd_table(d_max);

    json full;
    full["schema"] = 1;
    full["command"] = command;
    full["argv"] = args;
    full["format"] = format;
    full["inputs"] = env.inputs;
    full["results"] = env.results;
    full["citations"] = env.citations;
    render(env, format, out, full);
    return exit_ok;
  } catch (const OracleMismatch& e) {
    return fail(exit_oracle, "oracle-mismatch", e.what());
  } catch (const NoCertificate& e) {
    return fail(exit_no_certificate, "no-certificate", e.what());
  } catch (const std::invalid_argument& e) {
    return fail(exit_parse, "invalid-input", e.what());
  } catch (const std::out_of_range& e) {
    return fail(exit_parse, "invalid-input", e.what());
  } catch (const std::overflow_error& e) {
    return fail(exit_parse, "invalid-input", e.what());
  } catch (const std::exception& e) {
    return fail(exit_oracle, "internal", e.what());
  }
}

}  // namespace polbeta::cli
