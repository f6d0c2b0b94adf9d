#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "polbeta/constructor.hpp"
#include "polbeta/errors.hpp"
#include "polbeta/surfacetable.hpp"
#include "polbeta/syzygy.hpp"

namespace py = pybind11;
using namespace polbeta;

namespace {

py::object to_py(const Integer& z) { return py::module_::import("builtins").attr("int")(z.get_str()); }

py::object to_py(const Rational& q) {
  return py::module_::import("fractions").attr("Fraction")(to_py(Integer(q.get_num())), to_py(Integer(q.get_den())));
}

py::list to_py(const std::vector<Integer>& v) {
  py::list out;
  for (const auto& z : v) out.append(to_py(z));
  return out;
}

py::object to_py(const std::optional<int>& p) { return p ? py::object(py::int_(*p)) : py::object(py::none()); }

// Rational bounds become Fractions; n^(-1/g) stays a string.
py::object to_py(const BoundValue& b) { return b.is_rational() ? to_py(b.as_rational()) : py::object(py::str(b.to_string())); }

py::dict to_py(const BetaInterval& iv) {
  py::dict d;
  d["lower"] = to_py(iv.lower);
  d["lower_strict"] = iv.lower_strict;
  d["lower_source"] = iv.lower_source;
  d["upper"] = to_py(iv.upper);
  d["upper_strict"] = iv.upper_strict;
  d["upper_source"] = iv.upper_source;
  d["exact"] = iv.exact;
  d["scope"] = to_string(iv.scope);
  d["strictly_below"] = iv.strictly_below ? to_py(*iv.strictly_below) : py::object(py::none());
  return d;
}

py::dict to_py(const NpCertificate& np) {
  py::dict d;
  d["g"] = np.g;
  d["d"] = to_py(np.d);
  d["p_from_beta"] = to_py(np.p_from_beta);
  d["p_arithmetic"] = to_py(np.p_arithmetic);
  d["guaranteed"] = to_py(np.guaranteed);
  d["source"] = to_string(np.source);
  d["basepoint_free_possible"] = np.basepoint_free_possible;
  d["projectively_normal_possible"] = np.projectively_normal_possible;
  return d;
}

py::dict to_py(const Certificate& c) {
  py::dict d;
  d["kind"] = to_string(c.params.kind);
  d["g"] = c.params.g;
  d["k"] = c.params.k;
  d["coeffs"] = c.params.coeffs;
  d["c"] = c.params.c;
  d["type"] = to_py(c.type.d);
  d["chi"] = to_py(c.chi_pfaffian);
  d["k_group"] = to_py(c.k_group.divisors);
  d["ample"] = c.ample;
  d["flag_bound"] = to_py(c.flag.bound);
  d["flag_order"] = c.flag.order;
  d["flag_chis"] = to_py(c.flag.chis);
  d["flag_lower"] = to_py(c.flag_lower);
  d["interval"] = to_py(c.interval);
  d["np"] = to_py(c.np);
  return d;
}

DivisorClass make_class(int g, std::vector<long> k, std::vector<long> a, long c) {
  return DivisorClass::make(ConstructionSpace(g, std::move(k)), std::move(a), c);
}

SearchBox make_box(int g, long d, std::optional<long> max_a, std::optional<long> max_b, std::optional<long> max_k,
                   long max_c, bool generalized, std::size_t limit, unsigned threads) {
  SearchBox box = SearchBox::defaults(g, d);
  if (max_a) box.max_a = *max_a;
  if (max_b) box.max_b = *max_b;
  if (max_k) box.max_k = *max_k;
  box.max_c = max_c;
  box.generalized = generalized;
  box.limit = limit;
  box.threads = threads;
  return box;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact threshold computations for polarized abelian varieties.";
  py::register_exception<OracleMismatch>(m, "OracleMismatch", PyExc_ArithmeticError);

  m.def("chi", [](int g, std::vector<long> k, std::vector<long> a, long c) {
    DivisorClass cls = make_class(g, std::move(k), std::move(a), c);
    const Integer pf = chi_pfaffian(alt_form(cls));
    if (chi_multilinear(cls) != pf) throw OracleMismatch("chi oracles disagree");
    return to_py(pf);
  }, py::arg("g"), py::arg("k"), py::arg("a"), py::arg("c") = 1);

  m.def("polarization_type", [](int g, std::vector<long> k, std::vector<long> a, long c) {
    return to_py(polarization_type(alt_form(make_class(g, std::move(k), std::move(a), c))).d);
  }, py::arg("g"), py::arg("k"), py::arg("a"), py::arg("c") = 1);

  m.def("k_group", [](int g, std::vector<long> k, std::vector<long> a, long c) {
    return to_py(k_group(alt_form(make_class(g, std::move(k), std::move(a), c))).divisors);
  }, py::arg("g"), py::arg("k"), py::arg("a"), py::arg("c") = 1);

  m.def("is_ample", [](int g, std::vector<long> k, std::vector<long> a, long c) {
    return is_ample(alt_form(make_class(g, std::move(k), std::move(a), c)));
  }, py::arg("g"), py::arg("k"), py::arg("a"), py::arg("c") = 1);

  m.def("certify", [](int g, std::vector<long> k, std::vector<long> a, long c) {
    return to_py(certify(ConstructionParams::from_class(make_class(g, std::move(k), std::move(a), c))));
  }, py::arg("g"), py::arg("k"), py::arg("a"), py::arg("c") = 1);

  m.def("search", [](int g, long d, std::optional<long> max_a, std::optional<long> max_b, std::optional<long> max_k,
                     long max_c, bool generalized, std::size_t limit, unsigned threads) {
    SearchResult sr;
    {
      py::gil_scoped_release release;
      sr = brute_search(g, d, make_box(g, d, max_a, max_b, max_k, max_c, generalized, limit, threads));
    }
    py::list certs;
    for (const auto& c : sr.certificates) certs.append(to_py(c));
    py::dict out;
    out["certificates"] = certs;
    out["candidates"] = sr.candidates;
    out["diagnostic"] = sr.diagnostic;
    return out;
  }, py::arg("g"), py::arg("d"), py::arg("max_a") = py::none(), py::arg("max_b") = py::none(),
     py::arg("max_k") = py::none(), py::arg("max_c") = 1, py::arg("generalized") = false, py::arg("limit") = 0,
     py::arg("threads") = 0);

  m.def("general_beta", [](int g, long d, bool search) {
    std::optional<SearchBox> box;
    if (search) box = SearchBox::defaults(g, d);
    GeneralBeta gb = general_beta(g, d, box);
    py::list witnesses;
    for (const auto& w : gb.witnesses) witnesses.append(to_py(w));
    py::dict out;
    out["interval"] = to_py(gb.interval);
    out["best"] = gb.best ? py::object(to_py(*gb.best)) : py::object(py::none());
    out["trivial_marker"] = gb.trivial_marker;
    out["witnesses"] = witnesses;
    out["np"] = to_py(np_certificate(g, d, gb.interval));
    return out;
  }, py::arg("g"), py::arg("d"), py::arg("search") = false);

  m.def("np_threshold", [](int g, int p) { return to_py(np_threshold(g, p)); }, py::arg("g"), py::arg("p"));
  m.def("max_np_arithmetic", [](int g, long d) { return to_py(max_np_arithmetic(g, d)); }, py::arg("g"), py::arg("d"));

  m.def("surface_beta", [](long d) {
    SurfaceRuleResult r = surface_beta(d);
    py::dict out;
    out["d"] = to_py(r.d);
    out["rule"] = to_string(r.rule);
    out["interval"] = to_py(r.interval);
    out["cell"] = table_cell(r);
    return out;
  }, py::arg("d"));

  m.def("surface_table", [](long d_max, const std::string& format) {
    auto rows = generate_table(d_max);
    if (format == "markdown") return py::object(py::str(render_table_markdown(rows)));
    if (format == "csv") return py::object(py::str(render_table_csv(rows)));
    if (format != "cells") throw std::invalid_argument("surface_table: format must be cells, markdown or csv");
    py::list cells;
    for (const auto& r : rows) cells.append(table_cell(r));
    return py::object(cells);
  }, py::arg("d_max") = 16, py::arg("format") = "cells");
}
