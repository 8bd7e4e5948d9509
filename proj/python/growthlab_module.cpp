#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "growthlab/cayley.hpp"
#include "growthlab/elemset.hpp"
#include "growthlab/families.hpp"
#include "growthlab/poly.hpp"
#include "growthlab/structure.hpp"
#include "growthlab/sumprod.hpp"
#include "growthlab/torus.hpp"

namespace py = pybind11;
using namespace growthlab;

namespace {

GroupElement element_from_list(const FieldParams& fp, const std::vector<std::uint32_t>& entries) {
  return GroupElement::from_entries(fp, entries);
}

ElementSet set_from_lists(const FieldParams& fp,
                          const std::vector<std::vector<std::uint32_t>>& rows) {
  std::vector<GroupElement> elems;
  for (const auto& r : rows) elems.push_back(GroupElement::from_entries(fp, r));
  if (elems.empty()) return ElementSet(fp);
  return ElementSet::from_elements(elems);
}

std::vector<std::vector<std::uint32_t>> set_to_lists(const ElementSet& s) {
  std::vector<std::vector<std::uint32_t>> out;
  for (const auto& g : s.elements()) {
    std::vector<std::uint32_t> row(g.params().dim());
    for (int i = 0; i < g.params().dim(); i++) row[i] = g.entry(i);
    out.push_back(row);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_growthlab, m) {
  m.doc() = "exact growth experiments in SL_2(F_p) and SL_3(F_p)";
  m.attr("__version__") = kVersion;

  py::register_exception<ConfigError>(m, "ConfigError");

  py::class_<FieldParams>(m, "FieldParams")
      .def(py::init<std::uint32_t, int>(), py::arg("p"), py::arg("n"))
      .def_readonly("p", &FieldParams::p)
      .def_readonly("n", &FieldParams::n)
      .def("group_order", &FieldParams::group_order);

  py::class_<GroupElement>(m, "GroupElement")
      .def(py::init(&element_from_list), py::arg("params"), py::arg("entries"))
      .def_static("identity", &GroupElement::identity)
      .def("entries",
           [](const GroupElement& g) {
             std::vector<std::uint32_t> out(g.params().dim());
             for (int i = 0; i < g.params().dim(); i++) out[i] = g.entry(i);
             return out;
           })
      .def("encode", [](const GroupElement& g) { return code_to_string(g.encode()); })
      .def("trace", &GroupElement::trace)
      .def("__eq__", [](const GroupElement& a, const GroupElement& b) { return a == b; })
      .def("__repr__", &GroupElement::str);

  m.def("mul", [](const GroupElement& a, const GroupElement& b) { return mul(a, b); });
  m.def("inv", [](const GroupElement& a) { return inv(a); });
  m.def("kappa", [](const GroupElement& g) {
    Kappa k = kappa(g);
    std::vector<std::uint32_t> out(k.coeffs.begin(), k.coeffs.begin() + k.count);
    return out;
  });
  m.def("is_regular_semisimple", &is_regular_semisimple);
  m.def("random_element", [](const FieldParams& fp, std::uint64_t seed) {
    Rng rng(seed);
    return random_element(fp, rng);
  });
  m.def("standard_generators", &standard_generators);

  py::class_<ElementSet>(m, "ElementSet")
      .def(py::init(&set_from_lists), py::arg("params"), py::arg("elements"))
      .def("__len__", &ElementSet::size)
      .def("elements", &set_to_lists)
      .def("save", &ElementSet::save)
      .def_static("load", &ElementSet::load)
      .def("contains",
           [](const ElementSet& s, const GroupElement& g) { return s.contains(g.encode()); });

  m.def("from_generators", [](const FieldParams& fp) {
    return ElementSet::from_elements(standard_generators(fp));
  });

  m.def("product", [](const ElementSet& a, const ElementSet& b) {
    auto r = product(a, b);
    if (r.overflow) throw ConfigError("memory cap exceeded");
    return r.set;
  });

  m.def("ball_sizes", [](const ElementSet& a, int k) {
    auto r = ball(a, k);
    return r.profile.sizes;
  });

  m.def("triple_stats", [](const ElementSet& a) {
    auto r = triple_stats(a);
    py::dict d;
    d["size_a"] = r.size_a;
    d["size_aa"] = r.size_aa;
    d["size_aaa"] = r.size_aaa;
    d["delta"] = r.delta;
    d["lower_bound"] = r.lower_bound;
    return d;
  });

  m.def("closure_order", [](const ElementSet& a, std::size_t cap) -> py::object {
    auto c = closure(a, cap);
    if (!c) return py::none();
    return py::cast(c->size());
  });

  m.def("diameter", [](const ElementSet& a) {
    auto d = diameter(a);
    py::dict out;
    out["diameter"] = d.diameter;
    out["sizes"] = d.sizes;
    out["generates"] = d.generates;
    out["reached"] = d.reached;
    return out;
  });

  m.def("spectral_gap", [](const ElementSet& a) {
    auto e = spectral_gap(a);
    py::dict out;
    out["lambda1"] = e.lambda1;
    out["lambda2"] = e.lambda2;
    out["gap"] = e.gap;
    return out;
  });

  m.def("classify_sl3", [](const ElementSet& a) {
    auto f = classify_sl3(a);
    py::dict out;
    out["fixes_point"] = f.fixes_point;
    out["fixes_line"] = f.fixes_line;
    out["preserves_quadratic_form"] = f.preserves_quadratic_form;
    out["abelian_index_le6"] = f.abelian_index_le6;
    out["order_le_1080"] = f.order_le_1080;
    out["full_group"] = f.full_group;
    out["closure_size"] = f.closure_size;
    return out;
  });

  m.def("classify_sl2", [](const ElementSet& a) {
    auto f = classify_sl2(a);
    py::dict out;
    out["in_borel"] = f.in_borel;
    out["in_torus_normalizer"] = f.in_torus_normalizer;
    out["order_le_120"] = f.order_le_120;
    out["full_group"] = f.full_group;
    out["closure_size"] = f.closure_size;
    return out;
  });

  m.def("betson_classify",
        [](const ElementSet& h) { return std::string(unipotent_type_name(betson_classify(h))); });

  m.def("u1u2_factorize", [](const GroupElement& g) {
    auto f = u1u2_factorize(g);
    return py::make_tuple(f.u1, f.u2, f.u1p, f.u2p);
  });

  m.def("escape_regss", [](const ElementSet& a, const GroupElement& g0, int m_max) -> py::object {
    auto w = escape_regss(a, g0, m_max);
    if (!w) return py::none();
    return py::make_tuple(w->g, w->radius);
  });

  m.def("worot_fiber_scan", [](std::uint32_t p) {
    auto r = worot_fiber_scan(p);
    py::dict out;
    out["torus_size"] = r.torus_size;
    out["regular_semisimple"] = r.regular_semisimple;
    out["max_fiber"] = r.max_fiber;
    return out;
  });

  m.def("build_family", [](const std::string& name, std::uint32_t p, std::uint64_t N,
                           std::uint64_t x, double eps) {
    FamilySpec spec{family_from_string(name), p, N, x, eps};
    return build_family(spec);
  },
        py::arg("name"), py::arg("p"), py::arg("N"), py::arg("x") = 0, py::arg("eps") = 0.0);

  m.def("family_regression", [](const std::string& name, std::uint32_t p, std::uint64_t N,
                                std::uint64_t x, double eps) {
    FamilySpec spec{family_from_string(name), p, N, x, eps};
    auto r = family_regression(spec);
    py::dict out;
    out["size_a"] = r.growth.size_a;
    out["size_aaa"] = r.growth.size_aaa;
    out["bound"] = r.bound;
    out["pass"] = r.pass;
    return out;
  },
        py::arg("name"), py::arg("p"), py::arg("N"), py::arg("x") = 0, py::arg("eps") = 0.0);

  m.def("gk_check", [](std::uint32_t p, const std::vector<std::uint64_t>& a,
                       const std::vector<std::uint64_t>& y) {
    RingSet A(p, 1), Y(p, 1);
    for (auto v : a) A.insert(v % p);
    for (auto v : y) Y.insert(v % p);
    auto r = gk_check(A, Y);
    return py::make_tuple(r.lhs, r.bound_num, r.pass);
  });

  m.def("sumprod_stats", [](std::uint32_t p, const std::vector<std::uint64_t>& a) {
    RingSet A(p, 1);
    for (auto v : a) A.insert(v % p);
    auto s = sumprod_stats(A);
    py::dict out;
    out["size"] = s.size_a;
    out["sum_size"] = s.sum_size;
    out["prod_size"] = s.prod_size;
    out["exponent"] = s.exponent;
    return out;
  });
}
