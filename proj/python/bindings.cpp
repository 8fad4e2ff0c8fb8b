#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "isoforge/blocks.hpp"
#include "isoforge/isometry.hpp"
#include "isoforge/parallel.hpp"
#include "isoforge/tables.hpp"

namespace py = pybind11;
using namespace isoforge;

namespace {

py::dict table_dict(const CharTable& t) {
  py::dict d;
  d["family"] = t.family;
  d["params"] = t.params;
  d["order"] = t.order;
  py::list cls;
  for (auto& c : t.classes) cls.append(py::make_tuple(c.key(), c.central_order));
  d["classes"] = cls;
  py::list chars;
  for (int a = 0; a < t.num_chars(); ++a) {
    std::vector<std::string> row;
    for (auto& v : t.values[a]) row.push_back(v.str());
    chars.append(py::make_tuple(t.chars[a].key(), row));
  }
  d["characters"] = chars;
  return d;
}

py::dict check_dict(const CheckResult& c) {
  py::list w;
  for (auto& x : c.witnesses) w.append(py::make_tuple(x.check, x.x, x.y, x.value, x.detail));
  py::dict d;
  d["ran"] = c.ran;
  d["pass"] = c.ran ? c.pass : true;
  d["witnesses"] = w;
  return d;
}

IsometryRequest request(const std::string& kind, int p, int w, int n, int l, const std::string& core1,
                        const std::string& core2, const std::string& weights, const std::string& cover1) {
  IsometryRequest q;
  q.kind = kind;
  q.p = p;
  q.w = w;
  q.n = n;
  q.l = l;
  q.core1 = core1;
  q.core2 = core2;
  q.weights = weights;
  q.cover1 = cover1;
  return q;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact character tables and perfect isometry certificates";

  m.def("table", [](const std::string& family, int a, int b) { return table_dict(cached_table(family, a, b)); },
        py::arg("family"), py::arg("a"), py::arg("b") = 0);

  m.def(
      "blocks",
      [](const std::string& family, int a, int b, int p, const std::string& classes) {
        const CharTable& t = cached_table(family, a, b);
        auto kb = kor_blocks(t, class_subset(t, classes, p));
        auto th = theoretical_blocks(t, p);
        py::list out;
        for (auto& bl : th.blocks) {
          std::vector<std::string> chars;
          for (int c : bl.chars) chars.push_back(t.chars[c].key());
          out.append(py::make_tuple(bl.core, bl.weight, chars));
        }
        return py::make_tuple(out, same_partition(kb, th));
      },
      py::arg("family"), py::arg("a"), py::arg("b") = 0, py::arg("p") = 3, py::arg("classes") = "p-regular");

  m.def(
      "verify",
      [](const std::string& kind, int p, int w, int n, int l, const std::string& core1, const std::string& core2,
         const std::string& weights, const std::string& cover1, const std::string& mode) {
        Isometry iso;
        {
          py::gil_scoped_release nogil;
          iso = build_isometry(request(kind, p, w, n, l, core1, core2, weights, cover1));
        }
        VerificationReport r;
        {
          py::gil_scoped_release nogil;
          r = verify(iso, mode.empty() ? iso.mode : mode);
        }
        py::list map;
        for (size_t k = 0; k < iso.src_block.size(); ++k)
          map.append(py::make_tuple(iso.source->chars[iso.src_block[k]].key(), iso.sign[k],
                                    iso.target->chars[iso.image[k]].key()));
        py::dict d;
        d["source"] = iso.source->family;
        d["target"] = iso.target->family;
        d["theorem_mode"] = iso.mode;
        d["mode"] = r.mode;
        d["pass"] = r.ok();
        d["map"] = map;
        d["mixed_vanishing"] = check_dict(r.mixed_vanishing);
        d["broue_integrality"] = check_dict(r.broue_integrality);
        d["kor_gram"] = check_dict(r.kor_gram);
        d["r_commutation"] = check_dict(r.r_commutation);
        return d;
      },
      py::arg("kind"), py::arg("p") = 3, py::arg("w") = -1, py::arg("n") = -1, py::arg("l") = 2,
      py::arg("core1") = "", py::arg("core2") = "", py::arg("weights") = "", py::arg("cover1") = "",
      py::arg("mode") = "");

  m.def("is_p_integral", [](const std::string& value, int p) { return is_p_integral(ExactScalar::parse(value), p); });
  m.def("thread_count", &thread_count);

  py::register_exception<std::invalid_argument>(m, "RequestError", PyExc_ValueError);
}
