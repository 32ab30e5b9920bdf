// Python bindings. Words cross the boundary as strings in the CLI syntax
// ("abA", uppercase = inverse), subgroups as opaque handles.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stallings/stallings.hpp"

namespace py = pybind11;
using namespace stallings;

namespace {

std::string fmt(const Word& w, const Alphabet& a) { return format_word(w, a); }

std::vector<std::string> fmt_all(const std::vector<Word>& ws, const Alphabet& a) {
  std::vector<std::string> out;
  for (const Word& w : ws) out.push_back(fmt(w, a));
  return out;
}

std::vector<Word> parse_all(const std::vector<std::string>& gens, const Alphabet& a) {
  std::vector<Word> out;
  for (const std::string& g : gens) out.push_back(parse_word(g, a));
  return out;
}

SubgroupHandle make(const std::vector<std::string>& gens, std::size_t rank) {
  Alphabet a(rank);
  return stallings::stallings(a, parse_all(gens, a));
}

}  // namespace

PYBIND11_MODULE(_stallings, m) {
  m.doc() = "Stallings automata for finitely generated subgroups of free groups";

  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<ResourceLimit>(m, "ResourceLimit", PyExc_RuntimeError);
  py::register_exception<PreconditionViolation>(m, "PreconditionViolation", PyExc_ValueError);

  m.def("reduce", [](const std::string& w, std::size_t rank) {
    Alphabet a(rank);
    return fmt(reduce(parse_word(w, a)), a);
  }, py::arg("word"), py::arg("rank") = 2);

  m.def("cyclic_reduce", [](const std::string& w, std::size_t rank) {
    Alphabet a(rank);
    CyclicReduction c = cyclic_reduce(parse_word(w, a));
    return std::make_pair(fmt(c.core, a), fmt(c.conjugator, a));
  }, py::arg("word"), py::arg("rank") = 2);

  py::class_<SubgroupHandle>(m, "Subgroup")
      .def(py::init(&make), py::arg("generators"), py::arg("rank") = 2)
      .def_static("from_text", [](const std::string& t) { return SubgroupHandle(from_text(t)); })
      .def_property_readonly("ambient_rank", [](const SubgroupHandle& h) { return h.alphabet().rank; })
      .def_property_readonly("size", &SubgroupHandle::size)
      .def_property_readonly("rank", &SubgroupHandle::rank)
      .def_property_readonly("reduced_rank", &SubgroupHandle::reduced_rank)
      .def("basis", [](const SubgroupHandle& h) { return fmt_all(basis(h), h.alphabet()); })
      .def("contains", [](const SubgroupHandle& h, const std::string& w) {
        return is_member(parse_word(w, h.alphabet()), h);
      })
      .def("__contains__", [](const SubgroupHandle& h, const std::string& w) {
        return is_member(parse_word(w, h.alphabet()), h);
      })
      .def("is_subgroup_of", [](const SubgroupHandle& h, const SubgroupHandle& k) { return is_subgroup(h, k); })
      .def("index", [](const SubgroupHandle& h) -> py::object {
        IndexReport r = index(h);
        if (!r.finite) return py::none();
        return py::int_(r.index);
      })
      .def("transversal", [](const SubgroupHandle& h) { return fmt_all(index(h).transversal, h.alphabet()); })
      .def("is_normal", [](const SubgroupHandle& h) { return is_normal(h); })
      .def("conjugate", [](const SubgroupHandle& h, const std::string& w) {
        return conjugate(h, parse_word(w, h.alphabet()));
      })
      .def("intersect", [](const SubgroupHandle& h, const SubgroupHandle& k) { return intersect(h, k); })
      .def("is_malnormal", [](const SubgroupHandle& h) { return is_malnormal(h).malnormal; })
      .def("is_free_factor_of", [](const SubgroupHandle& h, const SubgroupHandle& k) {
        return is_free_factor(h, k);
      })
      .def("fringe", [](const SubgroupHandle& h) { return fringe(h); })
      .def("algebraic_extensions", [](const SubgroupHandle& h) { return algebraic_extensions(h); })
      .def("spectrum", [](const SubgroupHandle& h) {
        SpectrumReport s = spectrum(h);
        std::vector<std::size_t> out;
        if (s.has_zero) out.push_back(0);
        out.insert(out.end(), s.orders.begin(), s.orders.end());
        return out;
      })
      .def("is_pure", [](const SubgroupHandle& h) { return is_pure(h); })
      .def("pure_closure", [](const SubgroupHandle& h) { return pure_closure(h).result; })
      .def("to_text", [](const SubgroupHandle& h) { return to_text(h.automaton()); })
      .def("to_dot", [](const SubgroupHandle& h) { return to_dot(h.automaton()); })
      .def("__eq__", [](const SubgroupHandle& a, const SubgroupHandle& b) { return a == b; })
      .def("__hash__", [](const SubgroupHandle& h) { return std::hash<std::string>{}(to_text(h.automaton())); })
      .def("__repr__", [](const SubgroupHandle& h) {
        return "<Subgroup " + format_words(basis(h), h.alphabet()) + ">";
      });

  m.def("are_conjugate", [](const SubgroupHandle& h1, const SubgroupHandle& h2) -> py::object {
    auto w = are_conjugate(h1, h2);
    if (!w) return py::none();
    return py::str(fmt(*w, h1.alphabet()));
  });
  m.def("relative_order", [](const std::string& w, const SubgroupHandle& h) {
    return relative_order(parse_word(w, h.alphabet()), h);
  });
  m.def("hall_count", [](std::size_t k, std::size_t n) {
    return py::int_(py::str(hall_count(k, n).str()));
  }, py::arg("k"), py::arg("rank") = 2);
  m.def("enumerate_index", [](std::size_t k, std::size_t n) { return enumerate_index(k, n); },
        py::arg("k"), py::arg("rank") = 2);
  m.def("sample_subgroup", &sample_subgroup, py::arg("k"), py::arg("rank") = 2, py::arg("seed") = 0);
  m.def("todd_coxeter", [](const std::vector<std::string>& relators, const std::vector<std::string>& subgroup,
                           std::size_t rank, std::size_t max_layers) -> py::object {
    Alphabet a(rank);
    TcOptions opt;
    opt.max_layers = max_layers;
    TcResult r = todd_coxeter(Presentation(a, parse_all(relators, a)), parse_all(subgroup, a), opt);
    if (r.timed_out()) return py::none();
    return py::make_tuple(r.table->index, fmt_all(r.table->transversal, a));
  }, py::arg("relators"), py::arg("subgroup"), py::arg("rank") = 2, py::arg("max_layers") = 64);
}
