#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <filesystem>

#include "hopfinv/algebra_io.hpp"
#include "hopfinv/algebrazoo.hpp"
#include "hopfinv/calibration.hpp"
#include "hopfinv/invariant.hpp"
#include "hopfinv/oracles.hpp"

namespace py = pybind11;
using namespace hopfinv;

namespace {

// The checked-in record when the source tree is around, else a fresh
// calibration (installed wheels).
const ConventionRecord& record() {
    static const ConventionRecord rec = [] {
        auto path = default_record_path();
        if (std::filesystem::exists(path)) return ConventionRecord::load(path);
        return calibrate_conventions();
    }();
    return rec;
}

HopfAlgebra algebra(const std::string& src) {
    if (src.rfind("zoo:", 0) == 0) return zoo_algebra(src.substr(4));
    if (std::filesystem::exists(src)) return load_algebra(src);
    return zoo_algebra(src);
}

Diagram diagram(const std::string& src) {
    if (src.rfind("builtin:", 0) == 0) return builtin_diagram(src.substr(8), record());
    if (std::filesystem::exists(src)) return load_diagram(src);
    return builtin_diagram(src, record());
}

}  // namespace

PYBIND11_MODULE(hopfinv, m) {
    m.doc() = "Exact Hopf-algebra invariants of 3-manifolds";

    py::register_exception<Error>(m, "HopfinvError", PyExc_RuntimeError);

    py::class_<HopfAlgebra>(m, "Algebra")
        .def(py::init(&algebra), py::arg("source"))
        .def_property_readonly("name", &HopfAlgebra::name)
        .def_property_readonly("dim", &HopfAlgebra::dim)
        .def_property_readonly("order", &HopfAlgebra::order)
        .def("verify", [](const HopfAlgebra& H) { return verify_axioms(H).ok(); })
        .def("to_json", &algebra_to_json)
        .def("info", [](const HopfAlgebra& H) {
            auto D = derived_for(H, record().hopf);
            py::dict d;
            d["q"] = D->q.to_string();
            d["sigma"] = D->sigma;
            d["balanced"] = D->balanced;
            d["involutory"] = D->involutory;
            d["trace_S"] = trace_S_power(H, 1).to_string();
            d["trace_S_inv"] = trace_S_power(H, -1).to_string();
            return d;
        });

    py::class_<Diagram>(m, "Diagram")
        .def(py::init(&diagram), py::arg("source"))
        .def_static("from_json", &diagram_from_json)
        .def_readonly("name", &Diagram::name)
        .def_readonly("genus", &Diagram::genus)
        .def_property_readonly("crossings", &Diagram::crossing_count)
        .def("to_json", &diagram_to_json)
        .def("move", [](const Diagram& d, const std::string& spec) { return apply_move(d, Move::parse(spec), record()); })
        .def("moves", [](const Diagram& d) {
            std::vector<std::string> out;
            for (auto& mv : applicable_moves(d)) out.push_back(mv.to_string());
            return out;
        })
        .def("intersection_matrix", &intersection_matrix)
        .def("__eq__", [](const Diagram& a, const Diagram& b) { return a == b; })
        .def("__add__", [](const Diagram& a, const Diagram& b) { return connected_sum(a, b); });

    m.def("builtin_names", &builtin_names);
    m.def(
        "invariant",
        [](const HopfAlgebra& H, const Diagram& d, bool combed, const std::string& plan) {
            PlanKind p = plan == "naive" ? PlanKind::Naive : PlanKind::Greedy;
            auto r = combed ? evaluate_combed(d, H, record(), p) : evaluate(d, H, record(), p);
            return r.value.to_string();
        },
        py::arg("algebra"), py::arg("diagram"), py::arg("combed") = false, py::arg("plan") = "greedy");
    m.def("hom_count", [](const Diagram& d, const std::string& group) {
        return hom_count(pi1_presentation(d), group_by_name(group));
    });
    m.def("h1_order", [](const Diagram& d) { return h1_order(d).get_str(); });
    m.def("presentation", [](const Diagram& d) { return pi1_presentation(d).to_string(); });
    m.def("calibrate", [] { return calibrate_conventions().to_json(); });
    m.def("record", [] { return record().to_json(); });
}
