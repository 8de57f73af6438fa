#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "skaff/catalog.hpp"
#include "skaff/diagram.hpp"
#include "skaff/duality.hpp"
#include "skaff/errors.hpp"
#include "skaff/evaluate.hpp"
#include "skaff/json_io.hpp"
#include "skaff/scheme.hpp"
#include "skaff/translation.hpp"

namespace py = pybind11;
using namespace skaff;

namespace {

std::vector<std::vector<cplx>> square(const std::vector<cplx>& flat, int m) {
    std::vector<std::vector<cplx>> rows(m);
    for (int r = 0; r < m; ++r)
        rows[r].assign(flat.begin() + static_cast<long>(r) * m, flat.begin() + static_cast<long>(r + 1) * m);
    return rows;
}

std::string slot_name(const Diagram& d, int edge) {
    int m = static_cast<int>(d.edges.size());
    return edge < m ? d.edges[edge].id : "b" + std::to_string(edge - m + 1);
}

py::dict face_dict(const Diagram& d) {
    auto fs = trace_faces(d);
    py::list faces;
    for (const auto& face : fs.faces) {
        py::list fj;
        for (const auto& t : face) fj.append(slot_name(d, t.edge) + (t.forward ? ":f" : ":b"));
        faces.append(fj);
    }
    py::dict out;
    out["count"] = fs.faces.size();
    out["faces"] = faces;
    out["outer"] = fs.outer_face;
    out["boundary"] = fs.boundary_face;
    out["root_faces"] = fs.root_faces;
    return out;
}

py::dict edge_dict(const Diagram& d, const DiagramEdge& e) {
    py::dict out;
    out["id"] = e.id;
    out["tail"] = d.nodes[e.tail];
    out["head"] = d.nodes[e.head];
    out["basis"] = e.weight.basis == Basis::A ? "A" : "E";
    int pure = e.weight.pure_index();
    if (pure >= 0)
        out["index"] = pure;
    else
        out["coeffs"] = e.weight.coeffs;
    return out;
}

py::dict report_dict(const DualityReport& rep) {
    py::dict out;
    out["pass"] = rep.pass;
    out["ell"] = rep.ell;
    out["nodes"] = rep.nodes;
    out["scalar"] = rep.scalar;
    out["max_residual"] = rep.max_residual;
    out["gamma_residual"] = rep.gamma_residual;
    out["eval_primal_ms"] = rep.eval_primal_ms;
    out["eval_dual_ms"] = rep.eval_dual_ms;
    out["transform_ms"] = rep.transform_ms;
    return out;
}

ScaffoldTensor eval_dispatch(const Diagram& d, const Scheme& s, const std::string& method,
                             const std::optional<std::vector<std::string>>& order, long long max_entries,
                             long long max_intermediate) {
    EvalLimits lim{max_entries, max_intermediate};
    if (method == "brute") {
        if (order) fail(ErrorKind::InvalidInput, "an elimination order applies to the elim method only");
        return eval_bruteforce(d, s, lim);
    }
    if (method == "elim") return eval_elimination(d, s, order, lim);
    fail(ErrorKind::InvalidInput, "method must be 'brute' or 'elim'");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "scaffold calculus over association schemes";

    py::register_exception<Error>(m, "SkaffError");

    py::class_<Scheme>(m, "Scheme")
        .def_readonly("size", &Scheme::size)
        .def_readonly("d", &Scheme::d)
        .def_readonly("valencies", &Scheme::valencies)
        .def_property_readonly("has_eigen_data", &Scheme::has_eigen)
        .def("p", &Scheme::p_at, py::arg("i"), py::arg("j"), py::arg("k"))
        .def(
            "q",
            [](const Scheme& s, int i, int j, int k) {
                if (!s.krein) fail(ErrorKind::UnsupportedOperation, "Krein parameters need spectral data");
                return s.q_at(i, j, k);
            },
            py::arg("i"), py::arg("j"), py::arg("k"))
        .def_property_readonly("P",
                               [](const Scheme& s) -> py::object {
                                   if (!s.eigen) return py::none();
                                   return py::cast(square(s.eigen->P, s.d + 1));
                               })
        .def_property_readonly("Q",
                               [](const Scheme& s) -> py::object {
                                   if (!s.eigen) return py::none();
                                   return py::cast(square(s.eigen->Q, s.d + 1));
                               })
        .def("is_p_polynomial", &check_p_polynomial)
        .def("is_q_polynomial", &check_q_polynomial, py::arg("tol") = 1e-9)
        .def("params_json", &params_to_json)
        .def("__repr__", [](const Scheme& s) {
            return "<Scheme on " + std::to_string(s.size) + " points, " + std::to_string(s.d + 1) + " classes>";
        });

    py::class_<TranslationScheme>(m, "TranslationScheme")
        .def_property_readonly("scheme", [](const TranslationScheme& ts) { return ts.scheme; })
        .def_property_readonly("orders", [](const TranslationScheme& ts) { return ts.group.orders(); })
        .def_property_readonly("size", [](const TranslationScheme& ts) { return ts.group.size(); })
        .def_readonly("classes", &TranslationScheme::classes)
        .def_readonly("eigen_classes", &TranslationScheme::eigen_classes)
        .def("dual", &dual_scheme)
        .def("to_json", &translation_to_json)
        .def("__repr__", [](const TranslationScheme& ts) {
            return "<TranslationScheme on " + std::to_string(ts.group.size()) + " points, " +
                   std::to_string(ts.scheme.d + 1) + " classes>";
        });

    py::class_<Diagram>(m, "Diagram")
        .def_property_readonly("nodes", [](const Diagram& d) { return d.nodes; })
        .def_property_readonly("roots",
                               [](const Diagram& d) {
                                   std::vector<std::string> names;
                                   for (int r : d.roots) names.push_back(d.nodes[r]);
                                   return names;
                               })
        .def_property_readonly("ell", &Diagram::ell)
        .def_property_readonly("edges",
                               [](const Diagram& d) {
                                   py::list out;
                                   for (const auto& e : d.edges) out.append(edge_dict(d, e));
                                   return out;
                               })
        .def("faces", &face_dict)
        .def("dual", &dual_diagram)
        .def("reduce_series", &reduce_series, py::arg("node"), py::arg("scheme"))
        .def("reduce_parallel", &reduce_parallel, py::arg("tail"), py::arg("head"), py::arg("scheme"))
        .def("to_json", &diagram_to_json)
        .def("__repr__", [](const Diagram& d) {
            return "<Diagram with " + std::to_string(d.nodes.size()) + " nodes, " + std::to_string(d.edges.size()) +
                   " edges, order " + std::to_string(d.ell()) + ">";
        });

    py::class_<ScaffoldTensor>(m, "ScaffoldTensor")
        .def_readonly("ell", &ScaffoldTensor::ell)
        .def_readonly("size", &ScaffoldTensor::base_size)
        .def_readonly("entries", &ScaffoldTensor::entries)
        .def("to_json", &tensor_to_json)
        .def("__repr__", [](const ScaffoldTensor& t) {
            return "<ScaffoldTensor order " + std::to_string(t.ell) + " over " + std::to_string(t.base_size) +
                   " points>";
        });

    m.def("catalog_scheme_names", &catalog_scheme_names);
    m.def("catalog_diagram_names", &catalog_diagram_names);
    m.def("catalog_scheme", &catalog_scheme, py::arg("name"));
    m.def("catalog_diagram", &catalog_diagram, py::arg("name"), py::arg("labels") = std::vector<int>{});

    m.def(
        "load_scheme",
        [](const std::string& text) -> py::object {
            auto loaded = scheme_from_json(text);
            if (loaded.translation) return py::cast(*loaded.translation);
            return py::cast(loaded.scheme);
        },
        py::arg("json_text"), "Parse scheme JSON; returns a TranslationScheme when the file carries a group.");
    m.def(
        "load_diagram", [](const std::string& text) { return build_diagram(diagram_spec_from_json(text)); },
        py::arg("json_text"), "Parse and validate diagram JSON.");

    m.def("eval", &eval_dispatch, py::arg("diagram"), py::arg("scheme"), py::arg("method") = "elim",
          py::arg("order") = py::none(), py::arg("max_entries") = 10000000, py::arg("max_intermediate") = 10000000,
          "Contract a diagram to its tensor.");
    m.def("elimination_order", &elimination_order, py::arg("diagram"));
    m.def(
        "inner_product", [](const ScaffoldTensor& a, const ScaffoldTensor& b) { return inner_product(a, b); },
        py::arg("a"), py::arg("b"));

    m.def(
        "verify_duality",
        [](const Diagram& d, const TranslationScheme& ts, double tol) { return report_dict(verify_duality(d, ts, tol)); },
        py::arg("diagram"), py::arg("scheme"), py::arg("tol") = 1e-8,
        "Evaluate both sides of the duality identity and report the residuals.");
    m.def("dualize", &dualize_combination, py::arg("terms"), py::arg("group_size"),
          "Dualize a formal combination: each (a, d) becomes (a * n^nodes, dual of d).");

    m.attr("__version__") = "0.1.0";
}
