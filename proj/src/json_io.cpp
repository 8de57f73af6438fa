#include "skaff/json_io.hpp"

#include "json.hpp"

#include "skaff/errors.hpp"

namespace skaff {
namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

json parse_text(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::InvalidInput, std::string(what) + ": " + e.what());
    }
}

const json& field(const json& j, const char* key, const char* what) {
    auto it = j.find(key);
    if (it == j.end()) fail(ErrorKind::InvalidInput, std::string(what) + " is missing the '" + key + "' field");
    return *it;
}

cplx read_complex(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail(ErrorKind::InvalidInput, std::string(what) + " must be a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

ordered write_complex(const cplx& z) { return ordered::array({z.real(), z.imag()}); }

LoadedScheme load_explicit(const json& j) {
    const auto& size_j = field(j, "size", "an explicit scheme");
    if (!size_j.is_number_integer() || size_j.get<long long>() <= 0)
        fail(ErrorKind::InvalidInput, "scheme 'size' must be a positive integer");
    int n = size_j.get<int>();

    const auto& rel_j = field(j, "relations", "an explicit scheme");
    if (!rel_j.is_array() || rel_j.empty())
        fail(ErrorKind::InvalidInput, "scheme 'relations' must be a nonempty array");
    std::vector<std::vector<int>> relations;
    for (size_t i = 0; i < rel_j.size(); ++i) {
        const auto& m = rel_j[i];
        if (!m.is_array() || m.size() != static_cast<size_t>(n) * n)
            fail(ErrorKind::InvalidInput,
                 "relation " + std::to_string(i) + " must be a flat row-major array of " + std::to_string(n) + "*" +
                     std::to_string(n) + " entries");
        std::vector<int> flat;
        flat.reserve(m.size());
        for (const auto& v : m) {
            if (!v.is_number_integer() || (v.get<int>() != 0 && v.get<int>() != 1))
                fail(ErrorKind::InvalidInput, "relation " + std::to_string(i) + " entries must be 0 or 1");
            flat.push_back(v.get<int>());
        }
        relations.push_back(std::move(flat));
    }
    return {scheme_from_relations(relations, n), std::nullopt};
}

std::vector<int> read_element_tuple(const json& j, const AbelianGroup& g, const char* what) {
    if (!j.is_array() || j.size() != g.orders().size())
        fail(ErrorKind::InvalidInput,
             std::string(what) + " must be a tuple of " + std::to_string(g.orders().size()) + " coordinates");
    std::vector<int> coords;
    for (size_t a = 0; a < j.size(); ++a) {
        if (!j[a].is_number_integer()) fail(ErrorKind::InvalidInput, std::string(what) + " coordinates must be integers");
        int c = j[a].get<int>();
        if (c < 0 || c >= g.orders()[a])
            fail(ErrorKind::InvalidInput,
                 std::string(what) + " coordinate " + std::to_string(c) + " is out of range for order " +
                     std::to_string(g.orders()[a]));
        coords.push_back(c);
    }
    return coords;
}

LoadedScheme load_translation(const json& j) {
    const auto& group_j = field(j, "group", "a translation scheme");
    const auto& orders_j = field(group_j, "orders", "the 'group' object");
    if (!orders_j.is_array() || orders_j.empty())
        fail(ErrorKind::InvalidInput, "group 'orders' must be a nonempty array");
    std::vector<int> orders;
    for (const auto& o : orders_j) {
        if (!o.is_number_integer() || o.get<int>() < 1)
            fail(ErrorKind::InvalidInput, "group orders must be integers >= 1");
        orders.push_back(o.get<int>());
    }
    auto g = make_abelian_group(orders);

    const auto& classes_j = field(j, "classes", "a translation scheme");
    if (!classes_j.is_array() || classes_j.empty())
        fail(ErrorKind::InvalidInput, "translation 'classes' must be a nonempty array");
    std::vector<std::vector<int>> sets;
    for (const auto& cls : classes_j) {
        if (!cls.is_array()) fail(ErrorKind::InvalidInput, "each connection set must be an array of element tuples");
        std::vector<int> set;
        for (const auto& el : cls) set.push_back(g.index_of(GroupElement{read_element_tuple(el, g, "a class element")}));
        sets.push_back(std::move(set));
    }

    std::optional<std::vector<std::vector<int>>> forced;
    if (auto it = j.find("eigen_classes"); it != j.end()) {
        if (!it->is_array() || it->size() != sets.size())
            fail(ErrorKind::InvalidInput, "'eigen_classes' must list one class per connection set");
        std::vector<std::vector<int>> ec;
        for (const auto& cls : *it) {
            if (!cls.is_array()) fail(ErrorKind::InvalidInput, "each eigen class must be an array of character tuples");
            std::vector<int> set;
            for (const auto& el : cls) set.push_back(g.index_of(GroupElement{read_element_tuple(el, g, "an eigen class character")}));
            ec.push_back(std::move(set));
        }
        forced = std::move(ec);
    }

    auto ts = translation_scheme(g, sets, std::nullopt, forced);
    LoadedScheme out{ts.scheme, std::move(ts)};
    return out;
}

ordered index_classes_to_tuples(const std::vector<std::vector<int>>& classes, const AbelianGroup& g) {
    ordered arr = ordered::array();
    for (const auto& cls : classes) {
        ordered cj = ordered::array();
        for (int idx : cls) {
            ordered tuple = ordered::array();
            for (int c : g.element(idx).coords) tuple.push_back(c);
            cj.push_back(std::move(tuple));
        }
        arr.push_back(std::move(cj));
    }
    return arr;
}

std::string dump(const ordered& j) { return j.dump(2) + "\n"; }

} // namespace

LoadedScheme scheme_from_json(const std::string& text) {
    json j = parse_text(text, "scheme file");
    if (!j.is_object()) fail(ErrorKind::InvalidInput, "scheme file must hold a JSON object");
    const auto& kind = field(j, "kind", "a scheme file");
    if (kind == "explicit") return load_explicit(j);
    if (kind == "translation") return load_translation(j);
    fail(ErrorKind::InvalidInput, "scheme 'kind' must be \"explicit\" or \"translation\"");
}

std::string translation_to_json(const TranslationScheme& ts) {
    ordered j;
    j["kind"] = "translation";
    j["group"] = ordered{{"orders", ts.group.orders()}};
    j["classes"] = index_classes_to_tuples(ts.classes, ts.group);
    j["eigen_classes"] = index_classes_to_tuples(ts.eigen_classes, ts.group);
    return dump(j);
}

DiagramSpec diagram_spec_from_json(const std::string& text) {
    json j = parse_text(text, "diagram file");
    if (!j.is_object()) fail(ErrorKind::InvalidInput, "diagram file must hold a JSON object");
    DiagramSpec spec;

    const auto& nodes_j = field(j, "nodes", "a diagram file");
    if (!nodes_j.is_array()) fail(ErrorKind::InvalidInput, "'nodes' must be an array of names");
    for (const auto& v : nodes_j) {
        if (!v.is_string()) fail(ErrorKind::InvalidInput, "'nodes' entries must be strings");
        spec.nodes.push_back(v.get<std::string>());
    }

    const auto& roots_j = field(j, "roots", "a diagram file");
    if (!roots_j.is_array()) fail(ErrorKind::InvalidInput, "'roots' must be an array of node names");
    for (const auto& v : roots_j) {
        if (!v.is_string()) fail(ErrorKind::InvalidInput, "'roots' entries must be strings");
        spec.roots.push_back(v.get<std::string>());
    }

    const auto& edges_j = field(j, "edges", "a diagram file");
    if (!edges_j.is_array()) fail(ErrorKind::InvalidInput, "'edges' must be an array");
    for (const auto& e : edges_j) {
        if (!e.is_object()) fail(ErrorKind::InvalidInput, "each edge must be an object");
        EdgeSpec es;
        for (const char* key : {"id", "tail", "head"})
            if (!field(e, key, "an edge").is_string())
                fail(ErrorKind::InvalidInput, std::string("edge '") + key + "' must be a string");
        es.id = e["id"].get<std::string>();
        es.tail = e["tail"].get<std::string>();
        es.head = e["head"].get<std::string>();

        const auto& basis_j = field(e, "basis", "an edge");
        if (basis_j == "A")
            es.weight.basis = Basis::A;
        else if (basis_j == "E")
            es.weight.basis = Basis::E;
        else
            fail(ErrorKind::InvalidInput, "edge 'basis' must be \"A\" or \"E\"");

        bool has_index = e.contains("index"), has_coeffs = e.contains("coeffs");
        if (has_index == has_coeffs)
            fail(ErrorKind::InvalidInput, "edge '" + es.id + "' needs exactly one of 'index' or 'coeffs'");
        if (has_index) {
            const auto& idx = e["index"];
            if (!idx.is_number_integer() || idx.get<int>() < 0)
                fail(ErrorKind::InvalidInput, "edge 'index' must be a nonnegative integer");
            es.weight = BMElement::pure(es.weight.basis, idx.get<int>());
        } else {
            const auto& co = e["coeffs"];
            if (!co.is_array() || co.empty())
                fail(ErrorKind::InvalidInput, "edge 'coeffs' must be a nonempty array of [re, im] pairs");
            for (const auto& z : co) es.weight.coeffs.push_back(read_complex(z, "an edge coefficient"));
        }
        spec.edges.push_back(std::move(es));
    }

    const auto& rot_j = field(j, "rotation", "a diagram file");
    if (!rot_j.is_object()) fail(ErrorKind::InvalidInput, "'rotation' must map node names to dart lists");
    for (const auto& [name, darts] : rot_j.items()) {
        if (!darts.is_array()) fail(ErrorKind::InvalidInput, "rotation at '" + name + "' must be an array");
        std::vector<DartRef> refs;
        for (const auto& dj : darts) {
            if (!dj.is_string()) fail(ErrorKind::InvalidInput, "rotation darts must be strings like \"edge:t\"");
            auto s = dj.get<std::string>();
            auto colon = s.rfind(':');
            if (colon == std::string::npos || colon + 2 != s.size() || (s[colon + 1] != 't' && s[colon + 1] != 'h'))
                fail(ErrorKind::InvalidInput, "rotation dart '" + s + "' must end in \":t\" or \":h\"");
            refs.push_back(DartRef{s.substr(0, colon), s[colon + 1] == 'h'});
        }
        spec.rotation[name] = std::move(refs);
    }
    return spec;
}

std::string diagram_to_json(const Diagram& d) {
    ordered j;
    j["nodes"] = d.nodes;
    ordered roots = ordered::array();
    for (int r : d.roots) roots.push_back(d.nodes[r]);
    j["roots"] = std::move(roots);

    ordered edges = ordered::array();
    for (const auto& e : d.edges) {
        ordered ej;
        ej["id"] = e.id;
        ej["tail"] = d.nodes[e.tail];
        ej["head"] = d.nodes[e.head];
        ej["basis"] = e.weight.basis == Basis::A ? "A" : "E";
        int pure = e.weight.pure_index();
        if (pure >= 0) {
            ej["index"] = pure;
        } else {
            ordered co = ordered::array();
            for (const auto& z : e.weight.coeffs) co.push_back(write_complex(z));
            ej["coeffs"] = std::move(co);
        }
        edges.push_back(std::move(ej));
    }
    j["edges"] = std::move(edges);

    ordered rot;
    for (size_t v = 0; v < d.nodes.size(); ++v) {
        ordered darts = ordered::array();
        for (const auto& dart : d.rotation[v])
            darts.push_back(d.edges[dart.edge].id + (dart.head ? ":h" : ":t"));
        rot[d.nodes[v]] = std::move(darts);
    }
    j["rotation"] = std::move(rot);
    return dump(j);
}

std::string tensor_to_json(const ScaffoldTensor& t) {
    ordered j;
    j["ell"] = t.ell;
    j["size"] = t.base_size;
    ordered entries = ordered::array();
    for (const auto& z : t.entries) entries.push_back(write_complex(z));
    j["entries"] = std::move(entries);
    return dump(j);
}

std::string params_to_json(const Scheme& s) {
    int m = s.d + 1;
    ordered j;

    ordered p = ordered::array();
    for (int i = 0; i < m; ++i) {
        ordered pi = ordered::array();
        for (int jj = 0; jj < m; ++jj) {
            ordered pij = ordered::array();
            for (int k = 0; k < m; ++k) pij.push_back(s.p_at(i, jj, k));
            pi.push_back(std::move(pij));
        }
        p.push_back(std::move(pi));
    }
    j["p"] = std::move(p);

    if (s.krein) {
        ordered q = ordered::array();
        for (int i = 0; i < m; ++i) {
            ordered qi = ordered::array();
            for (int jj = 0; jj < m; ++jj) {
                ordered qij = ordered::array();
                for (int k = 0; k < m; ++k) qij.push_back(s.q_at(i, jj, k).real());
                qi.push_back(std::move(qij));
            }
            q.push_back(std::move(qi));
        }
        j["q"] = std::move(q);
    } else {
        j["q"] = nullptr;
    }

    auto matrix = [&](const std::vector<cplx>& flat) {
        ordered rows = ordered::array();
        for (int r = 0; r < m; ++r) {
            ordered row = ordered::array();
            for (int c = 0; c < m; ++c) row.push_back(write_complex(flat[static_cast<size_t>(r) * m + c]));
            rows.push_back(std::move(row));
        }
        return rows;
    };
    if (s.eigen) {
        j["P"] = matrix(s.eigen->P);
        j["Q"] = matrix(s.eigen->Q);
    } else {
        j["P"] = nullptr;
        j["Q"] = nullptr;
    }
    return dump(j);
}

} // namespace skaff
