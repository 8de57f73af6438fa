#include "skaff/catalog.hpp"

#include <sstream>

#include "skaff/errors.hpp"

namespace skaff {

namespace {

BMElement rel(int i) {
    if (i < 0) fail(ErrorKind::InvalidInput, "class labels must be nonnegative");
    return BMElement::pure(Basis::A, i);
}

BMElement idem(int i) {
    if (i < 0) fail(ErrorKind::InvalidInput, "class labels must be nonnegative");
    return BMElement::pure(Basis::E, i);
}

std::vector<int> pick_labels(const std::string& name, const std::vector<int>& given,
                             std::vector<int> defaults) {
    if (given.empty()) return defaults;
    if (given.size() != defaults.size()) {
        std::ostringstream msg;
        msg << "'" << name << "' takes " << defaults.size() << " labels, got " << given.size();
        fail(ErrorKind::InvalidInput, msg.str());
    }
    return given;
}

DartRef t(const std::string& id) { return DartRef{id, false}; }
DartRef h(const std::string& id) { return DartRef{id, true}; }

} // namespace

std::vector<std::string> catalog_scheme_names() { return {"z4-cycle", "h22", "z5-paley", "z6-cycle"}; }

std::vector<std::string> catalog_diagram_names() {
    return {"star",   "triangle", "fig1",   "path2",    "parallel2", "loop0",
            "point0", "point1",   "ex21-lhs", "ex21-rhs", "ex23-lhs",  "ex23-rhs"};
}

TranslationScheme catalog_scheme(const std::string& name) {
    if (name == "z4-cycle") return translation_scheme(make_abelian_group({4}), {{0}, {1, 3}, {2}});
    if (name == "h22") return translation_scheme(make_abelian_group({2, 2}), {{0}, {1, 2}, {3}});
    if (name == "z5-paley") return translation_scheme(make_abelian_group({5}), {{0}, {1, 4}, {2, 3}});
    if (name == "z6-cycle") return translation_scheme(make_abelian_group({6}), {{0}, {1, 5}, {2, 4}, {3}});
    fail(ErrorKind::InvalidInput, "unknown catalog scheme '" + name + "'");
}

Diagram catalog_diagram(const std::string& name, const std::vector<int>& labels) {
    DiagramSpec spec;

    if (name == "triangle") {
        auto l = pick_labels(name, labels, {1, 1, 2});
        spec.nodes = {"a", "b", "c"};
        spec.roots = {"a", "b", "c"};
        spec.edges = {{"e1", "a", "b", rel(l[1])}, {"e2", "c", "b", rel(l[2])}, {"e3", "c", "a", rel(l[0])}};
        spec.rotation = {{"a", {t("e1"), h("e3")}}, {"b", {h("e2"), h("e1")}}, {"c", {t("e3"), t("e2")}}};
    } else if (name == "star") {
        auto l = pick_labels(name, labels, {1, 1, 2});
        spec.nodes = {"q1", "q2", "q3", "c"};
        spec.roots = {"q1", "q2", "q3"};
        spec.edges = {{"e1", "q1", "c", idem(l[1])}, {"e2", "c", "q2", idem(l[2])}, {"e3", "q3", "c", idem(l[0])}};
        spec.rotation = {{"c", {t("e2"), h("e3"), h("e1")}}, {"q1", {t("e1")}}, {"q2", {h("e2")}}, {"q3", {t("e3")}}};
    } else if (name == "fig1") {
        auto l = pick_labels(name, labels, {1, 2, 3, 1, 4, 4, 5});
        spec.nodes = {"a", "b", "c", "d", "e", "f"};
        spec.roots = {"a", "b", "c", "d", "e"};
        spec.edges = {{"E1", "a", "b", rel(l[0])}, {"E2", "b", "c", rel(l[1])}, {"E3", "c", "d", rel(l[2])},
                      {"E4", "a", "e", rel(l[3])}, {"E5", "a", "f", rel(l[4])}, {"E6", "c", "f", rel(l[5])},
                      {"E7", "e", "f", rel(l[6])}};
        spec.rotation = {{"a", {t("E1"), t("E5"), t("E4")}}, {"b", {t("E2"), h("E1")}},
                         {"c", {t("E3"), t("E6"), h("E2")}}, {"d", {h("E3")}},
                         {"e", {h("E4"), t("E7")}},          {"f", {h("E6"), h("E7"), h("E5")}}};
    } else if (name == "path2") {
        auto l = pick_labels(name, labels, {1, 2});
        spec.nodes = {"r1", "v", "r2"};
        spec.roots = {"r1", "r2"};
        spec.edges = {{"e1", "r1", "v", rel(l[0])}, {"e2", "v", "r2", rel(l[1])}};
        spec.rotation = {{"r1", {t("e1")}}, {"v", {h("e1"), t("e2")}}, {"r2", {h("e2")}}};
    } else if (name == "parallel2") {
        auto l = pick_labels(name, labels, {1, 2});
        spec.nodes = {"r1", "r2"};
        spec.roots = {"r1", "r2"};
        spec.edges = {{"e1", "r1", "r2", rel(l[0])}, {"e2", "r1", "r2", rel(l[1])}};
        spec.rotation = {{"r1", {t("e1"), t("e2")}}, {"r2", {h("e2"), h("e1")}}};
    } else if (name == "loop0") {
        auto l = pick_labels(name, labels, {1});
        spec.nodes = {"v"};
        spec.edges = {{"e1", "v", "v", rel(l[0])}};
        spec.rotation = {{"v", {t("e1"), h("e1")}}};
    } else if (name == "point0") {
        pick_labels(name, labels, {});
        spec.nodes = {"v"};
        spec.rotation = {{"v", {}}};
    } else if (name == "point1") {
        pick_labels(name, labels, {});
        spec.nodes = {"r"};
        spec.roots = {"r"};
        spec.rotation = {{"r", {}}};
    } else if (name == "ex21-lhs") {
        auto l = pick_labels(name, labels, {1, 2});
        spec.nodes = {"r1", "r2", "r3", "m"};
        spec.roots = {"r1", "r2", "r3"};
        spec.edges = {{"g1", "r1", "m", rel(0)}, {"g2", "m", "r2", rel(l[0])}, {"g3", "m", "r3", rel(l[1])}};
        spec.rotation = {{"r1", {t("g1")}}, {"r2", {h("g2")}}, {"r3", {h("g3")}},
                         {"m", {h("g1"), t("g2"), t("g3")}}};
    } else if (name == "ex21-rhs") {
        auto l = pick_labels(name, labels, {1, 2});
        spec.nodes = {"r1", "r2", "r3"};
        spec.roots = {"r1", "r2", "r3"};
        spec.edges = {{"h1", "r1", "r2", rel(l[0])}, {"h2", "r1", "r3", rel(l[1])}};
        spec.rotation = {{"r1", {t("h1"), t("h2")}}, {"r2", {h("h1")}}, {"r3", {h("h2")}}};
    } else if (name == "ex23-lhs") {
        auto l = pick_labels(name, labels, {1, 0, 1});
        spec.nodes = {"r1", "r2", "r3", "r4"};
        spec.roots = {"r1", "r2", "r3", "r4"};
        spec.edges = {{"e1", "r1", "r2", rel(l[0])}, {"e2", "r2", "r3", rel(l[1])}, {"e3", "r3", "r4", rel(l[2])}};
        spec.rotation = {{"r1", {t("e1")}}, {"r2", {t("e2"), h("e1")}}, {"r3", {t("e3"), h("e2")}},
                         {"r4", {h("e3")}}};
    } else if (name == "ex23-rhs") {
        // same abstract path, but the middle two roots swap places on the
        // disk boundary, so the embedding and hence the dual change
        auto l = pick_labels(name, labels, {1, 0, 1});
        spec.nodes = {"n1", "n2", "n3", "n4"};
        spec.roots = {"n1", "n2", "n3", "n4"};
        spec.edges = {{"E1", "n1", "n2", rel(l[0])}, {"E2", "n2", "n4", rel(l[1])}, {"E3", "n4", "n3", rel(l[2])}};
        spec.rotation = {{"n1", {t("E1")}}, {"n2", {t("E2"), h("E1")}}, {"n3", {h("E3")}},
                         {"n4", {h("E2"), t("E3")}}};
    } else {
        fail(ErrorKind::InvalidInput, "unknown catalog diagram '" + name + "'");
    }

    return build_diagram(spec);
}

bool is_builtin_ref(const std::string& ref) { return ref.rfind("builtin:", 0) == 0; }

namespace {

std::pair<std::string, std::vector<int>> parse_builtin(const std::string& ref) {
    if (!is_builtin_ref(ref)) fail(ErrorKind::InvalidInput, "'" + ref + "' is not a builtin reference");
    std::string rest = ref.substr(8);
    auto colon = rest.find(':');
    std::string name = rest.substr(0, colon);
    std::vector<int> labels;
    if (colon != std::string::npos) {
        std::stringstream args(rest.substr(colon + 1));
        std::string tok;
        while (std::getline(args, tok, ',')) {
            try {
                size_t used = 0;
                labels.push_back(std::stoi(tok, &used));
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                fail(ErrorKind::InvalidInput, "bad label '" + tok + "' in '" + ref + "'");
            }
        }
        if (labels.empty()) fail(ErrorKind::InvalidInput, "empty label list in '" + ref + "'");
    }
    return {name, labels};
}

} // namespace

Diagram builtin_diagram(const std::string& ref) {
    auto [name, labels] = parse_builtin(ref);
    return catalog_diagram(name, labels);
}

TranslationScheme builtin_scheme(const std::string& ref) {
    auto [name, labels] = parse_builtin(ref);
    if (!labels.empty()) fail(ErrorKind::InvalidInput, "catalog schemes take no labels");
    return catalog_scheme(name);
}

} // namespace skaff
