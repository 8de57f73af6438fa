// Acceptance harness: one line per criterion, nonzero exit when any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "skaff/catalog.hpp"
#include "skaff/diagram.hpp"
#include "skaff/duality.hpp"
#include "skaff/errors.hpp"
#include "skaff/evaluate.hpp"
#include "skaff/scheme.hpp"
#include "skaff/translation.hpp"
#include "support/random_diagrams.hpp"
#include "support/test_diagrams.hpp"

namespace {

using namespace skaff;
using skaff::testsupport::two_loop_nested;
using skaff::testsupport::two_loop_side_by_side;

struct Outcome {
    bool ok = true;
    int checks = 0;
    std::string note;

    void require(bool cond, const std::string& what) {
        ++checks;
        if (!cond && ok) {
            ok = false;
            note = what;
        }
    }
};

double max_abs(const ScaffoldTensor& t) {
    double m = 0.0;
    for (const auto& z : t.entries) m = std::max(m, std::abs(z));
    return m;
}

double max_abs_diff(const ScaffoldTensor& a, const ScaffoldTensor& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.entries.size(); ++i) m = std::max(m, std::abs(a.entries[i] - b.entries[i]));
    return m;
}

double l2(const std::vector<cplx>& v) {
    double acc = 0.0;
    for (const auto& z : v) acc += std::norm(z);
    return std::sqrt(acc);
}

cplx dot(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx acc{0.0, 0.0};
    for (size_t i = 0; i < a.size(); ++i) acc += a[i] * std::conj(b[i]);
    return acc;
}

std::vector<int> fig1_labels(int d) {
    std::vector<int> base = {1, 2, 3, 1, 4, 4, 5};
    for (auto& l : base) l %= d + 1;
    return base;
}

std::vector<TranslationScheme> catalog_schemes() {
    std::vector<TranslationScheme> out;
    for (const auto& name : catalog_scheme_names()) out.push_back(catalog_scheme(name));
    return out;
}

// Criterion 1: the duality report passes on every catalog scheme against
// the full shape battery, inside the time budget.
Outcome duality_suite() {
    Outcome out;
    auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (const auto& name : catalog_scheme_names()) {
        auto ts = catalog_scheme(name);
        int d = ts.scheme.d;
        std::vector<Diagram> shapes;
        for (int i = 0; i <= d; ++i)
            for (int j = 0; j <= d; ++j)
                for (int k = 0; k <= d; ++k) shapes.push_back(catalog_diagram("triangle", {i, j, k}));
        shapes.push_back(catalog_diagram("path2"));
        shapes.push_back(catalog_diagram("parallel2"));
        shapes.push_back(catalog_diagram("fig1", fig1_labels(d)));
        shapes.push_back(catalog_diagram("point1"));
        shapes.push_back(catalog_diagram("point0"));
        shapes.push_back(catalog_diagram("loop0"));
        for (const auto& shape : shapes) {
            auto rep = verify_duality(shape, ts, 1e-8);
            worst = std::max(worst, rep.max_residual);
            out.require(rep.pass, "verification failed on " + name);
        }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.require(secs <= 60.0, "suite exceeded the 60 s budget");
    char buf[128];
    std::snprintf(buf, sizeof buf, ", max residual %.2e, %.2f s", worst, secs);
    out.note += buf;
    return out;
}

// Criterion 2: order-zero scaffolds satisfy S = n^(nodes-1) * S-dual.
Outcome order_zero_specialization() {
    Outcome out;
    for (const auto& ts : catalog_schemes()) {
        int n = ts.group.size();
        auto dts = dual_scheme(ts);
        std::vector<Diagram> shapes = {catalog_diagram("point0")};
        for (int i = 0; i <= ts.scheme.d; ++i) shapes.push_back(catalog_diagram("loop0", {i}));
        for (const auto& d : shapes) {
            auto s = eval_elimination(d, ts.scheme);
            auto sd = eval_elimination(dual_diagram(d), dts.scheme);
            double scale = std::pow(double(n), double(d.nodes.size()) - 1.0);
            double diff = std::abs(s.entries[0] - scale * sd.entries[0]);
            out.require(diff <= 1e-8 * std::max(1.0, std::abs(s.entries[0])), "order-zero identity failed");
        }
    }
    return out;
}

// Criterion 3: every positive-order catalog scaffold has its coefficient
// mass on the product-one character tuples.
Outcome gamma_support() {
    Outcome out;
    for (const auto& ts : catalog_schemes()) {
        int d = ts.scheme.d;
        for (const auto& name : catalog_diagram_names()) {
            auto dia = name == "fig1" ? catalog_diagram(name, fig1_labels(d)) : catalog_diagram(name);
            if (dia.ell() == 0) continue;
            auto s = eval_elimination(dia, ts.scheme);
            auto c = character_coefficients(s, ts.group);
            out.require(gamma_residual(c) <= 1e-9 * std::max(1.0, l2(s.entries)), "stray mass on " + name);
        }
    }
    return out;
}

// Criterion 4: the transform round-trips at 1e-12 and the pullback carries
// inner products across on twenty random same-order catalog pairs.
Outcome isometry() {
    Outcome out;
    auto schemes = catalog_schemes();
    for (const auto& ts : schemes) {
        int d = ts.scheme.d;
        for (const auto& name : catalog_diagram_names()) {
            auto dia = name == "fig1" ? catalog_diagram(name, fig1_labels(d)) : catalog_diagram(name);
            auto s = eval_elimination(dia, ts.scheme);
            auto back = inverse_character_coefficients(character_coefficients(s, ts.group));
            out.require(max_abs_diff(s, back) <= 1e-12, "round trip drifted on " + name);
        }
    }

    std::mt19937 rng(2026);
    auto rnd = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    // shape pools by tensor order; each entry builds a fresh random labeling
    struct Pick {
        std::string name;
        int labels;
    };
    std::vector<std::vector<Pick>> pools = {
        {{"path2", 2}, {"parallel2", 2}},
        {{"triangle", 3}, {"star", 3}, {"ex21-lhs", 2}, {"ex21-rhs", 2}},
        {{"ex23-lhs", 3}, {"ex23-rhs", 3}},
    };
    for (int rep = 0; rep < 20; ++rep) {
        const auto& ts = schemes[rnd(0, int(schemes.size()) - 1)];
        int d = ts.scheme.d;
        const auto& pool = pools[rnd(0, int(pools.size()) - 1)];
        auto draw = [&]() {
            const auto& pick = pool[rnd(0, int(pool.size()) - 1)];
            std::vector<int> labels;
            for (int i = 0; i < pick.labels; ++i) labels.push_back(rnd(0, d));
            return eval_elimination(catalog_diagram(pick.name, labels), ts.scheme);
        };
        auto s1 = draw();
        auto s2 = draw();
        auto p1 = apply_psi(character_coefficients(s1, ts.group));
        auto p2 = apply_psi(character_coefficients(s2, ts.group));
        cplx lhs = dot(p1.entries, p2.entries);
        cplx rhs = inner_product(s1, s2);
        double bound = 1e-8 * std::max(1.0, l2(s1.entries) * l2(s2.entries));
        out.require(std::abs(lhs - rhs) <= bound, "inner product drifted");
    }
    return out;
}

// Criterion 5: elimination equals brute force on the catalog and on fifty
// random diagrams.
Outcome oracle_equivalence() {
    Outcome out;
    for (const auto& ts : catalog_schemes()) {
        int d = ts.scheme.d;
        for (const auto& name : catalog_diagram_names()) {
            auto dia = name == "fig1" ? catalog_diagram(name, fig1_labels(d)) : catalog_diagram(name);
            auto b = eval_bruteforce(dia, ts.scheme);
            auto e = eval_elimination(dia, ts.scheme);
            out.require(max_abs_diff(b, e) <= 1e-10 * std::max(1.0, max_abs(b)), "methods disagree on " + name);
        }
    }
    auto ts = catalog_scheme("z4-cycle");
    for (unsigned seed = 1; seed <= 50; ++seed) {
        std::mt19937 rng(seed);
        auto dia = skaff::testsupport::random_diagram(rng, 6, 8, ts.scheme.d);
        auto b = eval_bruteforce(dia, ts.scheme);
        auto e = eval_elimination(dia, ts.scheme);
        out.require(max_abs_diff(b, e) <= 1e-10 * std::max(1.0, max_abs(b)),
                    "methods disagree on random seed " + std::to_string(seed));
    }
    return out;
}

// Criterion 6: the catalog ex21 pair evaluates equal, and stays equal after
// dualizing with the node-count scaling on both terms.
Outcome combination_duality() {
    Outcome out;
    for (const auto& ts : catalog_schemes()) {
        auto lhs = catalog_diagram("ex21-lhs");
        auto rhs = catalog_diagram("ex21-rhs");
        auto sl = eval_elimination(lhs, ts.scheme);
        auto sr = eval_elimination(rhs, ts.scheme);
        out.require(max_abs_diff(sl, sr) <= 1e-8 * std::max(1.0, max_abs(sl)), "primal difference");

        auto terms = dualize_combination({{cplx{1.0, 0.0}, lhs}, {cplx{-1.0, 0.0}, rhs}}, ts.group.size());
        double n = ts.group.size();
        out.require(std::abs(terms[0].first - cplx{std::pow(n, 4.0), 0.0}) == 0.0, "lhs scale");
        out.require(std::abs(terms[1].first + cplx{std::pow(n, 3.0), 0.0}) == 0.0, "rhs scale");

        auto dts = dual_scheme(ts);
        auto dl = eval_elimination(terms[0].second, dts.scheme);
        auto dr = eval_elimination(terms[1].second, dts.scheme);
        double scale = 0.0, diff = 0.0;
        for (size_t i = 0; i < dl.entries.size(); ++i) {
            cplx sum = terms[0].first * dl.entries[i] + terms[1].first * dr.entries[i];
            diff = std::max(diff, std::abs(sum));
            scale = std::max(scale, std::abs(terms[0].first * dl.entries[i]));
        }
        out.require(diff <= 1e-8 * std::max(1.0, scale), "dual combination nonzero");
    }
    return out;
}

// Criterion 7: the catalog ex23 pair has equal primal tensors but visibly
// different duals at the default labels.
Outcome dual_separation() {
    Outcome out;
    auto ts = catalog_scheme("z4-cycle");
    auto dts = dual_scheme(ts);
    auto lhs = catalog_diagram("ex23-lhs");
    auto rhs = catalog_diagram("ex23-rhs");
    auto dl = eval_elimination(dual_diagram(lhs), dts.scheme);
    auto dr = eval_elimination(dual_diagram(rhs), dts.scheme);
    out.require(max_abs_diff(dl, dr) > 1e-3, "duals too close");
    return out;
}

// Criterion 8: the triangle vanishes exactly when its intersection number
// does, and the star exactly when its Krein parameter does.
Outcome parameter_equivalences() {
    Outcome out;
    for (const auto& ts : catalog_schemes()) {
        const auto& s = ts.scheme;
        for (int i = 0; i <= s.d; ++i)
            for (int j = 0; j <= s.d; ++j)
                for (int k = 0; k <= s.d; ++k) {
                    double tri = max_abs(eval_elimination(catalog_diagram("triangle", {i, j, k}), s));
                    bool p_zero = s.p_at(i, j, k) == 0;
                    out.require(p_zero ? tri <= 1e-9 : tri > 1e-3, "triangle mismatch");

                    double star = max_abs(eval_elimination(catalog_diagram("star", {i, j, k}), s));
                    bool q_zero = std::abs(s.q_at(i, j, k)) <= 1e-9;
                    out.require(q_zero ? star <= 1e-9 : star > 1e-3, "star mismatch");
                }
    }
    return out;
}

// Criterion 9: the two cyclic schemes read as polynomial in both senses in
// their natural class order, and stop doing so when the order is shuffled.
Outcome polynomial_detection() {
    Outcome out;
    for (const auto& name : {"z4-cycle", "z6-cycle"}) {
        auto ts = catalog_scheme(name);
        out.require(check_p_polynomial(ts.scheme), std::string(name) + " not P-polynomial");
        out.require(check_q_polynomial(ts.scheme), std::string(name) + " not Q-polynomial");

        std::vector<int> perm(ts.scheme.d + 1);
        for (int i = 0; i <= ts.scheme.d; ++i) perm[i] = i;
        std::swap(perm[1], perm[2]);
        out.require(!check_p_polynomial(reorder_classes(ts.scheme, perm)), std::string(name) + " P flip");

        auto forced = ts.eigen_classes;
        std::swap(forced[1], forced[2]);
        auto shuffled = translation_scheme(ts.group, ts.classes, std::nullopt, forced);
        out.require(!check_q_polynomial(shuffled.scheme), std::string(name) + " Q flip");
    }
    return out;
}

bool rotations_match(const Diagram& d, const Diagram& dd, const std::map<std::string, std::string>& phi) {
    std::map<std::string, int> dd_index;
    for (size_t v = 0; v < dd.nodes.size(); ++v) dd_index[dd.nodes[v]] = int(v);
    std::map<std::string, int> dd_edge;
    for (size_t e = 0; e < dd.edges.size(); ++e) dd_edge[dd.edges[e].id] = int(e);

    for (size_t v = 0; v < d.nodes.size(); ++v) {
        std::vector<Dart> expected;
        for (const auto& dart : d.rotation[v]) expected.push_back({dd_edge.at(d.edges[dart.edge].id), !dart.head});
        const auto& got = dd.rotation[dd_index.at(phi.at(d.nodes[v]))];
        if (got.size() != expected.size()) return false;
        if (expected.empty()) continue;
        bool found = false;
        for (size_t off = 0; off < got.size() && !found; ++off) {
            bool all = true;
            for (size_t i = 0; i < got.size() && all; ++i)
                all = got[(off + i) % got.size()] == expected[i];
            found = all;
        }
        if (!found) return false;
    }
    return true;
}

bool double_dual_reverses(const Diagram& d, std::string& why) {
    auto dd = dual_diagram(dual_diagram(d));
    if (dd.nodes.size() != d.nodes.size() || dd.edges.size() != d.edges.size() || dd.ell() != d.ell()) {
        why = "size drift";
        return false;
    }
    std::map<std::string, std::string> phi;
    auto bind = [&phi](const std::string& from, const std::string& to) {
        auto [it, fresh] = phi.emplace(from, to);
        return fresh || it->second == to;
    };
    for (const auto& e : d.edges) {
        const DiagramEdge* match = nullptr;
        for (const auto& f : dd.edges)
            if (f.id == e.id) match = &f;
        if (!match) {
            why = "edge " + e.id + " lost";
            return false;
        }
        if (match->weight.basis != e.weight.basis || match->weight.coeffs != e.weight.coeffs) {
            why = "weight drift on " + e.id;
            return false;
        }
        if (!bind(d.nodes[e.tail], dd.nodes[match->head]) || !bind(d.nodes[e.head], dd.nodes[match->tail])) {
            why = "node map clash on " + e.id;
            return false;
        }
    }
    if (d.edges.empty()) bind(d.nodes[0], dd.nodes[0]);
    if (phi.size() != d.nodes.size()) {
        why = "node map incomplete";
        return false;
    }
    std::set<std::string> image;
    for (const auto& [from, to] : phi) image.insert(to);
    if (image.size() != phi.size()) {
        why = "node map not injective";
        return false;
    }
    int ell = d.ell();
    for (int i = 0; i < ell; ++i)
        if (dd.nodes[dd.roots[i]] != phi.at(d.nodes[d.roots[(i + 1) % ell]])) {
            why = "root cycle drift";
            return false;
        }
    if (!rotations_match(d, dd, phi)) {
        why = "rotation drift";
        return false;
    }
    return true;
}

// Criterion 10: disk-embedding bookkeeping holds everywhere: the face count
// obeys the Euler formula, the double dual reverses exactly, and the
// eigenmatrix identities hold for the catalog schemes and their duals.
Outcome structure() {
    Outcome out;
    std::vector<Diagram> shapes;
    for (const auto& name : catalog_diagram_names()) shapes.push_back(catalog_diagram(name));
    shapes.push_back(two_loop_side_by_side());
    shapes.push_back(two_loop_nested());
    for (unsigned seed = 100; seed < 130; ++seed) {
        std::mt19937 rng(seed);
        shapes.push_back(skaff::testsupport::random_diagram(rng));
    }
    for (size_t i = 0; i < shapes.size(); ++i) {
        const auto& d = shapes[i];
        auto fs = trace_faces(d);
        long long te = (long long)d.edges.size() + d.ell();
        bool euler = te == 0 || (long long)d.nodes.size() - te + (long long)fs.faces.size() == 2;
        out.require(euler, "Euler count failed");

        bool pure = true;
        for (const auto& e : d.edges) pure = pure && e.weight.pure_index() >= 0;
        if (!pure) continue;
        auto dual = dual_diagram(d);
        auto dfs = trace_faces(dual);
        long long dte = (long long)dual.edges.size() + dual.ell();
        out.require(dte == 0 || (long long)dual.nodes.size() - dte + (long long)dfs.faces.size() == 2,
                    "Euler count failed on a dual");
        std::string why;
        out.require(double_dual_reverses(d, why),
                    "double dual drift on shape " + std::to_string(i) + ": " + why);
    }

    for (const auto& ts : catalog_schemes()) {
        const auto dts = dual_scheme(ts);
        for (const TranslationScheme* sc : {&ts, &dts}) {
            const auto& e = *sc->scheme.eigen;
            int m = sc->scheme.d + 1;
            int n = sc->scheme.size;
            for (int r = 0; r < m; ++r)
                for (int c = 0; c < m; ++c) {
                    cplx acc{0.0, 0.0};
                    for (int k = 0; k < m; ++k) acc += e.P[size_t(r) * m + k] * e.Q[size_t(k) * m + c];
                    cplx want = r == c ? cplx{double(n), 0.0} : cplx{0.0, 0.0};
                    out.require(std::abs(acc - want) <= 1e-9, "PQ != nI");
                }
        }
        const auto& q = ts.scheme.eigen->Q;
        const auto& pstar = dts.scheme.eigen->P;
        for (size_t i = 0; i < q.size(); ++i)
            out.require(std::abs(pstar[i] - q[i]) <= 1e-9, "dual eigenmatrix drift");
    }
    return out;
}

// Criterion 11: the two embeddings of the double loop dualize to equal
// tensors.
Outcome embedding_independence() {
    Outcome out;
    auto ts = catalog_scheme("z4-cycle");
    auto dts = dual_scheme(ts);
    auto a = eval_elimination(dual_diagram(two_loop_side_by_side()), dts.scheme);
    auto b = eval_elimination(dual_diagram(two_loop_nested()), dts.scheme);
    out.require(max_abs_diff(a, b) <= 1e-8, "embeddings separated");
    return out;
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {"duality suite over the scheme/diagram battery", duality_suite},
        {"order-zero specialization S = n^(nodes-1) S-dual", order_zero_specialization},
        {"coefficient support on product-one tuples", gamma_support},
        {"transform round-trip and pullback isometry", isometry},
        {"elimination matches brute force", oracle_equivalence},
        {"linear combination survives dualization", combination_duality},
        {"equal scaffolds with distinct duals separate", dual_separation},
        {"triangle/star vanishing tracks p and q", parameter_equivalences},
        {"polynomial detection and its order dependence", polynomial_detection},
        {"Euler counts, double dual, eigenmatrix identities", structure},
        {"embedding independence of the dual tensor", embedding_independence},
    };

    bool all_ok = true;
    int idx = 0;
    for (const auto& c : criteria) {
        ++idx;
        Outcome res;
        std::string blew;
        try {
            res = c.run();
        } catch (const std::exception& e) {
            res.ok = false;
            blew = std::string(" (exception: ") + e.what() + ")";
        }
        all_ok = all_ok && res.ok;
        if (res.ok) {
            std::printf("[PASS] %02d %s (%d checks%s)\n", idx, c.name, res.checks, res.note.c_str());
        } else {
            std::printf("[FAIL] %02d %s: %s%s\n", idx, c.name, res.note.c_str(), blew.c_str());
        }
    }
    return all_ok ? 0 : 1;
}
