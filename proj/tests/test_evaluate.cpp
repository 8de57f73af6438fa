#include <random>

#include "doctest.h"
#include "skaff/catalog.hpp"
#include "skaff/errors.hpp"
#include "skaff/evaluate.hpp"
#include "support/random_diagrams.hpp"
#include "support/test_diagrams.hpp"
#include "support/test_schemes.hpp"

using namespace skaff;
using namespace skaff::testsupport;

namespace {

double max_abs_diff(const ScaffoldTensor& a, const ScaffoldTensor& b) {
    REQUIRE(a.entries.size() == b.entries.size());
    double out = 0.0;
    for (size_t i = 0; i < a.entries.size(); ++i) out = std::max(out, std::abs(a.entries[i] - b.entries[i]));
    return out;
}

double max_abs(const ScaffoldTensor& t) {
    double out = 0.0;
    for (const auto& z : t.entries) out = std::max(out, std::abs(z));
    return out;
}

Diagram single_edge(const BMElement& w) {
    DiagramSpec spec;
    spec.nodes = {"r1", "r2"};
    spec.roots = {"r1", "r2"};
    spec.edges = {{"e1", "r1", "r2", w}};
    spec.rotation = {{"r1", {td("e1")}}, {"r2", {hd("e1")}}};
    return build_diagram(spec);
}

} // namespace

TEST_CASE("point diagrams evaluate to constants") {
    auto ts = z4_cycle();

    auto ones = eval_bruteforce(catalog_diagram("point1"), ts.scheme);
    REQUIRE(ones.ell == 1);
    REQUIRE(ones.entries.size() == 4);
    for (const auto& z : ones.entries) CHECK(z == cplx{1.0, 0.0});
    CHECK(max_abs_diff(ones, eval_elimination(catalog_diagram("point1"), ts.scheme)) == 0.0);

    auto scalar = eval_bruteforce(catalog_diagram("point0"), ts.scheme);
    REQUIRE(scalar.ell == 0);
    REQUIRE(scalar.entries.size() == 1);
    CHECK(scalar.entries[0] == cplx{4.0, 0.0});
    auto via_elim = eval_elimination(catalog_diagram("point0"), ts.scheme);
    CHECK(via_elim.entries[0] == cplx{4.0, 0.0});
}

TEST_CASE("loop traces its weight matrix") {
    auto ts = z4_cycle();
    for (int i = 0; i <= 2; ++i) {
        CAPTURE(i);
        auto d = catalog_diagram("loop0", {i});
        auto b = eval_bruteforce(d, ts.scheme);
        REQUIRE(b.entries.size() == 1);
        CHECK(b.entries[0] == cplx{i == 0 ? 4.0 : 0.0, 0.0});
        CHECK(eval_elimination(d, ts.scheme).entries[0] == b.entries[0]);
    }
}

TEST_CASE("a single edge reproduces its weight matrix") {
    auto ts = z4_cycle();
    auto d = single_edge(BMElement::pure(Basis::A, 1));
    auto t = eval_bruteforce(d, ts.scheme);
    REQUIRE(t.ell == 2);
    auto a1 = bm_to_matrix(ts.scheme, BMElement::pure(Basis::A, 1));
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) CHECK(t.entries[4 * x + y] == a1[4 * x + y]);
    CHECK(max_abs_diff(t, eval_elimination(d, ts.scheme)) == 0.0);
}

TEST_CASE("triangle norm matches the intersection number") {
    auto ts = z4_cycle();
    auto s = eval_bruteforce(catalog_diagram("triangle", {1, 1, 2}), ts.scheme);
    auto sq = inner_product(s, s);
    // p_112 * |X| * k_2 = 2 * 4 * 1
    CHECK(std::abs(sq - cplx{8.0, 0.0}) < 1e-12);

    // spot entry: A_1[0][1] A_2[3][1] A_1[3][0]
    CHECK(s.entries[0 * 16 + 1 * 4 + 3] == cplx{1.0, 0.0});
}

TEST_CASE("star norm matches the Krein parameter") {
    auto ts = z4_cycle();
    auto d = catalog_diagram("star", {1, 1, 2});
    auto s = eval_bruteforce(d, ts.scheme);
    auto sq = inner_product(s, s);
    // q_112 * m_2 / |X| = 2 * 1 / 4
    CHECK(std::abs(sq - cplx{0.5, 0.0}) < 1e-12);
    CHECK(max_abs_diff(s, eval_elimination(d, ts.scheme)) < 1e-14);
}

TEST_CASE("elimination matches brute force on the catalog") {
    auto ts = z4_cycle();
    for (const auto& name : catalog_diagram_names()) {
        CAPTURE(name);
        // fig1 defaults point past this scheme's classes; fold them into range
        auto d = name == "fig1" ? catalog_diagram(name, {1, 2, 0, 1, 1, 1, 2}) : catalog_diagram(name);
        auto b = eval_bruteforce(d, ts.scheme);
        auto e = eval_elimination(d, ts.scheme);
        CHECK(max_abs_diff(b, e) <= 1e-10 * std::max(1.0, max_abs(b)));
    }
}

TEST_CASE("elimination matches brute force on random diagrams") {
    auto ts = z4_cycle();
    for (unsigned seed = 1; seed <= 12; ++seed) {
        CAPTURE(seed);
        std::mt19937 rng(seed);
        auto d = random_diagram(rng);
        auto b = eval_bruteforce(d, ts.scheme);
        auto e = eval_elimination(d, ts.scheme);
        CHECK(max_abs_diff(b, e) <= 1e-10 * std::max(1.0, max_abs(b)));
    }
}

TEST_CASE("evaluation is linear in each edge weight") {
    auto ts = z4_cycle();
    std::vector<cplx> coeffs = {{2.0, 0.0}, {0.0, 1.0}, {-1.0, 0.5}};
    auto combined = eval_bruteforce(single_edge(BMElement{Basis::A, coeffs}), ts.scheme);
    ScaffoldTensor expected;
    expected.ell = 2;
    expected.base_size = 4;
    expected.entries.assign(16, cplx{0.0, 0.0});
    for (int i = 0; i <= 2; ++i) {
        auto part = eval_bruteforce(single_edge(BMElement::pure(Basis::A, i)), ts.scheme);
        for (size_t k = 0; k < 16; ++k) expected.entries[k] += coeffs[i] * part.entries[k];
    }
    CHECK(max_abs_diff(combined, expected) < 1e-12);
}

TEST_CASE("default elimination order is greedy by degree with name ties") {
    CHECK(elimination_order(catalog_diagram("path2")) == std::vector<std::string>{"v"});
    CHECK(elimination_order(catalog_diagram("star")) == std::vector<std::string>{"c"});
    CHECK(elimination_order(catalog_diagram("triangle")).empty());
    CHECK(elimination_order(catalog_diagram("fig1")) == std::vector<std::string>{"f"});

    auto ts = z4_cycle();
    auto d = catalog_diagram("fig1", {1, 2, 0, 1, 1, 1, 2});
    auto forced = eval_elimination(d, ts.scheme, std::vector<std::string>{"f"});
    CHECK(max_abs_diff(forced, eval_elimination(d, ts.scheme)) == 0.0);
}

TEST_CASE("explicit elimination orders are validated") {
    auto ts = z4_cycle();
    auto d = catalog_diagram("path2");
    auto expect_invalid = [&](std::vector<std::string> order) {
        try {
            eval_elimination(d, ts.scheme, order);
            FAIL("expected rejection");
        } catch (const Error& err) {
            CHECK(err.kind() == ErrorKind::InvalidInput);
        }
    };
    expect_invalid({});                // misses v
    expect_invalid({"v", "v"});        // duplicate
    expect_invalid({"r1"});            // root
    expect_invalid({"ghost"});         // unknown
    expect_invalid({"v", "r1"});       // root tagging along
}

TEST_CASE("resource caps throw instead of allocating") {
    auto ts = z4_cycle();

    EvalLimits tight;
    tight.max_entries = 100;
    try {
        eval_bruteforce(catalog_diagram("fig1"), ts.scheme, tight);
        FAIL("expected rejection");
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::ResourceLimit);
    }

    EvalLimits tiny_out;
    tiny_out.max_entries = 32; // 4^3 = 64 output entries
    try {
        eval_elimination(catalog_diagram("triangle"), ts.scheme, std::nullopt, tiny_out);
        FAIL("expected rejection");
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::ResourceLimit);
    }

    // four spokes into one hub: contracting the hub touches 4^5 cells
    DiagramSpec spec;
    spec.nodes = {"r1", "r2", "r3", "r4", "c"};
    spec.roots = {"r1", "r2", "r3", "r4"};
    for (int i = 1; i <= 4; ++i)
        spec.edges.push_back(
            EdgeSpec{"e" + std::to_string(i), "r" + std::to_string(i), "c", BMElement::pure(Basis::A, 1)});
    spec.rotation = {{"r1", {td("e1")}}, {"r2", {td("e2")}}, {"r3", {td("e3")}}, {"r4", {td("e4")}},
                     {"c", {hd("e1"), hd("e2"), hd("e3"), hd("e4")}}};
    auto hub = build_diagram(spec);

    EvalLimits mid;
    mid.max_intermediate = 1000;
    try {
        eval_elimination(hub, ts.scheme, std::nullopt, mid);
        FAIL("expected rejection");
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::ResourceLimit);
        CHECK(std::string(err.what()).find("'c'") != std::string::npos);
    }
    auto fine = eval_elimination(hub, ts.scheme);
    CHECK(max_abs_diff(fine, eval_bruteforce(hub, ts.scheme)) < 1e-12);
}

TEST_CASE("series and parallel rewrites preserve the tensor") {
    for (const auto& scheme_name : {"z4-cycle", "z6-cycle"}) {
        CAPTURE(scheme_name);
        auto ts = catalog_scheme(scheme_name);

        auto path = catalog_diagram("path2", {1, 2});
        auto merged = reduce_series(path, "v", ts.scheme);
        CHECK(max_abs_diff(eval_bruteforce(path, ts.scheme), eval_bruteforce(merged, ts.scheme)) < 1e-12);

        auto par = catalog_diagram("parallel2", {1, 1});
        auto folded = reduce_parallel(par, "r1", "r2", ts.scheme);
        CHECK(max_abs_diff(eval_bruteforce(par, ts.scheme), eval_bruteforce(folded, ts.scheme)) < 1e-12);
    }
}

TEST_CASE("the tensor ignores the embedding") {
    auto ts = z4_cycle();
    auto side = two_loop_side_by_side();
    auto nested = two_loop_nested();
    CHECK(max_abs_diff(eval_bruteforce(side, ts.scheme), eval_bruteforce(nested, ts.scheme)) == 0.0);
    CHECK(max_abs_diff(eval_elimination(side, ts.scheme), eval_elimination(nested, ts.scheme)) == 0.0);
}

TEST_CASE("inner product is conjugate-linear on the right") {
    ScaffoldTensor a{1, 2, {{1.0, 2.0}, {0.0, -1.0}}};
    ScaffoldTensor b{1, 2, {{3.0, 0.0}, {0.0, 4.0}}};
    auto ab = inner_product(a, b);
    auto ba = inner_product(b, a);
    CHECK(ab == std::conj(ba));
    CHECK(ab == cplx{1.0, 2.0} * cplx{3.0, 0.0} + cplx{0.0, -1.0} * cplx{0.0, -4.0});

    ScaffoldTensor c{2, 2, {{1, 0}, {0, 0}, {0, 0}, {0, 0}}};
    try {
        inner_product(a, c);
        FAIL("expected rejection");
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::InvalidInput);
    }
}
