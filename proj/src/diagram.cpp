#include "skaff/diagram.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>

#include "skaff/errors.hpp"

namespace skaff {

int Diagram::node_index(const std::string& name) const {
    for (size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i] == name) return static_cast<int>(i);
    fail(ErrorKind::InvalidInput, "unknown node '" + name + "'");
}

bool Diagram::is_root(int node) const {
    return std::find(roots.begin(), roots.end(), node) != roots.end();
}

namespace {

// The augmented graph: arcs appended after the graph edges, arc i running
// from root i to root i+1 (cyclically).  Root rotations are completed to
// [arc i out, user darts, arc i-1 in]; tracing then works on one uniform
// rotation system.
struct MapContext {
    int m = 0;   // graph edges
    int ell = 0; // arcs
    std::vector<int> tails, heads;                     // per augmented edge
    std::vector<std::vector<Dart>> full_rot;           // per node
    std::vector<std::pair<int, int>> tail_pos, head_pos; // per augmented edge: (node, slot)

    int total_edges() const { return m + ell; }
};

MapContext map_context(const Diagram& d) {
    MapContext ctx;
    ctx.m = static_cast<int>(d.edges.size());
    ctx.ell = d.ell();
    for (const auto& e : d.edges) {
        ctx.tails.push_back(e.tail);
        ctx.heads.push_back(e.head);
    }
    for (int i = 0; i < ctx.ell; ++i) {
        ctx.tails.push_back(d.roots[i]);
        ctx.heads.push_back(d.roots[(i + 1) % ctx.ell]);
    }

    ctx.full_rot.resize(d.nodes.size());
    for (size_t v = 0; v < d.nodes.size(); ++v) ctx.full_rot[v] = d.rotation[v];
    for (int i = 0; i < ctx.ell; ++i) {
        int r = d.roots[i];
        int prev = (i + ctx.ell - 1) % ctx.ell;
        auto& rot = ctx.full_rot[r];
        rot.insert(rot.begin(), Dart{ctx.m + i, false});
        rot.push_back(Dart{ctx.m + prev, true});
    }

    ctx.tail_pos.assign(ctx.total_edges(), {-1, -1});
    ctx.head_pos.assign(ctx.total_edges(), {-1, -1});
    for (size_t v = 0; v < ctx.full_rot.size(); ++v)
        for (size_t slot = 0; slot < ctx.full_rot[v].size(); ++slot) {
            Dart dart = ctx.full_rot[v][slot];
            auto& pos = dart.head ? ctx.head_pos[dart.edge] : ctx.tail_pos[dart.edge];
            pos = {static_cast<int>(v), static_cast<int>(slot)};
        }
    return ctx;
}

// Next traversal of the face walk: enter along t, pivot clockwise past the
// arrival dart, leave along the dart found there.
Traversal next_traversal(const MapContext& ctx, Traversal t) {
    auto [node, slot] = t.forward ? ctx.head_pos[t.edge] : ctx.tail_pos[t.edge];
    const auto& rot = ctx.full_rot[node];
    Dart out = rot[(slot + 1) % rot.size()];
    return Traversal{out.edge, !out.head};
}

FaceStructure trace(const MapContext& ctx) {
    FaceStructure fs;
    fs.edge_count = ctx.m;
    fs.ell = ctx.ell;
    int te = ctx.total_edges();
    fs.left_face.assign(te, -1);
    fs.right_face.assign(te, -1);

    auto face_slot = [&](Traversal t) -> int& { return t.forward ? fs.left_face[t.edge] : fs.right_face[t.edge]; };

    for (int e = 0; e < te; ++e)
        for (bool fwd : {true, false}) {
            Traversal start{e, fwd};
            if (face_slot(start) >= 0) continue;
            int id = static_cast<int>(fs.faces.size());
            fs.faces.emplace_back();
            Traversal cur = start;
            do {
                fs.faces[id].push_back(cur);
                face_slot(cur) = id;
                cur = next_traversal(ctx, cur);
            } while (!(cur == start));
        }

    // a lone node with no edges still spans one face
    if (te == 0) fs.faces.emplace_back();

    if (ctx.ell > 0) {
        fs.outer_face = fs.left_face[ctx.m];
        for (int i = 0; i < ctx.ell; ++i) fs.root_faces.push_back(fs.right_face[ctx.m + i]);
        fs.boundary_face = fs.outer_face;
    } else {
        fs.boundary_face = 0;
    }
    return fs;
}

[[noreturn]] void invalid(const std::string& msg) { fail(ErrorKind::ValidationFailure, msg); }

} // namespace

Diagram build_diagram(const DiagramSpec& spec) {
    if (spec.nodes.empty()) invalid("diagram has no nodes");

    Diagram d;
    d.nodes = spec.nodes;
    std::map<std::string, int> node_id;
    for (size_t i = 0; i < spec.nodes.size(); ++i) {
        if (spec.nodes[i].empty()) fail(ErrorKind::InvalidInput, "empty node name");
        if (!node_id.emplace(spec.nodes[i], static_cast<int>(i)).second)
            fail(ErrorKind::InvalidInput, "duplicate node name '" + spec.nodes[i] + "'");
    }

    for (const auto& r : spec.roots) {
        auto it = node_id.find(r);
        if (it == node_id.end()) fail(ErrorKind::InvalidInput, "root '" + r + "' is not a node");
        if (std::find(d.roots.begin(), d.roots.end(), it->second) != d.roots.end())
            invalid("duplicate root '" + r + "'");
        d.roots.push_back(it->second);
    }

    std::map<std::string, int> edge_id;
    for (const auto& e : spec.edges) {
        if (e.id.empty()) fail(ErrorKind::InvalidInput, "empty edge id");
        if (!edge_id.emplace(e.id, static_cast<int>(d.edges.size())).second)
            fail(ErrorKind::InvalidInput, "duplicate edge id '" + e.id + "'");
        auto t = node_id.find(e.tail);
        if (t == node_id.end()) fail(ErrorKind::InvalidInput, "edge '" + e.id + "' tail is not a node");
        auto h = node_id.find(e.head);
        if (h == node_id.end()) fail(ErrorKind::InvalidInput, "edge '" + e.id + "' head is not a node");
        d.edges.push_back(DiagramEdge{e.id, t->second, h->second, e.weight});
    }

    // exact dart coverage: each edge end appears once, at its own node
    d.rotation.resize(d.nodes.size());
    std::vector<int> seen_tail(d.edges.size(), 0), seen_head(d.edges.size(), 0);
    for (const auto& [name, darts] : spec.rotation) {
        auto it = node_id.find(name);
        if (it == node_id.end()) fail(ErrorKind::InvalidInput, "rotation lists unknown node '" + name + "'");
        int v = it->second;
        for (const auto& ref : darts) {
            auto eit = edge_id.find(ref.edge_id);
            if (eit == edge_id.end())
                fail(ErrorKind::InvalidInput, "rotation references unknown edge '" + ref.edge_id + "'");
            int e = eit->second;
            int want = ref.head ? d.edges[e].head : d.edges[e].tail;
            if (want != v)
                invalid("dart '" + ref.edge_id + (ref.head ? ":h" : ":t") + "' listed at node '" + name +
                        "', which is not its endpoint");
            int& count = ref.head ? seen_head[e] : seen_tail[e];
            if (++count > 1) invalid("dart '" + ref.edge_id + (ref.head ? ":h" : ":t") + "' listed twice");
            d.rotation[v].push_back(Dart{e, ref.head});
        }
    }
    for (size_t e = 0; e < d.edges.size(); ++e) {
        if (!seen_tail[e]) invalid("dart '" + d.edges[e].id + ":t' missing from the rotation");
        if (!seen_head[e]) invalid("dart '" + d.edges[e].id + ":h' missing from the rotation");
    }

    // weak connectivity; an isolated node is fine only on its own
    if (d.nodes.size() > 1) {
        std::vector<int> comp(d.nodes.size());
        std::iota(comp.begin(), comp.end(), 0);
        std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
        for (const auto& e : d.edges) comp[find(e.tail)] = find(e.head);
        for (size_t v = 1; v < d.nodes.size(); ++v)
            if (find(static_cast<int>(v)) != find(0)) invalid("diagram is not weakly connected");
    }

    // embedding consistency on the augmented graph
    auto ctx = map_context(d);
    auto fs = trace(ctx);
    long long euler = static_cast<long long>(d.nodes.size()) - ctx.total_edges() +
                      static_cast<long long>(fs.faces.size());
    if (euler != 2) {
        std::ostringstream msg;
        msg << "rotation system is not a disk embedding: " << d.nodes.size() << " - " << ctx.total_edges() << " + "
            << fs.faces.size() << " != 2";
        invalid(msg.str());
    }
    if (ctx.ell > 0) {
        const auto& outer = fs.faces[fs.outer_face];
        if (static_cast<int>(outer.size()) != ctx.ell) invalid("graph darts intrude on the outer face");
        for (const auto& t : outer)
            if (t.edge < ctx.m || !t.forward) invalid("graph darts intrude on the outer face");
        for (int i = 0; i < ctx.ell; ++i)
            for (int j = i + 1; j < ctx.ell; ++j)
                if (fs.root_faces[i] == fs.root_faces[j]) invalid("two boundary arcs share an interior face");
    }

    return d;
}

FaceStructure trace_faces(const Diagram& d) {
    auto ctx = map_context(d);
    return trace(ctx);
}

Diagram dual_diagram(const Diagram& d) {
    std::optional<Basis> basis;
    for (const auto& e : d.edges) {
        if (e.weight.pure_index() < 0)
            fail(ErrorKind::UnsupportedOperation,
                 "dualization needs pure basis weights; expand combinations first");
        if (basis && *basis != e.weight.basis)
            fail(ErrorKind::UnsupportedOperation, "dualization needs all weights in the same basis");
        basis = e.weight.basis;
    }

    auto fs = trace_faces(d);
    int nfaces = static_cast<int>(fs.faces.size());

    std::vector<std::string> face_name(nfaces);
    for (int i = 0; i < fs.ell; ++i) face_name[fs.root_faces[i]] = "q" + std::to_string(i + 1);
    int counter = 0;
    for (int f = 0; f < nfaces; ++f) {
        if (f == fs.outer_face || !face_name[f].empty()) continue;
        face_name[f] = "f" + std::to_string(++counter);
    }

    DiagramSpec spec;
    for (int f = 0; f < nfaces; ++f)
        if (f != fs.outer_face) spec.nodes.push_back(face_name[f]);
    for (int i = 0; i < fs.ell; ++i) spec.roots.push_back(face_name[fs.root_faces[i]]);

    for (int e = 0; e < fs.edge_count; ++e) {
        const auto& edge = d.edges[e];
        Basis flipped = edge.weight.basis == Basis::A ? Basis::E : Basis::A;
        spec.edges.push_back(EdgeSpec{edge.id, face_name[fs.left_face[e]], face_name[fs.right_face[e]],
                                      BMElement::pure(flipped, edge.weight.pure_index())});
    }

    for (int f = 0; f < nfaces; ++f) {
        if (f == fs.outer_face && fs.ell > 0) continue;
        auto cycle = fs.faces[f];
        bool is_root_face = false;
        for (int i = 0; i < fs.ell; ++i) {
            if (fs.root_faces[i] != f) continue;
            is_root_face = true;
            // start just past the arc traversal; the arc's slot becomes the
            // implicit boundary bracket of the dual root
            auto at = std::find(cycle.begin(), cycle.end(), Traversal{fs.edge_count + i, false});
            std::rotate(cycle.begin(), at, cycle.end());
            break;
        }
        std::vector<DartRef> rot;
        for (const auto& t : cycle) {
            if (t.edge >= fs.edge_count) continue; // arcs own no dual dart here
            rot.push_back(DartRef{d.edges[t.edge].id, !t.forward});
        }
        std::reverse(rot.begin(), rot.end());
        (void)is_root_face;
        spec.rotation[face_name[f]] = std::move(rot);
    }

    return build_diagram(spec);
}

namespace {

DiagramSpec to_spec(const Diagram& d) {
    DiagramSpec spec;
    spec.nodes = d.nodes;
    for (int r : d.roots) spec.roots.push_back(d.nodes[r]);
    for (const auto& e : d.edges)
        spec.edges.push_back(EdgeSpec{e.id, d.nodes[e.tail], d.nodes[e.head], e.weight});
    for (size_t v = 0; v < d.nodes.size(); ++v) {
        std::vector<DartRef> rot;
        for (const auto& dart : d.rotation[v]) rot.push_back(DartRef{d.edges[dart.edge].id, dart.head});
        spec.rotation[d.nodes[v]] = std::move(rot);
    }
    return spec;
}

} // namespace

Diagram reduce_series(const Diagram& d, const std::string& node, const Scheme& s) {
    int v = d.node_index(node);
    if (d.is_root(v)) fail(ErrorKind::InvalidRewrite, "series reduction cannot remove root '" + node + "'");
    const auto& rot = d.rotation[v];
    if (rot.size() != 2 || rot[0].head == rot[1].head)
        fail(ErrorKind::InvalidRewrite,
             "series reduction needs exactly one incoming and one outgoing edge at '" + node + "'");
    int e_in = rot[0].head ? rot[0].edge : rot[1].edge;
    int e_out = rot[0].head ? rot[1].edge : rot[0].edge;
    if (e_in == e_out) fail(ErrorKind::InvalidRewrite, "series reduction does not apply to a loop");

    BMElement merged = bm_multiply(s, d.edges[e_in].weight, d.edges[e_out].weight);

    auto spec = to_spec(d);
    spec.nodes.erase(spec.nodes.begin() + v);
    spec.rotation.erase(node);
    const std::string in_id = d.edges[e_in].id, out_id = d.edges[e_out].id;
    std::vector<EdgeSpec> edges;
    for (auto& e : spec.edges) {
        if (e.id == out_id) continue;
        if (e.id == in_id) {
            e.head = d.nodes[d.edges[e_out].head];
            e.weight = merged;
        }
        edges.push_back(std::move(e));
    }
    spec.edges = std::move(edges);
    for (auto& [name, rot_list] : spec.rotation)
        for (auto& ref : rot_list)
            if (ref.edge_id == out_id && ref.head) ref.edge_id = in_id;
    return build_diagram(spec);
}

Diagram reduce_parallel(const Diagram& d, const std::string& tail, const std::string& head, const Scheme& s) {
    int u = d.node_index(tail);
    int v = d.node_index(head);
    std::vector<int> bundle;
    for (size_t e = 0; e < d.edges.size(); ++e)
        if (d.edges[e].tail == u && d.edges[e].head == v) bundle.push_back(static_cast<int>(e));
    if (bundle.size() < 2)
        fail(ErrorKind::InvalidRewrite,
             "parallel reduction needs at least two edges from '" + tail + "' to '" + head + "'");

    BMElement merged = d.edges[bundle[0]].weight;
    for (size_t i = 1; i < bundle.size(); ++i) merged = bm_hadamard(s, merged, d.edges[bundle[i]].weight);

    std::vector<std::string> dropped;
    for (size_t i = 1; i < bundle.size(); ++i) dropped.push_back(d.edges[bundle[i]].id);

    auto spec = to_spec(d);
    std::vector<EdgeSpec> edges;
    for (auto& e : spec.edges) {
        if (std::find(dropped.begin(), dropped.end(), e.id) != dropped.end()) continue;
        if (e.id == d.edges[bundle[0]].id) e.weight = merged;
        edges.push_back(std::move(e));
    }
    spec.edges = std::move(edges);
    for (auto& [name, rot_list] : spec.rotation) {
        std::vector<DartRef> kept;
        for (auto& ref : rot_list)
            if (std::find(dropped.begin(), dropped.end(), ref.edge_id) == dropped.end())
                kept.push_back(std::move(ref));
        rot_list = std::move(kept);
    }
    return build_diagram(spec);
}

} // namespace skaff
