#pragma once

#include <map>
#include <string>
#include <vector>

#include "skaff/scheme.hpp"

namespace skaff {

/// One end of an edge: the tail end (at the edge's source) or the head end.
struct Dart {
    int edge = 0;
    bool head = false;

    friend bool operator==(const Dart&, const Dart&) = default;
};

/// Dart named by edge id, used in input descriptions.
struct DartRef {
    std::string edge_id;
    bool head = false;
};

struct EdgeSpec {
    std::string id;
    std::string tail;
    std::string head;
    BMElement weight;
};

/// Raw description of a rooted disk-embedded multidigraph, as read from a
/// file or assembled by a builder.  Rotation lists give the darts at each
/// node in clockwise order; at a root the list covers only graph darts, and
/// is read as the clockwise span from the outgoing boundary arc around to
/// the incoming one.
struct DiagramSpec {
    std::vector<std::string> nodes;
    std::vector<std::string> roots;
    std::vector<EdgeSpec> edges;
    std::map<std::string, std::vector<DartRef>> rotation;
};

struct DiagramEdge {
    std::string id;
    int tail = 0;
    int head = 0;
    BMElement weight;
};

/// Validated diagram.  Node indices follow the declared node order; roots
/// are listed in clockwise order around the disk boundary.
struct Diagram {
    std::vector<std::string> nodes;
    std::vector<int> roots;
    std::vector<DiagramEdge> edges;
    std::vector<std::vector<Dart>> rotation;

    int ell() const { return static_cast<int>(roots.size()); }
    int node_index(const std::string& name) const;
    bool is_root(int node) const;
};

/// Directed walk along one edge; forward means tail to head.  Arcs of the
/// augmented graph appear with edge indices past the graph edges.
struct Traversal {
    int edge = 0;
    bool forward = true;

    friend bool operator==(const Traversal&, const Traversal&) = default;
};

/// Faces of the augmented graph (graph plus one boundary arc per root,
/// arc i running from root i to root i+1 with index edge_count+i).  Each
/// face is the dart cycle keeping the face region on the travel side's
/// left; every traversal lies in exactly one face.
struct FaceStructure {
    int edge_count = 0;
    int ell = 0;
    std::vector<std::vector<Traversal>> faces;
    std::vector<int> left_face;  // per augmented edge
    std::vector<int> right_face; // per augmented edge
    int outer_face = -1;         // face of all forward arc traversals; -1 when there are no roots
    std::vector<int> root_faces; // q_i = face right of arc i
    int boundary_face = -1;      // rootless diagrams: the face recorded as meeting the disk boundary
};

/// Validate a description and return the diagram.  Checks: well-formed
/// references, distinct roots, exact dart coverage, weak connectivity, and
/// an embedding consistency pass (Euler count, pure outer face, distinct
/// root faces).
Diagram build_diagram(const DiagramSpec& spec);

FaceStructure trace_faces(const Diagram& d);

/// Planar dual: one node per face (the outer face is dropped when roots
/// exist), one edge per edge running from its left face to its right face,
/// with the weight's basis kind swapped.  Roots become the faces q_1..q_l.
/// Requires every weight to be a pure element, all in the same basis.
Diagram dual_diagram(const Diagram& d);

/// Contract a non-root node with one incoming and one outgoing edge,
/// multiplying the two weights in the algebra.
Diagram reduce_series(const Diagram& d, const std::string& node, const Scheme& s);

/// Merge all edges sharing the ordered endpoint pair into one edge with the
/// entrywise product of the weights.
Diagram reduce_parallel(const Diagram& d, const std::string& tail, const std::string& head, const Scheme& s);

} // namespace skaff
