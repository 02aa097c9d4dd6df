// Edge-labeled directed graphs, conditional-shift compilation, and the
// permutation-completeness audit.

#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/hilbert.hpp"

namespace qwalk {

struct Edge {
    int src = 0;
    int dst = 0;
    int label = 0;

    auto operator<=>(const Edge&) const = default;
};

// Directed graph with integer edge labels. Multiple edges sharing a
// (src,label) or (dst,label) pair are allowed at construction; the audit
// reports them. Exact duplicate triples are rejected.
class EdgeLabeledGraph {
public:
    EdgeLabeledGraph(int n_vertices, int n_labels, std::vector<Edge> edges);

    int n_vertices() const { return n_vertices_; }
    int n_labels() const { return n_labels_; }
    // Canonical order: sorted by (label, src, dst).
    const std::vector<Edge>& edges() const { return edges_; }

    bool operator==(const EdgeLabeledGraph&) const = default;

private:
    int n_vertices_;
    int n_labels_;
    std::vector<Edge> edges_;
};

struct VertexLabel {
    int vertex = 0;
    int label = 0;

    auto operator<=>(const VertexLabel&) const = default;
};

// Well-formedness report for a conditional shift. The shift is a permutation
// matrix on the full (vertex x label) space iff all three deficiency lists
// are empty.
struct ShiftAudit {
    bool is_permutation = false;
    std::vector<VertexLabel> missing;        // no outgoing edge
    std::vector<VertexLabel> colliding_out;  // >= 2 outgoing edges
    std::vector<VertexLabel> colliding_in;   // >= 2 incoming edges
    std::vector<std::pair<VertexLabel, double>> column_norms;  // all pairs, sorted

    bool operator==(const ShiftAudit&) const = default;
};

// Conditional shift on shape [n_vertices, n_labels]:
// sum over edges of |dst><src| (x) |label><label|.
// Exactly the listed edges become entries; nothing is completed implicitly.
OperatorMatrix build_shift(const EdgeLabeledGraph& g);

ShiftAudit audit_shift(const EdgeLabeledGraph& g);

// The two shift listings printed for the 10-vertex cycled-path scenario.
// They disagree (the rearranged form adds four label-2 edges); both are
// first-class and neither is canonical.
enum class GraphVariant { original, rearranged };

EdgeLabeledGraph paper_graph(GraphVariant variant);

// Deterministic permutation-complete repair of the rearranged listing:
// colliding outgoing edges keep the smallest destination, colliding incoming
// edges keep the smallest source, and the remaining partial maps are
// completed (self-loop when free, else smallest free destination).
EdgeLabeledGraph paper_completed_graph();

// label 0: i -> i+1 (mod N); label 1: i -> i-1 (mod N).
EdgeLabeledGraph cycle_graph(int n);

// label 0: i -> i+1 for i < N-1; label 1: i -> i-1 for i > 0; each endpoint
// carries a self-loop on its otherwise-missing label. Note the self-loops
// leave the endpoint columns norm-1 but create incoming collisions, so the
// audit still reports deficiencies.
EdgeLabeledGraph path_graph(int n);

// Per label, completes the partial vertex map to a permutation, preferring a
// self-loop when the vertex's own slot is free. Rejects graphs with outgoing
// or incoming collisions: those cannot be completed without deleting edges.
EdgeLabeledGraph complete_to_permutation(const EdgeLabeledGraph& g);

}  // namespace qwalk
