#include "qwalk/graphshift.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

namespace qwalk {

EdgeLabeledGraph::EdgeLabeledGraph(int n_vertices, int n_labels, std::vector<Edge> edges)
    : n_vertices_(n_vertices), n_labels_(n_labels), edges_(std::move(edges)) {
    if (n_vertices_ < 1 || n_labels_ < 1) {
        throw std::invalid_argument("EdgeLabeledGraph: vertex and label counts must be positive");
    }
    for (const Edge& e : edges_) {
        if (e.src < 0 || e.src >= n_vertices_ || e.dst < 0 || e.dst >= n_vertices_) {
            throw std::out_of_range("EdgeLabeledGraph: edge (" + std::to_string(e.src) + "," +
                                    std::to_string(e.dst) + "," + std::to_string(e.label) +
                                    ") has a vertex outside [0," + std::to_string(n_vertices_) +
                                    ")");
        }
        if (e.label < 0 || e.label >= n_labels_) {
            throw std::out_of_range("EdgeLabeledGraph: edge (" + std::to_string(e.src) + "," +
                                    std::to_string(e.dst) + "," + std::to_string(e.label) +
                                    ") has a label outside [0," + std::to_string(n_labels_) + ")");
        }
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
        return std::tie(a.label, a.src, a.dst) < std::tie(b.label, b.src, b.dst);
    });
    const auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end()) {
        throw std::invalid_argument("EdgeLabeledGraph: duplicate edge (" + std::to_string(dup->src) +
                                    "," + std::to_string(dup->dst) + "," +
                                    std::to_string(dup->label) + ")");
    }
}

OperatorMatrix build_shift(const EdgeLabeledGraph& g) {
    const SpaceShape shape({g.n_vertices(), g.n_labels()});
    OperatorMatrix m = OperatorMatrix::zero(shape);
    for (const Edge& e : g.edges()) {
        const int row = shape.flat_index(std::initializer_list<int>{e.dst, e.label});
        const int col = shape.flat_index(std::initializer_list<int>{e.src, e.label});
        m.add(row, col, cx{1.0, 0.0});
    }
    return m;
}

ShiftAudit audit_shift(const EdgeLabeledGraph& g) {
    std::map<VertexLabel, int> out_deg;
    std::map<VertexLabel, int> in_deg;
    for (int v = 0; v < g.n_vertices(); ++v) {
        for (int l = 0; l < g.n_labels(); ++l) {
            out_deg[{v, l}] = 0;
            in_deg[{v, l}] = 0;
        }
    }
    for (const Edge& e : g.edges()) {
        ++out_deg[{e.src, e.label}];
        ++in_deg[{e.dst, e.label}];
    }

    ShiftAudit audit;
    for (const auto& [vl, deg] : out_deg) {
        if (deg == 0) audit.missing.push_back(vl);
        if (deg >= 2) audit.colliding_out.push_back(vl);
        audit.column_norms.emplace_back(vl, std::sqrt(static_cast<double>(deg)));
    }
    for (const auto& [vl, deg] : in_deg) {
        if (deg >= 2) audit.colliding_in.push_back(vl);
    }
    audit.is_permutation =
        audit.missing.empty() && audit.colliding_out.empty() && audit.colliding_in.empty();
    return audit;
}

EdgeLabeledGraph paper_graph(GraphVariant variant) {
    std::vector<Edge> edges;
    // label 0: m -> m+1 for m = 0..7
    for (int m = 0; m <= 7; ++m) edges.push_back({m, m + 1, 0});
    // label 1: m -> m-1 for m = 1..7, plus the cycle returns
    for (int m = 1; m <= 7; ++m) edges.push_back({m, m - 1, 1});
    edges.push_back({8, 1, 1});
    edges.push_back({3, 8, 1});
    edges.push_back({9, 4, 1});
    edges.push_back({6, 9, 1});
    // label 2: the two listings differ here
    edges.push_back({1, 8, 2});
    edges.push_back({8, 3, 2});
    edges.push_back({4, 9, 2});
    edges.push_back({9, 6, 2});
    if (variant == GraphVariant::rearranged) {
        edges.push_back({5, 4, 2});
        edges.push_back({6, 5, 2});
        edges.push_back({3, 2, 2});
        edges.push_back({2, 1, 2});
    }
    return EdgeLabeledGraph(10, 3, std::move(edges));
}

namespace {

// Keeps the lexicographically smallest destination per (src,label), then the
// smallest source per (dst,label).
EdgeLabeledGraph drop_collisions(const EdgeLabeledGraph& g) {
    std::map<std::pair<int, int>, Edge> by_out;
    for (const Edge& e : g.edges()) {
        auto [it, inserted] = by_out.try_emplace({e.label, e.src}, e);
        if (!inserted && e.dst < it->second.dst) it->second = e;
    }
    std::map<std::pair<int, int>, Edge> by_in;
    for (const auto& [key, e] : by_out) {
        auto [it, inserted] = by_in.try_emplace({e.label, e.dst}, e);
        if (!inserted && e.src < it->second.src) it->second = e;
    }
    std::vector<Edge> kept;
    kept.reserve(by_in.size());
    for (const auto& [key, e] : by_in) kept.push_back(e);
    return EdgeLabeledGraph(g.n_vertices(), g.n_labels(), std::move(kept));
}

}  // namespace

EdgeLabeledGraph paper_completed_graph() {
    return complete_to_permutation(drop_collisions(paper_graph(GraphVariant::rearranged)));
}

EdgeLabeledGraph cycle_graph(int n) {
    if (n < 2) {
        throw std::invalid_argument("cycle_graph: need at least 2 vertices");
    }
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(2 * n));
    for (int i = 0; i < n; ++i) {
        edges.push_back({i, (i + 1) % n, 0});
        edges.push_back({i, (i - 1 + n) % n, 1});
    }
    return EdgeLabeledGraph(n, 2, std::move(edges));
}

EdgeLabeledGraph path_graph(int n) {
    if (n < 2) {
        throw std::invalid_argument("path_graph: need at least 2 vertices");
    }
    std::vector<Edge> edges;
    for (int i = 0; i < n - 1; ++i) edges.push_back({i, i + 1, 0});
    for (int i = 1; i < n; ++i) edges.push_back({i, i - 1, 1});
    edges.push_back({n - 1, n - 1, 0});
    edges.push_back({0, 0, 1});
    return EdgeLabeledGraph(n, 2, std::move(edges));
}

EdgeLabeledGraph complete_to_permutation(const EdgeLabeledGraph& g) {
    const ShiftAudit audit = audit_shift(g);
    if (!audit.colliding_out.empty() || !audit.colliding_in.empty()) {
        std::string msg = "complete_to_permutation: graph has colliding edges at";
        for (const VertexLabel& vl : audit.colliding_out) {
            msg += " out(" + std::to_string(vl.vertex) + "," + std::to_string(vl.label) + ")";
        }
        for (const VertexLabel& vl : audit.colliding_in) {
            msg += " in(" + std::to_string(vl.vertex) + "," + std::to_string(vl.label) + ")";
        }
        throw std::invalid_argument(msg);
    }

    std::vector<Edge> edges = g.edges();
    for (int l = 0; l < g.n_labels(); ++l) {
        std::set<int> used_dst;
        std::set<int> has_out;
        for (const Edge& e : edges) {
            if (e.label != l) continue;
            used_dst.insert(e.dst);
            has_out.insert(e.src);
        }
        for (int v = 0; v < g.n_vertices(); ++v) {
            if (has_out.contains(v)) continue;
            int dst = v;  // self-loop when the slot is free
            if (used_dst.contains(dst)) {
                dst = 0;
                while (used_dst.contains(dst)) ++dst;
            }
            used_dst.insert(dst);
            edges.push_back({v, dst, l});
        }
    }
    return EdgeLabeledGraph(g.n_vertices(), g.n_labels(), std::move(edges));
}

}  // namespace qwalk
