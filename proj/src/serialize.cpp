#include "qwalk/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace qwalk {

namespace {

std::string f6(double v) {
    if (std::abs(v) < 5e-7) v = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

int int_field(const json& j, const char* key) {
    if (!j.contains(key)) {
        throw std::invalid_argument(std::string("missing field '") + key + "'");
    }
    return j.at(key).get<int>();
}

}  // namespace

json complex_to_json(cx value) { return json::array({value.real(), value.imag()}); }

cx complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) {
        throw std::invalid_argument("complex values must be [re, im] pairs");
    }
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

json state_to_json(const StateVector& s) {
    json out = json::array();
    for (int f = 0; f < s.dim(); ++f) out.push_back(complex_to_json(s.amp(f)));
    return out;
}

json graph_to_json(const EdgeLabeledGraph& g) {
    json edges = json::array();
    for (const Edge& e : g.edges()) edges.push_back(json::array({e.src, e.dst, e.label}));
    return json{{"n_vertices", g.n_vertices()}, {"n_labels", g.n_labels()}, {"edges", edges}};
}

EdgeLabeledGraph graph_from_json(const json& j) {
    const int n_vertices = int_field(j, "n_vertices");
    const int n_labels = int_field(j, "n_labels");
    if (!j.contains("edges") || !j.at("edges").is_array()) {
        throw std::invalid_argument("graph: missing 'edges' array");
    }
    std::vector<Edge> edges;
    for (const json& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 3) {
            throw std::invalid_argument("graph: each edge must be [src, dst, label]");
        }
        edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>()});
    }
    return EdgeLabeledGraph(n_vertices, n_labels, std::move(edges));
}

namespace {

json vertex_labels_to_json(const std::vector<VertexLabel>& pairs) {
    json out = json::array();
    for (const VertexLabel& vl : pairs) out.push_back(json::array({vl.vertex, vl.label}));
    return out;
}

}  // namespace

json audit_to_json(const ShiftAudit& audit) {
    json norms = json::array();
    for (const auto& [vl, norm] : audit.column_norms) {
        norms.push_back(json::array({vl.vertex, vl.label, norm}));
    }
    return json{{"is_permutation", audit.is_permutation},
                {"missing", vertex_labels_to_json(audit.missing)},
                {"colliding_out", vertex_labels_to_json(audit.colliding_out)},
                {"colliding_in", vertex_labels_to_json(audit.colliding_in)},
                {"column_norms", norms}};
}

json outcome_to_json(const OutcomeRecord& rec) {
    json out{{"position", rec.position_outcome},
             {"coin1_outcome", rec.coin1_outcome},
             {"probability", rec.probability},
             {"zero_probability", rec.zero_probability},
             {"recovery_missing", rec.recovery_missing},
             {"recovery_nonunitary", rec.recovery_nonunitary},
             {"recovery_annihilated", rec.recovery_annihilated}};
    out["bob_state"] = rec.bob_state ? state_to_json(*rec.bob_state) : json(nullptr);
    out["recovered_state"] =
        rec.recovered_state ? state_to_json(*rec.recovered_state) : json(nullptr);
    out["fidelity_vs_input"] =
        rec.fidelity_vs_input ? json(*rec.fidelity_vs_input) : json(nullptr);
    return out;
}

json claim_report_to_json(const ClaimReport& report) {
    json claims = json::array();
    for (const ClaimEntry& entry : report.claims) {
        claims.push_back(json{{"claim_id", entry.claim_id},
                              {"paper_location", entry.paper_location},
                              {"status", std::string(to_string(entry.status))},
                              {"computed", entry.computed},
                              {"expected", entry.expected},
                              {"detail", entry.detail}});
    }
    return json{{"variant", report.variant},
                {"seed", report.seed},
                {"tolerance", report.tolerance},
                {"claims", claims}};
}

ClaimReport claim_report_from_json(const json& j) {
    ClaimReport report;
    report.variant = j.at("variant").get<std::string>();
    report.seed = j.at("seed").get<std::uint64_t>();
    report.tolerance = j.at("tolerance").get<double>();
    for (const json& c : j.at("claims")) {
        ClaimEntry entry;
        entry.claim_id = c.at("claim_id").get<std::string>();
        entry.paper_location = c.at("paper_location").get<std::string>();
        entry.status = claim_status_from_string(c.at("status").get<std::string>());
        entry.computed = c.at("computed").get<std::string>();
        entry.expected = c.at("expected").get<std::string>();
        entry.detail = c.at("detail").get<std::string>();
        report.claims.push_back(std::move(entry));
    }
    return report;
}

EdgeLabeledGraph builtin_graph(const std::string& name) {
    const auto colon = name.find(':');
    if (colon == std::string::npos) {
        throw std::invalid_argument("unknown builtin graph '" + name +
                                    "' (expected paper:VARIANT, cycle:N, or path:N)");
    }
    const std::string family = name.substr(0, colon);
    const std::string arg = name.substr(colon + 1);
    if (family == "paper") {
        if (arg == "original") return paper_graph(GraphVariant::original);
        if (arg == "rearranged") return paper_graph(GraphVariant::rearranged);
        if (arg == "completed") return paper_completed_graph();
        throw std::invalid_argument("unknown paper variant '" + arg + "'");
    }
    if (family == "cycle" || family == "path") {
        int n = 0;
        try {
            std::size_t used = 0;
            n = std::stoi(arg, &used);
            if (used != arg.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw std::invalid_argument("builtin graph '" + name + "': '" + arg +
                                        "' is not a vertex count");
        }
        return family == "cycle" ? cycle_graph(n) : path_graph(n);
    }
    throw std::invalid_argument("unknown builtin graph family '" + family + "'");
}

ProtocolSpec builtin_protocol(const std::string& name, ProtocolVariant variant) {
    if (name == "paper") return paper_protocol(variant);
    if (name == "sanity") return sanity_protocol();
    throw std::invalid_argument("unknown builtin protocol '" + name +
                                "' (expected paper or sanity)");
}

namespace {

CoinKind coin_kind_from_json(const json& j) {
    const std::string kind = j.at("coin_kind").get<std::string>();
    const int dim = int_field(j, "dim");
    if (kind == "identity") return CoinKind::identity(dim);
    if (kind == "fourier") return CoinKind::fourier(dim);
    if (kind == "grover") return CoinKind::grover(dim);
    if (kind == "hadamard") {
        if (dim != 2) throw std::invalid_argument("hadamard coin requires dim 2");
        return CoinKind::hadamard();
    }
    throw std::invalid_argument("unknown coin kind '" + kind + "'");
}

OperatorMatrix matrix_from_json(const json& j, int d) {
    if (!j.is_array() || static_cast<int>(j.size()) != d) {
        throw std::invalid_argument("recovery matrix must be " + std::to_string(d) + "x" +
                                    std::to_string(d) + " (got " + std::to_string(j.size()) +
                                    " rows)");
    }
    OperatorMatrix m = OperatorMatrix::zero(SpaceShape({d}));
    for (int r = 0; r < d; ++r) {
        const json& row = j.at(static_cast<std::size_t>(r));
        if (!row.is_array() || static_cast<int>(row.size()) != d) {
            throw std::invalid_argument("recovery matrix must be " + std::to_string(d) + "x" +
                                        std::to_string(d) + " (row " + std::to_string(r) +
                                        " has " + std::to_string(row.size()) + " entries)");
        }
        for (int c = 0; c < d; ++c) {
            m.set(r, c, complex_from_json(row.at(static_cast<std::size_t>(c))));
        }
    }
    return m;
}

std::vector<StateVector> named_basis(const std::string& name, int d) {
    if (name == "fourier") return fourier_basis(d);
    if (name == "computational") {
        std::vector<StateVector> basis;
        for (int k = 0; k < d; ++k) basis.push_back(basis_state(SpaceShape({d}), {k}));
        return basis;
    }
    throw std::invalid_argument("unknown measurement basis '" + name +
                                "' (expected computational or fourier)");
}

}  // namespace

ProtocolSpec protocol_from_json(const json& j) {
    std::string variant_label = "inline graph";
    EdgeLabeledGraph graph = [&]() {
        const json& g = j.at("graph");
        if (g.is_string()) {
            variant_label = g.get<std::string>();
            return builtin_graph(variant_label);
        }
        return graph_from_json(g);
    }();

    const json& dims = j.at("coin_dims");
    if (!dims.is_array() || dims.size() != 2) {
        throw std::invalid_argument("protocol: 'coin_dims' must be [d1, d2]");
    }
    const int d1 = dims.at(0).get<int>();
    const int d2 = dims.at(1).get<int>();
    const SpaceShape shape({graph.n_vertices(), d1, d2});

    std::vector<WalkStep> steps;
    for (const json& s : j.at("steps")) {
        steps.push_back({int_field(s, "coin_subsystem"), coin_kind_from_json(s), graph});
    }

    std::map<std::pair<int, int>, OperatorMatrix> recovery;
    if (j.contains("recovery_table")) {
        for (const json& entry : j.at("recovery_table")) {
            recovery.emplace(
                std::pair{int_field(entry, "position"), int_field(entry, "coin1_outcome")},
                matrix_from_json(entry.at("matrix"), d2));
        }
    }

    ProtocolSpec spec{
        .name = j.contains("name") ? j.at("name").get<std::string>() : "custom",
        .variant_label = std::move(variant_label),
        .shape = shape,
        .graph = std::move(graph),
        .start_vertex = int_field(j, "start_vertex"),
        .steps = std::move(steps),
        .position_outcome = j.contains("position_outcome") ? int_field(j, "position_outcome") : 0,
        .coin1_basis = named_basis(j.at("coin1_basis").get<std::string>(), d1),
        .recovery_table = std::move(recovery),
    };
    validate_protocol(spec);
    return spec;
}

std::string render_complex(cx value) {
    const double mag = std::abs(value);
    if (mag <= 1e-12) return "0";
    double phase = std::arg(value);
    if (phase <= -std::numbers::pi) phase = std::numbers::pi;
    if (std::abs(phase) < 1e-9) phase = 0.0;
    return f6(mag) + "∠" + f6(phase);
}

std::string render_state(const StateVector& s) {
    std::string out;
    for (int f = 0; f < s.dim(); ++f) {
        if (std::abs(s.amp(f)) <= 1e-12) continue;
        if (!out.empty()) out += " + ";
        out += render_complex(s.amp(f)) + " " + ket_label(s.shape(), f);
    }
    return out.empty() ? "0" : out;
}

std::string render_audit(const std::string& graph_name, const EdgeLabeledGraph& g,
                         const ShiftAudit& audit) {
    std::string out = "graph: " + graph_name + " (" + std::to_string(g.n_vertices()) +
                      " vertices, " + std::to_string(g.n_labels()) + " labels, " +
                      std::to_string(g.edges().size()) + " edges)\n";
    out += render_audit_brief(audit) + "\n";
    out += "column_norms:";
    for (const auto& [vl, norm] : audit.column_norms) {
        out += " (" + std::to_string(vl.vertex) + "," + std::to_string(vl.label) +
               ")=" + f6(norm);
    }
    out += "\n";
    return out;
}

std::string render_claim_report(const ClaimReport& report) {
    char tol[32];
    std::snprintf(tol, sizeof tol, "%.0e", report.tolerance);
    std::string out = "claim audit: variant=" + report.variant +
                      " seed=" + std::to_string(report.seed) + " tolerance=" + tol + "\n";
    for (const ClaimEntry& entry : report.claims) {
        out += entry.claim_id + " [" + std::string(to_string(entry.status)) + "] " +
               entry.paper_location + "\n";
        out += "  computed: " + entry.computed + "\n";
        out += "  expected: " + entry.expected + "\n";
        out += "  detail:   " + entry.detail + "\n";
    }
    return out;
}

std::string render_outcome(const OutcomeRecord& rec) {
    std::string out = "outcome (p=" + std::to_string(rec.position_outcome) +
                      ", f=" + std::to_string(rec.coin1_outcome) +
                      "): probability=" + f6(rec.probability);
    if (rec.zero_probability) {
        out += " zero-probability";
        return out;
    }
    if (rec.bob_state) out += " bob=" + render_state(*rec.bob_state);
    if (rec.recovery_missing) {
        out += " recovery=none fidelity=n/a";
        return out;
    }
    if (rec.recovery_annihilated) {
        out += " recovered=annihilated fidelity=n/a";
    } else if (rec.recovered_state) {
        out += " recovered=" + render_state(*rec.recovered_state);
        out += " fidelity=" + (rec.fidelity_vs_input ? f6(*rec.fidelity_vs_input)
                                                     : std::string("n/a"));
    }
    if (rec.recovery_nonunitary) out += " [non-unitary recovery]";
    return out;
}

}  // namespace qwalk
