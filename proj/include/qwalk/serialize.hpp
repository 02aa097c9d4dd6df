// JSON conversions for the external file formats and deterministic text
// rendering for the CLI.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qwalk/graphshift.hpp"
#include "qwalk/hilbert.hpp"
#include "qwalk/protocol.hpp"
#include "qwalk/verify.hpp"

namespace qwalk {

using json = nlohmann::json;

// complex <-> [re, im]
json complex_to_json(cx value);
cx complex_from_json(const json& j);

json state_to_json(const StateVector& s);  // flat array of [re, im]

// graph: {"n_vertices": N, "n_labels": L, "edges": [[src, dst, label], ...]}
json graph_to_json(const EdgeLabeledGraph& g);
EdgeLabeledGraph graph_from_json(const json& j);

json audit_to_json(const ShiftAudit& audit);

json outcome_to_json(const OutcomeRecord& rec);

json claim_report_to_json(const ClaimReport& report);
ClaimReport claim_report_from_json(const json& j);

// Builtin scenario names: paper:original, paper:rearranged, paper:completed,
// cycle:N, path:N.
EdgeLabeledGraph builtin_graph(const std::string& name);

// Builtin protocols: "paper" (variant selectable) and "sanity".
ProtocolSpec builtin_protocol(const std::string& name, ProtocolVariant variant);

// Protocol config schema:
// {
//   "name": optional string,
//   "graph": builtin name or inline graph object,
//   "coin_dims": [d1, d2],
//   "start_vertex": int,
//   "position_outcome": optional int (default 0),
//   "steps": [{"coin_subsystem": 1|2, "coin_kind": name, "dim": int}, ...],
//   "coin1_basis": "computational" | "fourier",
//   "recovery_table": [{"position": int, "coin1_outcome": int,
//                       "matrix": d2 x d2 array of [re, im]}, ...]
// }
ProtocolSpec protocol_from_json(const json& j);

// Text rendering. Complex values print as modulus∠phase with the phase
// normalized to (-pi, pi], six decimals.
std::string render_complex(cx value);
std::string render_state(const StateVector& s);
std::string render_audit(const std::string& graph_name, const EdgeLabeledGraph& g,
                         const ShiftAudit& audit);
std::string render_claim_report(const ClaimReport& report);
std::string render_outcome(const OutcomeRecord& rec);

}  // namespace qwalk
