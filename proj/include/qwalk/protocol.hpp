// The teleportation protocol engine: preparation, two-step evolution,
// position + coin-1 measurement, recovery application, fidelity.

#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qwalk/coins.hpp"
#include "qwalk/graphshift.hpp"
#include "qwalk/hilbert.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

// Which shift listing drives the built-in scenario. `completed` is the
// deterministic permutation-complete repair (see paper_completed_graph).
enum class ProtocolVariant { original, rearranged, completed };

std::string_view variant_name(ProtocolVariant v);
ProtocolVariant variant_from_name(std::string_view name);
EdgeLabeledGraph variant_graph(ProtocolVariant v);

// A full protocol description. Subsystem order is (position, coin1, coin2);
// coin1 is the sender's measured coin, coin2 is the receiver's.
struct ProtocolSpec {
    std::string name;
    std::string variant_label;  // stated in every report this protocol produces
    SpaceShape shape;           // [positions, d1, d2]
    EdgeLabeledGraph graph;
    int start_vertex = 0;
    std::vector<WalkStep> steps;
    int position_outcome = 0;  // the outcome the recovery table is written for
    std::vector<StateVector> coin1_basis;
    std::map<std::pair<int, int>, OperatorMatrix> recovery_table;  // (position, coin1 outcome)
};

// Throws std::invalid_argument on any inconsistency (orthonormality of the
// coin-1 basis is checked to 1e-10; recovery matrices must be d2 x d2).
void validate_protocol(const ProtocolSpec& spec);

// One row of the end-to-end run ledger.
struct OutcomeRecord {
    int position_outcome = 0;
    int coin1_outcome = 0;
    double probability = 0.0;
    std::optional<StateVector> bob_state;        // normalized coin-2 residual
    std::optional<StateVector> recovered_state;  // after the recovery-table entry
    std::optional<double> fidelity_vs_input;     // empty = not applicable
    bool zero_probability = false;
    bool recovery_missing = false;
    bool recovery_nonunitary = false;  // table entry fails the unitarity check
    bool recovery_annihilated = false; // table entry sent the residual to ~0
};

// |start> (x) (sum_k a_k |k>) (x) |0>. The amplitudes must already be
// normalized; nothing is renormalized silently.
StateVector prepare_initial(const ProtocolSpec& spec, std::span<const cx> amps);

// Validates the spec once and materializes the step operators so repeated
// runs and sweeps don't rebuild them.
class ProtocolEngine {
public:
    explicit ProtocolEngine(ProtocolSpec spec);

    const ProtocolSpec& spec() const { return spec_; }

    StateVector prepare(std::span<const cx> amps) const;
    // Step-wise evolution path.
    StateVector final_state(std::span<const cx> amps) const;
    // Independent dense route: the explicit product of the step operators.
    OperatorMatrix dense_total_operator() const;
    const std::vector<OperatorMatrix>& step_operators() const { return step_ops_; }

    OutcomeRecord run_outcome(std::span<const cx> amps, int position_outcome,
                              int coin1_outcome) const;
    std::vector<OutcomeRecord> run_all_outcomes(std::span<const cx> amps) const;

    // The linear map from input amplitudes to the un-normalized coin-2
    // residual of one (position, coin-1) branch; column k is the residual for
    // basis input e_k, with all branch factors retained.
    OperatorMatrix conditional_map(int position_outcome, int coin1_outcome) const;

private:
    ProtocolSpec spec_;
    std::vector<OperatorMatrix> step_ops_;
};

OutcomeRecord run_outcome(const ProtocolSpec& spec, std::span<const cx> amps,
                          int position_outcome, int coin1_outcome);
OperatorMatrix conditional_map(const ProtocolSpec& spec, int position_outcome,
                               int coin1_outcome);

// The built-in two-step, two-coin scenario on the 10-vertex cycled-path
// graph: start vertex 1, identity coin then Fourier coin, Fourier measurement
// basis on coin 1, and the tabulated recovery operators for position
// outcome 1 (R, R*P1, R*P2 with R = |0><1| + |1><0| + |2><1| and P1, P2 the
// printed phase corrections).
ProtocolSpec paper_protocol(ProtocolVariant variant = ProtocolVariant::rearranged);

// The tabulated pieces, exposed for audits and tests.
OperatorMatrix paper_recovery_swap();    // R
OperatorMatrix paper_phase_correction(int index);  // P1 or P2 (index 1 or 2)

}  // namespace qwalk
