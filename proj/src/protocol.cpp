#include "qwalk/protocol.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qwalk {

std::string_view variant_name(ProtocolVariant v) {
    switch (v) {
        case ProtocolVariant::original: return "original";
        case ProtocolVariant::rearranged: return "rearranged";
        case ProtocolVariant::completed: return "completed";
    }
    return "?";
}

ProtocolVariant variant_from_name(std::string_view name) {
    if (name == "original") return ProtocolVariant::original;
    if (name == "rearranged") return ProtocolVariant::rearranged;
    if (name == "completed") return ProtocolVariant::completed;
    throw std::invalid_argument("unknown variant '" + std::string(name) +
                                "' (expected original, rearranged, or completed)");
}

EdgeLabeledGraph variant_graph(ProtocolVariant v) {
    switch (v) {
        case ProtocolVariant::original: return paper_graph(GraphVariant::original);
        case ProtocolVariant::rearranged: return paper_graph(GraphVariant::rearranged);
        case ProtocolVariant::completed: return paper_completed_graph();
    }
    throw std::invalid_argument("variant_graph: unknown variant");
}

void validate_protocol(const ProtocolSpec& spec) {
    if (spec.shape.rank() != 3) {
        throw std::invalid_argument("protocol: shape must be [positions, d1, d2]");
    }
    const int positions = spec.shape.dim(0);
    const int d1 = spec.shape.dim(1);
    const int d2 = spec.shape.dim(2);
    if (spec.graph.n_vertices() != positions) {
        throw std::invalid_argument("protocol: graph vertex count does not match position space");
    }
    if (spec.start_vertex < 0 || spec.start_vertex >= positions) {
        throw std::invalid_argument("protocol: start vertex out of range");
    }
    if (spec.position_outcome < 0 || spec.position_outcome >= positions) {
        throw std::invalid_argument("protocol: position outcome out of range");
    }
    for (const WalkStep& step : spec.steps) {
        // step_operator re-validates; this surfaces errors before any run
        (void)step_operator(spec.shape, step);
    }
    if (static_cast<int>(spec.coin1_basis.size()) != d1) {
        throw std::invalid_argument("protocol: coin-1 basis must have " + std::to_string(d1) +
                                    " states");
    }
    for (const StateVector& b : spec.coin1_basis) {
        if (b.shape() != SpaceShape({d1})) {
            throw std::invalid_argument("protocol: coin-1 basis state has the wrong dimension");
        }
    }
    for (int i = 0; i < d1; ++i) {
        for (int j = 0; j < d1; ++j) {
            const cx g = inner(spec.coin1_basis[static_cast<std::size_t>(i)],
                               spec.coin1_basis[static_cast<std::size_t>(j)]);
            const cx want = (i == j) ? cx{1.0, 0.0} : cx{0.0, 0.0};
            if (std::abs(g - want) > kNormTol) {
                throw std::invalid_argument("protocol: coin-1 basis is not orthonormal (Gram(" +
                                            std::to_string(i) + "," + std::to_string(j) +
                                            ") deviates by " + std::to_string(std::abs(g - want)) +
                                            ")");
            }
        }
    }
    for (const auto& [key, matrix] : spec.recovery_table) {
        const auto& [pos, c1] = key;
        if (pos < 0 || pos >= positions || c1 < 0 || c1 >= d1) {
            throw std::invalid_argument("protocol: recovery entry (" + std::to_string(pos) + "," +
                                        std::to_string(c1) + ") is out of range");
        }
        if (matrix.shape() != SpaceShape({d2})) {
            throw std::invalid_argument("protocol: recovery matrix for (" + std::to_string(pos) +
                                        "," + std::to_string(c1) + ") must be " +
                                        std::to_string(d2) + "x" + std::to_string(d2) + ", got " +
                                        std::to_string(matrix.dim()) + "x" +
                                        std::to_string(matrix.dim()));
        }
    }
}

StateVector prepare_initial(const ProtocolSpec& spec, std::span<const cx> amps) {
    const int d1 = spec.shape.dim(1);
    if (static_cast<int>(amps.size()) != d1) {
        throw std::invalid_argument("prepare_initial: expected " + std::to_string(d1) +
                                    " amplitudes, got " + std::to_string(amps.size()));
    }
    double norm_sq = 0.0;
    for (const cx& a : amps) norm_sq += std::norm(a);
    if (std::abs(norm_sq - 1.0) > kNormTol) {
        throw std::invalid_argument("prepare_initial: input amplitudes not normalized (norm " +
                                    std::to_string(std::sqrt(norm_sq)) + ")");
    }
    StateVector s = StateVector::zero(spec.shape);
    for (int k = 0; k < d1; ++k) {
        s.set_amp(spec.shape.flat_index(std::initializer_list<int>{spec.start_vertex, k, 0}),
                  amps[static_cast<std::size_t>(k)]);
    }
    return s;
}

ProtocolEngine::ProtocolEngine(ProtocolSpec spec) : spec_(std::move(spec)) {
    validate_protocol(spec_);
    step_ops_.reserve(spec_.steps.size());
    for (const WalkStep& step : spec_.steps) {
        step_ops_.push_back(step_operator(spec_.shape, step));
    }
}

StateVector ProtocolEngine::prepare(std::span<const cx> amps) const {
    return prepare_initial(spec_, amps);
}

StateVector ProtocolEngine::final_state(std::span<const cx> amps) const {
    StateVector state = prepare(amps);
    for (const OperatorMatrix& op : step_ops_) {
        state = apply(op, state);
    }
    return state;
}

OperatorMatrix ProtocolEngine::dense_total_operator() const {
    OperatorMatrix total = OperatorMatrix::identity(spec_.shape);
    for (const OperatorMatrix& op : step_ops_) {
        total = op * total;
    }
    return total;
}

OutcomeRecord ProtocolEngine::run_outcome(std::span<const cx> amps, int position_outcome,
                                          int coin1_outcome) const {
    const int positions = spec_.shape.dim(0);
    const int d1 = spec_.shape.dim(1);
    if (position_outcome < 0 || position_outcome >= positions) {
        throw std::out_of_range("run_outcome: position outcome out of range");
    }
    if (coin1_outcome < 0 || coin1_outcome >= d1) {
        throw std::out_of_range("run_outcome: coin-1 outcome out of range");
    }

    OutcomeRecord rec;
    rec.position_outcome = position_outcome;
    rec.coin1_outcome = coin1_outcome;

    const StateVector final = final_state(amps);
    const StateVector pos_ket = basis_state(SpaceShape({positions}), {position_outcome});
    const Projection after_pos = project_subsystem(final, 0, pos_ket);
    if (!after_pos.residual) {
        rec.probability = 0.0;
        rec.zero_probability = true;
        return rec;
    }
    const Projection after_coin1 = project_subsystem(
        *after_pos.residual, 0, spec_.coin1_basis[static_cast<std::size_t>(coin1_outcome)]);
    rec.probability = after_pos.probability * after_coin1.probability;
    if (!after_coin1.residual) {
        rec.probability = 0.0;
        rec.zero_probability = true;
        return rec;
    }
    rec.bob_state = after_coin1.residual;

    const auto entry = spec_.recovery_table.find({position_outcome, coin1_outcome});
    if (entry == spec_.recovery_table.end()) {
        rec.recovery_missing = true;
        return rec;
    }
    const OperatorMatrix& recovery = entry->second;
    rec.recovery_nonunitary = recovery.unitarity_defect() > kNormTol;

    // Non-unitary entries are applied as plain matrices and renormalized.
    const StateVector raw = apply(recovery, *rec.bob_state);
    if (raw.norm_sq() <= kZeroProb) {
        rec.recovery_annihilated = true;
        return rec;
    }
    rec.recovered_state = raw.normalized();

    StateVector target = StateVector::zero(SpaceShape({spec_.shape.dim(2)}));
    for (int k = 0; k < static_cast<int>(amps.size()) && k < target.dim(); ++k) {
        target.set_amp(k, amps[static_cast<std::size_t>(k)]);
    }
    rec.fidelity_vs_input = fidelity(*rec.recovered_state, target);
    return rec;
}

std::vector<OutcomeRecord> ProtocolEngine::run_all_outcomes(std::span<const cx> amps) const {
    std::vector<OutcomeRecord> records;
    records.reserve(static_cast<std::size_t>(spec_.shape.dim(0) * spec_.shape.dim(1)));
    for (int p = 0; p < spec_.shape.dim(0); ++p) {
        for (int j = 0; j < spec_.shape.dim(1); ++j) {
            records.push_back(run_outcome(amps, p, j));
        }
    }
    return records;
}

OperatorMatrix ProtocolEngine::conditional_map(int position_outcome, int coin1_outcome) const {
    const int positions = spec_.shape.dim(0);
    const int d1 = spec_.shape.dim(1);
    const int d2 = spec_.shape.dim(2);
    if (d1 != d2) {
        throw std::invalid_argument("conditional_map: coin dimensions differ");
    }
    const StateVector pos_ket = basis_state(SpaceShape({positions}), {position_outcome});
    const StateVector& coin1_ket = spec_.coin1_basis[static_cast<std::size_t>(coin1_outcome)];

    OperatorMatrix m = OperatorMatrix::zero(SpaceShape({d2}));
    for (int k = 0; k < d1; ++k) {
        std::vector<cx> unit(static_cast<std::size_t>(d1));
        unit[static_cast<std::size_t>(k)] = cx{1.0, 0.0};
        const StateVector final = final_state(unit);
        const StateVector at_pos = project_unnormalized(final, 0, pos_ket);
        const StateVector residual = project_unnormalized(at_pos, 0, coin1_ket);
        for (int r = 0; r < d2; ++r) {
            m.set(r, k, residual.amp(r));
        }
    }
    return m;
}

OutcomeRecord run_outcome(const ProtocolSpec& spec, std::span<const cx> amps,
                          int position_outcome, int coin1_outcome) {
    return ProtocolEngine(spec).run_outcome(amps, position_outcome, coin1_outcome);
}

OperatorMatrix conditional_map(const ProtocolSpec& spec, int position_outcome,
                               int coin1_outcome) {
    return ProtocolEngine(spec).conditional_map(position_outcome, coin1_outcome);
}

OperatorMatrix paper_recovery_swap() {
    // R = |0><1| + |1><0| + |2><1|
    OperatorMatrix r = OperatorMatrix::zero(SpaceShape({3}));
    r.set(0, 1, cx{1.0, 0.0});
    r.set(1, 0, cx{1.0, 0.0});
    r.set(2, 1, cx{1.0, 0.0});
    return r;
}

OperatorMatrix paper_phase_correction(int index) {
    if (index != 1 && index != 2) {
        throw std::invalid_argument("paper_phase_correction: index must be 1 or 2");
    }
    // P1 = diag(e^{-2pi i/3}, e^{-4pi i/3}, 1)
    // P2 = diag(e^{-4pi i/3}, e^{-8pi i/3}, 1), kept as printed (not reduced)
    const double unit = -2.0 * std::numbers::pi / 3.0;
    OperatorMatrix p = OperatorMatrix::zero(SpaceShape({3}));
    p.set(0, 0, std::polar(1.0, unit * index));
    p.set(1, 1, std::polar(1.0, unit * 2 * index));
    p.set(2, 2, cx{1.0, 0.0});
    return p;
}

ProtocolSpec paper_protocol(ProtocolVariant variant) {
    EdgeLabeledGraph graph = variant_graph(variant);
    const SpaceShape shape({10, 3, 3});

    std::vector<WalkStep> steps;
    steps.push_back({1, CoinKind::identity(3), graph});
    steps.push_back({2, CoinKind::fourier(3), graph});

    const OperatorMatrix r = paper_recovery_swap();
    std::map<std::pair<int, int>, OperatorMatrix> recovery;
    recovery.emplace(std::pair{1, 0}, r);
    recovery.emplace(std::pair{1, 1}, r * paper_phase_correction(1));
    recovery.emplace(std::pair{1, 2}, r * paper_phase_correction(2));

    ProtocolSpec spec{
        .name = "paper",
        .variant_label = std::string(variant_name(variant)),
        .shape = shape,
        .graph = std::move(graph),
        .start_vertex = 1,
        .steps = std::move(steps),
        .position_outcome = 1,
        .coin1_basis = fourier_basis(3),
        .recovery_table = std::move(recovery),
    };
    validate_protocol(spec);
    return spec;
}

}  // namespace qwalk
