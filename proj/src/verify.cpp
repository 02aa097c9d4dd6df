#include "qwalk/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "qwalk/sampling.hpp"

namespace qwalk {

namespace {

std::string f6(double v) {
    if (std::abs(v) < 5e-7) v = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string e3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

constexpr double kInvSqrt3 = 0.57735026918962576;

// "" for ~1, "(1/sqrt3)" / "-(1/sqrt3)" for the common walk factor,
// otherwise an explicit [re,im].
std::string coeff_prefix(cx amp) {
    if (std::abs(amp - cx{1.0, 0.0}) <= 1e-9) return "";
    if (std::abs(amp - cx{kInvSqrt3, 0.0}) <= 1e-9) return "(1/sqrt3)";
    if (std::abs(amp + cx{kInvSqrt3, 0.0}) <= 1e-9) return "-(1/sqrt3)";
    return "[" + f6(amp.real()) + "," + f6(amp.imag()) + "]";
}

std::string vertex_label_list(const std::vector<VertexLabel>& pairs) {
    std::string out = "[";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (i > 0) out += ",";
        out += "(" + std::to_string(pairs[i].vertex) + "," + std::to_string(pairs[i].label) + ")";
    }
    return out + "]";
}

// A term of a printed display: amplitude index k times a basis ket.
struct PaperTerm {
    int amp_index = 0;
    int flat = 0;
};

std::string term_name(int amp_index, const SpaceShape& shape, int flat) {
    return "a" + std::to_string(amp_index) + ket_label(shape, flat);
}

struct ExpansionCheck {
    bool match = false;
    std::string rendered;            // the computed expansion, one term per nonzero entry
    std::vector<std::string> extra;  // computed terms absent from the display
    std::vector<std::string> missing;
    double max_coeff_dev = 0.0;      // over display terms that are present
};

// Columns give the branch state for each basis input e_k; the display claims
// each listed term carries `coeff` and nothing else is present.
ExpansionCheck compare_expansion(const std::vector<StateVector>& columns,
                                 const std::vector<PaperTerm>& display, cx coeff) {
    constexpr double kPresence = 1e-9;
    ExpansionCheck check;
    const SpaceShape& shape = columns.front().shape();
    for (std::size_t k = 0; k < columns.size(); ++k) {
        const StateVector& col = columns[k];
        for (int f = 0; f < col.dim(); ++f) {
            const cx amp = col.amp(f);
            const bool present = std::abs(amp) > kPresence;
            const bool listed =
                std::any_of(display.begin(), display.end(), [&](const PaperTerm& t) {
                    return t.amp_index == static_cast<int>(k) && t.flat == f;
                });
            if (present) {
                if (!check.rendered.empty()) check.rendered += " + ";
                check.rendered += coeff_prefix(amp) + term_name(static_cast<int>(k), shape, f);
            }
            if (present && !listed) {
                check.extra.push_back(term_name(static_cast<int>(k), shape, f));
            }
            if (listed) {
                if (!present) {
                    check.missing.push_back(term_name(static_cast<int>(k), shape, f));
                } else {
                    check.max_coeff_dev = std::max(check.max_coeff_dev, std::abs(amp - coeff));
                }
            }
        }
    }
    if (check.rendered.empty()) check.rendered = "0";
    check.match = check.extra.empty() && check.missing.empty() && check.max_coeff_dev <= kEntryTol;
    return check;
}

std::string joined(const std::vector<std::string>& items) {
    if (items.empty()) return "none";
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0) out += ", ";
        out += items[i];
    }
    return out;
}

std::vector<cx> unit_input(int d, int k) {
    std::vector<cx> a(static_cast<std::size_t>(d));
    a[static_cast<std::size_t>(k)] = cx{1.0, 0.0};
    return a;
}

std::vector<cx> matvec(const OperatorMatrix& m, std::span<const cx> v) {
    std::vector<cx> out(static_cast<std::size_t>(m.dim()));
    for (int r = 0; r < m.dim(); ++r) {
        cx acc{0.0, 0.0};
        for (int c = 0; c < m.dim(); ++c) acc += m.at(r, c) * v[static_cast<std::size_t>(c)];
        out[static_cast<std::size_t>(r)] = acc;
    }
    return out;
}

ClaimEntry claim_step_one() {
    const SpaceShape shape({10, 3, 3});
    const std::vector<PaperTerm> display = {
        {0, shape.flat_index({2, 0, 0})},
        {1, shape.flat_index({0, 1, 0})},
        {2, shape.flat_index({8, 2, 0})},
    };

    ClaimEntry entry;
    entry.claim_id = "C1";
    entry.paper_location = "step-one state display";
    entry.expected = "a0|200> + a1|010> + a2|820>";

    bool all_match = true;
    std::string computed;
    std::string issues;
    for (GraphVariant variant : {GraphVariant::original, GraphVariant::rearranged}) {
        const ProtocolSpec spec = paper_protocol(variant == GraphVariant::original
                                                     ? ProtocolVariant::original
                                                     : ProtocolVariant::rearranged);
        const OperatorMatrix u1 = step_operator(spec.shape, spec.steps.front());
        std::vector<StateVector> columns;
        for (int k = 0; k < 3; ++k) {
            columns.push_back(apply(u1, prepare_initial(spec, unit_input(3, k))));
        }
        const ExpansionCheck check = compare_expansion(columns, display, cx{1.0, 0.0});
        all_match = all_match && check.match;
        if (!computed.empty()) computed += "; ";
        computed += spec.variant_label + ": " + check.rendered;
        if (!check.match) {
            issues += spec.variant_label + ": extra " + joined(check.extra) + ", missing " +
                      joined(check.missing) + "; ";
        }
    }
    entry.status = all_match ? ClaimStatus::match : ClaimStatus::mismatch;
    entry.computed = computed;
    entry.detail = all_match ? "both shift listings reproduce the display at the start vertex"
                             : issues;
    return entry;
}

ClaimEntry claim_final_state(const ProtocolEngine& engine) {
    const SpaceShape& shape = engine.spec().shape;
    const std::vector<PaperTerm> display = {
        {0, shape.flat_index({3, 0, 0})},
        {0, shape.flat_index({1, 0, 1})},
        {1, shape.flat_index({1, 1, 0})},
        {2, shape.flat_index({1, 2, 1})},
    };

    const OperatorMatrix dense = engine.dense_total_operator();
    std::vector<StateVector> columns;
    double route_gap = 0.0;
    for (int k = 0; k < 3; ++k) {
        const StateVector via_dense = apply(dense, engine.prepare(unit_input(3, k)));
        const StateVector via_steps = engine.final_state(unit_input(3, k));
        for (int f = 0; f < via_dense.dim(); ++f) {
            route_gap = std::max(route_gap, std::abs(via_dense.amp(f) - via_steps.amp(f)));
        }
        columns.push_back(via_dense);
    }
    const ExpansionCheck check = compare_expansion(columns, display, cx{kInvSqrt3, 0.0});

    ClaimEntry entry;
    entry.claim_id = "C2";
    entry.paper_location = "final-state display";
    entry.status = check.match ? ClaimStatus::match : ClaimStatus::mismatch;
    entry.computed = check.rendered;
    entry.expected = "(1/sqrt3)(a0|300> + a0|101> + a1|110> + a2|121>)";
    entry.detail = "extra: " + joined(check.extra) + "; missing: " + joined(check.missing) +
                   "; dense/stepwise route agreement " + e3(route_gap);
    return entry;
}

ClaimEntry claim_collapsed_state(const ProtocolEngine& engine) {
    const SpaceShape coin_shape({3, 3});
    const std::vector<PaperTerm> display = {
        {0, coin_shape.flat_index({0, 1})},
        {1, coin_shape.flat_index({1, 0})},
        {2, coin_shape.flat_index({2, 1})},
    };

    const StateVector pos_one = basis_state(SpaceShape({engine.spec().shape.dim(0)}), {1});
    std::vector<StateVector> columns;
    for (int k = 0; k < 3; ++k) {
        columns.push_back(
            project_unnormalized(engine.final_state(unit_input(3, k)), 0, pos_one));
    }
    const ExpansionCheck check = compare_expansion(columns, display, cx{kInvSqrt3, 0.0});

    ClaimEntry entry;
    entry.claim_id = "C3";
    entry.paper_location = "collapsed-state display (position outcome 1)";
    entry.status = check.match ? ClaimStatus::match : ClaimStatus::mismatch;
    entry.computed = check.rendered;
    entry.expected = "(1/sqrt3)(a0|01> + a1|10> + a2|21>)";
    entry.detail = "extra: " + joined(check.extra) + "; missing: " + joined(check.missing) +
                   " (un-normalized position-1 branch)";
    return entry;
}

ClaimEntry claim_shift_unitarity() {
    ClaimEntry entry;
    entry.claim_id = "C4";
    entry.paper_location = "unitary-evolution statement";
    entry.expected = "permutation-complete shift (unitary step operators)";

    bool all_pass = true;
    std::string computed;
    std::string detail;
    for (GraphVariant variant : {GraphVariant::original, GraphVariant::rearranged}) {
        const char* label = variant == GraphVariant::original ? "original" : "rearranged";
        const ShiftAudit audit = audit_shift(paper_graph(variant));
        all_pass = all_pass && audit.is_permutation;
        if (!computed.empty()) computed += "; ";
        computed += std::string(label) + ": " + render_audit_brief(audit);
        if (!detail.empty()) detail += "; ";
        detail += std::string(label) + ": " + std::to_string(audit.missing.size()) +
                  " missing, " + std::to_string(audit.colliding_out.size()) +
                  " out-collisions, " + std::to_string(audit.colliding_in.size()) +
                  " in-collisions";
    }
    entry.status = all_pass ? ClaimStatus::match : ClaimStatus::mismatch;
    entry.computed = computed;
    entry.detail = detail;
    return entry;
}

ClaimEntry claim_recovery_fidelity(const ProtocolEngine& engine, std::uint64_t seed) {
    const ProtocolSpec& spec = engine.spec();
    const int d1 = spec.shape.dim(1);
    constexpr int kSamples = 100;

    Sampler sampler(seed);
    std::vector<std::vector<cx>> inputs;
    inputs.reserve(kSamples);
    for (int i = 0; i < kSamples; ++i) inputs.push_back(sampler.random_amplitudes(d1));

    ClaimEntry entry;
    entry.claim_id = "C5";
    entry.paper_location = "recovery table (Table 1)";
    entry.expected = "fidelity 1 for every input at each tabulated outcome";

    bool any_infeasible = false;
    double global_min = 1.0;
    std::string detail;
    std::string gram_devs;
    for (int j = 0; j < d1; ++j) {
        const OperatorMatrix map_j = engine.conditional_map(spec.position_outcome, j);
        const FeasibilityResult feas = analyze_feasibility(map_j);
        any_infeasible = any_infeasible || !feas.proportional_unitary;
        const OperatorMatrix& recovery = spec.recovery_table.at({spec.position_outcome, j});

        // projector convention: the branch amplitude is <f_j|psi>; the
        // printed convention pairs row j with the conjugate-basis branch.
        const OperatorMatrix map_printed =
            engine.conditional_map(spec.position_outcome, (d1 - j) % d1);

        auto stats = [&](const OperatorMatrix& branch) {
            double sum = 0.0;
            double min_fid = 1.0;
            for (const std::vector<cx>& a : inputs) {
                const std::vector<cx> residual = matvec(branch, a);
                StateVector bob(SpaceShape({branch.dim()}), residual);
                double fid = 0.0;
                if (bob.norm_sq() > kZeroProb) {
                    const StateVector recovered_raw = apply(recovery, bob.normalized());
                    if (recovered_raw.norm_sq() > kZeroProb) {
                        fid = fidelity(recovered_raw.normalized(),
                                       StateVector(SpaceShape({d1}), a));
                    }
                }
                sum += fid;
                min_fid = std::min(min_fid, fid);
            }
            return std::pair{sum / kSamples, min_fid};
        };
        const auto [mean_proj, min_proj] = stats(map_j);
        const auto [mean_printed, min_printed] = stats(map_printed);
        global_min = std::min({global_min, min_proj, min_printed});

        if (!detail.empty()) detail += " | ";
        detail += "(" + std::to_string(spec.position_outcome) + ",f" + std::to_string(j) +
                  "): gram_dev=" + f6(feas.gram_deviation) +
                  (feas.proportional_unitary ? " feasible" : " infeasible") +
                  "; projector fidelity mean=" + f6(mean_proj) + " min=" + f6(min_proj) +
                  "; printed fidelity mean=" + f6(mean_printed) + " min=" + f6(min_printed);
        if (!gram_devs.empty()) gram_devs += ", ";
        gram_devs += f6(feas.gram_deviation);
    }

    if (any_infeasible) {
        entry.status = ClaimStatus::infeasible;
    } else if (global_min < 1.0 - kNormTol) {
        entry.status = ClaimStatus::mismatch;
    } else {
        entry.status = ClaimStatus::match;
    }
    entry.computed = "min fidelity " + f6(global_min) + " over " + std::to_string(kSamples) +
                     " seeded inputs; branch-map gram deviations: " + gram_devs;
    entry.detail = detail;
    return entry;
}

ClaimEntry claim_fourier_orthonormality() {
    const std::vector<StateVector> basis = fourier_basis(3);
    double dev = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = 0; j < basis.size(); ++j) {
            const cx want = (i == j) ? cx{1.0, 0.0} : cx{0.0, 0.0};
            dev = std::max(dev, std::abs(inner(basis[i], basis[j]) - want));
        }
    }

    ClaimEntry entry;
    entry.claim_id = "C6";
    entry.paper_location = "Fourier basis displays";
    entry.status = dev <= kEntryTol ? ClaimStatus::match : ClaimStatus::mismatch;
    entry.computed = "max |Gram - I| = " + e3(dev);
    entry.expected = "Gram matrix = I3";
    entry.detail = "pairwise inner products of |f0>, |f1>, |f2>";
    return entry;
}

}  // namespace

FeasibilityResult analyze_feasibility(const OperatorMatrix& m) {
    const OperatorMatrix gram = m.dagger() * m;
    const int d = m.dim();

    double c_fit = 0.0;
    for (int i = 0; i < d; ++i) c_fit += gram.at(i, i).real();
    c_fit /= d;
    if (c_fit < 0.0) c_fit = 0.0;

    double deviation = 0.0;
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
            const cx want = (r == c) ? cx{c_fit, 0.0} : cx{0.0, 0.0};
            deviation = std::max(deviation, std::abs(gram.at(r, c) - want));
        }
    }

    FeasibilityResult result;
    result.scale = std::sqrt(c_fit);
    result.gram_deviation = deviation;
    // The threshold tracks the Gram magnitude above 1 so the verdict is
    // stable under M -> c*M.
    result.proportional_unitary =
        c_fit > kZeroProb && deviation <= kNormTol * std::max(1.0, c_fit);
    if (result.proportional_unitary) {
        OperatorMatrix recovery = m.dagger();
        const double inv = 1.0 / result.scale;
        for (int r = 0; r < d; ++r) {
            for (int c = 0; c < d; ++c) {
                recovery.set(r, c, recovery.at(r, c) * inv);
            }
        }
        result.synthesized_recovery = std::move(recovery);
    }
    return result;
}

std::string_view to_string(ClaimStatus status) {
    switch (status) {
        case ClaimStatus::match: return "match";
        case ClaimStatus::mismatch: return "mismatch";
        case ClaimStatus::infeasible: return "infeasible";
        case ClaimStatus::not_checkable: return "not-checkable";
    }
    return "?";
}

ClaimStatus claim_status_from_string(std::string_view s) {
    if (s == "match") return ClaimStatus::match;
    if (s == "mismatch") return ClaimStatus::mismatch;
    if (s == "infeasible") return ClaimStatus::infeasible;
    if (s == "not-checkable") return ClaimStatus::not_checkable;
    throw std::invalid_argument("unknown claim status '" + std::string(s) + "'");
}

ClaimReport audit_paper(ProtocolVariant variant, std::uint64_t seed) {
    const ProtocolEngine engine(paper_protocol(variant));

    ClaimReport report;
    report.variant = std::string(variant_name(variant));
    report.seed = seed;
    report.tolerance = kNormTol;
    report.claims.push_back(claim_step_one());
    report.claims.push_back(claim_final_state(engine));
    report.claims.push_back(claim_collapsed_state(engine));
    report.claims.push_back(claim_shift_unitarity());
    report.claims.push_back(claim_recovery_fidelity(engine, seed));
    report.claims.push_back(claim_fourier_orthonormality());
    return report;
}

ProtocolSpec sanity_protocol() {
    // 3-cycle with a complete label set: label l moves i -> i+l (mod 3).
    std::vector<Edge> edges;
    for (int i = 0; i < 3; ++i) {
        for (int l = 0; l < 3; ++l) {
            edges.push_back({i, (i + l) % 3, l});
        }
    }
    EdgeLabeledGraph graph(3, 3, std::move(edges));

    std::vector<WalkStep> steps;
    steps.push_back({1, CoinKind::identity(3), graph});
    steps.push_back({2, CoinKind::fourier(3), graph});

    ProtocolSpec spec{
        .name = "sanity",
        .variant_label = "3-cycle, complete labels",
        .shape = SpaceShape({3, 3, 3}),
        .graph = std::move(graph),
        .start_vertex = 0,
        .steps = std::move(steps),
        .position_outcome = 0,
        .coin1_basis = fourier_basis(3),
        .recovery_table = {},
    };

    const ProtocolEngine engine(spec);
    for (int p = 0; p < 3; ++p) {
        for (int j = 0; j < 3; ++j) {
            const FeasibilityResult feas = analyze_feasibility(engine.conditional_map(p, j));
            if (!feas.proportional_unitary) {
                throw std::logic_error("sanity_protocol: branch map unexpectedly infeasible");
            }
            spec.recovery_table.emplace(std::pair{p, j}, *feas.synthesized_recovery);
        }
    }
    return spec;
}

std::string render_state_terms(const StateVector& s) {
    std::string out;
    for (int f = 0; f < s.dim(); ++f) {
        const cx amp = s.amp(f);
        if (std::abs(amp) <= 1e-9) continue;
        if (!out.empty()) out += " + ";
        out += coeff_prefix(amp) + ket_label(s.shape(), f);
    }
    return out.empty() ? "0" : out;
}

std::string render_audit_brief(const ShiftAudit& audit) {
    return std::string("is_permutation=") + (audit.is_permutation ? "true" : "false") +
           ", missing=" + vertex_label_list(audit.missing) +
           ", colliding_out=" + vertex_label_list(audit.colliding_out) +
           ", colliding_in=" + vertex_label_list(audit.colliding_in);
}

}  // namespace qwalk
