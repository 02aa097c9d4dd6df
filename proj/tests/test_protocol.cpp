#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qwalk/protocol.hpp"
#include "qwalk/sampling.hpp"

using namespace qwalk;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<cx> unit(int k) {
    std::vector<cx> a(3);
    a[static_cast<std::size_t>(k)] = cx{1, 0};
    return a;
}

void check_close(cx got, cx want, double tol = kEntryTol) {
    CHECK(std::abs(got - want) <= tol);
}

}  // namespace

TEST_CASE("prepare_initial places the payload on the start vertex with coin2 at |0>") {
    const ProtocolSpec spec = paper_protocol();
    const SpaceShape& shape = spec.shape;

    const StateVector e0 = prepare_initial(spec, unit(0));
    check_close(e0.amp(shape.flat_index({1, 0, 0})), {1, 0}, 0.0);
    CHECK(e0.norm_sq() == doctest::Approx(1.0));

    const StateVector e2 = prepare_initial(spec, unit(2));
    check_close(e2.amp(shape.flat_index({1, 2, 0})), {1, 0}, 0.0);

    const double inv = 1.0 / std::sqrt(3.0);
    const std::vector<cx> equal{cx{inv, 0}, cx{inv, 0}, cx{inv, 0}};
    const StateVector s = prepare_initial(spec, equal);
    for (int k = 0; k < 3; ++k) {
        check_close(s.amp(shape.flat_index({1, k, 0})), {inv, 0}, 0.0);
    }
}

TEST_CASE("prepare_initial rejects non-normalized amplitudes, naming the norm") {
    const ProtocolSpec spec = paper_protocol();
    const std::vector<cx> bad{cx{1, 0}, cx{1, 0}, cx{0, 0}};
    CHECK_THROWS_WITH_AS(prepare_initial(spec, bad),
                         "prepare_initial: input amplitudes not normalized (norm 1.414214)",
                         std::invalid_argument);
    CHECK_THROWS_AS(prepare_initial(spec, std::vector<cx>{cx{1, 0}}), std::invalid_argument);
}

TEST_CASE("prepare_initial is linear in the amplitudes") {
    const ProtocolSpec spec = paper_protocol();
    Sampler sampler(19);
    for (int trial = 0; trial < 20; ++trial) {
        const std::vector<cx> a = sampler.random_amplitudes(3);
        const StateVector s = prepare_initial(spec, a);
        for (int f = 0; f < s.dim(); ++f) {
            cx want{0, 0};
            for (int k = 0; k < 3; ++k) {
                const StateVector basis = prepare_initial(spec, unit(k));
                want += a[static_cast<std::size_t>(k)] * basis.amp(f);
            }
            check_close(s.amp(f), want, 1e-12);
        }
    }
}

TEST_CASE("the tabulated recovery operators are built as printed") {
    const OperatorMatrix r = paper_recovery_swap();
    check_close(r.at(0, 1), {1, 0}, 0.0);
    check_close(r.at(1, 0), {1, 0}, 0.0);
    check_close(r.at(2, 1), {1, 0}, 0.0);
    CHECK(r.at(0, 0) == cx{0, 0});

    // R is not unitary: ||R|1>|| = sqrt(2)
    const StateVector r1 = apply(r, basis_state(SpaceShape({3}), {1}));
    CHECK(r1.norm() == doctest::Approx(std::sqrt(2.0)));
    CHECK(r.unitarity_defect() > 0.5);

    const OperatorMatrix p1 = paper_phase_correction(1);
    check_close(p1.at(0, 0), std::polar(1.0, -2.0 * kPi / 3.0));
    check_close(p1.at(1, 1), std::polar(1.0, -4.0 * kPi / 3.0));
    check_close(p1.at(2, 2), {1, 0});
    const OperatorMatrix p2 = paper_phase_correction(2);
    check_close(p2.at(0, 0), std::polar(1.0, -4.0 * kPi / 3.0));
    // kept as printed: e^{-8 pi i/3}, numerically e^{-2 pi i/3}
    check_close(p2.at(1, 1), std::polar(1.0, -8.0 * kPi / 3.0));
    CHECK(p1.unitarity_defect() <= 1e-12);
    CHECK(p2.unitarity_defect() <= 1e-12);
    CHECK_THROWS_AS(paper_phase_correction(3), std::invalid_argument);

    const ProtocolSpec spec = paper_protocol();
    CHECK(max_abs_diff(spec.recovery_table.at({1, 0}), r) == 0.0);
    CHECK(max_abs_diff(spec.recovery_table.at({1, 1}), r * p1) == 0.0);
    CHECK(max_abs_diff(spec.recovery_table.at({1, 2}), r * p2) == 0.0);
}

TEST_CASE("run_outcome on the a0 branch: half fidelity through the non-unitary table row") {
    const ProtocolEngine engine(paper_protocol(ProtocolVariant::rearranged));
    const OutcomeRecord rec = engine.run_outcome(unit(0), 1, 0);
    CHECK(!rec.zero_probability);
    CHECK(rec.probability == doctest::Approx(2.0 / 9.0).epsilon(1e-10));
    REQUIRE(rec.bob_state.has_value());
    // bob = (|1> + |2>)/sqrt2
    const double h = 1.0 / std::sqrt(2.0);
    check_close(rec.bob_state->amp(0), {0, 0}, 1e-12);
    check_close(rec.bob_state->amp(1), {h, 0}, 1e-12);
    check_close(rec.bob_state->amp(2), {h, 0}, 1e-12);
    // R maps it onto span{|0>, |2>}
    REQUIRE(rec.recovered_state.has_value());
    check_close(rec.recovered_state->amp(0), {h, 0}, 1e-12);
    check_close(rec.recovered_state->amp(1), {0, 0}, 1e-12);
    check_close(rec.recovered_state->amp(2), {h, 0}, 1e-12);
    REQUIRE(rec.fidelity_vs_input.has_value());
    CHECK(*rec.fidelity_vs_input == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(rec.recovery_nonunitary);
}

TEST_CASE("run_outcome on the a1 branch: the table row works perfectly") {
    const ProtocolEngine engine(paper_protocol(ProtocolVariant::rearranged));
    const OutcomeRecord rec = engine.run_outcome(unit(1), 1, 0);
    REQUIRE(rec.bob_state.has_value());
    check_close(rec.bob_state->amp(0), {1, 0}, 1e-12);
    REQUIRE(rec.recovered_state.has_value());
    check_close(rec.recovered_state->amp(1), {1, 0}, 1e-12);
    REQUIRE(rec.fidelity_vs_input.has_value());
    CHECK(*rec.fidelity_vs_input == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rec.probability == doctest::Approx(1.0 / 9.0).epsilon(1e-10));
}

TEST_CASE("zero-probability branches are flagged") {
    const ProtocolEngine engine(paper_protocol(ProtocolVariant::rearranged));
    // the a1 input never reaches position 5
    const OutcomeRecord rec = engine.run_outcome(unit(1), 5, 0);
    CHECK(rec.zero_probability);
    CHECK(rec.probability == 0.0);
    CHECK(!rec.bob_state.has_value());
    CHECK(!rec.fidelity_vs_input.has_value());
}

TEST_CASE("outcomes without a tabulated recovery report fidelity as not applicable") {
    const ProtocolEngine engine(paper_protocol(ProtocolVariant::rearranged));
    // position 3 has amplitude but no table row
    const OutcomeRecord rec = engine.run_outcome(unit(0), 3, 0);
    CHECK(!rec.zero_probability);
    CHECK(rec.probability > 0.0);
    CHECK(rec.recovery_missing);
    CHECK(rec.bob_state.has_value());
    CHECK(!rec.recovered_state.has_value());
    CHECK(!rec.fidelity_vs_input.has_value());
}

TEST_CASE("a payload in the kernel of R is annihilated and flagged") {
    const ProtocolEngine engine(paper_protocol(ProtocolVariant::rearranged));
    // a = (1, 0, -1)/sqrt2 makes the (1, f0) residual proportional to |2>
    const double h = 1.0 / std::sqrt(2.0);
    const std::vector<cx> a{cx{h, 0}, cx{0, 0}, cx{-h, 0}};
    const OutcomeRecord rec = engine.run_outcome(a, 1, 0);
    REQUIRE(rec.bob_state.has_value());
    check_close(rec.bob_state->amp(2), {1, 0}, 1e-9);
    CHECK(rec.recovery_annihilated);
    CHECK(!rec.recovered_state.has_value());
    CHECK(!rec.fidelity_vs_input.has_value());
}

TEST_CASE("conditional map at (1, f0): original keeps three entries, rearranged four") {
    const ProtocolEngine original(paper_protocol(ProtocolVariant::original));
    const OperatorMatrix m_orig = original.conditional_map(1, 0);
    const double third = 1.0 / 3.0;
    // proportional to |1><0| + |0><1| + |1><2|
    check_close(m_orig.at(1, 0), {third, 0}, 1e-12);
    check_close(m_orig.at(0, 1), {third, 0}, 1e-12);
    check_close(m_orig.at(1, 2), {third, 0}, 1e-12);
    check_close(m_orig.at(2, 0), {0, 0}, 1e-12);
    check_close(m_orig.at(0, 0), {0, 0}, 1e-12);
    check_close(m_orig.at(2, 2), {0, 0}, 1e-12);

    const ProtocolEngine rearranged(paper_protocol(ProtocolVariant::rearranged));
    const OperatorMatrix m_re = rearranged.conditional_map(1, 0);
    // the a0|102> term adds |2><0|
    check_close(m_re.at(1, 0), {third, 0}, 1e-12);
    check_close(m_re.at(2, 0), {third, 0}, 1e-12);
    check_close(m_re.at(0, 1), {third, 0}, 1e-12);
    check_close(m_re.at(1, 2), {third, 0}, 1e-12);
}

TEST_CASE("conditional map at (1, f1) carries the conjugated phases") {
    const ProtocolEngine engine(paper_protocol(ProtocolVariant::original));
    const OperatorMatrix m = engine.conditional_map(1, 1);
    const double third = 1.0 / 3.0;
    check_close(m.at(1, 0), {third, 0}, 1e-12);
    check_close(m.at(0, 1), std::polar(third, -2.0 * kPi / 3.0), 1e-12);
    check_close(m.at(1, 2), std::polar(third, -4.0 * kPi / 3.0), 1e-12);
}

TEST_CASE("the branch residual is linear: residual == conditional_map * a (property)") {
    for (ProtocolVariant variant : {ProtocolVariant::original, ProtocolVariant::rearranged}) {
        const ProtocolEngine engine(paper_protocol(variant));
        const OperatorMatrix m10 = engine.conditional_map(1, 0);
        const OperatorMatrix m12 = engine.conditional_map(1, 2);
        Sampler sampler(7);
        for (int trial = 0; trial < 100; ++trial) {
            const std::vector<cx> a = sampler.random_amplitudes(3);
            for (const auto& [map, j] : {std::pair{&m10, 0}, std::pair{&m12, 2}}) {
                const OutcomeRecord rec = engine.run_outcome(a, 1, j);
                REQUIRE(rec.bob_state.has_value());
                const double scale = std::sqrt(rec.probability);
                for (int r = 0; r < 3; ++r) {
                    cx want{0, 0};
                    for (int c = 0; c < 3; ++c) {
                        want += map->at(r, c) * a[static_cast<std::size_t>(c)];
                    }
                    check_close(scale * rec.bob_state->amp(r), want, 1e-10);
                }
            }
        }
    }
}

TEST_CASE("branch probabilities sum to the final squared norm (property)") {
    for (ProtocolVariant variant :
         {ProtocolVariant::original, ProtocolVariant::rearranged, ProtocolVariant::completed}) {
        const ProtocolEngine engine(paper_protocol(variant));
        Sampler sampler(23);
        for (int trial = 0; trial < 10; ++trial) {
            const std::vector<cx> a = sampler.random_amplitudes(3);
            double total = 0.0;
            for (const OutcomeRecord& rec : engine.run_all_outcomes(a)) {
                total += rec.probability;
            }
            CHECK(std::abs(total - engine.final_state(a).norm_sq()) <= kNormTol);
        }
    }
}

TEST_CASE("run_all_outcomes covers every (position, coin1) pair once") {
    const ProtocolEngine engine(paper_protocol());
    const std::vector<OutcomeRecord> records = engine.run_all_outcomes(unit(0));
    CHECK(records.size() == 30);
    int with_recovery = 0;
    for (const OutcomeRecord& rec : records) {
        if (rec.fidelity_vs_input || rec.recovery_annihilated) ++with_recovery;
        if (rec.position_outcome != 1 && rec.bob_state.has_value()) {
            CHECK(rec.recovery_missing);
        }
    }
    CHECK(with_recovery == 3);  // only the tabulated position-1 rows
}

TEST_CASE("the dense operator route and the step-wise route agree") {
    const ProtocolEngine engine(paper_protocol(ProtocolVariant::rearranged));
    const OperatorMatrix total = engine.dense_total_operator();
    Sampler sampler(29);
    for (int trial = 0; trial < 10; ++trial) {
        const std::vector<cx> a = sampler.random_amplitudes(3);
        const StateVector via_steps = engine.final_state(a);
        const StateVector via_dense = apply(total, engine.prepare(a));
        for (int f = 0; f < via_steps.dim(); ++f) {
            check_close(via_steps.amp(f), via_dense.amp(f), 1e-12);
        }
    }
}

TEST_CASE("protocol validation rejects inconsistent specs") {
    ProtocolSpec spec = paper_protocol();

    ProtocolSpec bad_basis = spec;
    bad_basis.coin1_basis[1] = bad_basis.coin1_basis[0];
    CHECK_THROWS_AS(validate_protocol(bad_basis), std::invalid_argument);

    ProtocolSpec bad_recovery = spec;
    bad_recovery.recovery_table.emplace(std::pair{2, 0},
                                        OperatorMatrix::identity(SpaceShape({2})));
    CHECK_THROWS_AS(validate_protocol(bad_recovery), std::invalid_argument);

    ProtocolSpec bad_key = spec;
    bad_key.recovery_table.emplace(std::pair{10, 0}, OperatorMatrix::identity(SpaceShape({3})));
    CHECK_THROWS_AS(validate_protocol(bad_key), std::invalid_argument);

    ProtocolSpec bad_start = spec;
    bad_start.start_vertex = 10;
    CHECK_THROWS_AS(validate_protocol(bad_start), std::invalid_argument);
}

TEST_CASE("variant names round-trip") {
    for (ProtocolVariant v :
         {ProtocolVariant::original, ProtocolVariant::rearranged, ProtocolVariant::completed}) {
        CHECK(variant_from_name(variant_name(v)) == v);
    }
    CHECK_THROWS_AS(variant_from_name("bogus"), std::invalid_argument);
}
