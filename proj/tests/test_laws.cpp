#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "gdi/laws.hpp"
#include "gdi/zoo.hpp"
#include "oracles.hpp"

using namespace gdi;

namespace {

const Interface k22(2, 2);

JointDist copy_joint(int n) {
    return enumerate_joint(zoo::constant_agent(k22, {0.5, 0.5}), zoo::copy_env(k22), n);
}

Channel identity_channel(int n) {
    Channel c(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int k = 0; k < n; ++k) c[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] = 1.0;
    return c;
}

}  // namespace

TEST(Conservation, HoldsOnRandomInstance) {
    const auto j = random_joint({7, 3, 2, 3});
    const auto r = check_conservation(j, Role::Action, Interval(2, 3), Interval(1, 2));
    EXPECT_TRUE(r.pass) << r.residual_bits;
    EXPECT_LT(r.residual_bits, 1e-10);
}

TEST(Conservation, OneWayChannelPutsEverythingForward) {
    // Open-loop source: nothing flows back from observations to actions.
    const auto j = enumerate_joint(zoo::constant_agent(k22, {0.5, 0.5}), zoo::bernoulli_bandit(k22, {0.2, 0.9}), 3);
    const Interval full(1, 3);
    const auto t = oracle::to_table(j);
    const double total = oracle::cmi(t, oracle::block(Role::Action, 1, 3), oracle::block(Role::Observation, 1, 3), {});
    const double backward = gdi::gdi(j, {Role::Observation, full, Role::Action, full, Arrow::Delayed}).value;
    const double forward = gdi::gdi(j, {Role::Action, full, Role::Observation, full, Arrow::Forward}).value;
    EXPECT_NEAR(backward, 0.0, 1e-12);
    EXPECT_NEAR(forward, total, 1e-12);
    EXPECT_TRUE(check_di_conservation(j, Role::Action).pass);
}

TEST(Conservation, IdentityAgainstOracleTerms) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto j = random_joint({seed, 3, 2, 2});
        const auto t = oracle::to_table(j);
        // Three independent evaluations of the conserved quantity and both flows.
        const double total = oracle::cmi(t, oracle::block(Role::Action, 2, 3), oracle::block(Role::Observation, 1, 2),
                                         oracle::block(Role::Action, 1, 1));
        const double f = oracle::gdi_sum(t, Role::Action, 2, 3, 1, 2, false);
        const double d = oracle::gdi_sum(t, Role::Observation, 1, 2, 2, 3, true);
        EXPECT_NEAR(total, f + d, 1e-10);
        EXPECT_LT(check_conservation(j, Role::Action, Interval(2, 3), Interval(1, 2)).residual_bits, 1e-10);
    }
}

TEST(TemporalConsistency, LateSourcesVanish) {
    const auto j = random_joint({1, 4, 2, 2});
    EXPECT_TRUE(check_temporal_consistency(j, {Role::Action, Interval(3, 4), Role::Observation, Interval(1, 2),
                                               Arrow::Forward})
                    .pass);
    EXPECT_TRUE(check_temporal_consistency(j, {Role::Action, Interval(2, 4), Role::Observation, Interval(1, 2),
                                               Arrow::Delayed})
                    .pass);
    EXPECT_THROW(check_temporal_consistency(j, {Role::Action, Interval(2, 4), Role::Observation, Interval(1, 2),
                                                Arrow::Forward}),
                 ArgumentError);
}

TEST(TemporalConsistency, AllLatePairsAtHorizonFour) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto r = run_law(Law::TemporalConsistency, {seed, 4, 2, 3});
        EXPECT_TRUE(r.pass) << r.residual_bits;
    }
}

TEST(IntervalSummation, DegenerateSplit) {
    const auto j = random_joint({2, 2, 2, 2});
    const MeasureQuery q{Role::Observation, Interval(1, 2), Role::Action, Interval(1, 2), Arrow::Forward};
    EXPECT_TRUE(check_interval_summation(j, q, SplitSide::Target, 1).pass);
    EXPECT_TRUE(check_interval_summation(j, q, SplitSide::Source, 1).pass);
    EXPECT_THROW(check_interval_summation(j, q, SplitSide::Source, 2), ArgumentError);
}

TEST(IntervalSummation, CopyChannelPartsSumToTwoBits) {
    const auto j = copy_joint(2);
    const MeasureQuery q{Role::Action, Interval(1, 2), Role::Observation, Interval(1, 2), Arrow::Forward};
    MeasureQuery first = q, second = q;
    first.target = Interval(1, 1);
    second.target = Interval(2, 2);
    EXPECT_NEAR(gdi::gdi(j, first).value + gdi::gdi(j, second).value, 2.0, 1e-12);
    EXPECT_TRUE(check_interval_summation(j, q, SplitSide::Target, 1).pass);
}

TEST(IntervalSummation, ExhaustiveSplitsAtHorizonFour) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto r = run_law(Law::IntervalSummation, {seed, 4, 2, 2});
        EXPECT_TRUE(r.pass) << r.residual_bits;
    }
}

TEST(Bounds, IndependentAndCopy) {
    const auto ind =
        enumerate_joint(zoo::constant_agent(k22, {0.5, 0.5}), zoo::uniform_env(k22), 2);
    const MeasureQuery q{Role::Action, Interval(1, 2), Role::Observation, Interval(1, 2), Arrow::Forward};
    const auto r = check_bounds(ind, q);
    EXPECT_TRUE(r.pass);
    EXPECT_NEAR(gdi::gdi(ind, q).value, 0.0, 1e-12);
    // Copy channel: the bound is attained.
    const auto copy = copy_joint(2);
    EXPECT_NEAR(gdi::gdi(copy, q).value, 2.0, 1e-12);
    EXPECT_TRUE(check_bounds(copy, q).pass);
    EXPECT_EQ(check_bounds(copy, q).residual_bits, 0.0);
}

TEST(Dpi, IdentityChannelIsEquality) {
    const auto j = random_joint({4, 3, 2, 2});
    const auto ext = extend_with_channel(j, Role::Observation, identity_channel(2));
    for (Arrow arrow : {Arrow::Forward, Arrow::Delayed}) {
        const auto r = check_dpi(ext, Interval(1, 3), Interval(1, 3), arrow);
        EXPECT_TRUE(r.pass);
        const double y = sequences::gdi(ext.table, kActionSequence, Interval(1, 3), kObservationSequence,
                                        Interval(1, 3), arrow)
                             .value;
        const double z = sequences::gdi(ext.table, kActionSequence, Interval(1, 3), kProcessedSequence,
                                        Interval(1, 3), arrow)
                             .value;
        EXPECT_NEAR(y, z, 1e-10);
    }
}

TEST(Dpi, ConstantChannelCarriesNothing) {
    const auto j = random_joint({5, 3, 2, 2});
    const Channel constant{{1.0, 0.0}, {1.0, 0.0}};
    const auto ext = extend_with_channel(j, Role::Observation, constant);
    const double z =
        sequences::gdi(ext.table, kActionSequence, Interval(1, 3), kProcessedSequence, Interval(1, 3), Arrow::Forward)
            .value;
    EXPECT_NEAR(z, 0.0, 1e-12);
    EXPECT_TRUE(check_dpi(ext, Interval(1, 3), Interval(1, 3), Arrow::Forward).pass);
}

TEST(Dpi, RejectsExtensionsWithMemory) {
    const auto j = random_joint({6, 2, 2, 2});
    auto ext = extend_with_channel(j, Role::Observation, random_channel(2, 2, 1));
    // Replace Z_2 by a copy of A_1, which is not a function of O_2.
    std::vector<double> probs(ext.table.num_cells(), 0.0);
    const auto src = ext.table.probabilities();
    for (std::size_t cell = 0; cell < src.size(); ++cell) {
        const int a1 = ext.table.digit(cell, ext.table.variable(kActionSequence, 1));
        const int z2 = ext.table.digit(cell, ext.table.variable(kProcessedSequence, 2));
        const std::uint64_t stride = ext.table.stride(ext.table.variable(kProcessedSequence, 2));
        probs[cell - static_cast<std::size_t>(z2) * stride + static_cast<std::size_t>(a1) * stride] += src[cell];
    }
    const ProcessedJoint bad{SequenceTable({2, 2, 2}, 2, probs), Role::Observation, {}};
    EXPECT_THROW(validate_processed(bad), ArgumentError);
    EXPECT_THROW(check_dpi(bad, Interval(1, 2), Interval(1, 2), Arrow::Forward), ArgumentError);
}

// With feedback, conditioning on the processed past can reveal more than the
// clean past: here A_2 = O_1 and O_2 = A_2, so O_2 is predictable from O_1
// while Z_2 is not predictable from the noisy Z_1. The memoryless channel
// satisfies Z_i independent of A_{1:i} given O_i, yet the inequality fails.
TEST(Dpi, FeedbackCounterexample) {
    const Agent agent = zoo::mirror_agent(k22, 2);
    const Environment env(
        k22,
        [](const History& h) {
            if (h.actions().size() == 1) return Distribution{0.5, 0.5};
            return h.actions().back() == 0 ? Distribution{1.0, 0.0} : Distribution{0.0, 1.0};
        },
        "uniform-then-copy");
    const auto j = enumerate_joint(agent, env, 2);
    const Channel bsc{{0.9, 0.1}, {0.1, 0.9}};
    const auto ext = extend_with_channel(j, Role::Observation, bsc);
    EXPECT_NO_THROW(validate_processed(ext));
    const auto r = check_dpi(ext, Interval(2, 2), Interval(1, 2), Arrow::Forward);
    EXPECT_FALSE(r.pass);

    const double y = sequences::gdi(ext.table, kActionSequence, Interval(2, 2), kObservationSequence, Interval(1, 2),
                                    Arrow::Forward)
                         .value;
    const double z = sequences::gdi(ext.table, kActionSequence, Interval(2, 2), kProcessedSequence, Interval(1, 2),
                                    Arrow::Forward)
                         .value;
    EXPECT_NEAR(y, 0.0, 1e-12);
    // Oracle: with O_1 uniform, A_2 = O_2 = O_1, Z_i = O_1 xor noise_i.
    double oracle_bits = 0.0;
    {
        auto h2 = [](double p) { return p <= 0 || p >= 1 ? 0.0 : -p * std::log2(p) - (1 - p) * std::log2(1 - p); };
        // I(O_1; Z_2 | Z_1) = H(Z_2 | Z_1) - H(Z_2 | O_1, Z_1) = H(Z_2 | Z_1) - h(0.1).
        const double agree = 0.9 * 0.9 + 0.1 * 0.1;  // P(Z_2 = Z_1)
        oracle_bits = h2(agree) - h2(0.1);
    }
    EXPECT_NEAR(z, oracle_bits, 1e-12);
    EXPECT_NEAR(r.residual_bits, oracle_bits, 1e-12);
}

TEST(Suite, RowsAndDeterminism) {
    LawSuiteConfig config;
    EXPECT_TRUE(run_law_suite(config).empty());

    config.seeds = {1, 2};
    config.horizons = {2};
    config.sizes = {{2, 2}};
    config.laws = {Law::Conservation, Law::TemporalConsistency, Law::IntervalSummation, Law::Bounds,
                   Law::DiConservation};
    const auto rows = run_law_suite(config);
    EXPECT_EQ(rows.size(), 10U);
    for (const auto& r : rows) EXPECT_TRUE(r.pass) << r.law;

    std::ostringstream a, b;
    write_law_csv_header(a);
    write_law_csv_header(b);
    for (const auto& r : rows) write_law_csv_row(a, r);
    for (const auto& r : run_law_suite(config)) write_law_csv_row(b, r);
    EXPECT_EQ(a.str(), b.str());
    EXPECT_EQ(a.str().substr(0, a.str().find('\n')), "law,seed,horizon,na,no,a,b,c,d,arrow,residual_bits,pass");
}

TEST(Suite, LawNames) {
    for (Law law : all_laws()) EXPECT_EQ(parse_law(to_string(law)), law);
    EXPECT_FALSE(parse_law("nonsense").has_value());
}
