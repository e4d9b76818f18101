#include <gtest/gtest.h>

#include "gdi/measures.hpp"
#include "gdi/random.hpp"
#include "gdi/zoo.hpp"
#include "oracles.hpp"

using namespace gdi;

namespace {

const Interface k22(2, 2);

std::vector<Coordinate> coords(Role r, int lo, int hi) {
    std::vector<Coordinate> out;
    for (int i = lo; i <= hi; ++i) out.push_back({r, i});
    return out;
}

JointDist random_instance(std::uint64_t seed, int n, Interface iface = k22) {
    return enumerate_joint(random_agent(iface, seed), random_env(iface, seed ^ 0xabcdef), n);
}

// Uniform open-loop agent facing the copy environment.
JointDist copy_joint(int n) {
    return enumerate_joint(zoo::constant_agent(k22, {0.5, 0.5}), zoo::copy_env(k22), n);
}

// Actions and observations both uniform and independent.
JointDist independent_joint(int n) {
    return enumerate_joint(zoo::constant_agent(k22, {0.3, 0.7}), zoo::uniform_env(k22), n);
}

}  // namespace

TEST(Entropy, TrivialValues) {
    const auto j = enumerate_joint(zoo::constant_agent(k22, {1.0, 0.0}), zoo::uniform_env(k22), 1);
    const Coordinate o1{Role::Observation, 1};
    const Coordinate a1{Role::Action, 1};
    EXPECT_DOUBLE_EQ(entropy(j, std::span<const Coordinate>(&o1, 1)), 1.0);
    EXPECT_DOUBLE_EQ(entropy(j, std::span<const Coordinate>(&a1, 1)), 0.0);
}

TEST(Entropy, FirstQLearningActionMatchesRolloutPlugIn) {
    const Agent agent = zoo::q_learning_agent(k22, {.epsilon = 0.5, .q_init = 0.0, .alpha = 0.1, .reward = {}});
    const Environment env = zoo::bernoulli_bandit(k22, {0.4, 0.7});
    const auto j = enumerate_joint(agent, env, 2);
    const auto freq = oracle::rollout_frequencies(agent, env, 2, 1000000, 99);
    double p1 = 0.0;
    for (const auto& [t, f] : freq) p1 += t.actions[0] == 1 ? f : 0.0;
    const double plug_in = -(p1 * std::log2(p1) + (1 - p1) * std::log2(1 - p1));
    const auto a1 = coords(Role::Action, 1, 1);
    EXPECT_NEAR(entropy(j, a1), plug_in, 1e-2);
}

TEST(Cmi, ConditionallyIndependentIsZero) {
    const auto j = independent_joint(2);
    EXPECT_NEAR(cmi(j, coords(Role::Action, 1, 2), coords(Role::Observation, 1, 2), {}), 0.0, 1e-10);
}

TEST(Cmi, PerfectCopyOfUniformBit) {
    const auto j = copy_joint(1);
    EXPECT_NEAR(cmi(j, coords(Role::Action, 1, 1), coords(Role::Observation, 1, 1), {}), 1.0, 1e-12);
}

TEST(Cmi, MatchesDirectSummationOracle) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        // Horizon 2 gives a random joint over four binary coordinates; use three.
        const auto j = random_instance(seed, 2);
        const auto t = oracle::to_table(j);
        const std::vector<Coordinate> u{{Role::Action, 2}}, v{{Role::Observation, 2}}, w{{Role::Observation, 1}};
        const double expected = oracle::cmi(t, {{Role::Action, 2}}, {{Role::Observation, 2}}, {{Role::Observation, 1}});
        EXPECT_NEAR(cmi(j, u, v, w), expected, 1e-12);
        EXPECT_NEAR(cmi(j, v, u, w), expected, 1e-12);  // symmetry
    }
}

TEST(Cmi, OverlapIsAnArgumentError) {
    const auto j = copy_joint(2);
    EXPECT_THROW(cmi(j, coords(Role::Action, 1, 2), coords(Role::Action, 2, 2), {}), ArgumentError);
}

TEST(DirectedInformation, IndependentAndCopy) {
    EXPECT_NEAR(directed_information(independent_joint(3), Role::Action, Role::Observation, Arrow::Forward).value,
                0.0, 1e-10);
    EXPECT_NEAR(directed_information(copy_joint(2), Role::Action, Role::Observation, Arrow::Forward).value, 2.0,
                1e-12);
}

TEST(DirectedInformation, MatchesPerTermLoopAndMutualInformationBound) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto j = random_instance(seed, 3, Interface(2, 3));
        const auto t = oracle::to_table(j);
        for (Role x : {Role::Action, Role::Observation}) {
            const Role y = opposite(x);
            const auto r = directed_information(j, x, y, Arrow::Forward);
            double loop = 0.0;
            for (int i = 1; i <= 3; ++i) {
                loop += oracle::cmi(t, oracle::block(x, 1, i), {{y, i}}, oracle::block(y, 1, i - 1));
            }
            EXPECT_NEAR(r.value, loop, 1e-12);
            const double mi = oracle::cmi(t, oracle::block(x, 1, 3), oracle::block(y, 1, 3), {});
            EXPECT_LE(r.value, mi + 1e-10);
            EXPECT_GE(r.value, 0.0);
        }
    }
}

TEST(Gdi, LateSourceIsExactlyZero) {
    const auto j = random_instance(3, 3);
    const auto r = gdi::gdi(j, {Role::Action, Interval(3, 3), Role::Observation, Interval(1, 2), Arrow::Forward});
    EXPECT_EQ(r.value, 0.0);
    EXPECT_TRUE(r.terms.empty());
}

TEST(Gdi, FullIntervalsEqualDirectedInformation) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto j = random_instance(seed, 3);
        for (Arrow arrow : {Arrow::Forward, Arrow::Delayed}) {
            const auto g = gdi::gdi(j, {Role::Observation, Interval(1, 3), Role::Action, Interval(1, 3), arrow});
            const auto di = directed_information(j, Role::Observation, Role::Action, arrow);
            ASSERT_EQ(g.terms.size(), di.terms.size());
            for (std::size_t k = 0; k < g.terms.size(); ++k) EXPECT_EQ(g.terms[k].bits, di.terms[k].bits);
        }
    }
}

TEST(Gdi, MatchesDefiningSumOnAllIntervals) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto j = random_instance(seed, 3, Interface(3, 2));
        const auto t = oracle::to_table(j);
        for (Role x : {Role::Action, Role::Observation})
            for (int a = 1; a <= 3; ++a)
                for (int b = a; b <= 3; ++b)
                    for (int c = 1; c <= 3; ++c)
                        for (int d = c; d <= 3; ++d)
                            for (bool delayed : {false, true}) {
                                const auto r = gdi::gdi(j, {x, Interval(a, b), opposite(x), Interval(c, d),
                                                       delayed ? Arrow::Delayed : Arrow::Forward});
                                EXPECT_NEAR(r.value, oracle::gdi_sum(t, x, a, b, c, d, delayed), 1e-12);
                                double sum = 0.0;
                                for (const auto& term : r.terms) sum += term.bits;
                                EXPECT_NEAR(r.value, sum, 1e-10);
                            }
    }
}

TEST(Gdi, MirrorAgentAgainstUniformEnvironment) {
    const auto j = enumerate_joint(zoo::mirror_agent(k22, 2), zoo::uniform_env(k22), 3);
    const auto r = gdi::gdi(j, {Role::Observation, Interval(1, 2), Role::Action, Interval(2, 3), Arrow::Delayed});
    EXPECT_NEAR(r.value, 2.0, 1e-12);
}

TEST(Gdi, IntervalBeyondHorizonIsRejected) {
    const auto j = copy_joint(2);
    EXPECT_THROW(gdi::gdi(j, {Role::Action, Interval(1, 3), Role::Observation, Interval(1, 2), Arrow::Forward}),
                 ArgumentError);
    EXPECT_THROW(Interval(0, 1), ArgumentError);
    EXPECT_THROW(Interval(3, 2), ArgumentError);
}

TEST(Clamp, SeparatesRoundoffFromBugs) {
    EXPECT_EQ(clamp_information(-5e-11), 0.0);
    EXPECT_EQ(clamp_information(0.25), 0.25);
    EXPECT_THROW(clamp_information(-1e-9), NumericalIntegrityError);
}

TEST(Report, TextForm) {
    MeasureReport r{1.5, {{2, 0.5}, {3, 1.0}}};
    EXPECT_EQ(format_report(r), "value_bits=1.5\nterm i=2 bits=0.5\nterm i=3 bits=1\n");
}

TEST(CausalEntropy, DeterministicTargetIsZero) {
    const auto j = copy_joint(2);
    EXPECT_NEAR(causal_entropy(j, Role::Observation, Interval(1, 2), Role::Action, Interval(1, 2)), 0.0, 1e-12);
}

TEST(CausalEntropy, FullIntervalsAndPerTermLoop) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto j = random_instance(seed, 3);
        const auto t = oracle::to_table(j);
        // Classical causal entropy H(Y_i | Y_{1:i-1}, X_{1:i}).
        double classical = 0.0;
        for (int i = 1; i <= 3; ++i) {
            const auto given = oracle::join(oracle::block(Role::Observation, 1, i - 1), oracle::block(Role::Action, 1, i));
            classical += oracle::entropy(t, oracle::join(given, {{Role::Observation, i}})) - oracle::entropy(t, given);
        }
        EXPECT_NEAR(causal_entropy(j, Role::Observation, Interval(1, 3), Role::Action, Interval(1, 3)), classical,
                    1e-12);

        // General intervals against the same loop with the pre-interval source past.
        const int a = 2, b = 2, c = 1, d = 3;
        double loop = 0.0;
        for (int i = std::max(a, c); i <= d; ++i) {
            const auto given = oracle::join(oracle::block(Role::Observation, 1, i - 1),
                                            oracle::block(Role::Action, 1, std::min(b, i)));
            loop += oracle::entropy(t, oracle::join(given, {{Role::Observation, i}})) - oracle::entropy(t, given);
        }
        EXPECT_NEAR(causal_entropy(j, Role::Observation, Interval(c, d), Role::Action, Interval(a, b)), loop, 1e-12);
    }
}

TEST(Kramer, IndependentAndCopy) {
    const MeasureQuery full{Role::Action, Interval(1, 2), Role::Observation, Interval(1, 2), Arrow::Forward};
    const auto ind = kramer_decompose(independent_joint(2), full);
    EXPECT_NEAR(ind.entropy_term - ind.causal_entropy_term, 0.0, 1e-12);
    const auto copy = kramer_decompose(copy_joint(2), full);
    EXPECT_NEAR(copy.entropy_term, 2.0, 1e-12);
    EXPECT_NEAR(copy.causal_entropy_term, 0.0, 1e-12);
}

TEST(Kramer, DifferenceEqualsGdiOnRandomInstances) {
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto j = random_instance(seed, 3, Interface(2 + static_cast<int>(seed % 2), 2));
        const Role x = seed % 3 == 0 ? Role::Observation : Role::Action;
        const int a = 1 + static_cast<int>(seed % 3);
        const int c = 1 + static_cast<int>((seed / 3) % 3);
        const MeasureQuery q{x, Interval(a, 3), opposite(x), Interval(c, 3), Arrow::Forward};
        const auto k = kramer_decompose(j, q);
        EXPECT_NEAR(k.entropy_term - k.causal_entropy_term, gdi::gdi(j, q).value, 1e-10) << "seed " << seed;
        ++checked;
    }
    EXPECT_EQ(checked, 100);
}

TEST(Kramer, DelayedArrowIsUnsupported) {
    EXPECT_THROW(kramer_decompose(copy_joint(2), {Role::Action, Interval(1, 2), Role::Observation, Interval(1, 2),
                                                  Arrow::Delayed}),
                 UnsupportedVariantError);
}
