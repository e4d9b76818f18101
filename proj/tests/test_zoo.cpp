#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "gdi/zoo.hpp"

using namespace gdi;
using namespace gdi::zoo;

namespace {

const Interface k22(2, 2);

void expect_dist(const Distribution& got, const Distribution& want) {
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t k = 0; k < got.size(); ++k) EXPECT_NEAR(got[k], want[k], 1e-15) << "entry " << k;
}

History hist(Interface iface, std::vector<int> a, std::vector<int> o) { return History(iface, std::move(a), std::move(o)); }

}  // namespace

TEST(ObservationBlind, SameOutputWhateverWasSeen) {
    const Interface iface(2, 3);
    std::vector<double> seq{0.1, 0.2, 0.3, 0.4};
    const std::vector<Agent> agents{
        constant_agent(iface, {0.25, 0.75}),
        open_loop_agent(iface, 2, seq),
        length_agent(iface, {{0.9, 0.1}, {0.2, 0.8}}),
        past_action_agent(iface, {0.5, 0.5}, {{0.7, 0.3}, {0.1, 0.9}}),
    };
    for (const auto& agent : agents) {
        for (int a = 0; a < 2; ++a) {
            const auto ref = agent(hist(iface, {a}, {0}));
            for (int o = 1; o < 3; ++o) EXPECT_EQ(agent(hist(iface, {a}, {o})), ref) << agent.name();
        }
    }
}

TEST(OpenLoop, PrefixConditionals) {
    // p(00)=0.1 p(01)=0.2 p(10)=0.3 p(11)=0.4
    const Agent agent = open_loop_agent(k22, 2, {0.1, 0.2, 0.3, 0.4});
    const auto first = agent(History(k22));
    EXPECT_NEAR(first[0], 0.3, 1e-15);
    const auto after1 = agent(hist(k22, {1}, {0}));
    EXPECT_NEAR(after1[1], 0.4 / 0.7, 1e-15);
    // Past the horizon the agent is uniform.
    EXPECT_EQ(agent(hist(k22, {1, 1}, {0, 0})), (Distribution{0.5, 0.5}));
}

TEST(QLearning, EpsilonOneIsUniform) {
    const Agent agent = q_learning_agent(k22, {.epsilon = 1.0, .q_init = 0.0, .alpha = 0.1, .reward = {}});
    EXPECT_EQ(agent(hist(k22, {0, 1}, {1, 0})), (Distribution{0.5, 0.5}));
}

TEST(QLearning, EmptyHistoryBreaksTiesUniformly) {
    const Agent agent = q_learning_agent(k22, {.epsilon = 0.0, .q_init = 0.3, .alpha = 0.1, .reward = {}});
    EXPECT_EQ(agent(History(k22)), (Distribution{0.5, 0.5}));
}

TEST(QLearning, ReplaysUpdatesFromTheHistory) {
    // a0 rewarded: Q[0] = 0 + 0.5 * (1 - 0) = 0.5 > Q[1] = 0.
    const Agent greedy = q_learning_agent(k22, {.epsilon = 0.0, .q_init = 0.0, .alpha = 0.5, .reward = {}});
    EXPECT_EQ(greedy(hist(k22, {0}, {1})), (Distribution{1.0, 0.0}));
    // Then a1 rewarded twice: Q[1] = 0.5 then 0.75 > 0.5.
    EXPECT_EQ(greedy(hist(k22, {0, 1, 1}, {1, 1, 1})), (Distribution{0.0, 1.0}));
    // An unrewarded pull of a0 from an optimistic start makes a1 greedy.
    const Agent optimistic = q_learning_agent(k22, {.epsilon = 0.2, .q_init = 1.0, .alpha = 0.5, .reward = {}});
    const auto d = optimistic(hist(k22, {0}, {0}));
    EXPECT_NEAR(d[0], 0.1, 1e-15);
    EXPECT_NEAR(d[1], 0.9, 1e-15);
    EXPECT_THROW(q_learning_agent(k22, {.epsilon = 1.5, .q_init = 0.0, .alpha = 0.1, .reward = {}}), ArgumentError);
    EXPECT_THROW(q_learning_agent(k22, {.epsilon = 0.0, .q_init = 0.0, .alpha = 0.0, .reward = {}}), ArgumentError);
}

TEST(QLearning, CustomRewardMap) {
    const Agent agent = q_learning_agent(k22, {.epsilon = 0.0, .q_init = 0.0, .alpha = 1.0, .reward = {1.0, -1.0}});
    EXPECT_EQ(agent(hist(k22, {1}, {0})), (Distribution{0.0, 1.0}));
}

TEST(Bandit, BernoulliByLastAction) {
    const Environment env = bernoulli_bandit(k22, {0.4, 0.7});
    const auto d0 = env(History(k22, {0}, {}));
    const auto d1 = env(History(k22, {0, 1}, {1}));
    EXPECT_DOUBLE_EQ(d0[1], 0.4);
    EXPECT_DOUBLE_EQ(d1[1], 0.7);
    EXPECT_THROW(bernoulli_bandit(Interface(2, 3), {0.4, 0.7}), ArgumentError);
    EXPECT_THROW(bernoulli_bandit(k22, {0.4}), ArgumentError);
}

TEST(CopyEnv, PointMassOnLastAction) {
    const Environment env = copy_env(Interface(2, 3));
    EXPECT_EQ(env(History(Interface(2, 3), {1}, {})), (Distribution{0.0, 1.0, 0.0}));
    EXPECT_THROW(copy_env(Interface(3, 2)), ArgumentError);
}

TEST(DeterministicEnv, OutOfRangeIsAContractViolation) {
    const Environment env = deterministic_env(k22, [](const History&) { return 5; });
    EXPECT_THROW(env(History(k22, {0}, {})), ContractViolation);
}

TEST(DeterministicEnv, FromFile) {
    const std::string path = ::testing::TempDir() + "det_env.txt";
    {
        std::ofstream f(path);
        f << "# observation after a lone action 1\n1 : 1\n0 1 1 : 1\n";
    }
    const Environment env = deterministic_env_from_file(k22, path);
    EXPECT_EQ(env(History(k22, {1}, {})), (Distribution{0.0, 1.0}));
    EXPECT_EQ(env(History(k22, {0}, {})), (Distribution{1.0, 0.0}));
    EXPECT_EQ(env(History(k22, {0, 1}, {1})), (Distribution{0.0, 1.0}));
    {
        std::ofstream f(path);
        f << "1 0\n";
    }
    EXPECT_THROW(deterministic_env_from_file(k22, path), ParseError);
    std::remove(path.c_str());
}

TEST(Mirror, PointMassesWithLag) {
    const Agent agent = mirror_agent(k22, 2);
    EXPECT_EQ(agent(History(k22)), (Distribution{1.0, 0.0}));
    EXPECT_EQ(agent(hist(k22, {0}, {1})), (Distribution{0.0, 1.0}));
    EXPECT_EQ(agent(hist(k22, {0, 1}, {1, 0})), (Distribution{1.0, 0.0}));
    // lag 2 at step 3 reads o_1.
    const Agent lagged = mirror_agent(k22, 3, 2);
    EXPECT_EQ(lagged(hist(k22, {0, 0}, {1, 0})), (Distribution{0.0, 1.0}));
    EXPECT_THROW(mirror_agent(Interface(3, 2), 2), ArgumentError);

    const Environment env = mirror_env(k22, 1);
    EXPECT_EQ(env(History(k22, {1}, {})), (Distribution{0.0, 1.0}));
}

TEST(Staged, UniformAfterStart) {
    const Agent agent = staged_uniform_agent(Interface(3, 2), 2, 2);
    EXPECT_EQ(agent(History(Interface(3, 2))), (Distribution{1.0, 0.0, 0.0}));
    EXPECT_EQ(agent(hist(Interface(3, 2), {0}, {0})), (Distribution{0.5, 0.5, 0.0}));
}

TEST(Corridor, Positions) {
    const CorridorSpec spec{5, 0.5, 2};
    EXPECT_EQ(corridor_position(spec, std::vector<int>{kLeft, kLeft, kLeft}), 0);
    EXPECT_EQ(corridor_position(spec, std::vector<int>{kRight, kRight, kRight, kPull}), 4);
    EXPECT_EQ(corridor_position(spec, std::vector<int>{kPull, kLeft, kRight}), 2);
}

TEST(Corridor, PullControlGrowsAlongTheCorridor) {
    const CorridorSpec first{5, 0.5, 0};
    const CorridorSpec last{5, 0.5, 4};
    const Interface iface = corridor_interface();
    // Room 0: a pull flips the (off) light with probability theta.
    EXPECT_DOUBLE_EQ(corridor_env(first)(History(iface, {kPull}, {}))[kLightOn], 0.5);
    // Room n: a pull always flips it.
    EXPECT_DOUBLE_EQ(corridor_env(last)(History(iface, {kPull}, {}))[kLightOn], 1.0);
    const CorridorSpec mid{5, 0.2, 2};
    EXPECT_DOUBLE_EQ(corridor_env(mid)(History(iface, {kPull}, {}))[kLightOn], 0.5 + 0.5 * 0.2);
    // A light that is on flips off with the same probability.
    EXPECT_DOUBLE_EQ(corridor_env(last)(History(iface, {kPull, kPull}, {kLightOn}))[kLightOff], 1.0);
    // Moving into a room flips its light with probability theta; bumping the wall is a move too.
    EXPECT_DOUBLE_EQ(corridor_env(first)(History(iface, {kRight}, {}))[kLightOn], 0.5);
    EXPECT_DOUBLE_EQ(corridor_env(first)(History(iface, {kLeft}, {}))[kLightOn], 0.5);
}

TEST(Corridor, LightsPersistPerRoom) {
    const CorridorSpec spec{3, 0.0, 0};
    const Environment env = corridor_env(spec);
    const Interface iface = corridor_interface();
    // Room 0 lit, walk to room 1 (stays off with theta 0), walk back: room 0 still lit.
    const History h(iface, {kPull, kRight, kLeft}, {kLightOn, kLightOff});
    EXPECT_EQ(env(h), (Distribution{0.0, 1.0}));
}

TEST(Corridor, StayAgent) {
    const CorridorSpec spec{5, 0.5, 0};
    const Interface iface = corridor_interface();
    const Agent home = corridor_stay_agent(spec, 0);
    EXPECT_EQ(home(History(iface)), (Distribution{0.5, 0.0, 0.5}));
    expect_dist(home(History(iface, {kPull}, {kLightOff})), {0.1, 0.0, 0.9});
    expect_dist(home(History(iface, {kPull}, {kLightOn})), {0.9, 0.0, 0.1});
    // Displaced: walk back.
    const Agent far = corridor_stay_agent(CorridorSpec{5, 0.5, 2}, 4);
    EXPECT_EQ(far(History(iface)), (Distribution{0.0, 1.0, 0.0}));
    EXPECT_THROW(corridor_stay_agent(spec, 5), ArgumentError);
    EXPECT_THROW(corridor_env(CorridorSpec{1, 0.5, 0}), ArgumentError);
}

TEST(Registry, ParsesParameters) {
    const Agent q = make_agent("qlearn(eps=1, q0=0.5)", k22, 3);
    EXPECT_EQ(q(hist(k22, {0}, {1})), (Distribution{0.5, 0.5}));
    const Agent c = make_agent("constant(a=1)", k22, 3);
    EXPECT_EQ(c(History(k22)), (Distribution{0.0, 1.0}));
    EXPECT_EQ(make_agent("constant", k22, 3)(History(k22)), (Distribution{0.5, 0.5}));
    const Environment b = make_env("bandit(p0=0.1,p1=0.2)", k22, 3);
    EXPECT_DOUBLE_EQ(b(History(k22, {1}, {}))[1], 0.2);
    EXPECT_EQ(make_env("corridor(rooms=3)", corridor_interface(), 3).interface(), corridor_interface());
    for (const char* name : {"open-loop", "length", "past-action", "mirror"}) {
        EXPECT_NO_THROW(make_agent(name, Interface(2, 3), 3)) << name;
    }
    for (const char* name : {"uniform", "copy", "ignore"}) EXPECT_NO_THROW(make_env(name, Interface(2, 3), 3)) << name;
}

TEST(Registry, Errors) {
    EXPECT_THROW(make_agent("nope", k22, 3), ArgumentError);
    EXPECT_THROW(make_agent("qlearn(epsilon=1)", k22, 3), ArgumentError);
    EXPECT_THROW(make_agent("qlearn(eps=abc)", k22, 3), ArgumentError);
    EXPECT_THROW(make_agent("qlearn(eps=1", k22, 3), ArgumentError);
    EXPECT_THROW(make_agent("constant(a=2)", k22, 3), ArgumentError);
    EXPECT_THROW(make_env("det", k22, 3), ArgumentError);
    EXPECT_THROW(make_env("corridor", k22, 3), ArgumentError);
}

TEST(Registry, ImpliedInterface) {
    EXPECT_EQ(implied_interface("stay", "uniform", k22), corridor_interface());
    EXPECT_EQ(implied_interface("qlearn", "bandit", Interface(3, 4)), Interface(3, 2));
    EXPECT_EQ(implied_interface("constant", "uniform", Interface(3, 4)), Interface(3, 4));
}
