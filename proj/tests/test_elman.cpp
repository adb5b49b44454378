#include <doctest.h>

#include <cmath>
#include <random>

#include "ridet/elman.hpp"
#include "ridet/errors.hpp"
#include "ridet/serialize.hpp"

#include "oracles.hpp"

using namespace ridet;

TEST_CASE("sigmoid basics") {
    CHECK(sigmoid(0.0) == 0.5);
    CHECK(sigmoid(500.0) == 1.0);
    CHECK(sigmoid(-500.0) < 1e-200);
    CHECK(sigmoid(-500.0) >= 0.0);

    std::mt19937_64 gen(1);
    for (int i = 0; i < 100; ++i) {
        const double x = testutil::uniform(gen, -20.0, 20.0);
        CHECK(sigmoid(-x) == doctest::Approx(1.0 - sigmoid(x)).epsilon(1e-12));
        CHECK(sigmoid(x) > 0.0);
        CHECK(sigmoid(x) < 1.0);
    }
    // Monotone.
    CHECK(sigmoid(-1.0) < sigmoid(-0.5));
    CHECK(sigmoid(0.25) < sigmoid(0.75));
}

TEST_CASE("topology parameter count") {
    CHECK(Topology{1, 5, 1, 5}.param_count() == 41);   // 5 + 25 + 5 + 5 + 1
    CHECK(Topology{1, 10, 1, 5}.param_count() == 131);  // 10 + 100 + 10 + 10 + 1
    CHECK(Topology{1, 3, 1, 5}.param_count() == 19);

    CHECK_THROWS_AS((Topology{0, 5, 1, 5}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((Topology{1, 5, 2, 5}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((Topology{1, 5, 1, 0}).validate(), std::invalid_argument);
}

TEST_CASE("init_weights draws from [-0.5, 0.5] deterministically") {
    const Topology topo{1, 5, 1, 5};
    for (std::uint64_t seed : {0ull, 1ull, 42ull, 123456789ull}) {
        const auto net = init_weights(topo, seed);
        CHECK(net.seed == seed);
        for (int p = 0; p < net.param_count(); ++p) {
            CHECK(net.param(p) >= -0.5);
            CHECK(net.param(p) <= 0.5);
        }
    }

    CHECK(init_weights(topo, 7) == init_weights(topo, 7));
    CHECK(init_weights(topo, 7) != init_weights(topo, 8));

    SUBCASE("disabled biases stay zero") {
        const auto net = init_weights(topo, 7, {.biases = false});
        for (double b : net.hidden_bias) CHECK(b == 0.0);
        CHECK(net.output_bias == 0.0);
    }
}

TEST_CASE("flat parameter indexing covers every array once") {
    const Topology topo{1, 3, 1, 5};
    auto net = init_weights(topo, 3);
    const int n = net.param_count();
    for (int p = 0; p < n; ++p) net.set_param(p, double(p));
    // 3 input weights, 9 context weights, 3 output weights, 3 biases, 1.
    CHECK(net.input_to_hidden == std::vector<double>{0, 1, 2});
    CHECK(net.context_to_hidden[0] == 3.0);
    CHECK(net.hidden_to_output[0] == 12.0);
    CHECK(net.hidden_bias[0] == 15.0);
    CHECK(net.output_bias == 18.0);
    CHECK_THROWS_AS(net.set_param(n, 0.0), std::out_of_range);
    CHECK_THROWS_AS(net.param(-1), std::out_of_range);
}

TEST_CASE("step: zero network gives all 0.5") {
    Topology topo{1, 4, 1, 5};
    auto net = init_weights(topo, 1);
    for (int p = 0; p < net.param_count(); ++p) net.set_param(p, 0.0);
    const double x = 0.7;
    const auto next = step(net, make_initial_state(net), std::span<const double>{&x, 1});
    for (double y : next.y) CHECK(y == 0.5);
}

TEST_CASE("step with zero context weights is a feedforward layer") {
    std::mt19937_64 gen(5);
    auto net = testutil::random_net(Topology{1, 4, 1, 5}, gen);
    for (double& v : net.context_to_hidden) v = 0.0;

    const double x = 0.3;
    HiddenState garbage{{0.9, 0.1, 0.4, 0.8}};
    const auto a = step(net, make_initial_state(net), std::span<const double>{&x, 1});
    const auto b = step(net, garbage, std::span<const double>{&x, 1});
    for (int i = 0; i < 4; ++i) {
        CHECK(a.y[i] == b.y[i]);  // context ignored
        const double expected = sigmoid(net.hidden_bias[i] + net.input_to_hidden[i] * x);
        CHECK(a.y[i] == doctest::Approx(expected).epsilon(1e-15));
    }
}

TEST_CASE("two steps of a random 1-3-1 net match a hand-unrolled recomputation") {
    std::mt19937_64 gen(6);
    const auto net = testutil::random_net(Topology{1, 3, 1, 2}, gen);
    const double x0 = 0.2, x1 = 0.9;

    auto s1 = step(net, make_initial_state(net), std::span<const double>{&x0, 1});
    auto s2 = step(net, s1, std::span<const double>{&x1, 1});

    // Scalar recomputation with explicit index arithmetic.
    double y0[3], y1[3];
    for (int i = 0; i < 3; ++i) {
        double a = net.hidden_bias[i] + net.input_to_hidden[i] * x0;
        for (int k = 0; k < 3; ++k) a += net.context_to_hidden[i * 3 + k] * 0.5;
        y0[i] = 1.0 / (1.0 + std::exp(-a));
    }
    for (int i = 0; i < 3; ++i) {
        double a = net.hidden_bias[i] + net.input_to_hidden[i] * x1;
        for (int k = 0; k < 3; ++k) a += net.context_to_hidden[i * 3 + k] * y0[k];
        y1[i] = 1.0 / (1.0 + std::exp(-a));
    }
    for (int i = 0; i < 3; ++i) {
        CHECK(s1.y[i] == doctest::Approx(y0[i]).epsilon(1e-14));
        CHECK(s2.y[i] == doctest::Approx(y1[i]).epsilon(1e-14));
    }
}

TEST_CASE("forward: zero network outputs exactly 0.5") {
    auto net = init_weights(Topology{1, 5, 1, 5}, 1);
    for (int p = 0; p < net.param_count(); ++p) net.set_param(p, 0.0);
    const std::vector<double> window{0.1, 0.9, 0.3, 0.7, 0.5};
    CHECK(forward(net, window) == 0.5);
}

TEST_CASE("forward rejects wrong window lengths with both sizes named") {
    std::mt19937_64 gen(7);
    const auto net = testutil::random_net(Topology{1, 5, 1, 5}, gen);
    const std::vector<double> too_short{0.1, 0.2, 0.3};
    CHECK_THROWS_WITH_AS(forward(net, too_short), doctest::Contains("3"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(forward(net, too_short), doctest::Contains("5"),
                         std::invalid_argument);
}

TEST_CASE("forward is deterministic and depends on inputs unless w is zero") {
    std::mt19937_64 gen(8);
    const auto net = testutil::random_net(Topology{1, 5, 1, 5}, gen);
    const auto w1 = testutil::random_window(gen);
    CHECK(forward(net, w1.inputs) == forward(net, w1.inputs));

    auto frozen = net;
    for (double& w : frozen.input_to_hidden) w = 0.0;
    const auto w2 = testutil::random_window(gen);
    CHECK(forward(frozen, w1.inputs) == forward(frozen, w2.inputs));
    // With live input weights, two different windows almost surely differ.
    CHECK(forward(net, w1.inputs) != forward(net, w2.inputs));
}

TEST_CASE("with zero context weights, identical inputs give identical states") {
    std::mt19937_64 gen(9);
    auto net = testutil::random_net(Topology{1, 5, 1, 5}, gen);
    for (double& v : net.context_to_hidden) v = 0.0;
    const std::vector<double> window(5, 0.6);
    const auto trace = forward_trace(net, window);
    for (std::size_t t = 2; t < trace.states.size(); ++t) {
        CHECK(trace.states[t] == trace.states[1]);
    }
}

TEST_CASE("activations and output stay strictly inside (0,1)") {
    std::mt19937_64 gen(10);
    for (int round = 0; round < 50; ++round) {
        const auto net = testutil::random_net(Topology{1, 5, 1, 5}, gen, 5.0);
        const auto window = testutil::random_window(gen);
        const auto trace = forward_trace(net, window.inputs);
        for (std::size_t t = 1; t < trace.states.size(); ++t) {
            for (double y : trace.states[t]) {
                CHECK(y > 0.0);
                CHECK(y < 1.0);
            }
        }
        CHECK(trace.output > 0.0);
        CHECK(trace.output < 1.0);
    }
}

TEST_CASE("forward equals the unrolled feedforward oracle") {
    std::mt19937_64 gen(11);
    for (int round = 0; round < 100; ++round) {
        const Topology topo{1, round % 2 == 0 ? 5 : 10, 1, 5};
        const auto net = testutil::random_net(topo, gen);
        const auto window = testutil::random_window(gen);

        // The oracle's forward pass runs on materialized per-layer copies.
        const int K = topo.hidden;
        std::vector<double> h(K, net.initial_state);
        for (int t = 0; t < 5; ++t) {
            std::vector<double> next(K);
            for (int i = 0; i < K; ++i) {
                double a = net.hidden_bias[i] + net.input_to_hidden[i] * window.inputs[t];
                for (int k = 0; k < K; ++k) a += net.context_to_hidden[i * K + k] * h[k];
                next[i] = 1.0 / (1.0 + std::exp(-a));
            }
            h = std::move(next);
        }
        double preact = net.output_bias;
        for (int i = 0; i < K; ++i) preact += net.hidden_to_output[i] * h[i];
        const double expected = 1.0 / (1.0 + std::exp(-preact));

        const double actual = forward(net, window.inputs);
        CHECK(testutil::rel_diff(actual, expected) < 1e-12);
    }
}

TEST_CASE("network JSON round trip preserves every parameter bit") {
    std::mt19937_64 gen(12);
    for (const int hidden : {5, 10}) {
        const auto net = testutil::random_net(Topology{1, hidden, 1, 5}, gen);
        const auto restored = network_from_json(network_to_json(net));
        CHECK(restored == net);
    }
}

TEST_CASE("network JSON rejects malformed documents") {
    CHECK_THROWS_AS(network_from_json("not json"), ParseError);
    CHECK_THROWS_AS(network_from_json("{}"), ParseError);
    const auto net = init_weights(Topology{1, 5, 1, 5}, 1);
    auto text = network_to_json(net);
    // Truncating the weight arrays must be caught by the size checks.
    const auto pos = text.find("\"hidden_bias\"");
    REQUIRE(pos != std::string::npos);
    auto broken = text;
    broken.replace(pos, 13, "\"hidden_bins\"");
    CHECK_THROWS_WITH_AS(network_from_json(broken), doctest::Contains("hidden_bias"), ParseError);
}

TEST_CASE("bounds JSON round trip and validation") {
    const NormalizationBounds bounds{8.0, 162.0};
    CHECK(bounds_from_json(bounds_to_json(bounds)) == bounds);
    CHECK_THROWS_AS(bounds_from_json("{\"min_kt\": 5, \"max_kt\": 5}"), ParseError);
    CHECK_THROWS_AS(bounds_from_json("{\"min_kt\": 5}"), ParseError);
}
