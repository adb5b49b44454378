#include "ridet/elman.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace ridet {

int Topology::param_count() const {
    return inputs * hidden + hidden * hidden + hidden + hidden + 1;
}

void Topology::validate() const {
    if (inputs < 1 || hidden < 1 || outputs < 1 || unfold_steps < 1) {
        throw std::invalid_argument("topology counts must all be at least 1");
    }
    if (outputs != 1) {
        throw std::invalid_argument("only a single output unit is supported");
    }
}

namespace {

// (index into the flat parameter order) -> pointer; shared by param and
// set_param so the two cannot drift apart.
template <typename Net>
auto* param_ptr(Net& net, int index) {
    const int J = net.topology.inputs;
    const int K = net.topology.hidden;
    if (index < 0) throw std::out_of_range("parameter index " + std::to_string(index));
    if (index < J * K) return &net.input_to_hidden[index];
    index -= J * K;
    if (index < K * K) return &net.context_to_hidden[index];
    index -= K * K;
    if (index < K) return &net.hidden_to_output[index];
    index -= K;
    if (index < K) return &net.hidden_bias[index];
    index -= K;
    if (index == 0) return &net.output_bias;
    throw std::out_of_range("parameter index out of range");
}

// Uniform [0,1) from the top 53 bits; avoids the unspecified behaviour
// of std::uniform_real_distribution across standard libraries.
double next_uniform(std::mt19937_64& gen) {
    return double(gen() >> 11) * 0x1.0p-53;
}

}  // namespace

double ElmanNetwork::param(int index) const { return *param_ptr(*this, index); }

void ElmanNetwork::set_param(int index, double value) { *param_ptr(*this, index) = value; }

double sigmoid(double x) {
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

ElmanNetwork init_weights(const Topology& topology, std::uint64_t seed,
                          const InitOptions& options) {
    topology.validate();
    const int J = topology.inputs;
    const int K = topology.hidden;

    ElmanNetwork net;
    net.topology = topology;
    net.seed = seed;
    net.input_to_hidden.resize(std::size_t(K) * J);
    net.context_to_hidden.resize(std::size_t(K) * K);
    net.hidden_to_output.resize(K);
    net.hidden_bias.assign(K, 0.0);
    net.output_bias = 0.0;

    std::mt19937_64 gen(seed);
    auto draw = [&gen] { return next_uniform(gen) - 0.5; };
    for (double& w : net.input_to_hidden) w = draw();
    for (double& w : net.context_to_hidden) w = draw();
    for (double& w : net.hidden_to_output) w = draw();
    if (options.biases) {
        for (double& w : net.hidden_bias) w = draw();
        net.output_bias = draw();
    }
    return net;
}

HiddenState make_initial_state(const ElmanNetwork& net) {
    return HiddenState{std::vector<double>(net.topology.hidden, net.initial_state)};
}

HiddenState step(const ElmanNetwork& net, const HiddenState& state,
                 std::span<const double> inputs) {
    const int J = net.topology.inputs;
    const int K = net.topology.hidden;
    if (int(inputs.size()) != J) {
        throw std::invalid_argument("step got " + std::to_string(inputs.size()) +
                                    " inputs, expected " + std::to_string(J));
    }
    if (int(state.y.size()) != K) {
        throw std::invalid_argument("state has " + std::to_string(state.y.size()) +
                                    " units, expected " + std::to_string(K));
    }

    HiddenState next;
    next.y.resize(K);
    for (int i = 0; i < K; ++i) {
        double a = net.hidden_bias[i];
        const double* v_row = &net.context_to_hidden[std::size_t(i) * K];
        for (int k = 0; k < K; ++k) a += v_row[k] * state.y[k];
        const double* w_row = &net.input_to_hidden[std::size_t(i) * J];
        for (int j = 0; j < J; ++j) a += w_row[j] * inputs[j];
        next.y[i] = sigmoid(a);
    }
    return next;
}

ForwardTrace forward_trace(const ElmanNetwork& net, std::span<const double> window) {
    const int K = net.topology.hidden;
    const int T = net.topology.unfold_steps;
    if (net.topology.inputs != 1) {
        throw std::invalid_argument("scalar windows need a single input unit");
    }
    if (int(window.size()) != T) {
        throw std::invalid_argument("window length " + std::to_string(window.size()) +
                                    ", expected " + std::to_string(T));
    }

    ForwardTrace trace;
    trace.states.reserve(T + 1);
    trace.states.emplace_back(K, net.initial_state);
    for (int t = 0; t < T; ++t) {
        const auto& prev = trace.states.back();
        std::vector<double> y(K);
        for (int i = 0; i < K; ++i) {
            double a = net.hidden_bias[i] + net.input_to_hidden[i] * window[t];
            const double* v_row = &net.context_to_hidden[std::size_t(i) * K];
            for (int k = 0; k < K; ++k) a += v_row[k] * prev[k];
            y[i] = sigmoid(a);
        }
        trace.states.push_back(std::move(y));
    }

    double a = net.output_bias;
    const auto& final_state = trace.states.back();
    for (int i = 0; i < K; ++i) a += net.hidden_to_output[i] * final_state[i];
    trace.output_preactivation = a;
    trace.output = sigmoid(a);
    return trace;
}

double forward(const ElmanNetwork& net, std::span<const double> window) {
    return forward_trace(net, window).output;
}

}  // namespace ridet
