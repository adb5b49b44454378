#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ridet {

struct Topology {
    int inputs = 1;
    int hidden = 5;
    int outputs = 1;      // the detector is boolean; only 1 is supported
    int unfold_steps = 5;

    /// inputs*hidden + hidden*hidden + hidden + hidden + 1.
    int param_count() const;
    /// Throws std::invalid_argument when any count is out of range.
    void validate() const;

    bool operator==(const Topology&) const = default;
};

/// Context activations carried between unfold steps; always in (0,1).
struct HiddenState {
    std::vector<double> y;
};

/// A 1-H-1 recurrent net: the context layer stores the previous step's
/// hidden activations and feeds them back alongside the next input.
struct ElmanNetwork {
    Topology topology;
    std::uint64_t seed = 0;      // seed used at initialization
    double initial_state = 0.5;  // context value at the start of each window

    std::vector<double> input_to_hidden;    // hidden x inputs, row-major
    std::vector<double> context_to_hidden;  // hidden x hidden, row-major
    std::vector<double> hidden_to_output;   // hidden
    std::vector<double> hidden_bias;        // hidden
    double output_bias = 0.0;

    int param_count() const { return topology.param_count(); }

    /// Flat parameter view in the order input_to_hidden,
    /// context_to_hidden, hidden_to_output, hidden_bias, output_bias.
    double param(int index) const;
    void set_param(int index, double value);

    bool operator==(const ElmanNetwork&) const = default;
};

/// Overflow-safe logistic function.
double sigmoid(double x);

struct InitOptions {
    bool biases = true;  // false leaves both bias sets at zero
};

/// Every weight (and bias, unless disabled) drawn uniformly from
/// [-0.5, 0.5] by a deterministic generator; identical seeds produce
/// bit-identical networks.
ElmanNetwork init_weights(const Topology& topology, std::uint64_t seed,
                          const InitOptions& options = {});

HiddenState make_initial_state(const ElmanNetwork& net);

/// One recurrence step: y_i' = sigmoid(b_i + sum_k V[i][k]*y_k
/// + sum_j W[i][j]*x_j).
HiddenState step(const ElmanNetwork& net, const HiddenState& state,
                 std::span<const double> inputs);

struct ForwardTrace {
    /// unfold_steps + 1 entries; states[0] is the initial context.
    std::vector<std::vector<double>> states;
    double output_preactivation = 0.0;
    double output = 0.0;
};

/// Runs the recurrence over a full window and applies the sigmoid output
/// unit to the final hidden state, keeping every intermediate state.
/// Throws std::invalid_argument when the window length does not match
/// the unfolding depth.
ForwardTrace forward_trace(const ElmanNetwork& net, std::span<const double> window);

double forward(const ElmanNetwork& net, std::span<const double> window);

}  // namespace ridet
