#include "ridet/bptt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "ridet/csv.hpp"
#include "ridet/errors.hpp"

namespace ridet {

void TrainConfig::validate() const {
    if (!(learning_rate > 0.0)) throw TrainError("learning_rate must be positive");
    if (max_epochs < 1) throw TrainError("max_epochs must be at least 1");
    if (!(target_pos > target_neg)) throw TrainError("target_pos must exceed target_neg");
    if (!(stop_tolerance >= 0.0)) throw TrainError("stop_tolerance must be nonnegative");
    if (patience < 1) throw TrainError("patience must be at least 1");
    if (!(positive_weight > 0.0)) throw TrainError("positive_weight must be positive");
}

Gradient Gradient::zeros(const Topology& topology) {
    Gradient g;
    g.input_to_hidden.assign(std::size_t(topology.hidden) * topology.inputs, 0.0);
    g.context_to_hidden.assign(std::size_t(topology.hidden) * topology.hidden, 0.0);
    g.hidden_to_output.assign(topology.hidden, 0.0);
    g.hidden_bias.assign(topology.hidden, 0.0);
    g.output_bias = 0.0;
    return g;
}

namespace {

template <typename Grad>
auto* grad_param_ptr(Grad& g, int index) {
    const auto wh = int(g.input_to_hidden.size());
    const auto ch = int(g.context_to_hidden.size());
    const auto ho = int(g.hidden_to_output.size());
    const auto hb = int(g.hidden_bias.size());
    if (index < 0) throw std::out_of_range("gradient index " + std::to_string(index));
    if (index < wh) return &g.input_to_hidden[index];
    index -= wh;
    if (index < ch) return &g.context_to_hidden[index];
    index -= ch;
    if (index < ho) return &g.hidden_to_output[index];
    index -= ho;
    if (index < hb) return &g.hidden_bias[index];
    index -= hb;
    if (index == 0) return &g.output_bias;
    throw std::out_of_range("gradient index out of range");
}

double target_for(const LabeledWindow& window, const TrainConfig& config) {
    return window.label ? config.target_pos : config.target_neg;
}

double weight_for(const LabeledWindow& window, const TrainConfig& config) {
    return window.label ? config.positive_weight : 1.0;
}

// Backward pass over an existing trace; accumulates into `g` (caller
// zeroes it). Weights are tied across steps, so every step's
// contribution sums into the same arrays.
void accumulate_bptt(const ElmanNetwork& net, const ForwardTrace& trace,
                     const LabeledWindow& window, const TrainConfig& config, Gradient& g,
                     std::vector<double>& upstream, std::vector<double>& delta) {
    const int K = net.topology.hidden;
    const int T = net.topology.unfold_steps;

    const double out = trace.output;
    const double residual = out - target_for(window, config);
    const double delta_out = weight_for(window, config) * residual * out * (1.0 - out);

    g.output_bias += delta_out;
    const auto& final_state = trace.states[T];
    for (int i = 0; i < K; ++i) g.hidden_to_output[i] += delta_out * final_state[i];

    // dE/dy at the final step comes only from the output unit.
    upstream.assign(K, 0.0);
    for (int i = 0; i < K; ++i) upstream[i] = delta_out * net.hidden_to_output[i];

    delta.assign(K, 0.0);
    for (int t = T; t >= 1; --t) {
        const auto& y = trace.states[t];
        const auto& y_prev = trace.states[t - 1];
        for (int i = 0; i < K; ++i) delta[i] = upstream[i] * y[i] * (1.0 - y[i]);

        const double x = window.inputs[t - 1];
        for (int i = 0; i < K; ++i) {
            g.input_to_hidden[i] += delta[i] * x;
            g.hidden_bias[i] += delta[i];
            double* gv_row = &g.context_to_hidden[std::size_t(i) * K];
            for (int k = 0; k < K; ++k) gv_row[k] += delta[i] * y_prev[k];
        }

        if (t > 1) {
            // dE/dy_prev_k = sum_i delta_i * V[i][k]; the initial context
            // is a constant, so nothing flows past t = 1.
            for (int k = 0; k < K; ++k) {
                double s = 0.0;
                for (int i = 0; i < K; ++i) s += delta[i] * net.context_to_hidden[std::size_t(i) * K + k];
                upstream[k] = s;
            }
        }
    }
}

}  // namespace

double Gradient::param(int index) const { return *grad_param_ptr(*this, index); }

void Gradient::set_param(int index, double value) { *grad_param_ptr(*this, index) = value; }

double sample_loss(const ElmanNetwork& net, const LabeledWindow& window,
                   const TrainConfig& config) {
    const double out = forward(net, window.inputs);
    const double residual = out - target_for(window, config);
    return 0.5 * weight_for(window, config) * residual * residual;
}

Gradient bptt_gradients(const ElmanNetwork& net, const LabeledWindow& window,
                        const TrainConfig& config) {
    const auto trace = forward_trace(net, window.inputs);
    Gradient g = Gradient::zeros(net.topology);
    std::vector<double> upstream, delta;
    accumulate_bptt(net, trace, window, config, g, upstream, delta);
    return g;
}

Gradient finite_difference_gradient(const ElmanNetwork& net, const LabeledWindow& window,
                                    double eps, const TrainConfig& config) {
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    ElmanNetwork probe = net;
    Gradient g = Gradient::zeros(net.topology);
    const int n = net.param_count();
    for (int p = 0; p < n; ++p) {
        const double original = probe.param(p);
        probe.set_param(p, original + eps);
        const double loss_plus = sample_loss(probe, window, config);
        probe.set_param(p, original - eps);
        const double loss_minus = sample_loss(probe, window, config);
        probe.set_param(p, original);
        g.set_param(p, (loss_plus - loss_minus) / (2.0 * eps));
    }
    return g;
}

void sgd_update(ElmanNetwork& net, const Gradient& gradient, double learning_rate) {
    if (gradient.input_to_hidden.size() != net.input_to_hidden.size() ||
        gradient.context_to_hidden.size() != net.context_to_hidden.size() ||
        gradient.hidden_to_output.size() != net.hidden_to_output.size() ||
        gradient.hidden_bias.size() != net.hidden_bias.size()) {
        throw std::invalid_argument("gradient shape does not match the network");
    }
    for (std::size_t i = 0; i < net.input_to_hidden.size(); ++i) {
        net.input_to_hidden[i] -= learning_rate * gradient.input_to_hidden[i];
    }
    for (std::size_t i = 0; i < net.context_to_hidden.size(); ++i) {
        net.context_to_hidden[i] -= learning_rate * gradient.context_to_hidden[i];
    }
    for (std::size_t i = 0; i < net.hidden_to_output.size(); ++i) {
        net.hidden_to_output[i] -= learning_rate * gradient.hidden_to_output[i];
    }
    for (std::size_t i = 0; i < net.hidden_bias.size(); ++i) {
        net.hidden_bias[i] -= learning_rate * gradient.hidden_bias[i];
    }
    net.output_bias -= learning_rate * gradient.output_bias;
}

std::pair<ElmanNetwork, TrainHistory> train(ElmanNetwork net,
                                            const std::vector<LabeledWindow>& windows,
                                            const TrainConfig& config) {
    config.validate();
    if (windows.empty()) throw TrainError("empty training set");
    const std::size_t T = std::size_t(net.topology.unfold_steps);
    for (std::size_t i = 0; i < windows.size(); ++i) {
        if (windows[i].inputs.size() != T) {
            throw TrainError("training window " + std::to_string(i) + " has " +
                             std::to_string(windows[i].inputs.size()) + " inputs, expected " +
                             std::to_string(T));
        }
    }

    std::mt19937_64 gen(config.shuffle_seed);
    std::vector<std::size_t> order(windows.size());
    std::iota(order.begin(), order.end(), std::size_t{0});

    TrainHistory history;
    Gradient grad = Gradient::zeros(net.topology);
    std::vector<double> upstream, delta;
    double previous_sse = std::numeric_limits<double>::infinity();
    int stalled = 0;

    for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
        // Fisher-Yates with our own bounded draw: std::shuffle would tie
        // reproducibility to the standard library in use.
        for (std::size_t i = order.size() - 1; i > 0; --i) {
            const std::size_t j = std::size_t(gen() % (i + 1));
            std::swap(order[i], order[j]);
        }

        double sse = 0.0;
        std::size_t correct = 0;
        for (const std::size_t idx : order) {
            const LabeledWindow& window = windows[idx];
            const auto trace = forward_trace(net, window.inputs);
            const double residual = trace.output - target_for(window, config);
            sse += 0.5 * weight_for(window, config) * residual * residual;
            if ((trace.output >= 0.5) == window.label) ++correct;

            std::fill(grad.input_to_hidden.begin(), grad.input_to_hidden.end(), 0.0);
            std::fill(grad.context_to_hidden.begin(), grad.context_to_hidden.end(), 0.0);
            std::fill(grad.hidden_to_output.begin(), grad.hidden_to_output.end(), 0.0);
            std::fill(grad.hidden_bias.begin(), grad.hidden_bias.end(), 0.0);
            grad.output_bias = 0.0;
            accumulate_bptt(net, trace, window, config, grad, upstream, delta);
            if (!config.update_biases) {
                std::fill(grad.hidden_bias.begin(), grad.hidden_bias.end(), 0.0);
                grad.output_bias = 0.0;
            }
            sgd_update(net, grad, config.learning_rate);
        }

        history.sse.push_back(sse);
        history.train_accuracy.push_back(100.0 * double(correct) / double(windows.size()));

        if (previous_sse - sse < config.stop_tolerance) {
            if (++stalled >= config.patience) {
                history.stop_reason = "converged";
                break;
            }
        } else {
            stalled = 0;
        }
        previous_sse = sse;
    }

    if (history.stop_reason.empty()) history.stop_reason = "max_epochs";
    return {std::move(net), std::move(history)};
}

std::string export_history_csv(const TrainHistory& history) {
    std::string out{kHistoryCsvHeader};
    out.push_back('\n');
    for (std::size_t i = 0; i < history.sse.size(); ++i) {
        out += std::to_string(i + 1);
        out.push_back(',');
        out += csv::format_double(history.sse[i]);
        out.push_back(',');
        out += csv::format_double(history.train_accuracy[i]);
        out.push_back('\n');
    }
    return out;
}

TrainHistory parse_history_csv(std::string_view text) {
    const auto all_lines = csv::lines(text);
    if (all_lines.empty() || csv::trim(all_lines[0]) != kHistoryCsvHeader) {
        throw ParseError("history CSV header must be exactly '" + std::string(kHistoryCsvHeader) +
                             "'",
                         1);
    }
    TrainHistory history;
    for (std::size_t i = 1; i < all_lines.size(); ++i) {
        if (csv::trim(all_lines[i]).empty()) continue;
        const auto f = csv::fields(all_lines[i]);
        double sse = 0.0, acc = 0.0;
        unsigned long long epoch = 0;
        if (f.size() != 3 || !csv::parse_uint(f[0], epoch) || !csv::parse_double(f[1], sse) ||
            !csv::parse_double(f[2], acc)) {
            throw ParseError("bad history row", i + 1);
        }
        history.sse.push_back(sse);
        history.train_accuracy.push_back(acc);
    }
    return history;
}

}  // namespace ridet
