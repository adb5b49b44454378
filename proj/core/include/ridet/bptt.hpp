#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ridet/elman.hpp"
#include "ridet/windows.hpp"

namespace ridet {

struct TrainConfig {
    double learning_rate = 0.1;
    int max_epochs = 2000;
    std::uint64_t shuffle_seed = 0;
    double target_pos = 1.0;
    double target_neg = 0.0;
    /// Stop once the epoch SSE improves by less than this for `patience`
    /// consecutive epochs.
    double stop_tolerance = 1e-6;
    int patience = 10;
    /// Optional loss weight for positive samples; 1.0 leaves the loss
    /// unweighted (class imbalance is addressed by the labeling strategy,
    /// not the trainer).
    double positive_weight = 1.0;
    /// false freezes both bias sets (pair with InitOptions{.biases=false}
    /// for a bias-free network).
    bool update_biases = true;

    void validate() const;  // throws TrainError
};

/// Same shape as the network it differentiates.
struct Gradient {
    std::vector<double> input_to_hidden;
    std::vector<double> context_to_hidden;
    std::vector<double> hidden_to_output;
    std::vector<double> hidden_bias;
    double output_bias = 0.0;

    static Gradient zeros(const Topology& topology);

    /// Flat view matching ElmanNetwork::param ordering.
    double param(int index) const;
    void set_param(int index, double value);
};

struct TrainHistory {
    std::vector<double> sse;             // per-epoch sum of sample losses
    std::vector<double> train_accuracy;  // percent, measured at visit time
    std::string stop_reason;             // "max_epochs" or "converged"
};

/// E = 1/2 * (output - target)^2, targets taken from the config (and
/// scaled by positive_weight for positive samples).
double sample_loss(const ElmanNetwork& net, const LabeledWindow& window,
                   const TrainConfig& config = {});

/// Exact gradient of sample_loss, accumulated through every unfold step
/// with tied weights. No truncation.
Gradient bptt_gradients(const ElmanNetwork& net, const LabeledWindow& window,
                        const TrainConfig& config = {});

/// Central differences (E(p+eps) - E(p-eps)) / (2 eps) per parameter.
/// Verification oracle for bptt_gradients; O(param_count) forward passes.
Gradient finite_difference_gradient(const ElmanNetwork& net, const LabeledWindow& window,
                                    double eps, const TrainConfig& config = {});

/// theta <- theta - learning_rate * gradient, in place.
void sgd_update(ElmanNetwork& net, const Gradient& gradient, double learning_rate);

/// Per-sample stochastic gradient descent: each epoch visits the windows
/// in a freshly shuffled order (deterministic in shuffle_seed) and updates
/// after every sample. Throws TrainError on an empty training set.
std::pair<ElmanNetwork, TrainHistory> train(ElmanNetwork net,
                                            const std::vector<LabeledWindow>& windows,
                                            const TrainConfig& config);

inline constexpr std::string_view kHistoryCsvHeader = "epoch,sse,train_accuracy";
std::string export_history_csv(const TrainHistory& history);
TrainHistory parse_history_csv(std::string_view text);

}  // namespace ridet
