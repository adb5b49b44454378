#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ridet/bptt.hpp"
#include "ridet/filters.hpp"
#include "ridet/metrics.hpp"
#include "ridet/track.hpp"
#include "ridet/windows.hpp"

namespace ridet {

/// Everything one repeated-runs experiment needs: data, filters, split,
/// topology, training hyperparameters, and the run protocol. Run i uses
/// seed base_seed + i for both weight initialization and shuffling, so
/// every run is individually reproducible.
struct ExperimentSpec {
    std::filesystem::path tracks_path;
    std::string basin = "sp";  // "sp", "si", or "all" (no basin/season filter)
    Strategy strategy = Strategy::preset(Strategy::Name::I);
    std::optional<int> hidden_override;
    YearRange train_years{1985, 2005};
    YearRange test_years{2006, 2013};
    TrainConfig train;
    /// Context value at the start of every window (sigmoid midpoint).
    double initial_state = 0.5;
    /// false initializes biases to zero; combine with
    /// train.update_biases = false for a bias-free network.
    bool init_biases = true;
    int n_runs = 30;
    std::uint64_t base_seed = 1;
    double classify_threshold = 0.5;
    std::filesystem::path out_dir = "results";
    int jobs = 1;  // independent runs executed in parallel
};

/// Flat "key = value" format; '#' starts a comment. Unknown keys abort.
ExperimentSpec parse_experiment_spec(std::string_view text);
ExperimentSpec load_experiment_spec(const std::filesystem::path& path);

struct RunResult {
    int run = 0;
    std::uint64_t seed = 0;
    double test_accuracy = 0.0;  // percent
    ConfusionMatrix cm;
    std::string stop_reason;
    std::size_t epochs = 0;
};

struct WindowCounts {
    std::uint64_t positive = 0;
    std::uint64_t negative = 0;
    std::uint64_t total() const { return positive + negative; }
};

struct ExperimentResult {
    std::size_t train_cyclones = 0;
    std::size_t test_cyclones = 0;
    WindowCounts train_counts;
    WindowCounts test_counts;
    NormalizationBounds bounds;

    std::vector<RunResult> runs;          // successful runs, in run order
    std::vector<std::string> run_errors;  // one message per failed run
    RunSummary summary;                   // over the successful runs
    ElmanNetwork best_net;
    TrainHistory best_history;
    RocCurve best_roc;                 // empty when the test set is single-class
    std::optional<std::string> roc_note;
    double baseline_accuracy = 0.0;  // all-negative classifier on the test set

    bool complete() const { return run_errors.empty() && !runs.empty(); }
};

ExperimentResult run_experiment(const ExperimentSpec& spec);

std::string format_experiment_summary(const ExperimentSpec& spec, const ExperimentResult& result);

/// Writes runs.csv, summary.txt, bounds.json, best_model.json,
/// best_history.csv, best_confusion.csv, and best_roc.csv under
/// spec.out_dir (creating it). Deterministic byte-for-byte given the
/// spec and data.
void write_experiment_outputs(const ExperimentSpec& spec, const ExperimentResult& result);

inline constexpr std::string_view kRunsCsvHeader = "run,seed,accuracy";

}  // namespace ridet
