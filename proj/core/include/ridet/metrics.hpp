#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ridet/elman.hpp"
#include "ridet/windows.hpp"

namespace ridet {

struct ConfusionMatrix {
    std::uint64_t tp = 0;
    std::uint64_t fn = 0;
    std::uint64_t fp = 0;
    std::uint64_t tn = 0;

    std::uint64_t total() const { return tp + fn + fp + tn; }
    std::uint64_t actual_positive() const { return tp + fn; }
    std::uint64_t actual_negative() const { return fp + tn; }
    std::uint64_t predicted_positive() const { return tp + fp; }
    std::uint64_t predicted_negative() const { return fn + tn; }

    bool operator==(const ConfusionMatrix&) const = default;
};

/// 100 * (tp + tn) / total. Throws std::invalid_argument on an empty matrix.
double accuracy(const ConfusionMatrix& cm);

/// Positive iff the forward output is >= threshold (ties count positive).
bool classify(const ElmanNetwork& net, const LabeledWindow& window, double threshold = 0.5);

ConfusionMatrix confusion(const ElmanNetwork& net, const std::vector<LabeledWindow>& windows,
                          double threshold = 0.5);

struct RocPoint {
    double threshold = 0.0;
    double fpr = 0.0;
    double tpr = 0.0;
};

/// Thresholds strictly decreasing; fpr/tpr nondecreasing from (0,0) to (1,1).
struct RocCurve {
    std::vector<RocPoint> points;
};

/// Sweeps the sorted distinct scores plus sentinels above the maximum and
/// below the minimum. n_thresholds = 0 keeps every distinct score;
/// otherwise the sweep is thinned to about that many points (endpoints
/// kept). Throws std::invalid_argument when either class is missing,
/// naming the missing one.
RocCurve roc_from_scores(const std::vector<double>& scores, const std::vector<bool>& labels,
                         std::size_t n_thresholds = 0);

RocCurve roc(const ElmanNetwork& net, const std::vector<LabeledWindow>& windows,
             std::size_t n_thresholds = 0);

/// Trapezoidal area under (fpr, tpr).
double auc(const RocCurve& curve);

struct RunSummary {
    std::vector<double> accuracies;  // percent, one per run
    double mean = 0.0;
    double stddev = 0.0;       // sample standard deviation
    std::size_t best_run = 0;  // highest accuracy; ties go to the lower index
    /// Filled in by the experiment driver for the best run.
    ConfusionMatrix best_confusion;
};

/// Mean, sample standard deviation, and best-run index. Needs at least
/// two runs (throws std::invalid_argument otherwise).
RunSummary aggregate_runs(const std::vector<double>& accuracies);

/// Accuracy of the classifier that always answers negative: the natural
/// baseline on heavily imbalanced data.
double all_negative_accuracy(std::uint64_t positives, std::uint64_t total);

/// Human-readable actual-by-predicted table with row/column totals.
std::string format_confusion(const ConfusionMatrix& cm);

/// Evaluation reports always pair a model's accuracy with the
/// all-negative baseline so imbalanced results read honestly.
std::string format_accuracy_line(double accuracy_percent, double baseline_percent);

inline constexpr std::string_view kConfusionCsvHeader = "tp,fn,fp,tn";
std::string export_confusion_csv(const ConfusionMatrix& cm);
ConfusionMatrix parse_confusion_csv(std::string_view text);

inline constexpr std::string_view kRocCsvHeader = "threshold,fpr,tpr";
std::string export_roc_csv(const RocCurve& curve);
RocCurve parse_roc_csv(std::string_view text);

}  // namespace ridet
