#include "ridet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "ridet/csv.hpp"
#include "ridet/errors.hpp"

namespace ridet {

double accuracy(const ConfusionMatrix& cm) {
    const auto n = cm.total();
    if (n == 0) throw std::invalid_argument("accuracy of an empty confusion matrix");
    return 100.0 * double(cm.tp + cm.tn) / double(n);
}

bool classify(const ElmanNetwork& net, const LabeledWindow& window, double threshold) {
    return forward(net, window.inputs) >= threshold;
}

ConfusionMatrix confusion(const ElmanNetwork& net, const std::vector<LabeledWindow>& windows,
                          double threshold) {
    ConfusionMatrix cm;
    for (const auto& w : windows) {
        const bool predicted = classify(net, w, threshold);
        if (w.label) {
            predicted ? ++cm.tp : ++cm.fn;
        } else {
            predicted ? ++cm.fp : ++cm.tn;
        }
    }
    return cm;
}

RocCurve roc_from_scores(const std::vector<double>& scores, const std::vector<bool>& labels,
                         std::size_t n_thresholds) {
    if (scores.size() != labels.size()) {
        throw std::invalid_argument("scores and labels differ in length");
    }
    std::size_t positives = 0;
    for (bool l : labels) positives += l;
    const std::size_t negatives = labels.size() - positives;
    if (positives == 0) throw std::invalid_argument("ROC needs at least one positive sample");
    if (negatives == 0) throw std::invalid_argument("ROC needs at least one negative sample");

    std::vector<std::pair<double, bool>> ranked(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) ranked[i] = {scores[i], labels[i]};
    std::sort(ranked.begin(), ranked.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });

    // One point per distinct score: the classifier "score >= threshold"
    // evaluated with the threshold at that score.
    std::vector<RocPoint> sweep;
    std::size_t tp = 0, fp = 0;
    std::size_t i = 0;
    while (i < ranked.size()) {
        const double score = ranked[i].first;
        while (i < ranked.size() && ranked[i].first == score) {
            ranked[i].second ? ++tp : ++fp;
            ++i;
        }
        sweep.push_back({score, double(fp) / double(negatives), double(tp) / double(positives)});
    }

    if (n_thresholds > 0 && sweep.size() > n_thresholds) {
        const std::size_t keep = std::max<std::size_t>(n_thresholds, 2);
        std::vector<RocPoint> thinned;
        thinned.reserve(keep);
        const std::size_t last = sweep.size() - 1;
        for (std::size_t k = 0; k < keep; ++k) {
            const std::size_t idx = (k * last) / (keep - 1);
            if (thinned.empty() || thinned.back().threshold != sweep[idx].threshold) {
                thinned.push_back(sweep[idx]);
            }
        }
        sweep = std::move(thinned);
    }

    RocCurve curve;
    curve.points.reserve(sweep.size() + 2);
    curve.points.push_back({ranked.front().first + 1.0, 0.0, 0.0});
    for (const auto& p : sweep) curve.points.push_back(p);
    curve.points.push_back({ranked.back().first - 1.0, 1.0, 1.0});
    return curve;
}

RocCurve roc(const ElmanNetwork& net, const std::vector<LabeledWindow>& windows,
             std::size_t n_thresholds) {
    std::vector<double> scores;
    std::vector<bool> labels;
    scores.reserve(windows.size());
    labels.reserve(windows.size());
    for (const auto& w : windows) {
        scores.push_back(forward(net, w.inputs));
        labels.push_back(w.label);
    }
    return roc_from_scores(scores, labels, n_thresholds);
}

double auc(const RocCurve& curve) {
    double area = 0.0;
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        const auto& a = curve.points[i - 1];
        const auto& b = curve.points[i];
        area += (b.fpr - a.fpr) * (a.tpr + b.tpr) * 0.5;
    }
    return area;
}

RunSummary aggregate_runs(const std::vector<double>& accuracies) {
    if (accuracies.size() < 2) {
        throw std::invalid_argument("aggregate_runs needs at least two runs");
    }
    RunSummary summary;
    summary.accuracies = accuracies;

    double sum = 0.0;
    for (double a : accuracies) sum += a;
    summary.mean = sum / double(accuracies.size());

    double ss = 0.0;
    for (double a : accuracies) {
        const double d = a - summary.mean;
        ss += d * d;
    }
    summary.stddev = std::sqrt(ss / double(accuracies.size() - 1));

    summary.best_run = 0;
    for (std::size_t i = 1; i < accuracies.size(); ++i) {
        if (accuracies[i] > accuracies[summary.best_run]) summary.best_run = i;
    }
    return summary;
}

double all_negative_accuracy(std::uint64_t positives, std::uint64_t total) {
    if (total == 0) throw std::invalid_argument("baseline accuracy of an empty set");
    if (positives > total) throw std::invalid_argument("positives exceed total");
    return 100.0 * double(total - positives) / double(total);
}

std::string format_confusion(const ConfusionMatrix& cm) {
    char buf[256];
    std::string out;
    out += "                    Predicted\n";
    out += "                  Positive   Negative      Total\n";
    std::snprintf(buf, sizeof buf, "Actual Positive %10llu %10llu %10llu\n",
                  (unsigned long long)cm.tp, (unsigned long long)cm.fn,
                  (unsigned long long)cm.actual_positive());
    out += buf;
    std::snprintf(buf, sizeof buf, "Actual Negative %10llu %10llu %10llu\n",
                  (unsigned long long)cm.fp, (unsigned long long)cm.tn,
                  (unsigned long long)cm.actual_negative());
    out += buf;
    std::snprintf(buf, sizeof buf, "Total           %10llu %10llu %10llu\n",
                  (unsigned long long)cm.predicted_positive(),
                  (unsigned long long)cm.predicted_negative(), (unsigned long long)cm.total());
    out += buf;
    return out;
}

std::string format_accuracy_line(double accuracy_percent, double baseline_percent) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "accuracy: %.3f %%   (all-negative baseline: %.3f %%)",
                  accuracy_percent, baseline_percent);
    return buf;
}

std::string export_confusion_csv(const ConfusionMatrix& cm) {
    std::string out{kConfusionCsvHeader};
    out.push_back('\n');
    out += std::to_string(cm.tp) + "," + std::to_string(cm.fn) + "," + std::to_string(cm.fp) +
           "," + std::to_string(cm.tn) + "\n";
    return out;
}

ConfusionMatrix parse_confusion_csv(std::string_view text) {
    const auto all_lines = csv::lines(text);
    if (all_lines.size() < 2 || csv::trim(all_lines[0]) != kConfusionCsvHeader) {
        throw ParseError("confusion CSV header must be exactly '" +
                             std::string(kConfusionCsvHeader) + "'",
                         1);
    }
    const auto f = csv::fields(all_lines[1]);
    unsigned long long tp = 0, fn = 0, fp = 0, tn = 0;
    if (f.size() != 4 || !csv::parse_uint(f[0], tp) || !csv::parse_uint(f[1], fn) ||
        !csv::parse_uint(f[2], fp) || !csv::parse_uint(f[3], tn)) {
        throw ParseError("bad confusion row", 2);
    }
    return ConfusionMatrix{tp, fn, fp, tn};
}

std::string export_roc_csv(const RocCurve& curve) {
    std::string out{kRocCsvHeader};
    out.push_back('\n');
    for (const auto& p : curve.points) {
        out += csv::format_double(p.threshold);
        out.push_back(',');
        out += csv::format_double(p.fpr);
        out.push_back(',');
        out += csv::format_double(p.tpr);
        out.push_back('\n');
    }
    return out;
}

RocCurve parse_roc_csv(std::string_view text) {
    const auto all_lines = csv::lines(text);
    if (all_lines.empty() || csv::trim(all_lines[0]) != kRocCsvHeader) {
        throw ParseError("ROC CSV header must be exactly '" + std::string(kRocCsvHeader) + "'", 1);
    }
    RocCurve curve;
    for (std::size_t i = 1; i < all_lines.size(); ++i) {
        if (csv::trim(all_lines[i]).empty()) continue;
        const auto f = csv::fields(all_lines[i]);
        RocPoint p;
        if (f.size() != 3 || !csv::parse_double(f[0], p.threshold) ||
            !csv::parse_double(f[1], p.fpr) || !csv::parse_double(f[2], p.tpr)) {
            throw ParseError("bad ROC row", i + 1);
        }
        curve.points.push_back(p);
    }
    return curve;
}

}  // namespace ridet
