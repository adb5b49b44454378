#include "ridet/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <thread>

#include "ridet/csv.hpp"
#include "ridet/errors.hpp"
#include "ridet/reference.hpp"
#include "ridet/serialize.hpp"
#include "ridet/track_csv.hpp"

namespace ridet {

namespace {

YearRange parse_year_range(std::string_view value) {
    const auto dash = value.find('-');
    long long first = 0, last = 0;
    if (dash == std::string_view::npos || !csv::parse_int(csv::trim(value.substr(0, dash)), first) ||
        !csv::parse_int(csv::trim(value.substr(dash + 1)), last)) {
        throw std::invalid_argument("bad year range '" + std::string(value) +
                                    "' (expected FIRST-LAST)");
    }
    return YearRange{int(first), int(last)};
}

bool parse_bool(std::string_view value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw std::invalid_argument("bad boolean '" + std::string(value) + "'");
}

double parse_double_or_throw(std::string_view value, std::string_view key) {
    double out = 0.0;
    if (!csv::parse_double(value, out)) {
        throw std::invalid_argument("bad numeric value '" + std::string(value) + "' for " +
                                    std::string(key));
    }
    return out;
}

long long parse_int_or_throw(std::string_view value, std::string_view key) {
    long long out = 0;
    if (!csv::parse_int(value, out)) {
        throw std::invalid_argument("bad integer value '" + std::string(value) + "' for " +
                                    std::string(key));
    }
    return out;
}

std::string fmt(const char* format, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, value);
    return buf;
}

}  // namespace

ExperimentSpec parse_experiment_spec(std::string_view text) {
    ExperimentSpec spec;
    const auto all_lines = csv::lines(text);
    for (std::size_t i = 0; i < all_lines.size(); ++i) {
        std::string_view line = all_lines[i];
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = csv::trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("line " + std::to_string(i + 1) +
                                        ": expected 'key = value'");
        }
        const std::string key{csv::trim(line.substr(0, eq))};
        const std::string value{csv::trim(line.substr(eq + 1))};
        if (value.empty()) {
            throw std::invalid_argument("empty value for key '" + key + "'");
        }

        if (key == "data" || key == "tracks") {
            spec.tracks_path = value;
        } else if (key == "basin") {
            if (value != "sp" && value != "si" && value != "all") {
                throw std::invalid_argument("basin must be sp, si, or all");
            }
            spec.basin = value;
        } else if (key == "strategy") {
            spec.strategy = Strategy::from_string(value);
        } else if (key == "hidden") {
            spec.hidden_override = int(parse_int_or_throw(value, key));
        } else if (key == "train_years") {
            spec.train_years = parse_year_range(value);
        } else if (key == "test_years") {
            spec.test_years = parse_year_range(value);
        } else if (key == "n_runs") {
            spec.n_runs = int(parse_int_or_throw(value, key));
        } else if (key == "base_seed") {
            spec.base_seed = std::uint64_t(parse_int_or_throw(value, key));
        } else if (key == "learning_rate") {
            spec.train.learning_rate = parse_double_or_throw(value, key);
        } else if (key == "max_epochs") {
            spec.train.max_epochs = int(parse_int_or_throw(value, key));
        } else if (key == "stop_tolerance") {
            spec.train.stop_tolerance = parse_double_or_throw(value, key);
        } else if (key == "patience") {
            spec.train.patience = int(parse_int_or_throw(value, key));
        } else if (key == "positive_weight") {
            spec.train.positive_weight = parse_double_or_throw(value, key);
        } else if (key == "target_pos") {
            spec.train.target_pos = parse_double_or_throw(value, key);
        } else if (key == "target_neg") {
            spec.train.target_neg = parse_double_or_throw(value, key);
        } else if (key == "update_biases") {
            spec.train.update_biases = parse_bool(value);
        } else if (key == "initial_state") {
            spec.initial_state = parse_double_or_throw(value, key);
        } else if (key == "biases") {
            spec.init_biases = parse_bool(value);
        } else if (key == "threshold") {
            spec.classify_threshold = parse_double_or_throw(value, key);
        } else if (key == "out") {
            spec.out_dir = value;
        } else if (key == "jobs") {
            spec.jobs = int(parse_int_or_throw(value, key));
        } else {
            throw std::invalid_argument("unknown key '" + key + "' in experiment spec");
        }
    }
    if (spec.tracks_path.empty()) {
        throw std::invalid_argument("experiment spec needs a 'data = <tracks csv>' line");
    }
    return spec;
}

ExperimentSpec load_experiment_spec(const std::filesystem::path& path) {
    return parse_experiment_spec(read_file(path));
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    spec.train.validate();
    if (spec.n_runs < 1) throw TrainError("n_runs must be at least 1");
    if (spec.basin != "sp" && spec.basin != "si" && spec.basin != "all") {
        throw std::invalid_argument("basin must be sp, si, or all");
    }

    auto parsed = parse_track_csv(read_file(spec.tracks_path));
    std::vector<CycloneTrack> tracks = std::move(parsed.tracks);
    if (spec.basin != "all") {
        BasinFilter filter = spec.basin == "sp" ? BasinFilter::south_pacific()
                                                : BasinFilter::south_indian();
        filter.year_min = std::min(spec.train_years.first, spec.test_years.first);
        filter.year_max = std::max(spec.train_years.last, spec.test_years.last);
        tracks = filter_tracks(tracks, filter);
    }
    auto [train_tracks, test_tracks] = split_by_years(tracks, spec.train_years, spec.test_years);

    ExperimentResult result;
    result.train_cyclones = train_tracks.size();
    result.test_cyclones = test_tracks.size();

    auto train_raw = extract_windows(train_tracks, spec.strategy.threshold_kt);
    auto test_raw = extract_windows(test_tracks, spec.strategy.threshold_kt);
    if (train_raw.empty()) {
        throw ExtractError("no training windows: need contiguous tracks of at least 9 points in " +
                           std::to_string(spec.train_years.first) + "-" +
                           std::to_string(spec.train_years.last));
    }
    if (test_raw.empty()) {
        throw ExtractError("no test windows: need contiguous tracks of at least 9 points in " +
                           std::to_string(spec.test_years.first) + "-" +
                           std::to_string(spec.test_years.last));
    }
    result.bounds = fit_bounds(train_raw);
    const auto train_windows = normalize_all(train_raw, result.bounds);
    const auto test_windows = normalize_all(test_raw, result.bounds);

    result.train_counts.positive = count_positives(train_windows);
    result.train_counts.negative = train_windows.size() - result.train_counts.positive;
    result.test_counts.positive = count_positives(test_windows);
    result.test_counts.negative = test_windows.size() - result.test_counts.positive;
    result.baseline_accuracy =
        all_negative_accuracy(result.test_counts.positive, result.test_counts.total());

    Topology topology;
    topology.hidden = spec.hidden_override.value_or(spec.strategy.hidden_units);
    topology.unfold_steps = kWindowLen;
    topology.validate();

    struct RunSlot {
        RunResult outcome;
        ElmanNetwork net;
        TrainHistory history;
        std::string error;
        bool ok = false;
    };
    std::vector<RunSlot> slots(std::size_t(spec.n_runs));

    auto execute_run = [&](int run) {
        RunSlot& slot = slots[std::size_t(run)];
        const std::uint64_t seed = spec.base_seed + std::uint64_t(run);
        try {
            TrainConfig config = spec.train;
            config.shuffle_seed = seed;
            auto net = init_weights(topology, seed, {.biases = spec.init_biases});
            net.initial_state = spec.initial_state;
            auto [trained, history] = train(std::move(net), train_windows, config);
            const ConfusionMatrix cm = confusion(trained, test_windows, spec.classify_threshold);
            slot.outcome = RunResult{run,  seed,
                                     accuracy(cm), cm,
                                     history.stop_reason, history.sse.size()};
            slot.net = std::move(trained);
            slot.history = std::move(history);
            slot.ok = true;
        } catch (const std::exception& e) {
            slot.error = "run " + std::to_string(run) + " (seed " + std::to_string(seed) +
                         "): " + e.what();
        }
    };

    const int workers = std::max(1, std::min(spec.jobs, spec.n_runs));
    if (workers == 1) {
        for (int run = 0; run < spec.n_runs; ++run) execute_run(run);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(std::size_t(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                while (true) {
                    const int run = next.fetch_add(1);
                    if (run >= spec.n_runs) break;
                    execute_run(run);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    for (const auto& slot : slots) {
        if (slot.ok) {
            result.runs.push_back(slot.outcome);
        } else {
            result.run_errors.push_back(slot.error);
        }
    }
    if (result.runs.empty()) {
        throw TrainError("all " + std::to_string(spec.n_runs) +
                         " runs failed; first failure: " + result.run_errors.front());
    }

    std::vector<double> accuracies;
    accuracies.reserve(result.runs.size());
    for (const auto& r : result.runs) accuracies.push_back(r.test_accuracy);
    if (accuracies.size() >= 2) {
        result.summary = aggregate_runs(accuracies);
    } else {
        result.summary.accuracies = accuracies;
        result.summary.mean = accuracies.front();
        result.summary.stddev = std::numeric_limits<double>::quiet_NaN();
        result.summary.best_run = 0;
    }
    const RunResult& best = result.runs[result.summary.best_run];
    result.summary.best_confusion = best.cm;
    result.best_net = slots[std::size_t(best.run)].net;
    result.best_history = slots[std::size_t(best.run)].history;

    try {
        result.best_roc = roc(result.best_net, test_windows);
    } catch (const std::invalid_argument& e) {
        result.roc_note = e.what();
    }
    return result;
}

std::string format_experiment_summary(const ExperimentSpec& spec, const ExperimentResult& result) {
    std::string out;
    char buf[256];

    const int hidden = spec.hidden_override.value_or(spec.strategy.hidden_units);
    out += "rapid-intensification detection experiment\n";
    out += "===========================================\n";
    out += "tracks file:     " + spec.tracks_path.string() + "\n";
    out += "basin:           " + spec.basin + "\n";
    std::snprintf(buf, sizeof buf, "strategy:        %s (threshold %g kt, %d hidden units)\n",
                  std::string(to_string(spec.strategy.name)).c_str(), spec.strategy.threshold_kt,
                  hidden);
    out += buf;
    std::snprintf(buf, sizeof buf, "train seasons:   %d-%d (%zu cyclones)\n",
                  spec.train_years.first, spec.train_years.last, result.train_cyclones);
    out += buf;
    std::snprintf(buf, sizeof buf, "test seasons:    %d-%d (%zu cyclones)\n",
                  spec.test_years.first, spec.test_years.last, result.test_cyclones);
    out += buf;
    std::snprintf(buf, sizeof buf, "train windows:   %llu positive / %llu negative (total %llu)\n",
                  (unsigned long long)result.train_counts.positive,
                  (unsigned long long)result.train_counts.negative,
                  (unsigned long long)result.train_counts.total());
    out += buf;
    std::snprintf(buf, sizeof buf, "test windows:    %llu positive / %llu negative (total %llu)\n",
                  (unsigned long long)result.test_counts.positive,
                  (unsigned long long)result.test_counts.negative,
                  (unsigned long long)result.test_counts.total());
    out += buf;
    std::snprintf(buf, sizeof buf, "normalization:   [%s, %s] kt\n",
                  csv::format_double(result.bounds.min_kt).c_str(),
                  csv::format_double(result.bounds.max_kt).c_str());
    out += buf;
    std::snprintf(buf, sizeof buf, "runs:            %d requested, %zu completed (seeds %llu..%llu)\n",
                  spec.n_runs, result.runs.size(), (unsigned long long)spec.base_seed,
                  (unsigned long long)(spec.base_seed + std::uint64_t(spec.n_runs) - 1));
    out += buf;
    std::snprintf(buf, sizeof buf, "learning rate:   %g   max epochs: %d\n",
                  spec.train.learning_rate, spec.train.max_epochs);
    out += buf;
    out += "\n";

    if (result.runs.size() >= 2) {
        out += "test accuracy:   " + fmt("%.3f", result.summary.mean) + " +/- " +
               fmt("%.3f", result.summary.stddev) + " %   (mean +/- sample std over " +
               std::to_string(result.runs.size()) + " runs)\n";
    } else {
        out += "test accuracy:   " + fmt("%.3f", result.summary.mean) + " %   (single run)\n";
    }
    out += "all-negative baseline: " + fmt("%.3f", result.baseline_accuracy) +
           " %   (accuracy of predicting no rapid intensification, ever)\n";

    const RunResult& best = result.runs[result.summary.best_run];
    std::snprintf(buf, sizeof buf,
                  "best run:        %d (seed %llu): accuracy %.3f %%, %zu epochs (%s)\n", best.run,
                  (unsigned long long)best.seed, best.test_accuracy, best.epochs,
                  best.stop_reason.c_str());
    out += buf;
    out += "best-run confusion matrix:\n";
    out += format_confusion(best.cm);
    std::snprintf(buf, sizeof buf,
                  "best-run detection: %llu of %llu actual positives flagged, %llu false alarms\n",
                  (unsigned long long)best.cm.tp, (unsigned long long)best.cm.actual_positive(),
                  (unsigned long long)best.cm.fp);
    out += buf;
    if (!result.best_roc.points.empty()) {
        out += "best-run ROC AUC: " + fmt("%.3f", auc(result.best_roc)) + "\n";
    } else if (result.roc_note) {
        out += "ROC skipped: " + *result.roc_note + "\n";
    }

    const Basin basin = spec.basin == "sp"   ? Basin::SouthPacific
                        : spec.basin == "si" ? Basin::SouthIndian
                                             : Basin::Other;
    const auto* ref_acc = reference::accuracy_for(basin, spec.strategy.name);
    const auto* ref_cm = reference::best_confusion_for(basin, spec.strategy.name);
    const auto* ref_counts = reference::counts_for(basin, spec.strategy.name);
    if (ref_acc || ref_cm || ref_counts) {
        out += "\nreference comparison (published results for this configuration):\n";
        if (ref_acc) {
            out += "  mean accuracy: " + fmt("%.3f", ref_acc->mean) + " +/- " +
                   fmt("%.3f", ref_acc->stddev) + " %\n";
        }
        if (ref_counts) {
            std::snprintf(buf, sizeof buf,
                          "  windows: train %llu/%llu, test %llu/%llu (positive/negative)\n",
                          (unsigned long long)ref_counts->train_positive,
                          (unsigned long long)ref_counts->train_negative,
                          (unsigned long long)ref_counts->test_positive,
                          (unsigned long long)ref_counts->test_negative);
            out += buf;
        }
        if (ref_cm) {
            out += "  best-run confusion matrix:\n";
            out += format_confusion(*ref_cm);
            const double ref_best_accuracy = accuracy(*ref_cm);
            out += "  best-run accuracy: " + fmt("%.2f", ref_best_accuracy) + " %\n";
            if (ref_counts && ref_cm->total() != ref_counts->test_total()) {
                std::snprintf(buf, sizeof buf,
                              "  note: the published best-run matrix total (%llu) differs from "
                              "the published test-set total (%llu); the reduction is "
                              "unexplained in the source.\n",
                              (unsigned long long)ref_cm->total(),
                              (unsigned long long)ref_counts->test_total());
                out += buf;
            }
            if (ref_acc && ref_best_accuracy > ref_acc->mean + 10.0 * ref_acc->stddev) {
                out += "  note: the published best-run accuracy sits far above the published "
                       "mean +/- std; the metric behind the mean is not fully specified.\n";
            }
        }
    }

    if (!result.run_errors.empty()) {
        out += "\nWARNING: " + std::to_string(result.run_errors.size()) + " of " +
               std::to_string(spec.n_runs) + " runs failed:\n";
        for (const auto& message : result.run_errors) out += "  " + message + "\n";
    }
    return out;
}

void write_experiment_outputs(const ExperimentSpec& spec, const ExperimentResult& result) {
    std::filesystem::create_directories(spec.out_dir);
    const auto& dir = spec.out_dir;

    std::string runs_csv{kRunsCsvHeader};
    runs_csv.push_back('\n');
    for (const auto& r : result.runs) {
        runs_csv += std::to_string(r.run) + "," + std::to_string(r.seed) + "," +
                    csv::format_double(r.test_accuracy) + "\n";
    }
    write_file(dir / "runs.csv", runs_csv);
    write_file(dir / "summary.txt", format_experiment_summary(spec, result));
    write_file(dir / "bounds.json", bounds_to_json(result.bounds));
    write_file(dir / "best_model.json", network_to_json(result.best_net));
    write_file(dir / "best_history.csv", export_history_csv(result.best_history));
    write_file(dir / "best_confusion.csv", export_confusion_csv(result.summary.best_confusion));
    if (!result.best_roc.points.empty()) {
        write_file(dir / "best_roc.csv", export_roc_csv(result.best_roc));
    }
}

}  // namespace ridet
