// ridet - rapid-intensification detection toolkit.
//
// Pipeline: ingest best-track data -> extract labeled windows under a
// strategy -> train an Elman network with BPTT -> evaluate -> report.
// The `experiment` subcommand runs the whole repeated-runs protocol from
// one spec file.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ridet/atcf.hpp"
#include "ridet/bptt.hpp"
#include "ridet/csv.hpp"
#include "ridet/errors.hpp"
#include "ridet/experiment.hpp"
#include "ridet/filters.hpp"
#include "ridet/metrics.hpp"
#include "ridet/serialize.hpp"
#include "ridet/track_csv.hpp"
#include "ridet/windows.hpp"

namespace {

constexpr int kExitParse = 2;    // unreadable or malformed input
constexpr int kExitExtract = 3;  // window extraction / normalization failure
constexpr int kExitTrain = 4;    // training failure (including failed runs)

namespace fs = std::filesystem;
using namespace ridet;

void print_warnings(const std::vector<ParseWarning>& warnings) {
    for (const auto& w : warnings) {
        if (w.line > 0) {
            std::cerr << "warning: line " << w.line << ": " << w.message << "\n";
        } else {
            std::cerr << "warning: " << w.message << "\n";
        }
    }
}

YearRange parse_year_range_arg(const std::string& value) {
    const auto dash = value.find('-');
    long long first = 0, last = 0;
    if (dash == std::string::npos || !csv::parse_int(csv::trim(value.substr(0, dash)), first) ||
        !csv::parse_int(csv::trim(value.substr(dash + 1)), last)) {
        throw CLI::ValidationError("year range must look like 1985-2005, got '" + value + "'");
    }
    return YearRange{int(first), int(last)};
}

struct IngestOpts {
    std::string input;
    std::string format = "bdeck";
    std::string basin = "all";
    std::string years;
    std::string out = "tracks.csv";
    bool strict = false;
};

int cmd_ingest(const IngestOpts& opts) {
    const std::string text = read_file(opts.input);
    const ParseOptions parse_opts{.skip_malformed = !opts.strict};
    ParseResult parsed = opts.format == "csv" ? parse_track_csv(text, parse_opts)
                                              : parse_atcf_bdeck(text, parse_opts);
    print_warnings(parsed.warnings);

    std::vector<CycloneTrack> tracks = std::move(parsed.tracks);
    if (opts.basin != "all") {
        BasinFilter filter = opts.basin == "sp" ? BasinFilter::south_pacific()
                                                : BasinFilter::south_indian();
        if (!opts.years.empty()) {
            const YearRange range = parse_year_range_arg(opts.years);
            filter.year_min = range.first;
            filter.year_max = range.last;
        }
        tracks = filter_tracks(tracks, filter);
    }

    write_file(opts.out, export_track_csv(tracks));

    std::map<int, std::size_t> per_season;
    for (const auto& t : tracks) {
        if (!t.points.empty()) ++per_season[season_year(t.points.front().timestamp)];
    }
    std::cout << "cyclones: " << tracks.size() << "\n";
    for (const auto& [season, count] : per_season) {
        std::cout << "  season " << season << ": " << count << "\n";
    }
    std::cout << "wrote " << opts.out << "\n";
    return 0;
}

struct ExtractOpts {
    std::string tracks;
    std::string strategy = "1";
    std::string train_years = "1985-2005";
    std::string test_years = "2006-2013";
    std::string out = ".";
};

int cmd_extract(const ExtractOpts& opts) {
    const Strategy strategy = Strategy::from_string(opts.strategy);
    const YearRange train_range = parse_year_range_arg(opts.train_years);
    const YearRange test_range = parse_year_range_arg(opts.test_years);

    ParseResult parsed = parse_track_csv(read_file(opts.tracks));
    print_warnings(parsed.warnings);

    auto [train_tracks, test_tracks] = split_by_years(parsed.tracks, train_range, test_range);

    const auto train_raw = extract_windows(train_tracks, strategy.threshold_kt);
    const auto test_raw = extract_windows(test_tracks, strategy.threshold_kt);
    const NormalizationBounds bounds = fit_bounds(train_raw);
    const auto train_windows = normalize_all(train_raw, bounds);
    const auto test_windows = normalize_all(test_raw, bounds);

    fs::create_directories(opts.out);
    const fs::path dir{opts.out};
    write_file(dir / "train_windows.csv", export_window_csv(train_windows));
    write_file(dir / "test_windows.csv", export_window_csv(test_windows));
    write_file(dir / "bounds.json", bounds_to_json(bounds));

    std::vector<CycloneTrack> all_tracks = train_tracks;
    all_tracks.insert(all_tracks.end(), test_tracks.begin(), test_tracks.end());
    const auto reports = duration_ri_report(all_tracks, strategy.threshold_kt);
    write_file(dir / "report.csv", export_report_csv(reports));

    const auto train_pos = count_positives(train_windows);
    const auto test_pos = count_positives(test_windows);
    std::printf("Strategy %s (threshold %g kt)\n", std::string(to_string(strategy.name)).c_str(),
                strategy.threshold_kt);
    std::printf("%-14s %9s %9s %9s\n", "Dataset", "Positive", "Negative", "Total");
    std::printf("%-14s %9zu %9zu %9zu\n", "Training Set", train_pos,
                train_windows.size() - train_pos, train_windows.size());
    std::printf("%-14s %9zu %9zu %9zu\n", "Testing Set", test_pos,
                test_windows.size() - test_pos, test_windows.size());

    const double r = duration_ri_correlation(reports);
    std::size_t without_ri = 0;
    for (const auto& rep : reports) {
        if (rep.ri_count == 0) ++without_ri;
    }
    if (std::isnan(r)) {
        std::printf("duration/RI correlation: undefined (%zu cyclones)\n", reports.size());
    } else {
        std::printf("duration/RI correlation: r = %.3f over %zu cyclones (%zu with no RI case)\n",
                    r, reports.size(), without_ri);
    }
    std::cout << "wrote train_windows.csv test_windows.csv bounds.json report.csv under "
              << opts.out << "\n";
    return 0;
}

struct TrainOpts {
    std::string windows;
    std::optional<std::string> strategy;  // explicit flag beats the config file
    std::optional<int> hidden;
    std::uint64_t seed = 1;
    std::string config;
    std::optional<double> learning_rate;
    std::optional<int> max_epochs;
    std::string out = ".";
};

int cmd_train(const TrainOpts& opts) {
    const auto windows = parse_window_csv(read_file(opts.windows));

    TrainConfig config;
    Strategy strategy = Strategy::preset(Strategy::Name::I);
    if (!opts.config.empty()) {
        const ExperimentSpec spec = load_experiment_spec(opts.config);
        config = spec.train;
        strategy = spec.strategy;
    }
    if (opts.strategy) strategy = Strategy::from_string(*opts.strategy);
    if (opts.learning_rate) config.learning_rate = *opts.learning_rate;
    if (opts.max_epochs) config.max_epochs = *opts.max_epochs;
    config.shuffle_seed = opts.seed;

    Topology topology;
    topology.hidden = opts.hidden.value_or(strategy.hidden_units);
    topology.unfold_steps = kWindowLen;

    auto [net, history] = train(init_weights(topology, opts.seed), windows, config);

    fs::create_directories(opts.out);
    const fs::path dir{opts.out};
    write_file(dir / "model.json", network_to_json(net));
    write_file(dir / "history.csv", export_history_csv(history));

    std::printf("trained 1-%d-1 network on %zu windows: %zu epochs (%s)\n", topology.hidden,
                windows.size(), history.sse.size(), history.stop_reason.c_str());
    std::printf("final SSE %.6f, train accuracy %.3f %%\n", history.sse.back(),
                history.train_accuracy.back());
    std::cout << "wrote model.json history.csv under " << opts.out << "\n";
    return 0;
}

struct EvalOpts {
    std::string model;
    std::string windows;
    double threshold = 0.5;
    std::string out;
};

int cmd_eval(const EvalOpts& opts) {
    const ElmanNetwork net = network_from_json(read_file(opts.model));
    const auto windows = parse_window_csv(read_file(opts.windows));
    if (windows.empty()) throw ExtractError("no windows to evaluate");

    const ConfusionMatrix cm = confusion(net, windows, opts.threshold);
    const double baseline = all_negative_accuracy(cm.actual_positive(), cm.total());
    std::printf("windows: %zu (%llu positive)\n", windows.size(),
                (unsigned long long)cm.actual_positive());
    std::cout << format_accuracy_line(accuracy(cm), baseline) << "\n";
    std::cout << format_confusion(cm);

    std::optional<RocCurve> curve;
    try {
        curve = roc(net, windows);
        std::printf("ROC AUC: %.3f\n", auc(*curve));
    } catch (const std::invalid_argument& e) {
        std::cout << "ROC skipped: " << e.what() << "\n";
    }

    if (!opts.out.empty()) {
        fs::create_directories(opts.out);
        const fs::path dir{opts.out};
        write_file(dir / "confusion.csv", export_confusion_csv(cm));
        if (curve) write_file(dir / "roc.csv", export_roc_csv(*curve));
        std::cout << "wrote confusion.csv" << (curve ? " roc.csv" : "") << " under " << opts.out
                  << "\n";
    }
    return 0;
}

struct ReportOpts {
    std::string tracks;
    std::string strategy = "1";
    std::string out = "report.csv";
};

int cmd_report(const ReportOpts& opts) {
    const Strategy strategy = Strategy::from_string(opts.strategy);
    ParseResult parsed = parse_track_csv(read_file(opts.tracks));
    print_warnings(parsed.warnings);

    const auto reports = duration_ri_report(parsed.tracks, strategy.threshold_kt);
    write_file(opts.out, export_report_csv(reports));

    std::size_t without_ri = 0, total_ri = 0;
    for (const auto& rep : reports) {
        if (rep.ri_count == 0) ++without_ri;
        total_ri += rep.ri_count;
    }
    std::printf("cyclones: %zu, RI cases: %zu, cyclones with no RI case: %zu\n", reports.size(),
                total_ri, without_ri);
    const double r = duration_ri_correlation(reports);
    if (std::isnan(r)) {
        std::printf("duration/RI correlation: undefined\n");
    } else {
        std::printf("duration/RI correlation: r = %.3f (count does not scale with duration)\n", r);
    }
    std::cout << "wrote " << opts.out << "\n";
    return 0;
}

struct ExperimentOpts {
    std::string spec;
    std::string tracks;
    std::string basin;
    std::string strategy;
    std::optional<int> runs;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::optional<int> jobs;
};

int cmd_experiment(const ExperimentOpts& opts) {
    ExperimentSpec spec = load_experiment_spec(opts.spec);
    if (!opts.tracks.empty()) spec.tracks_path = opts.tracks;
    if (!opts.basin.empty()) spec.basin = opts.basin;
    if (!opts.strategy.empty()) spec.strategy = Strategy::from_string(opts.strategy);
    if (opts.runs) spec.n_runs = *opts.runs;
    if (opts.seed) spec.base_seed = *opts.seed;
    if (!opts.out.empty()) spec.out_dir = opts.out;
    if (opts.jobs) spec.jobs = *opts.jobs;

    const ExperimentResult result = run_experiment(spec);
    write_experiment_outputs(spec, result);
    std::cout << format_experiment_summary(spec, result);
    std::cout << "wrote outputs under " << spec.out_dir.string() << "\n";

    if (!result.complete()) {
        std::cerr << "error: " << result.run_errors.size() << " of " << spec.n_runs
                  << " runs failed; partial results written\n";
        return kExitTrain;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rapid-intensification detection toolkit"};
    app.require_subcommand(1);

    IngestOpts ingest_opts;
    auto* ingest = app.add_subcommand("ingest", "parse best-track data into the track CSV");
    ingest->add_option("--input,-i", ingest_opts.input, "input file")->required();
    ingest->add_option("--format", ingest_opts.format, "input format")
        ->check(CLI::IsMember({"bdeck", "csv"}))
        ->capture_default_str();
    ingest->add_option("--basin", ingest_opts.basin, "basin preset filter")
        ->check(CLI::IsMember({"sp", "si", "all"}))
        ->capture_default_str();
    ingest->add_option("--years", ingest_opts.years, "season range, e.g. 1980-2013");
    ingest->add_option("--out,-o", ingest_opts.out, "output track CSV")->capture_default_str();
    ingest->add_flag("--strict", ingest_opts.strict, "abort on the first malformed record");

    ExtractOpts extract_opts;
    auto* extract = app.add_subcommand("extract", "build labeled windows from tracks");
    extract->add_option("--tracks,-t", extract_opts.tracks, "track CSV")->required();
    extract->add_option("--strategy,-s", extract_opts.strategy, "labeling strategy")
        ->check(CLI::IsMember({"1", "2"}))
        ->capture_default_str();
    extract->add_option("--train-years", extract_opts.train_years, "training season range")
        ->capture_default_str();
    extract->add_option("--test-years", extract_opts.test_years, "test season range")
        ->capture_default_str();
    extract->add_option("--out,-o", extract_opts.out, "output directory")->capture_default_str();

    TrainOpts train_opts;
    auto* train_cmd = app.add_subcommand("train", "train one detector on a window CSV");
    train_cmd->add_option("--windows,-w", train_opts.windows, "training window CSV")->required();
    train_cmd->add_option("--strategy,-s", train_opts.strategy, "strategy (sets hidden units)")
        ->check(CLI::IsMember({"1", "2"}));
    train_cmd->add_option("--hidden", train_opts.hidden, "hidden units override");
    train_cmd->add_option("--seed", train_opts.seed, "init and shuffle seed")
        ->capture_default_str();
    train_cmd->add_option("--config", train_opts.config, "experiment spec supplying TrainConfig");
    train_cmd->add_option("--learning-rate", train_opts.learning_rate, "learning rate override");
    train_cmd->add_option("--max-epochs", train_opts.max_epochs, "epoch cap override");
    train_cmd->add_option("--out,-o", train_opts.out, "output directory")->capture_default_str();

    EvalOpts eval_opts;
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a model on a window CSV");
    eval_cmd->add_option("--model,-m", eval_opts.model, "model JSON")->required();
    eval_cmd->add_option("--windows,-w", eval_opts.windows, "window CSV")->required();
    eval_cmd->add_option("--threshold", eval_opts.threshold, "decision threshold")
        ->capture_default_str();
    eval_cmd->add_option("--out,-o", eval_opts.out, "directory for confusion.csv / roc.csv");

    ReportOpts report_opts;
    auto* report = app.add_subcommand("report", "per-cyclone duration and RI-case counts");
    report->add_option("--tracks,-t", report_opts.tracks, "track CSV")->required();
    report->add_option("--strategy,-s", report_opts.strategy, "labeling strategy")
        ->check(CLI::IsMember({"1", "2"}))
        ->capture_default_str();
    report->add_option("--out,-o", report_opts.out, "output CSV")->capture_default_str();

    ExperimentOpts exp_opts;
    auto* experiment = app.add_subcommand("experiment", "run the repeated-runs protocol");
    experiment->add_option("--spec,--config", exp_opts.spec, "experiment spec file")->required();
    experiment->add_option("--tracks,-t", exp_opts.tracks, "track CSV override");
    experiment->add_option("--basin", exp_opts.basin, "basin override")
        ->check(CLI::IsMember({"sp", "si", "all"}));
    experiment->add_option("--strategy,-s", exp_opts.strategy, "strategy override")
        ->check(CLI::IsMember({"1", "2"}));
    experiment->add_option("--runs", exp_opts.runs, "number of runs override");
    experiment->add_option("--seed", exp_opts.seed, "base seed override");
    experiment->add_option("--out,-o", exp_opts.out, "output directory override");
    experiment->add_option("--jobs,-j", exp_opts.jobs, "parallel runs");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ingest) return cmd_ingest(ingest_opts);
        if (*extract) return cmd_extract(extract_opts);
        if (*train_cmd) return cmd_train(train_opts);
        if (*eval_cmd) return cmd_eval(eval_opts);
        if (*report) return cmd_report(report_opts);
        if (*experiment) return cmd_experiment(exp_opts);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ExtractError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitExtract;
    } catch (const TrainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTrain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
