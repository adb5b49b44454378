#include <doctest.h>

#include <cmath>
#include <random>

#include "ridet/errors.hpp"
#include "ridet/metrics.hpp"
#include "ridet/reference.hpp"

#include "oracles.hpp"

using namespace ridet;

namespace {

// A network that outputs exactly 0.5 for any window.
ElmanNetwork half_net() {
    auto net = init_weights(Topology{1, 5, 1, 5}, 1);
    for (int p = 0; p < net.param_count(); ++p) net.set_param(p, 0.0);
    return net;
}

// Pushes the output close to 0 or 1 regardless of input.
ElmanNetwork biased_net(double output_bias) {
    auto net = half_net();
    net.output_bias = output_bias;
    return net;
}

}  // namespace

TEST_CASE("classify ties count as positive") {
    const auto net = half_net();
    LabeledWindow w;
    w.inputs = {0.2, 0.4, 0.6, 0.8, 1.0};
    CHECK(forward(net, w.inputs) == 0.5);
    CHECK(classify(net, w, 0.5));        // exactly on the threshold
    CHECK(classify(net, w, 0.0));        // threshold 0 accepts everything
    CHECK_FALSE(classify(net, w, 1.1));  // threshold above 1 rejects everything

    std::mt19937_64 gen(41);
    const auto rnet = testutil::random_net(Topology{1, 5, 1, 5}, gen);
    for (int i = 0; i < 50; ++i) {
        const auto rw = testutil::random_window(gen);
        CHECK(classify(rnet, rw, 0.5) == (forward(rnet, rw.inputs) >= 0.5));
    }
}

TEST_CASE("confusion totals and the all-negative predictor") {
    std::mt19937_64 gen(42);
    std::vector<LabeledWindow> windows;
    for (int i = 0; i < 100; ++i) windows.push_back(testutil::random_window(gen));

    const auto cm = confusion(half_net(), windows, 0.5);
    CHECK(cm.total() == windows.size());

    const auto never = confusion(biased_net(-10.0), windows, 0.5);
    CHECK(never.tp == 0);
    CHECK(never.fp == 0);
    CHECK(never.total() == windows.size());
    CHECK(never.actual_positive() == count_positives(windows));

    const auto always = confusion(biased_net(10.0), windows, 0.5);
    CHECK(always.fn == 0);
    CHECK(always.tn == 0);
}

TEST_CASE("accuracy arithmetic and the empty matrix") {
    CHECK(accuracy(ConfusionMatrix{50, 0, 0, 50}) == 100.0);
    CHECK(accuracy(ConfusionMatrix{0, 50, 50, 0}) == 0.0);
    CHECK(accuracy(ConfusionMatrix{1, 1, 1, 1}) == 50.0);
    CHECK_THROWS_AS(accuracy(ConfusionMatrix{}), std::invalid_argument);
}

TEST_CASE("stored best-run reference tables are internally consistent") {
    const ConfusionMatrix sp1 = reference::kSouthPacificStrategyIBest;
    const ConfusionMatrix si1 = reference::kSouthIndianStrategyIBest;
    const ConfusionMatrix sp2 = reference::kSouthPacificStrategyIIBest;
    const ConfusionMatrix si2 = reference::kSouthIndianStrategyIIBest;

    CHECK(sp1.total() == 2008);
    CHECK(si1.total() == 6746);
    CHECK(sp2.total() == 1876);
    CHECK(si2.total() == 6369);

    CHECK(sp2.actual_positive() == 358);
    CHECK(sp2.actual_negative() == 1518);
    CHECK(sp2.predicted_positive() == 116);

    CHECK(accuracy(sp1) == doctest::Approx(99.55).epsilon(0.0001));
    CHECK(accuracy(si1) == doctest::Approx(98.86).epsilon(0.0001));
    CHECK(accuracy(sp2) == doctest::Approx(80.06).epsilon(0.0001));
    CHECK(accuracy(si2) == doctest::Approx(81.90).epsilon(0.0001));

    // The strategy change buys true positives in both basins.
    CHECK(sp2.tp > sp1.tp);
    CHECK(si2.tp > si1.tp);

    REQUIRE(reference::best_confusion_for(Basin::SouthPacific, Strategy::Name::II) != nullptr);
    CHECK(*reference::best_confusion_for(Basin::SouthPacific, Strategy::Name::II) == sp2);
    CHECK(reference::best_confusion_for(Basin::Other, Strategy::Name::I) == nullptr);
    CHECK(reference::counts_for(Basin::SouthPacific, Strategy::Name::II) == nullptr);
    CHECK(reference::accuracy_for(Basin::SouthIndian, Strategy::Name::II)->mean ==
          doctest::Approx(81.736));
}

TEST_CASE("all-negative baseline on the stored test counts") {
    const auto& counts = reference::kSouthPacificStrategyICounts;
    const double baseline = all_negative_accuracy(counts.test_positive, counts.test_total());
    CHECK(baseline == 100.0 * 2002.0 / 2009.0);
    CHECK(baseline == doctest::Approx(99.6516));

    std::mt19937_64 gen(43);
    for (int i = 0; i < 50; ++i) {
        const std::uint64_t total = 1 + gen() % 10000;
        const std::uint64_t positives = gen() % (total + 1);
        CHECK(all_negative_accuracy(positives, total) ==
              100.0 * double(total - positives) / double(total));
    }
    CHECK_THROWS_AS(all_negative_accuracy(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(all_negative_accuracy(5, 4), std::invalid_argument);
}

TEST_CASE("ROC endpoints, monotonicity, and degenerate cases") {
    SUBCASE("perfect separator passes through (0,1) with AUC 1") {
        const std::vector<double> scores{0.9, 0.8, 0.2, 0.1};
        const std::vector<bool> labels{true, true, false, false};
        const auto curve = roc_from_scores(scores, labels);
        CHECK(auc(curve) == 1.0);
        bool hits_corner = false;
        for (const auto& p : curve.points) {
            if (p.fpr == 0.0 && p.tpr == 1.0) hits_corner = true;
        }
        CHECK(hits_corner);
    }
    SUBCASE("constant scores collapse to the diagonal, AUC 1/2") {
        const std::vector<double> scores{0.5, 0.5, 0.5, 0.5};
        const std::vector<bool> labels{true, false, true, false};
        const auto curve = roc_from_scores(scores, labels);
        CHECK(auc(curve) == 0.5);
        CHECK(curve.points.front().fpr == 0.0);
        CHECK(curve.points.front().tpr == 0.0);
        CHECK(curve.points.back().fpr == 1.0);
        CHECK(curve.points.back().tpr == 1.0);
    }
    SUBCASE("single-class input aborts naming the missing class") {
        CHECK_THROWS_WITH_AS(roc_from_scores({0.1, 0.2}, {true, true}),
                             doctest::Contains("negative"), std::invalid_argument);
        CHECK_THROWS_WITH_AS(roc_from_scores({0.1, 0.2}, {false, false}),
                             doctest::Contains("positive"), std::invalid_argument);
    }
    SUBCASE("thresholds strictly decrease while rates never do") {
        std::mt19937_64 gen(44);
        for (int round = 0; round < 50; ++round) {
            std::vector<double> scores;
            std::vector<bool> labels;
            const int n = 2 + int(gen() % 200);
            for (int i = 0; i < n; ++i) {
                // Coarse quantization forces plenty of tied scores.
                scores.push_back(double(gen() % 10) / 10.0);
                labels.push_back(gen() % 3 == 0);
            }
            std::size_t pos = 0;
            for (bool l : labels) pos += l;
            if (pos == 0 || pos == labels.size()) continue;

            const auto curve = roc_from_scores(scores, labels);
            for (std::size_t i = 1; i < curve.points.size(); ++i) {
                CHECK(curve.points[i].threshold < curve.points[i - 1].threshold);
                CHECK(curve.points[i].fpr >= curve.points[i - 1].fpr);
                CHECK(curve.points[i].tpr >= curve.points[i - 1].tpr);
            }
            CHECK(curve.points.front().fpr == 0.0);
            CHECK(curve.points.front().tpr == 0.0);
            CHECK(curve.points.back().fpr == 1.0);
            CHECK(curve.points.back().tpr == 1.0);
            const double area = auc(curve);
            CHECK(area >= 0.0);
            CHECK(area <= 1.0);
        }
    }
    SUBCASE("degenerate thinning request still yields a valid curve") {
        const auto curve =
            roc_from_scores({0.9, 0.8, 0.3, 0.2}, {true, true, false, false}, 1);
        CHECK(curve.points.front().fpr == 0.0);
        CHECK(curve.points.front().tpr == 0.0);
        CHECK(curve.points.back().fpr == 1.0);
        CHECK(curve.points.back().tpr == 1.0);
        for (std::size_t i = 1; i < curve.points.size(); ++i) {
            CHECK(curve.points[i].threshold < curve.points[i - 1].threshold);
        }
    }
    SUBCASE("thinning keeps endpoints and order") {
        std::mt19937_64 gen(45);
        std::vector<double> scores;
        std::vector<bool> labels;
        for (int i = 0; i < 1000; ++i) {
            scores.push_back(testutil::uniform(gen, 0.0, 1.0));
            labels.push_back(i % 2 == 0);
        }
        const auto curve = roc_from_scores(scores, labels, 20);
        CHECK(curve.points.size() <= 22);
        CHECK(curve.points.front().tpr == 0.0);
        CHECK(curve.points.back().tpr == 1.0);
        for (std::size_t i = 1; i < curve.points.size(); ++i) {
            CHECK(curve.points[i].threshold < curve.points[i - 1].threshold);
        }
    }
}

TEST_CASE("AUC equals the pairwise-ranking oracle, ties included") {
    std::mt19937_64 gen(46);
    for (int round = 0; round < 100; ++round) {
        std::vector<double> scores;
        std::vector<bool> labels;
        const int n = 2 + int(gen() % 49);
        for (int i = 0; i < n; ++i) {
            scores.push_back(double(gen() % 8) / 8.0);  // deliberate ties
            labels.push_back(gen() % 2 == 0);
        }
        std::size_t pos = 0;
        for (bool l : labels) pos += l;
        if (pos == 0 || pos == labels.size()) continue;

        const double area = auc(roc_from_scores(scores, labels));
        const double expected = testutil::wmw_auc(scores, labels);
        CHECK(std::abs(area - expected) < 1e-12);
    }
}

TEST_CASE("random scores on balanced labels give AUC near 1/2") {
    std::mt19937_64 gen(47);
    std::vector<double> scores;
    std::vector<bool> labels;
    for (int i = 0; i < 10000; ++i) {
        scores.push_back(testutil::uniform(gen, 0.0, 1.0));
        labels.push_back(i % 2 == 0);
    }
    const double area = auc(roc_from_scores(scores, labels));
    CHECK(area == doctest::Approx(0.5).epsilon(0.1));
    CHECK(std::abs(area - 0.5) < 0.05);
}

TEST_CASE("aggregate_runs statistics") {
    SUBCASE("constant runs have zero spread") {
        const auto s = aggregate_runs({80.0, 80.0, 80.0});
        CHECK(s.mean == 80.0);
        CHECK(s.stddev == 0.0);
        CHECK(s.best_run == 0);
    }
    SUBCASE("two runs: sample std uses n-1") {
        const auto s = aggregate_runs({79.0, 81.0});
        CHECK(s.mean == 80.0);
        CHECK(s.stddev == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
        CHECK(s.best_run == 1);
    }
    SUBCASE("ties go to the lower index") {
        const auto s = aggregate_runs({90.0, 95.0, 95.0});
        CHECK(s.best_run == 1);
    }
    SUBCASE("mean stays within the run range") {
        std::mt19937_64 gen(48);
        for (int round = 0; round < 50; ++round) {
            std::vector<double> runs;
            const int n = 2 + int(gen() % 30);
            double lo = 101.0, hi = -1.0;
            for (int i = 0; i < n; ++i) {
                runs.push_back(testutil::uniform(gen, 0.0, 100.0));
                lo = std::min(lo, runs.back());
                hi = std::max(hi, runs.back());
            }
            const auto s = aggregate_runs(runs);
            CHECK(s.mean >= lo);
            CHECK(s.mean <= hi);
        }
    }
    SUBCASE("fewer than two runs aborts") {
        CHECK_THROWS_AS(aggregate_runs({}), std::invalid_argument);
        CHECK_THROWS_AS(aggregate_runs({97.0}), std::invalid_argument);
    }
}

TEST_CASE("confusion matrix rendering and CSV") {
    const ConfusionMatrix cm{50, 308, 66, 1452};
    const auto table = format_confusion(cm);
    CHECK(table.find("Predicted") != std::string::npos);
    CHECK(table.find("1876") != std::string::npos);  // grand total
    CHECK(table.find("358") != std::string::npos);   // actual-positive row total

    CHECK(export_confusion_csv(cm) == "tp,fn,fp,tn\n50,308,66,1452\n");
    CHECK(parse_confusion_csv(export_confusion_csv(cm)) == cm);
    CHECK_THROWS_AS(parse_confusion_csv("tp,fn\n1,2\n"), ParseError);
}

TEST_CASE("ROC CSV round trip") {
    const std::vector<double> scores{0.9, 0.7, 0.7, 0.2, 0.1};
    const std::vector<bool> labels{true, false, true, false, false};
    const auto curve = roc_from_scores(scores, labels);
    const auto parsed = parse_roc_csv(export_roc_csv(curve));
    REQUIRE(parsed.points.size() == curve.points.size());
    for (std::size_t i = 0; i < parsed.points.size(); ++i) {
        CHECK(parsed.points[i].threshold == curve.points[i].threshold);
        CHECK(parsed.points[i].fpr == curve.points[i].fpr);
        CHECK(parsed.points[i].tpr == curve.points[i].tpr);
    }
}

TEST_CASE("row sums are threshold-invariant, predicted positives shrink") {
    std::mt19937_64 gen(49);
    const auto net = testutil::random_net(Topology{1, 5, 1, 5}, gen);
    std::vector<LabeledWindow> windows;
    for (int i = 0; i < 200; ++i) windows.push_back(testutil::random_window(gen));

    const auto base = confusion(net, windows, 0.0);
    std::uint64_t last_predicted_positive = windows.size() + 1;
    for (double threshold : {0.0, 0.25, 0.5, 0.75, 1.01}) {
        const auto cm = confusion(net, windows, threshold);
        CHECK(cm.actual_positive() == base.actual_positive());
        CHECK(cm.actual_negative() == base.actual_negative());
        CHECK(cm.predicted_positive() <= last_predicted_positive);
        last_predicted_positive = cm.predicted_positive();
    }
}
