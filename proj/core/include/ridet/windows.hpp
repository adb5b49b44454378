#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ridet/track.hpp"

namespace ridet {

/// Input points per window (also the unfolding depth of the detector).
inline constexpr int kWindowLen = 5;
/// 24 hours of lookahead at the six-hour cadence.
inline constexpr int kLookaheadSteps = 4;

/// Labeling strategy. Strategy I marks a rise of at least 30 kt within
/// 24 h as positive and pairs with 5 hidden units; Strategy II lowers the
/// threshold to 10 kt, gathering more positives, and pairs with 10.
struct Strategy {
    enum class Name { I, II };

    Name name = Name::I;
    double threshold_kt = 30.0;
    int hidden_units = 5;

    static Strategy preset(Name name);
    static Strategy from_string(std::string_view text);  // "1"/"2"/"I"/"II"
};

std::string_view to_string(Strategy::Name name);

struct LabeledWindow {
    /// Oldest to newest. Raw knots coming out of make_windows; [0,1]
    /// after normalize.
    std::vector<double> inputs;
    bool label = false;  // positive = rapid intensification within the next 24 h
    std::string cyclone_id;
    std::size_t anchor_index = 0;  // index of the last input point in its track

    bool operator==(const LabeledWindow&) const = default;
};

struct NormalizationBounds {
    double min_kt = 0.0;
    double max_kt = 1.0;  // must stay above min_kt

    bool operator==(const NormalizationBounds&) const = default;
};

struct CycloneReport {
    std::string cyclone_id;
    std::size_t duration_steps = 0;
    std::size_t ri_count = 0;

    bool operator==(const CycloneReport&) const = default;
};

/// labels[t] = vmax(t+4) - vmax(t) >= threshold, defined for t in
/// [0, n-5]; the last four points have no 24 h lookahead and get none.
/// Tracks shorter than five points yield an empty list. The track must
/// be contiguous (throws ExtractError otherwise).
std::vector<bool> label_ri_points(const CycloneTrack& track, double threshold_kt);

/// One window per labeled point t with at least window_len - 1 history
/// points: inputs are the raw intensities at [t-window_len+1 .. t].
std::vector<LabeledWindow> make_windows(const CycloneTrack& track,
                                        const std::vector<bool>& labels,
                                        int window_len = kWindowLen);

/// Splits each track into contiguous segments, labels and windows each
/// segment, and concatenates. No window crosses a segment boundary.
std::vector<LabeledWindow> extract_windows(const std::vector<CycloneTrack>& tracks,
                                           double threshold_kt,
                                           int window_len = kWindowLen);

/// Min/max of the raw training intensities, widened by a 5% margin on
/// each side. Fit on training data once and reuse everywhere; test values
/// outside the bounds clamp. Throws ExtractError on an empty set or a
/// degenerate (constant) one.
NormalizationBounds fit_bounds(const std::vector<LabeledWindow>& training_windows);

double normalize_value(double x, const NormalizationBounds& bounds);
LabeledWindow normalize(const LabeledWindow& window, const NormalizationBounds& bounds);
std::vector<LabeledWindow> normalize_all(const std::vector<LabeledWindow>& windows,
                                         const NormalizationBounds& bounds);

/// Per cyclone: total six-hour steps and the number of positively labeled
/// points at the given threshold (segment-aware).
std::vector<CycloneReport> duration_ri_report(const std::vector<CycloneTrack>& tracks,
                                              double threshold_kt);

/// Pearson correlation between duration_steps and ri_count; NaN when
/// fewer than two cyclones or either column is constant.
double duration_ri_correlation(const std::vector<CycloneReport>& reports);

std::size_t count_positives(const std::vector<LabeledWindow>& windows);

inline constexpr std::string_view kWindowCsvHeader =
    "cyclone_id,anchor_index,x1,x2,x3,x4,x5,label";
std::string export_window_csv(const std::vector<LabeledWindow>& windows);
std::vector<LabeledWindow> parse_window_csv(std::string_view text);

inline constexpr std::string_view kReportCsvHeader = "cyclone_id,duration_steps,ri_count";
std::string export_report_csv(const std::vector<CycloneReport>& reports);

}  // namespace ridet
