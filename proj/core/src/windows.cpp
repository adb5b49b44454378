#include "ridet/windows.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ridet/csv.hpp"
#include "ridet/errors.hpp"

namespace ridet {

Strategy Strategy::preset(Name name) {
    if (name == Name::I) return Strategy{Name::I, 30.0, 5};
    return Strategy{Name::II, 10.0, 10};
}

Strategy Strategy::from_string(std::string_view text) {
    if (text == "1" || text == "I" || text == "i") return preset(Name::I);
    if (text == "2" || text == "II" || text == "ii") return preset(Name::II);
    throw std::invalid_argument("unknown strategy '" + std::string(text) + "' (expected 1 or 2)");
}

std::string_view to_string(Strategy::Name name) {
    return name == Strategy::Name::I ? "I" : "II";
}

std::vector<bool> label_ri_points(const CycloneTrack& track, double threshold_kt) {
    if (!is_contiguous(track)) {
        throw ExtractError("track '" + track.cyclone_id +
                           "' has gaps; split it into contiguous segments first");
    }
    const std::size_t n = track.points.size();
    std::vector<bool> labels;
    if (n < std::size_t(kLookaheadSteps) + 1) return labels;

    labels.reserve(n - kLookaheadSteps);
    for (std::size_t t = 0; t + kLookaheadSteps < n; ++t) {
        const double change = track.points[t + kLookaheadSteps].vmax_kt - track.points[t].vmax_kt;
        labels.push_back(change >= threshold_kt);
    }
    return labels;
}

std::vector<LabeledWindow> make_windows(const CycloneTrack& track,
                                        const std::vector<bool>& labels, int window_len) {
    if (window_len < 1) throw std::invalid_argument("window_len must be at least 1");
    const std::size_t n = track.points.size();
    const std::size_t expected = n > std::size_t(kLookaheadSteps) ? n - kLookaheadSteps : 0;
    if (labels.size() != expected) {
        throw std::invalid_argument("labels do not match the track: got " +
                                    std::to_string(labels.size()) + ", expected " +
                                    std::to_string(expected));
    }

    std::vector<LabeledWindow> windows;
    for (std::size_t t = window_len - 1; t < labels.size(); ++t) {
        LabeledWindow w;
        w.inputs.reserve(window_len);
        for (std::size_t i = t + 1 - window_len; i <= t; ++i) {
            w.inputs.push_back(track.points[i].vmax_kt);
        }
        w.label = labels[t];
        w.cyclone_id = track.cyclone_id;
        w.anchor_index = t;
        windows.push_back(std::move(w));
    }
    return windows;
}

std::vector<LabeledWindow> extract_windows(const std::vector<CycloneTrack>& tracks,
                                           double threshold_kt, int window_len) {
    std::vector<LabeledWindow> windows;
    for (const auto& track : tracks) {
        for (const auto& segment : split_into_segments(track)) {
            const auto labels = label_ri_points(segment, threshold_kt);
            auto segment_windows = make_windows(segment, labels, window_len);
            windows.insert(windows.end(), std::make_move_iterator(segment_windows.begin()),
                           std::make_move_iterator(segment_windows.end()));
        }
    }
    return windows;
}

NormalizationBounds fit_bounds(const std::vector<LabeledWindow>& training_windows) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& w : training_windows) {
        for (double x : w.inputs) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
    }
    if (training_windows.empty() || !std::isfinite(lo)) {
        throw ExtractError("cannot fit normalization bounds: no training windows");
    }
    if (hi <= lo) {
        throw ExtractError("cannot fit normalization bounds: all intensities equal (" +
                           csv::format_double(lo) + ")");
    }
    const double margin = 0.05 * (hi - lo);
    return NormalizationBounds{lo - margin, hi + margin};
}

double normalize_value(double x, const NormalizationBounds& bounds) {
    const double scaled = (x - bounds.min_kt) / (bounds.max_kt - bounds.min_kt);
    return std::clamp(scaled, 0.0, 1.0);
}

LabeledWindow normalize(const LabeledWindow& window, const NormalizationBounds& bounds) {
    if (bounds.max_kt <= bounds.min_kt) {
        throw std::invalid_argument("invalid normalization bounds: max <= min");
    }
    LabeledWindow out = window;
    for (double& x : out.inputs) x = normalize_value(x, bounds);
    return out;
}

std::vector<LabeledWindow> normalize_all(const std::vector<LabeledWindow>& windows,
                                         const NormalizationBounds& bounds) {
    std::vector<LabeledWindow> out;
    out.reserve(windows.size());
    for (const auto& w : windows) out.push_back(normalize(w, bounds));
    return out;
}

std::vector<CycloneReport> duration_ri_report(const std::vector<CycloneTrack>& tracks,
                                              double threshold_kt) {
    std::vector<CycloneReport> reports;
    reports.reserve(tracks.size());
    for (const auto& track : tracks) {
        CycloneReport report{track.cyclone_id, track.duration_steps(), 0};
        for (const auto& segment : split_into_segments(track)) {
            for (bool positive : label_ri_points(segment, threshold_kt)) {
                if (positive) ++report.ri_count;
            }
        }
        reports.push_back(std::move(report));
    }
    return reports;
}

double duration_ri_correlation(const std::vector<CycloneReport>& reports) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const std::size_t n = reports.size();
    if (n < 2) return nan;

    double mean_d = 0.0, mean_r = 0.0;
    for (const auto& rep : reports) {
        mean_d += double(rep.duration_steps);
        mean_r += double(rep.ri_count);
    }
    mean_d /= double(n);
    mean_r /= double(n);

    double sdd = 0.0, srr = 0.0, sdr = 0.0;
    for (const auto& rep : reports) {
        const double dd = double(rep.duration_steps) - mean_d;
        const double dr = double(rep.ri_count) - mean_r;
        sdd += dd * dd;
        srr += dr * dr;
        sdr += dd * dr;
    }
    if (sdd == 0.0 || srr == 0.0) return nan;
    return sdr / std::sqrt(sdd * srr);
}

std::size_t count_positives(const std::vector<LabeledWindow>& windows) {
    return std::size_t(std::count_if(windows.begin(), windows.end(),
                                     [](const LabeledWindow& w) { return w.label; }));
}

std::string export_window_csv(const std::vector<LabeledWindow>& windows) {
    std::string out{kWindowCsvHeader};
    out.push_back('\n');
    for (const auto& w : windows) {
        if (w.inputs.size() != std::size_t(kWindowLen)) {
            throw std::invalid_argument("window CSV carries exactly " +
                                        std::to_string(kWindowLen) + " inputs per row");
        }
        out += w.cyclone_id;
        out.push_back(',');
        out += std::to_string(w.anchor_index);
        for (double x : w.inputs) {
            out.push_back(',');
            out += csv::format_double(x);
        }
        out.push_back(',');
        out.push_back(w.label ? '1' : '0');
        out.push_back('\n');
    }
    return out;
}

std::vector<LabeledWindow> parse_window_csv(std::string_view text) {
    const auto all_lines = csv::lines(text);
    if (all_lines.empty() || csv::trim(all_lines[0]) != kWindowCsvHeader) {
        throw ParseError("window CSV header must be exactly '" + std::string(kWindowCsvHeader) +
                             "'",
                         1);
    }
    std::vector<LabeledWindow> windows;
    for (std::size_t i = 1; i < all_lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        if (csv::trim(all_lines[i]).empty()) continue;
        const auto f = csv::fields(all_lines[i]);
        if (f.size() != std::size_t(kWindowLen) + 3) {
            throw ParseError("expected " + std::to_string(kWindowLen + 3) + " fields, got " +
                                 std::to_string(f.size()),
                             line_no);
        }
        LabeledWindow w;
        w.cyclone_id = std::string(f[0]);
        unsigned long long anchor = 0;
        if (!csv::parse_uint(f[1], anchor)) {
            throw ParseError("bad anchor_index '" + std::string(f[1]) + "'", line_no);
        }
        w.anchor_index = anchor;
        w.inputs.reserve(kWindowLen);
        for (int k = 0; k < kWindowLen; ++k) {
            double x = 0.0;
            if (!csv::parse_double(f[2 + k], x)) {
                throw ParseError("bad input value '" + std::string(f[2 + k]) + "'", line_no);
            }
            w.inputs.push_back(x);
        }
        if (f.back() == "1") {
            w.label = true;
        } else if (f.back() == "0") {
            w.label = false;
        } else {
            throw ParseError("bad label '" + std::string(f.back()) + "' (expected 0 or 1)",
                             line_no);
        }
        windows.push_back(std::move(w));
    }
    return windows;
}

std::string export_report_csv(const std::vector<CycloneReport>& reports) {
    std::string out{kReportCsvHeader};
    out.push_back('\n');
    for (const auto& r : reports) {
        out += r.cyclone_id;
        out.push_back(',');
        out += std::to_string(r.duration_steps);
        out.push_back(',');
        out += std::to_string(r.ri_count);
        out.push_back('\n');
    }
    return out;
}

}  // namespace ridet
