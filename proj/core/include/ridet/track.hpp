#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ridet/time.hpp"

namespace ridet {

enum class Basin { SouthPacific, SouthIndian, Other };

std::string_view to_string(Basin basin);
Basin basin_from_string(std::string_view name);  // "SP" / "SI" / "OTHER", case-insensitive

struct TrackPoint {
    TimeStamp timestamp{};
    double lat_deg = 0.0;  // south negative
    double lon_deg = 0.0;  // [0, 360)
    double vmax_kt = 0.0;  // nonnegative

    bool operator==(const TrackPoint&) const = default;
};

bool is_valid(const TrackPoint& point);

struct CycloneTrack {
    std::string cyclone_id;
    Basin basin = Basin::Other;
    std::vector<TrackPoint> points;  // ordered, strictly increasing in time

    std::size_t duration_steps() const { return points.size(); }

    bool operator==(const CycloneTrack&) const = default;
};

/// Point validity plus strictly increasing timestamps.
bool is_valid(const CycloneTrack& track);

/// True when every consecutive pair of points is exactly six hours apart.
bool is_contiguous(const CycloneTrack& track);

/// Splits a track at every spacing other than the six-hour cadence.
/// A track that splits gets "#1", "#2", ... appended to the segment ids;
/// an unbroken track keeps its id unchanged.
std::vector<CycloneTrack> split_into_segments(const CycloneTrack& track);

struct BasinFilter {
    double lat_min = -90.0;
    double lat_max = 90.0;
    double lon_min = 0.0;    // inclusive
    double lon_max = 360.0;  // exclusive
    std::set<int> season_months;  // calendar months 1..12; empty accepts all
    int year_min = 0;  // inclusive season labels
    int year_max = 9999;

    /// 0-30S, 30E-130E, November-April seasons 1980-2013.
    static BasinFilter south_indian();
    /// 0-30S, 130E-130W (lon in [130, 230)), November-April seasons 1980-2013.
    static BasinFilter south_pacific();

    bool contains(double lat_deg, double lon_deg) const;
};

/// Basin of a position under the preset boxes; Other when outside both.
Basin classify_basin(double lat_deg, double lon_deg);

}  // namespace ridet
