#include "ridet/track.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace ridet {

std::string_view to_string(Basin basin) {
    switch (basin) {
        case Basin::SouthPacific: return "SP";
        case Basin::SouthIndian: return "SI";
        case Basin::Other: return "OTHER";
    }
    return "OTHER";
}

Basin basin_from_string(std::string_view name) {
    std::string lower;
    lower.reserve(name.size());
    for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (lower == "sp" || lower == "southpacific") return Basin::SouthPacific;
    if (lower == "si" || lower == "southindian") return Basin::SouthIndian;
    if (lower == "other") return Basin::Other;
    throw std::invalid_argument("unknown basin '" + std::string(name) + "'");
}

bool is_valid(const TrackPoint& point) {
    return point.vmax_kt >= 0.0 && point.lat_deg >= -90.0 && point.lat_deg <= 90.0 &&
           point.lon_deg >= 0.0 && point.lon_deg < 360.0;
}

bool is_valid(const CycloneTrack& track) {
    for (std::size_t i = 0; i < track.points.size(); ++i) {
        if (!is_valid(track.points[i])) return false;
        if (i > 0 && track.points[i].timestamp <= track.points[i - 1].timestamp) return false;
    }
    return true;
}

bool is_contiguous(const CycloneTrack& track) {
    for (std::size_t i = 1; i < track.points.size(); ++i) {
        if (track.points[i].timestamp - track.points[i - 1].timestamp != kStepInterval) return false;
    }
    return true;
}

std::vector<CycloneTrack> split_into_segments(const CycloneTrack& track) {
    std::vector<CycloneTrack> segments;
    if (track.points.empty()) return segments;

    CycloneTrack current{track.cyclone_id, track.basin, {track.points.front()}};
    for (std::size_t i = 1; i < track.points.size(); ++i) {
        if (track.points[i].timestamp - track.points[i - 1].timestamp != kStepInterval) {
            segments.push_back(std::move(current));
            current = CycloneTrack{track.cyclone_id, track.basin, {}};
        }
        current.points.push_back(track.points[i]);
    }
    segments.push_back(std::move(current));

    if (segments.size() > 1) {
        for (std::size_t i = 0; i < segments.size(); ++i) {
            segments[i].cyclone_id += "#" + std::to_string(i + 1);
        }
    }
    return segments;
}

BasinFilter BasinFilter::south_indian() {
    return BasinFilter{
        .lat_min = -30.0,
        .lat_max = 0.0,
        .lon_min = 30.0,
        .lon_max = 130.0,
        .season_months = {11, 12, 1, 2, 3, 4},
        .year_min = 1980,
        .year_max = 2013,
    };
}

BasinFilter BasinFilter::south_pacific() {
    return BasinFilter{
        .lat_min = -30.0,
        .lat_max = 0.0,
        .lon_min = 130.0,
        .lon_max = 230.0,  // 130E eastward to 130W
        .season_months = {11, 12, 1, 2, 3, 4},
        .year_min = 1980,
        .year_max = 2013,
    };
}

bool BasinFilter::contains(double lat_deg, double lon_deg) const {
    return lat_deg >= lat_min && lat_deg <= lat_max && lon_deg >= lon_min && lon_deg < lon_max;
}

Basin classify_basin(double lat_deg, double lon_deg) {
    if (BasinFilter::south_indian().contains(lat_deg, lon_deg)) return Basin::SouthIndian;
    if (BasinFilter::south_pacific().contains(lat_deg, lon_deg)) return Basin::SouthPacific;
    return Basin::Other;
}

}  // namespace ridet
