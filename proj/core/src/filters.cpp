#include "ridet/filters.hpp"

#include <stdexcept>

namespace ridet {

std::vector<CycloneTrack> filter_tracks(const std::vector<CycloneTrack>& tracks,
                                        const BasinFilter& filter) {
    std::vector<CycloneTrack> kept;
    for (const auto& track : tracks) {
        if (track.points.empty()) continue;
        // Whole cyclones belong to a basin and season via their genesis point.
        const TrackPoint& genesis = track.points.front();
        if (!filter.contains(genesis.lat_deg, genesis.lon_deg)) continue;
        if (!filter.season_months.empty() &&
            !filter.season_months.contains(month_of(genesis.timestamp))) {
            continue;
        }
        const int season = season_year(genesis.timestamp);
        if (season < filter.year_min || season > filter.year_max) continue;
        kept.push_back(track);
    }
    return kept;
}

std::pair<std::vector<CycloneTrack>, std::vector<CycloneTrack>> split_by_years(
    const std::vector<CycloneTrack>& tracks, YearRange train_years, YearRange test_years) {
    if (train_years.first > train_years.last || test_years.first > test_years.last) {
        throw std::invalid_argument("inverted year range");
    }
    if (train_years.overlaps(test_years)) {
        throw std::invalid_argument("train and test year ranges overlap");
    }

    std::pair<std::vector<CycloneTrack>, std::vector<CycloneTrack>> out;
    for (const auto& track : tracks) {
        if (track.points.empty()) continue;
        const int season = season_year(track.points.front().timestamp);
        if (train_years.contains(season)) {
            out.first.push_back(track);
        } else if (test_years.contains(season)) {
            out.second.push_back(track);
        }
    }
    return out;
}

}  // namespace ridet
