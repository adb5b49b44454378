#pragma once

#include <utility>
#include <vector>

#include "ridet/track.hpp"

namespace ridet {

struct YearRange {
    int first = 0;
    int last = 0;  // inclusive

    bool contains(int year) const { return year >= first && year <= last; }
    bool overlaps(const YearRange& other) const {
        return first <= other.last && other.first <= last;
    }
};

/// Keeps cyclones whose genesis point (first record) lies inside the box
/// and whose genesis month and season label pass the filter. Idempotent.
std::vector<CycloneTrack> filter_tracks(const std::vector<CycloneTrack>& tracks,
                                        const BasinFilter& filter);

/// Partitions by season label; cyclones outside both ranges are dropped.
/// Throws std::invalid_argument when the ranges overlap or are inverted.
std::pair<std::vector<CycloneTrack>, std::vector<CycloneTrack>> split_by_years(
    const std::vector<CycloneTrack>& tracks, YearRange train_years, YearRange test_years);

}  // namespace ridet
