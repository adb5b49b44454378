#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ridet/atcf.hpp"
#include "ridet/track.hpp"

namespace ridet {

/// Simplified interchange format, one row per track point.
inline constexpr std::string_view kTrackCsvHeader =
    "cyclone_id,basin,timestamp,lat_deg,lon_deg,vmax_kt";

/// Requires the exact documented header (a missing column aborts, naming
/// the column). Rows group by cyclone_id in first-appearance order with
/// points sorted by timestamp; duplicate timestamps collapse to the first
/// occurrence. Bad rows follow ParseOptions like the b-deck parser.
ParseResult parse_track_csv(std::string_view text, const ParseOptions& options = {});

std::string export_track_csv(const std::vector<CycloneTrack>& tracks);

}  // namespace ridet
