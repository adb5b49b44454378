#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ridet/track.hpp"

namespace ridet {

struct ParseOptions {
    /// Skip malformed records with a warning; false aborts at the first
    /// bad record by throwing ParseError.
    bool skip_malformed = true;
};

struct ParseWarning {
    std::size_t line = 0;  // 1-based; 0 for file-level warnings
    std::string message;
};

struct ParseResult {
    std::vector<CycloneTrack> tracks;
    std::vector<ParseWarning> warnings;
};

/// Parses comma-delimited b-deck best-track records. Fields used: basin
/// code (0), cyclone number (1), datetime YYYYMMDDHH (2), latitude in
/// tenths of a degree plus hemisphere (6), longitude likewise (7), and
/// maximum sustained wind in knots (8). Everything else is ignored.
///
/// Records group into one track per (basin code, cyclone number, season);
/// points are sorted by time and duplicate timestamps collapse to the
/// first occurrence in file order. Tracks appear in first-record order.
ParseResult parse_atcf_bdeck(std::string_view text, const ParseOptions& options = {});

}  // namespace ridet
