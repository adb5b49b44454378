#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace ridet {

using TimeStamp = std::chrono::sys_seconds;

/// Best-track records arrive every six hours.
inline constexpr std::chrono::hours kStepInterval{6};

/// Parses "YYYYMMDDHH". Throws ParseError on anything else.
TimeStamp parse_timestamp(std::string_view text);

/// Formats back to "YYYYMMDDHH".
std::string format_timestamp(TimeStamp ts);

int year_of(TimeStamp ts);
int month_of(TimeStamp ts);  // 1..12

/// Austral season label: July-December belong to that calendar year's
/// season, January-June to the previous year's. A November-April season
/// is therefore labeled by its November year.
int season_year(TimeStamp ts);

}  // namespace ridet
