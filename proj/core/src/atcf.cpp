#include "ridet/atcf.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <tuple>

#include "ridet/csv.hpp"
#include "ridet/errors.hpp"

namespace ridet {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

// "141S" -> -14.1, "141N" -> 14.1 (tenths of a degree).
bool decode_lat(std::string_view field, double& out) {
    if (field.size() < 2) return false;
    const char hemi = static_cast<char>(std::toupper(static_cast<unsigned char>(field.back())));
    std::string_view num = field.substr(0, field.size() - 1);
    if (!all_digits(num) || (hemi != 'N' && hemi != 'S')) return false;
    long long tenths = 0;
    if (!csv::parse_int(num, tenths)) return false;
    double value = static_cast<double>(tenths) / 10.0;
    if (value > 90.0) return false;
    out = hemi == 'S' ? -value : value;
    return true;
}

// "1723E" -> 172.3, "0456W" -> 314.4; internal convention is [0, 360)
// so the South Pacific box stays a single interval.
bool decode_lon(std::string_view field, double& out) {
    if (field.size() < 2) return false;
    const char hemi = static_cast<char>(std::toupper(static_cast<unsigned char>(field.back())));
    std::string_view num = field.substr(0, field.size() - 1);
    if (!all_digits(num) || (hemi != 'E' && hemi != 'W')) return false;
    long long tenths = 0;
    if (!csv::parse_int(num, tenths)) return false;
    double value = static_cast<double>(tenths) / 10.0;
    if (value > 360.0) return false;
    out = hemi == 'W' ? 360.0 - value : value;
    if (out >= 360.0) out -= 360.0;
    return true;
}

struct RawRecord {
    std::size_t line = 0;
    TrackPoint point;
};

}  // namespace

ParseResult parse_atcf_bdeck(std::string_view text, const ParseOptions& options) {
    ParseResult result;

    // Group key: (basin code, cyclone number, season label). ATCF cyclone
    // numbers restart every year, and a Dec-Jan cyclone must stay one track.
    std::map<std::tuple<std::string, std::string, int>, std::size_t> group_index;
    std::vector<std::vector<RawRecord>> groups;
    std::vector<std::tuple<std::string, std::string, int>> group_keys;

    const auto all_lines = csv::lines(text);
    std::size_t records = 0;

    auto bad_record = [&](std::size_t line_no, const std::string& message) {
        if (!options.skip_malformed) throw ParseError(message, line_no);
        result.warnings.push_back({line_no, message});
    };

    for (std::size_t i = 0; i < all_lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        const std::string_view line = csv::trim(all_lines[i]);
        if (line.empty()) continue;

        const auto f = csv::fields(line);
        if (f.size() < 9) {
            bad_record(line_no, "expected at least 9 comma-delimited fields, got " +
                                    std::to_string(f.size()));
            continue;
        }

        std::string basin_code(f[0]);
        std::transform(basin_code.begin(), basin_code.end(), basin_code.begin(),
                       [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
        if (basin_code.empty()) {
            bad_record(line_no, "empty basin field");
            continue;
        }
        if (!all_digits(f[1])) {
            bad_record(line_no, "bad cyclone number '" + std::string(f[1]) + "'");
            continue;
        }

        TrackPoint point;
        try {
            point.timestamp = parse_timestamp(f[2]);
        } catch (const ParseError& e) {
            bad_record(line_no, e.what());
            continue;
        }
        if (!decode_lat(f[6], point.lat_deg)) {
            bad_record(line_no, "bad latitude '" + std::string(f[6]) + "'");
            continue;
        }
        if (!decode_lon(f[7], point.lon_deg)) {
            bad_record(line_no, "bad longitude '" + std::string(f[7]) + "'");
            continue;
        }
        long long vmax = 0;
        if (!all_digits(f[8]) || !csv::parse_int(f[8], vmax)) {
            bad_record(line_no, "bad wind intensity '" + std::string(f[8]) + "'");
            continue;
        }
        point.vmax_kt = static_cast<double>(vmax);

        const auto key = std::make_tuple(basin_code, std::string(f[1]), season_year(point.timestamp));
        auto [it, inserted] = group_index.try_emplace(key, groups.size());
        if (inserted) {
            groups.emplace_back();
            group_keys.push_back(key);
        }
        groups[it->second].push_back({line_no, point});
        ++records;
    }

    if (records == 0) {
        result.warnings.push_back({0, "no best-track records found in input"});
        return result;
    }

    for (std::size_t g = 0; g < groups.size(); ++g) {
        auto& recs = groups[g];
        std::stable_sort(recs.begin(), recs.end(), [](const RawRecord& a, const RawRecord& b) {
            return a.point.timestamp < b.point.timestamp;
        });
        // Wind-radii lines repeat a timestamp; keep the first occurrence.
        recs.erase(std::unique(recs.begin(), recs.end(),
                               [](const RawRecord& a, const RawRecord& b) {
                                   return a.point.timestamp == b.point.timestamp;
                               }),
                   recs.end());

        const auto& [basin_code, number, season] = group_keys[g];
        CycloneTrack track;
        track.cyclone_id = basin_code + number + "-" + std::to_string(season);
        track.points.reserve(recs.size());
        for (const auto& r : recs) track.points.push_back(r.point);
        track.basin = classify_basin(track.points.front().lat_deg, track.points.front().lon_deg);
        result.tracks.push_back(std::move(track));
    }

    return result;
}

}  // namespace ridet
