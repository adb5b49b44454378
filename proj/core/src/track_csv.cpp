#include "ridet/track_csv.hpp"

#include <algorithm>
#include <map>

#include "ridet/csv.hpp"
#include "ridet/errors.hpp"

namespace ridet {

namespace {

struct RawRow {
    std::size_t line = 0;
    Basin basin = Basin::Other;
    TrackPoint point;
};

void check_header(std::string_view header_line) {
    const auto actual = csv::fields(header_line);
    const auto expected = csv::fields(kTrackCsvHeader);
    for (const auto& col : expected) {
        if (std::find(actual.begin(), actual.end(), col) == actual.end()) {
            throw ParseError("missing column '" + std::string(col) + "'", 1);
        }
    }
    if (actual != expected) {
        throw ParseError("header must be exactly '" + std::string(kTrackCsvHeader) + "'", 1);
    }
}

}  // namespace

ParseResult parse_track_csv(std::string_view text, const ParseOptions& options) {
    ParseResult result;
    const auto all_lines = csv::lines(text);
    if (all_lines.empty() || csv::trim(all_lines[0]).empty()) {
        throw ParseError("missing column 'cyclone_id': empty input has no header", 1);
    }
    check_header(all_lines[0]);

    auto bad_record = [&](std::size_t line_no, const std::string& message) {
        if (!options.skip_malformed) throw ParseError(message, line_no);
        result.warnings.push_back({line_no, message});
    };

    std::map<std::string, std::size_t, std::less<>> track_index;
    std::vector<std::vector<RawRow>> groups;
    std::vector<std::string> ids;

    for (std::size_t i = 1; i < all_lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        if (csv::trim(all_lines[i]).empty()) continue;
        const auto f = csv::fields(all_lines[i]);
        if (f.size() != 6) {
            bad_record(line_no, "expected 6 fields, got " + std::to_string(f.size()));
            continue;
        }
        if (f[0].empty()) {
            bad_record(line_no, "empty cyclone_id");
            continue;
        }

        RawRow row;
        row.line = line_no;
        try {
            row.basin = basin_from_string(f[1]);
        } catch (const std::invalid_argument& e) {
            bad_record(line_no, e.what());
            continue;
        }
        try {
            row.point.timestamp = parse_timestamp(f[2]);
        } catch (const ParseError& e) {
            bad_record(line_no, e.what());
            continue;
        }
        if (!csv::parse_double(f[3], row.point.lat_deg) || row.point.lat_deg < -90.0 ||
            row.point.lat_deg > 90.0) {
            bad_record(line_no, "bad lat_deg '" + std::string(f[3]) + "'");
            continue;
        }
        if (!csv::parse_double(f[4], row.point.lon_deg) || row.point.lon_deg < 0.0 ||
            row.point.lon_deg >= 360.0) {
            bad_record(line_no, "bad lon_deg '" + std::string(f[4]) + "' (expected [0,360))");
            continue;
        }
        if (!csv::parse_double(f[5], row.point.vmax_kt) || row.point.vmax_kt < 0.0) {
            bad_record(line_no, "bad vmax_kt '" + std::string(f[5]) + "'");
            continue;
        }

        auto [it, inserted] = track_index.try_emplace(std::string(f[0]), groups.size());
        if (inserted) {
            groups.emplace_back();
            ids.emplace_back(f[0]);
        }
        groups[it->second].push_back(std::move(row));
    }

    for (std::size_t g = 0; g < groups.size(); ++g) {
        auto& rows = groups[g];
        std::stable_sort(rows.begin(), rows.end(), [](const RawRow& a, const RawRow& b) {
            return a.point.timestamp < b.point.timestamp;
        });
        rows.erase(std::unique(rows.begin(), rows.end(),
                               [](const RawRow& a, const RawRow& b) {
                                   return a.point.timestamp == b.point.timestamp;
                               }),
                   rows.end());

        CycloneTrack track;
        track.cyclone_id = ids[g];
        track.basin = rows.front().basin;
        track.points.reserve(rows.size());
        for (const auto& r : rows) track.points.push_back(r.point);
        result.tracks.push_back(std::move(track));
    }

    return result;
}

std::string export_track_csv(const std::vector<CycloneTrack>& tracks) {
    std::string out{kTrackCsvHeader};
    out.push_back('\n');
    for (const auto& track : tracks) {
        for (const auto& p : track.points) {
            out += track.cyclone_id;
            out.push_back(',');
            out += to_string(track.basin);
            out.push_back(',');
            out += format_timestamp(p.timestamp);
            out.push_back(',');
            out += csv::format_double(p.lat_deg);
            out.push_back(',');
            out += csv::format_double(p.lon_deg);
            out.push_back(',');
            out += csv::format_double(p.vmax_kt);
            out.push_back('\n');
        }
    }
    return out;
}

}  // namespace ridet
