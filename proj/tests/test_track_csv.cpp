#include <doctest.h>

#include <random>
#include <string>

#include "ridet/errors.hpp"
#include "ridet/track_csv.hpp"

#include "oracles.hpp"

using namespace ridet;

TEST_CASE("one cyclone, six rows, one track") {
    const char* stamps[] = {"1995011000", "1995011006", "1995011012",
                            "1995011018", "1995011100", "1995011106"};
    std::string text{kTrackCsvHeader};
    text += "\n";
    for (int i = 0; i < 6; ++i) {
        text += "SH04-1994,SP," + std::string(stamps[i]) + ",-14.1,172.3," +
                std::to_string(45 + i) + "\n";
    }
    const auto result = parse_track_csv(text);
    REQUIRE(result.tracks.size() == 1);
    CHECK(result.tracks[0].points.size() == 6);
    CHECK(result.tracks[0].basin == Basin::SouthPacific);
    CHECK(result.tracks[0].points[5].vmax_kt == 50.0);
}

TEST_CASE("rows out of time order come back sorted") {
    std::string text{kTrackCsvHeader};
    text +=
        "\n"
        "A,SP,1995011012,-14.1,172.3,55\n"
        "A,SP,1995011000,-14.1,172.3,45\n"
        "A,SP,1995011006,-14.1,172.3,50\n";
    const auto result = parse_track_csv(text);
    REQUIRE(result.tracks.size() == 1);
    CHECK(result.tracks[0].points[0].vmax_kt == 45.0);
    CHECK(result.tracks[0].points[1].vmax_kt == 50.0);
    CHECK(result.tracks[0].points[2].vmax_kt == 55.0);
}

TEST_CASE("missing column aborts naming the column") {
    CHECK_THROWS_WITH_AS(parse_track_csv("cyclone_id,basin,timestamp,lat_deg,lon_deg\nx\n"),
                         doctest::Contains("vmax_kt"), ParseError);
    CHECK_THROWS_WITH_AS(parse_track_csv("basin,timestamp,lat_deg,lon_deg,vmax_kt\nx\n"),
                         doctest::Contains("cyclone_id"), ParseError);
    // Reordered columns are also rejected: the schema is exact.
    CHECK_THROWS_AS(parse_track_csv("basin,cyclone_id,timestamp,lat_deg,lon_deg,vmax_kt\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_track_csv(""), ParseError);
}

TEST_CASE("non-numeric vmax is a record-level error") {
    std::string text{kTrackCsvHeader};
    text +=
        "\n"
        "A,SP,1995011000,-14.1,172.3,45\n"
        "A,SP,1995011006,-14.1,172.3,fast\n";

    SUBCASE("skipped with a warning by default") {
        const auto result = parse_track_csv(text);
        REQUIRE(result.tracks.size() == 1);
        CHECK(result.tracks[0].points.size() == 1);
        REQUIRE(result.warnings.size() == 1);
        CHECK(result.warnings[0].line == 3);
    }
    SUBCASE("aborts in strict mode") {
        CHECK_THROWS_AS(parse_track_csv(text, {.skip_malformed = false}), ParseError);
    }
}

TEST_CASE("out-of-range coordinates are record-level errors") {
    std::string text{kTrackCsvHeader};
    text +=
        "\n"
        "A,SP,1995011000,-95.0,172.3,45\n"
        "A,SP,1995011006,-14.1,360.0,45\n"
        "A,SP,1995011012,-14.1,172.3,-3\n";
    const auto result = parse_track_csv(text);
    CHECK(result.tracks.empty());
    CHECK(result.warnings.size() == 3);
}

TEST_CASE("export then parse is the identity on valid tracks") {
    std::mt19937_64 gen(4321);
    for (int round = 0; round < 40; ++round) {
        std::vector<CycloneTrack> tracks;
        const int n = 1 + int(gen() % 5);
        for (int i = 0; i < n; ++i) {
            auto t = testutil::random_track(gen, 2 + int(gen() % 12), 1985 + int(gen() % 20));
            t.cyclone_id = "C" + std::to_string(round) + "-" + std::to_string(i);
            tracks.push_back(std::move(t));
        }
        const auto result = parse_track_csv(export_track_csv(tracks));
        CHECK(result.warnings.empty());
        REQUIRE(result.tracks.size() == tracks.size());
        CHECK(result.tracks == tracks);
    }
}
