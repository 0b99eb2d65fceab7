#include <doctest.h>

#include <string>
#include <vector>

#include "chronos/errors.hpp"
#include "chronos/timeline.hpp"
#include "temp_dir.hpp"

using namespace chronos;

namespace {

DatedEvent ev(const std::string& date, std::string summary) {
    return {EventDate::parse(date), std::move(summary)};
}

}  // namespace

TEST_SUITE("timelines") {

TEST_CASE("construction sorts, trims, drops empties, dedups") {
    Timeline t({
        ev("2023-02-07", "  rescue teams arrive  "),
        ev("2023-02-06", "quake strikes"),
        ev("2023-02-07", ""),
        ev("2023-02-07", "rescue teams arrive"),  // duplicate after trimming
        ev("2023-02-06", "aftershocks continue"),
        ev("2023-02-07", "   "),
    });
    REQUIRE(t.size() == 3);
    CHECK(t.events()[0] == ev("2023-02-06", "quake strikes"));
    CHECK(t.events()[1] == ev("2023-02-06", "aftershocks continue"));  // stable for equal dates
    CHECK(t.events()[2] == ev("2023-02-07", "rescue teams arrive"));
}

TEST_CASE("distinct dates are deduplicated and ascending") {
    Timeline t({ev("2023-03-02", "b"), ev("2023-03-01", "a"), ev("2023-03-02", "c")});
    const auto dates = t.distinct_dates();
    REQUIRE(dates.size() == 2);
    CHECK(dates[0].str() == "2023-03-01");
    CHECK(dates[1].str() == "2023-03-02");
}

TEST_CASE("stats count dates and mean sentences per date") {
    Timeline t({
        ev("2023-03-01", "One sentence."),
        ev("2023-03-02", "First. Second."),
        ev("2023-03-02", "Third."),
    });
    const auto stats = timeline_stats(t);
    CHECK(stats.date_count == 2);
    // 1 sentence on day one, 3 on day two.
    CHECK(stats.sentences_per_date == doctest::Approx(2.0));

    const auto none = timeline_stats(Timeline{});
    CHECK(none.date_count == 0);
    CHECK(none.sentences_per_date == doctest::Approx(0.0));
}

TEST_CASE("json round-trip preserves events") {
    Timeline t({ev("2023-02-06", "quake strikes"), ev("2023-02-07", "rescue begins")});
    const auto compact = timeline_to_json(t);
    const auto pretty = timeline_to_json(t, 2);
    CHECK(timeline_from_json(compact) == t);
    CHECK(timeline_from_json(pretty) == t);
    CHECK(compact.find("\"start\":\"2023-02-06\"") != std::string::npos);
}

TEST_CASE("from_json validates shape and dates") {
    CHECK_THROWS_AS(timeline_from_json("not json"), SchemaError);
    CHECK_THROWS_AS(timeline_from_json("{\"start\": \"2023-02-06\"}"), SchemaError);
    CHECK_THROWS_AS(timeline_from_json(R"([{"summary": "missing date"}])"), SchemaError);
    CHECK_THROWS_AS(timeline_from_json(R"([{"start": "2023-02-30", "summary": "x"}])"),
                    Error);
    CHECK(timeline_from_json("[]").empty());
}

TEST_CASE("save and load through files") {
    test::TempDir dir("timeline");
    Timeline t({ev("2023-02-06", "quake strikes")});
    const auto path = dir.file("t.json");
    save_timeline(t, path);
    CHECK(load_timeline(path) == t);
    CHECK_THROWS_AS(load_timeline(dir.file("missing.json")), Error);
}

TEST_CASE("trim strips ascii whitespace") {
    CHECK(trim("  a b \n") == "a b");
    CHECK(trim("\t\r\n ") == "");
    CHECK(trim("x") == "x");
}

}  // TEST_SUITE
