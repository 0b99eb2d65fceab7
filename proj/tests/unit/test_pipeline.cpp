#include <doctest.h>

#include <algorithm>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "chronos/errors.hpp"
#include "chronos/pipeline.hpp"
#include "chronos/questioning.hpp"
#include "chronos/search.hpp"
#include "scripted.hpp"
#include "session_fixture.hpp"
#include "temp_dir.hpp"

using namespace chronos;
using chronos::test::ScriptedChatBackend;
using chronos::test::SessionFixture;
using chronos::test::counter_clock;
using chronos::test::make_session_fixture;

namespace {

PipelineResult run_fixture(const SessionFixture& fx, const std::string& fixture_path,
                           const PipelineConfig& cfg, std::shared_ptr<ChatBackend> backend,
                           const std::string& transcript = "") {
    FixtureSearchProvider search(fixture_path);
    GatewayOptions opts;
    opts.transcript_path = transcript;
    LlmGateway gateway(std::move(backend), std::move(opts));
    PipelineDeps deps{search, gateway, nullptr, nullptr, counter_clock()};
    return run_pipeline(fx.topic, cfg, deps);
}

std::vector<std::string> dates_of(const Timeline& t) {
    std::vector<std::string> out;
    for (const auto& d : t.distinct_dates()) out.push_back(d.str());
    return out;
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("the scripted session produces the hand-derived result") {
    const auto fx = make_session_fixture();
    test::TempDir dir("session");
    write_text_file(dir.file("fixture.json"), fx.search_fixture_json);
    auto backend = std::make_shared<ScriptedChatBackend>(fx.chat_rules);

    const auto res = run_fixture(fx, dir.file("fixture.json"), fx.config, backend);
    const auto& report = res.report;

    CHECK(dates_of(res.timeline) == fx.final_dates);
    REQUIRE(res.timeline.events().size() == fx.final_summaries.size());
    for (std::size_t i = 0; i < fx.final_summaries.size(); ++i) {
        CHECK(res.timeline.events()[i].summary == fx.final_summaries[i]);
    }

    CHECK(report.topic == fx.topic.query);
    CHECK(report.mode == "chronos");
    CHECK(report.m == 5);
    CHECK(report.n == 10);
    CHECK(report.s == 0);
    CHECK(report.rounds == 2);
    CHECK(report.l == 3);
    CHECK_FALSE(report.l_set_from_reference);

    REQUIRE(report.round_reports.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CAPTURE(i);
        const auto& rr = report.round_reports[i];
        CHECK(rr.round == static_cast<int>(i));
        CHECK_FALSE(rr.failed);
        CHECK(rr.docs_retrieved == fx.docs_retrieved[i]);
        CHECK(rr.docs_kept == fx.docs_kept[i]);
        CHECK(rr.events == fx.round_events[i]);
        CHECK(rr.dropped_entries == fx.dropped_entries[i]);
    }
    CHECK(report.round_reports[0].questions.empty());
    CHECK(report.round_reports[1].questions == fx.round1_questions);
    CHECK(report.round_reports[2].questions == fx.round2_questions);
    CHECK(report.round_reports[1].queries ==
          std::vector<std::string>{"r1q1a", "r1q1b", "r1q2a", "r1q2b", "r1q3a", "r1q3b", "r1q4a",
                                   "r1q4b", "r1q5a", "r1q5b"});

    CHECK(report.total_articles == fx.total_articles);
    CHECK(report.merged_distinct_dates == fx.final_dates.size());
    CHECK(report.merge_hallucinated_dropped == fx.hallucinated_dropped);
    CHECK(report.merge_truncated_dates == fx.truncated_dates);
    CHECK_FALSE(report.merge_fallback);
    CHECK(report.llm_calls == fx.llm_calls);
    CHECK(report.llm_cache_hits == 0);
    CHECK(report.warnings.empty());

    REQUIRE(res.round_timelines.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(res.round_timelines[i].events().size() == fx.round_events[i]);
    }
}

TEST_CASE("the scripted session obeys the structural invariants") {
    const auto fx = make_session_fixture();
    test::TempDir dir("session-inv");
    write_text_file(dir.file("fixture.json"), fx.search_fixture_json);
    auto backend = std::make_shared<ScriptedChatBackend>(fx.chat_rules);
    const auto res = run_fixture(fx, dir.file("fixture.json"), fx.config, backend);

    // Document pool is capped at N per round.
    CHECK(res.report.total_articles <=
          fx.config.n * (fx.config.rounds + 1));

    // No question is ever asked twice (up to case and punctuation).
    std::set<std::string> seen;
    for (const auto& rr : res.report.round_reports) {
        for (const auto& q : rr.questions) {
            CHECK(seen.insert(normalize_question(q)).second);
        }
    }

    // Merged dates are a subset of the dates the rounds produced.
    std::set<std::string> round_dates;
    for (const auto& t : res.round_timelines) {
        for (const auto& d : t.distinct_dates()) round_dates.insert(d.str());
    }
    for (const auto& d : res.timeline.distinct_dates()) {
        CHECK(round_dates.contains(d.str()));
    }

    // The output respects the date budget.
    CHECK(res.timeline.distinct_dates().size() <= fx.config.l);
}

TEST_CASE("a recorded session replays byte-identically without a live backend") {
    const auto fx = make_session_fixture();
    test::TempDir dir("session-replay");
    write_text_file(dir.file("fixture.json"), fx.search_fixture_json);
    const auto transcript = dir.file("transcript.jsonl");

    // Recording pass with the scripted backend.
    const auto recorded =
        run_fixture(fx, dir.file("fixture.json"), fx.config,
                    std::make_shared<ScriptedChatBackend>(fx.chat_rules), transcript);

    // Replay passes run against the transcript alone.
    std::vector<std::string> timelines, reports;
    for (int i = 0; i < 3; ++i) {
        const auto res = run_fixture(fx, dir.file("fixture.json"), fx.config,
                                     std::make_shared<ReplayOnlyBackend>(), transcript);
        timelines.push_back(timeline_to_json(res.timeline, 2));
        reports.push_back(run_report_to_json(res.report));
        CHECK(res.report.llm_calls == fx.llm_calls);
        CHECK(res.report.llm_cache_hits == fx.llm_calls);
    }
    CHECK(timelines[0] == timeline_to_json(recorded.timeline, 2));
    CHECK(timelines[1] == timelines[0]);
    CHECK(timelines[2] == timelines[0]);
    CHECK(reports[1] == reports[0]);
    CHECK(reports[2] == reports[0]);
}

TEST_CASE("zero question rounds reduce to the context round") {
    const auto fx = make_session_fixture();
    test::TempDir dir("session-r0");
    write_text_file(dir.file("fixture.json"), fx.search_fixture_json);
    auto cfg = fx.config;
    cfg.rounds = 0;
    auto backend = std::make_shared<ScriptedChatBackend>(fx.chat_rules);

    const auto res = run_fixture(fx, dir.file("fixture.json"), cfg, backend);
    CHECK(dates_of(res.timeline) == std::vector<std::string>{"2024-03-01", "2024-03-05"});
    CHECK(res.report.round_reports.size() == 1);
    CHECK(res.report.llm_calls == 1);  // the context generation; nothing to merge
    CHECK(res.report.total_articles == 10);
    CHECK_FALSE(res.report.merge_fallback);
    CHECK(res.report.merge_truncated_dates == 0);
}

TEST_CASE("an empty context round warns and the session continues") {
    const auto fx = make_session_fixture();
    // Strip the topic query from the fixture so round 0 retrieves nothing.
    auto fixture = nlohmann::json::parse(fx.search_fixture_json);
    fixture.erase(fx.topic.query);
    test::TempDir dir("session-noctx");
    write_text_file(dir.file("fixture.json"), fixture.dump());
    auto backend = std::make_shared<ScriptedChatBackend>(fx.chat_rules);

    const auto res = run_fixture(fx, dir.file("fixture.json"), fx.config, backend);
    const auto& report = res.report;
    REQUIRE(report.round_reports.size() == 3);
    CHECK(report.round_reports[0].docs_kept == 0);
    CHECK(report.round_reports[0].events == 0);
    CHECK_FALSE(report.round_reports[0].failed);
    REQUIRE(!report.warnings.empty());
    CHECK(report.warnings[0].find("empty news context") != std::string::npos);

    // Rounds 1-2 still ran (and ctx02 no longer deduplicates against the
    // missing context pool); 03-01 now counts as hallucinated since no round
    // reported it, and the budget keeps 03-15 (x2) plus the earlier singles.
    CHECK(report.total_articles == 16);
    CHECK(dates_of(res.timeline) ==
          std::vector<std::string>{"2024-03-05", "2024-03-10", "2024-03-15"});
    CHECK(report.merge_hallucinated_dropped == 2);  // 03-01 and 03-25
    CHECK(report.merge_truncated_dates == 1);       // 03-20
}

TEST_CASE("a failed generation round is recorded and skipped") {
    const auto fx = make_session_fixture();
    // Drop the round-2 generation rule: that call now raises a backend error.
    std::vector<ScriptedChatBackend::Rule> rules;
    for (const auto& rule : fx.chat_rules) {
        if (rule.contains != "[r2d01]") rules.push_back(rule);
    }
    test::TempDir dir("session-fail");
    write_text_file(dir.file("fixture.json"), fx.search_fixture_json);
    auto backend = std::make_shared<ScriptedChatBackend>(std::move(rules));

    const auto res = run_fixture(fx, dir.file("fixture.json"), fx.config, backend);
    const auto& report = res.report;
    REQUIRE(report.round_reports.size() == 3);
    CHECK(report.round_reports[2].failed);
    CHECK_FALSE(report.round_reports[2].error.empty());
    CHECK(report.round_reports[2].docs_kept == 5);  // retrieval preceded the failure
    CHECK(res.round_timelines[2].events().empty());
    CHECK(report.total_articles == 25);

    // The merge now sees only rounds 0-1: 03-05 repeats, 03-15 loses its
    // second vote, and both 03-20 and 03-25 become hallucinations.
    CHECK(dates_of(res.timeline) ==
          std::vector<std::string>{"2024-03-01", "2024-03-05", "2024-03-10"});
    CHECK(report.merge_hallucinated_dropped == 2);
    CHECK(report.merge_truncated_dates == 1);  // 03-15
    CHECK(report.llm_calls == 15);             // the failed call never completed
}

TEST_CASE("a session where every round fails raises an error") {
    const auto fx = make_session_fixture();
    test::TempDir dir("session-allfail");
    write_text_file(dir.file("fixture.json"), fx.search_fixture_json);
    auto backend = std::make_shared<ScriptedChatBackend>();  // no rules at all
    CHECK_THROWS_AS(run_fixture(fx, dir.file("fixture.json"), fx.config, backend), Error);
}

TEST_CASE("budget-matched baselines retrieve exactly the iterative total") {
    const auto fx = make_session_fixture();
    test::TempDir dir("baselines");
    write_text_file(dir.file("fixture.json"), fx.search_fixture_json);

    const auto chronos_res =
        run_fixture(fx, dir.file("fixture.json"), fx.config,
                    std::make_shared<ScriptedChatBackend>(fx.chat_rules));
    REQUIRE(chronos_res.report.total_articles == fx.total_articles);

    auto direct_cfg = fx.config;
    direct_cfg.mode = RunMode::direct;
    direct_cfg.baseline_budget = fx.total_articles;
    const auto direct_res =
        run_fixture(fx, dir.file("fixture.json"), direct_cfg,
                    std::make_shared<ScriptedChatBackend>(fx.chat_rules));
    CHECK(direct_res.report.mode == "direct");
    CHECK(direct_res.report.total_articles == fx.total_articles);
    REQUIRE(direct_res.report.round_reports.size() == 1);
    CHECK(direct_res.report.round_reports[0].queries ==
          std::vector<std::string>{fx.topic.query});
    CHECK(direct_res.report.llm_calls == 1);  // generation only
    CHECK(direct_res.round_timelines.size() == 1);
    CHECK(dates_of(direct_res.timeline) ==
          std::vector<std::string>{"2024-03-01", "2024-03-05"});

    auto rewrite_cfg = fx.config;
    rewrite_cfg.mode = RunMode::rewrite;
    rewrite_cfg.baseline_budget = fx.total_articles;
    const auto rewrite_res =
        run_fixture(fx, dir.file("fixture.json"), rewrite_cfg,
                    std::make_shared<ScriptedChatBackend>(fx.chat_rules));
    CHECK(rewrite_res.report.mode == "rewrite");
    CHECK(rewrite_res.report.total_articles == fx.total_articles);
    REQUIRE(rewrite_res.report.round_reports.size() == 1);
    CHECK(rewrite_res.report.round_reports[0].queries ==
          std::vector<std::string>{"solar storm timeline", "satellite disruption events"});
    CHECK(rewrite_res.report.round_reports[0].docs_retrieved == 30);
    CHECK(rewrite_res.report.round_reports[0].docs_kept == fx.total_articles);
    CHECK(rewrite_res.report.llm_calls == 2);  // rewrite + generation
}

TEST_CASE("baselines default to an n-by-rounds budget") {
    const auto fx = make_session_fixture();
    test::TempDir dir("baseline-default");
    write_text_file(dir.file("fixture.json"), fx.search_fixture_json);

    auto cfg = fx.config;
    cfg.mode = RunMode::direct;  // budget defaults to n*(rounds+1) = 30
    const auto res = run_fixture(fx, dir.file("fixture.json"), cfg,
                                 std::make_shared<ScriptedChatBackend>(fx.chat_rules));
    // The fixture offers 27 in-cutoff articles for the topic query.
    CHECK(res.report.total_articles == 27);
}

TEST_CASE("fetch_news_context dedups, caps, and tags round zero") {
    const auto fx = make_session_fixture();
    test::TempDir dir("ctx");
    write_text_file(dir.file("fixture.json"), fx.search_fixture_json);
    FixtureSearchProvider search(dir.file("fixture.json"));

    const auto docs = fetch_news_context(search, fx.topic, 10);
    REQUIRE(docs.size() == 10);
    CHECK(docs[0].id == "ctx01");
    for (const auto& d : docs) CHECK(d.round == 0);

    const auto all = fetch_news_context(search, fx.topic, 100);
    CHECK(all.size() == 27);  // 26 dated in-cutoff + 1 with an unparseable date
}

}  // TEST_SUITE
