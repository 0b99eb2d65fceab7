#include "chronos/pipeline.hpp"

#include <chrono>

#include <json.hpp>

#include "chronos/dedup.hpp"
#include "chronos/errors.hpp"
#include "chronos/questioning.hpp"

namespace chronos {

namespace {

std::int64_t real_clock_ms() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

nlohmann::json round_report_to_json(const RoundReport& r) {
    return {
        {"round", r.round},
        {"questions", r.questions},
        {"queries", r.queries},
        {"docs_retrieved", r.docs_retrieved},
        {"docs_kept", r.docs_kept},
        {"events", r.events},
        {"dropped_entries", r.dropped_entries},
        {"failed", r.failed},
        {"error", r.error},
        {"elapsed_ms", r.elapsed_ms},
    };
}

}  // namespace

std::string run_mode_name(RunMode mode) {
    switch (mode) {
        case RunMode::chronos: return "chronos";
        case RunMode::direct: return "direct";
        case RunMode::rewrite: return "rewrite";
    }
    throw Error("unknown run mode");
}

RunMode parse_run_mode(const std::string& name) {
    if (name == "chronos") return RunMode::chronos;
    if (name == "direct") return RunMode::direct;
    if (name == "rewrite") return RunMode::rewrite;
    throw Error("unknown run mode: " + name);
}

std::string run_report_to_json(const RunReport& report, int indent) {
    nlohmann::json rounds = nlohmann::json::array();
    for (const auto& r : report.round_reports) rounds.push_back(round_report_to_json(r));
    nlohmann::json j = {
        {"topic", report.topic},
        {"mode", report.mode},
        {"m", report.m},
        {"n", report.n},
        {"s", report.s},
        {"rounds", report.rounds},
        {"l", report.l},
        {"l_set_from_reference", report.l_set_from_reference},
        {"round_reports", rounds},
        {"total_articles", report.total_articles},
        {"merged_distinct_dates", report.merged_distinct_dates},
        {"merge_hallucinated_dropped", report.merge_hallucinated_dropped},
        {"merge_truncated_dates", report.merge_truncated_dates},
        {"merge_fallback", report.merge_fallback},
        {"warnings", report.warnings},
        {"llm_calls", report.llm_calls},
        {"llm_cache_hits", report.llm_cache_hits},
        {"elapsed_ms", report.elapsed_ms},
    };
    return j.dump(indent) + "\n";
}

std::vector<Article> fetch_news_context(SearchProvider& search, const Topic& topic,
                                        std::size_t n) {
    SearchRequest req;
    req.query = topic.query;
    req.cutoff = topic.cutoff;
    req.top_k = static_cast<int>(n);
    auto hits = search.search(req);
    auto kept = dedup_articles({}, hits);
    if (kept.size() > n) kept.resize(n);
    for (auto& a : kept) a.round = 0;
    return kept;
}

namespace {

struct Session {
    const Topic& topic;
    const PipelineConfig& cfg;
    PipelineDeps& deps;
    std::function<std::int64_t()> clock;
    RunReport& report;

    std::vector<Article> pool_articles;
    std::vector<std::string> asked;
    std::vector<Timeline> round_timelines;

    void context_round() {
        RoundReport rr;
        rr.round = 0;
        const auto t0 = clock();
        try {
            SearchRequest req;
            req.query = topic.query;
            req.cutoff = topic.cutoff;
            req.top_k = static_cast<int>(cfg.n);
            auto hits = deps.search.search(req);
            rr.docs_retrieved = hits.size();
            auto kept = dedup_articles({}, hits);
            if (kept.size() > cfg.n) kept.resize(cfg.n);
            for (auto& a : kept) a.round = 0;
            rr.docs_kept = kept.size();
            pool_articles = std::move(kept);

            Timeline timeline;
            if (pool_articles.empty()) {
                report.warnings.push_back("round 0: empty news context");
            } else if (cfg.context_round_timeline) {
                auto gen = generate_timeline(deps.gateway, cfg.chat, topic.query, pool_articles,
                                             cfg.article_word_budget);
                timeline = std::move(gen.timeline);
                rr.dropped_entries = gen.dropped;
            }
            rr.events = timeline.events().size();
            round_timelines.push_back(std::move(timeline));
        } catch (const Error& e) {
            rr.failed = true;
            rr.error = e.what();
            round_timelines.emplace_back();
            report.warnings.push_back("round 0 failed: " + std::string(e.what()));
        }
        rr.elapsed_ms = clock() - t0;
        report.round_reports.push_back(std::move(rr));
    }

    void question_round(int round) {
        RoundReport rr;
        rr.round = round;
        const auto t0 = clock();
        try {
            std::vector<PoolEntry> examples;
            if (deps.pool && deps.embedder && cfg.s > 0) {
                examples = select_examples(*deps.pool, *deps.embedder, topic.query, cfg.s);
            }
            auto questions = self_question(deps.gateway, cfg.chat, topic, pool_articles, asked,
                                           examples, cfg.m, cfg.article_word_budget);
            rr.questions = questions;
            asked.insert(asked.end(), questions.begin(), questions.end());

            std::vector<std::vector<Article>> per_query;
            for (const auto& q : questions) {
                auto rw = rewrite_question(deps.gateway, cfg.chat, q);
                if (rw.degraded) {
                    report.warnings.push_back("round " + std::to_string(round) +
                                              ": rewrite degraded for: " + q);
                }
                for (auto& query : rw.queries) {
                    rr.queries.push_back(query);
                    SearchRequest req;
                    req.query = query;
                    req.cutoff = topic.cutoff;
                    req.top_k = static_cast<int>(cfg.n);
                    try {
                        per_query.push_back(deps.search.search(req));
                    } catch (const EmptyQuery&) {
                        per_query.emplace_back();  // unsearchable rewrite, skip
                    }
                }
            }

            auto merged = merge_ranked(per_query);
            rr.docs_retrieved = merged.size();
            auto fresh = dedup_articles(pool_articles, merged);
            if (fresh.size() > cfg.n) fresh.resize(cfg.n);
            for (auto& a : fresh) a.round = round;
            rr.docs_kept = fresh.size();
            pool_articles.insert(pool_articles.end(), fresh.begin(), fresh.end());

            Timeline timeline;
            if (fresh.empty()) {
                report.warnings.push_back("round " + std::to_string(round) +
                                          ": no new articles after dedup");
            } else {
                const auto& docs = cfg.cumulative_generation ? pool_articles : fresh;
                auto gen = generate_timeline(deps.gateway, cfg.chat, topic.query, docs,
                                             cfg.article_word_budget);
                timeline = std::move(gen.timeline);
                rr.dropped_entries = gen.dropped;
            }
            rr.events = timeline.events().size();
            round_timelines.push_back(std::move(timeline));
        } catch (const Error& e) {
            rr.failed = true;
            rr.error = e.what();
            round_timelines.emplace_back();
            report.warnings.push_back("round " + std::to_string(round) +
                                      " failed: " + std::string(e.what()));
        }
        rr.elapsed_ms = clock() - t0;
        report.round_reports.push_back(std::move(rr));
    }

    Timeline merge(std::size_t l) {
        std::vector<Timeline> nonempty;
        for (const auto& t : round_timelines) {
            if (!t.events().empty()) nonempty.push_back(t);
        }
        if (nonempty.empty()) {
            throw Error("no round produced a timeline for \"" + topic.query + "\"");
        }
        MergeResult merged;
        if (nonempty.size() == 1) {
            // Nothing to merge across rounds; enforce the budget mechanically.
            auto b = enforce_date_budget(nonempty.front(), l);
            merged.timeline = std::move(b.timeline);
            merged.truncated_dates = b.dropped_dates;
        } else {
            merged = merge_timelines(deps.gateway, cfg.chat, topic.query, nonempty, l);
        }
        report.merge_hallucinated_dropped = merged.hallucinated_dropped;
        report.merge_truncated_dates = merged.truncated_dates;
        report.merge_fallback = merged.fallback;
        return std::move(merged.timeline);
    }
};

Timeline run_baseline(const Topic& topic, const PipelineConfig& cfg, PipelineDeps& deps,
                      const std::function<std::int64_t()>& clock, std::size_t l,
                      RunReport& report, std::vector<Timeline>& round_timelines) {
    const std::size_t budget = cfg.baseline_budget.value_or(cfg.n * (cfg.rounds + 1));
    if (budget == 0) throw Error("baseline document budget is zero");

    RoundReport rr;
    rr.round = 0;
    const auto t0 = clock();

    std::vector<std::vector<Article>> per_query;
    if (cfg.mode == RunMode::direct) {
        rr.queries.push_back(topic.query);
    } else {
        auto rw = rewrite_question(deps.gateway, cfg.chat, topic.query);
        if (rw.degraded) report.warnings.push_back("rewrite degraded for topic query");
        rr.queries = std::move(rw.queries);
    }
    for (const auto& q : rr.queries) {
        SearchRequest req;
        req.query = q;
        req.cutoff = topic.cutoff;
        req.top_k = static_cast<int>(budget);
        per_query.push_back(deps.search.search(req));
    }

    auto merged = merge_ranked(per_query);
    rr.docs_retrieved = merged.size();
    auto kept = dedup_articles({}, merged);
    if (kept.size() > budget) kept.resize(budget);
    for (auto& a : kept) a.round = 0;
    rr.docs_kept = kept.size();
    if (kept.empty()) throw Error("baseline retrieved no documents for \"" + topic.query + "\"");

    auto gen =
        generate_timeline(deps.gateway, cfg.chat, topic.query, kept, cfg.article_word_budget);
    rr.events = gen.timeline.events().size();
    rr.dropped_entries = gen.dropped;
    rr.elapsed_ms = clock() - t0;
    report.round_reports.push_back(std::move(rr));
    report.total_articles = kept.size();

    auto budgeted = enforce_date_budget(gen.timeline, l);
    report.merge_truncated_dates = budgeted.dropped_dates;
    round_timelines.push_back(std::move(gen.timeline));
    return budgeted.timeline;
}

}  // namespace

PipelineResult run_pipeline(const Topic& topic, const PipelineConfig& cfg, PipelineDeps deps) {
    validate_topic(topic);
    auto clock = deps.clock ? deps.clock : real_clock_ms;
    const auto t0 = clock();

    RunReport report;
    report.topic = topic.query;
    report.mode = run_mode_name(cfg.mode);
    report.m = cfg.m;
    report.n = cfg.n;
    report.s = cfg.s;
    report.rounds = cfg.rounds;

    std::size_t l = cfg.l;
    if (cfg.l_from_reference && topic.reference && !topic.reference->events().empty()) {
        l = topic.reference->distinct_dates().size();
        report.l_set_from_reference = true;
    }
    if (l == 0) l = 1;
    report.l = l;

    const auto calls0 = deps.gateway.backend_calls();
    const auto hits0 = deps.gateway.cache_hits();

    PipelineResult result;
    if (cfg.mode == RunMode::chronos) {
        Session session{topic, cfg, deps, clock, report, {}, {}, {}};
        session.context_round();
        for (int r = 1; r <= static_cast<int>(cfg.rounds); ++r) session.question_round(r);
        report.total_articles = session.pool_articles.size();
        result.timeline = session.merge(l);
        result.round_timelines = std::move(session.round_timelines);
    } else {
        result.timeline = run_baseline(topic, cfg, deps, clock, l, report, result.round_timelines);
    }

    report.merged_distinct_dates = result.timeline.distinct_dates().size();
    report.llm_calls = (deps.gateway.backend_calls() - calls0) + (deps.gateway.cache_hits() - hits0);
    report.llm_cache_hits = deps.gateway.cache_hits() - hits0;
    report.elapsed_ms = clock() - t0;
    result.report = std::move(report);
    return result;
}

}  // namespace chronos
