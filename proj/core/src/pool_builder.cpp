#include "chronos/pool_builder.hpp"

#include <algorithm>
#include <limits>

#include <json.hpp>

#include "chronos/dedup.hpp"
#include "chronos/errors.hpp"
#include "chronos/generation.hpp"
#include "chronos/metrics.hpp"
#include "chronos/pipeline.hpp"
#include "chronos/questioning.hpp"

namespace chronos {

namespace {

std::string canonical_key(std::vector<std::string> subset) {
    std::sort(subset.begin(), subset.end());
    std::string key;
    for (std::size_t i = 0; i < subset.size(); ++i) {
        if (i) key.push_back('\x1f');
        key += subset[i];
    }
    return key;
}

}  // namespace

GreedySelection greedy_select(const std::vector<std::string>& candidates, std::size_t m,
                              const CiFn& ci) {
    GreedySelection sel;
    std::map<std::string, double> cache;
    const auto eval = [&](const std::vector<std::string>& subset) {
        auto key = canonical_key(subset);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
        ++sel.evaluations;
        const double value = ci(subset);  // may throw; nothing cached then
        cache.emplace(std::move(key), value);
        return value;
    };

    std::vector<bool> used(candidates.size(), false);
    std::vector<bool> failed(candidates.size(), false);
    double current = 0.0;
    bool padding = false;

    while (sel.selected.size() < m) {
        GreedyStep step;
        std::size_t pick = candidates.size();

        if (!padding) {
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < candidates.size(); ++i) {
                if (used[i] || failed[i]) continue;
                auto subset = sel.selected;
                subset.push_back(candidates[i]);
                GreedyMarginal marg{i, 0.0, false};
                try {
                    marg.ci = eval(subset);
                } catch (const Error&) {
                    marg.failed = true;
                    failed[i] = true;
                    step.marginals.push_back(marg);
                    continue;
                }
                step.marginals.push_back(marg);
                if (marg.ci > best) {  // strict: ties keep the earliest index
                    best = marg.ci;
                    pick = i;
                }
            }
            if (pick != candidates.size() && best > current) {
                current = best;
                step.ci = best;
            } else {
                padding = true;  // plateau: no strict improvement remains
                pick = candidates.size();
            }
        }

        if (padding) {
            for (std::size_t i = 0; i < candidates.size(); ++i) {
                if (!used[i] && !failed[i]) {
                    pick = i;
                    break;
                }
            }
            if (pick == candidates.size()) {
                if (!step.marginals.empty()) sel.trace.push_back(std::move(step));
                break;  // nothing left to pad with
            }
            step.padded = true;
            step.ci = current;
        }

        step.chosen = pick;
        used[pick] = true;
        sel.selected.push_back(candidates[pick]);
        sel.trace.push_back(std::move(step));
    }
    return sel;
}

double chrono_informativeness(const std::vector<std::string>& questions, const Topic& topic,
                              std::size_t n, CiDeps deps) {
    if (!topic.reference) {
        throw MissingReference("topic \"" + topic.query + "\" has no reference timeline");
    }
    std::vector<std::vector<Article>> per_query;
    for (const auto& q : questions) {
        auto rw = rewrite_question(deps.gateway, deps.chat, q);
        for (const auto& query : rw.queries) {
            SearchRequest req;
            req.query = query;
            req.cutoff = topic.cutoff;
            req.top_k = static_cast<int>(n);
            try {
                per_query.push_back(deps.search.search(req));
            } catch (const EmptyQuery&) {
                per_query.emplace_back();
            }
        }
    }
    auto docs = dedup_articles({}, merge_ranked(per_query));
    if (docs.size() > n) docs.resize(n);
    if (docs.empty()) return 0.0;  // nothing retrieved, timeline can't score

    auto gen = generate_timeline(deps.gateway, deps.chat, topic.query, docs,
                                 deps.article_word_budget);
    return date_f1(gen.timeline, *topic.reference);
}

std::string pool_build_report_to_json(const PoolBuildReport& report, int indent) {
    nlohmann::json built = nlohmann::json::array();
    for (const auto& b : report.built) {
        built.push_back({
            {"topic", b.topic},
            {"selected", b.selected},
            {"ci", b.ci},
            {"candidates", b.candidates},
            {"evaluations", b.evaluations},
        });
    }
    nlohmann::json skipped = nlohmann::json::array();
    for (const auto& [topic, reason] : report.skipped) {
        skipped.push_back({{"topic", topic}, {"reason", reason}});
    }
    nlohmann::json j = {{"built", built}, {"skipped", skipped}};
    return j.dump(indent) + "\n";
}

PoolBuildResult build_pool(const std::vector<Topic>& topics, const PoolBuildOptions& options,
                           PoolBuildDeps deps) {
    ExamplePool pool(deps.embedder.descriptor(), deps.embedder.dimension());
    PoolBuildReport report;

    for (const auto& topic : topics) {
        try {
            validate_topic(topic);
            if (!topic.reference) {
                throw MissingReference("topic \"" + topic.query + "\" has no reference timeline");
            }
            const auto context = fetch_news_context(deps.search, topic, options.n);

            std::vector<std::string> candidates;
            std::vector<std::string> asked;
            const auto batches =
                (options.candidate_count + options.batch_size - 1) / options.batch_size;
            for (std::size_t b = 0; b < batches; ++b) {
                try {
                    auto batch = self_question(deps.gateway, deps.chat, topic, context, asked, {},
                                               options.batch_size, options.article_word_budget);
                    asked.insert(asked.end(), batch.begin(), batch.end());
                    candidates.insert(candidates.end(), batch.begin(), batch.end());
                } catch (const Error&) {
                    if (candidates.empty()) throw;  // permanent failure, skip topic
                    break;                          // keep the partial candidate set
                }
            }
            if (candidates.size() > options.candidate_count) {
                candidates.resize(options.candidate_count);
            }

            CiDeps ci_deps{deps.gateway, deps.chat, deps.search, options.article_word_budget};
            const auto ci = [&](const std::vector<std::string>& subset) {
                return chrono_informativeness(subset, topic, options.n, ci_deps);
            };
            auto selection = greedy_select(candidates, options.m, ci);
            if (selection.selected.empty()) throw Error("no candidate question was selectable");

            pool.add({topic.query, selection.selected, deps.embedder.embed(topic.query)});
            report.built.push_back({
                topic.query,
                selection.selected,
                selection.trace.empty() ? 0.0 : selection.trace.back().ci,
                candidates.size(),
                selection.evaluations,
            });
        } catch (const Error& e) {
            report.skipped.emplace_back(topic.query, e.what());
        }
    }
    return {std::move(pool), std::move(report)};
}

}  // namespace chronos
