// Microbenchmarks for the retrieval and metric hot paths.
#include <benchmark/benchmark.h>

#include <random>
#include <sstream>

#include "chronos/bm25.hpp"
#include "chronos/chunk.hpp"
#include "chronos/dedup.hpp"
#include "chronos/metrics.hpp"
#include "chronos/text.hpp"

namespace {

using namespace chronos;

std::vector<std::string> word_bank() {
    return {"bank",    "collapse", "regulator", "deposit", "federal", "investor", "market",
            "silicon", "valley",   "startup",   "crisis",  "rescue",  "protest",  "minister",
            "economy", "election", "storm",     "quake",   "rally",   "verdict",  "launch",
            "summit",  "treaty",   "strike",    "merger",  "probe",   "capital",  "bond"};
}

std::string random_text(std::mt19937& rng, std::size_t words) {
    const auto bank = word_bank();
    std::uniform_int_distribution<std::size_t> pick(0, bank.size() - 1);
    std::ostringstream out;
    for (std::size_t i = 0; i < words; ++i) {
        if (i) out << ' ';
        out << bank[pick(rng)];
    }
    return out.str();
}

CorpusIndex make_index(std::size_t docs, std::size_t words_per_doc) {
    std::mt19937 rng(7);
    std::vector<CorpusIndex::Chunk> chunks;
    for (std::size_t d = 0; d < docs; ++d) {
        const auto text = random_text(rng, words_per_doc);
        const auto articles = chunk_document("doc" + std::to_string(d), text, std::nullopt);
        for (std::size_t i = 0; i < articles.size(); ++i) {
            chunks.push_back({"doc" + std::to_string(d), i, articles[i].body, std::nullopt});
        }
    }
    return CorpusIndex::build(std::move(chunks));
}

Timeline make_timeline(std::mt19937& rng, std::size_t dates, std::size_t words) {
    std::vector<DatedEvent> events;
    for (std::size_t i = 0; i < dates; ++i) {
        events.push_back({EventDate(2023, 1 + (i % 12), 1 + (i % 28)), random_text(rng, words)});
    }
    return Timeline(std::move(events));
}

void BM_Bm25Search(benchmark::State& state) {
    const auto index = make_index(static_cast<std::size_t>(state.range(0)), 600);
    SearchRequest req;
    req.query = "bank collapse rescue regulator";
    req.top_k = 30;
    for (auto _ : state) {
        benchmark::DoNotOptimize(index.search(req));
    }
}
BENCHMARK(BM_Bm25Search)->Arg(100)->Arg(1000);

void BM_IndexBuild(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(make_index(static_cast<std::size_t>(state.range(0)), 600));
    }
}
BENCHMARK(BM_IndexBuild)->Arg(100);

void BM_Tokenize(benchmark::State& state) {
    std::mt19937 rng(11);
    const auto text = random_text(rng, 5000);
    TokenizerConfig cfg;
    cfg.stemming = state.range(0) != 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(tokenize(text, cfg));
    }
}
BENCHMARK(BM_Tokenize)->Arg(0)->Arg(1);

void BM_EvaluateTimelines(benchmark::State& state) {
    std::mt19937 rng(13);
    const auto pred = make_timeline(rng, static_cast<std::size_t>(state.range(0)), 25);
    const auto ref = make_timeline(rng, static_cast<std::size_t>(state.range(0)), 25);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate_timelines(pred, ref));
    }
}
BENCHMARK(BM_EvaluateTimelines)->Arg(8)->Arg(23);

void BM_AlignExactAssignment(benchmark::State& state) {
    std::mt19937 rng(17);
    const auto pred = make_timeline(rng, 12, 20);
    const auto ref = make_timeline(rng, static_cast<std::size_t>(state.range(0)), 20);
    for (auto _ : state) {
        benchmark::DoNotOptimize(align_f1(pred, ref, 1));
    }
}
BENCHMARK(BM_AlignExactAssignment)->Arg(12)->Arg(40);

void BM_DedupArticles(benchmark::State& state) {
    std::mt19937 rng(19);
    std::vector<Article> pool, incoming;
    for (int i = 0; i < 100; ++i) {
        Article a;
        a.id = "p" + std::to_string(i);
        a.body = random_text(rng, 400);
        pool.push_back(a);
    }
    for (int i = 0; i < 30; ++i) {
        Article a;
        a.id = "n" + std::to_string(i);
        a.body = i % 3 == 0 ? pool[static_cast<std::size_t>(i)].body : random_text(rng, 400);
        incoming.push_back(a);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(dedup_articles(pool, incoming));
    }
}
BENCHMARK(BM_DedupArticles);

}  // namespace

BENCHMARK_MAIN();
