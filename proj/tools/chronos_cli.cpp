// Command-line front end: run | evaluate | build-pool | index | bench.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>
#include <json.hpp>

#include "chronos/chunk.hpp"
#include "chronos/config.hpp"
#include "chronos/dataset.hpp"
#include "chronos/errors.hpp"
#include "chronos/metrics.hpp"
#include "chronos/pipeline.hpp"
#include "chronos/pool_builder.hpp"
#include "chronos/text.hpp"

namespace {

using namespace chronos;

struct PipelineOverrides {
    std::string mode;
    int rounds = -1;
    int m = -1;
    int n = -1;
    int s = -1;
    int l = -1;
    int nonce = -1;

    void apply(PipelineConfig& cfg) const {
        if (!mode.empty()) cfg.mode = parse_run_mode(mode);
        if (rounds >= 0) cfg.rounds = static_cast<std::size_t>(rounds);
        if (m >= 0) cfg.m = static_cast<std::size_t>(m);
        if (n >= 0) cfg.n = static_cast<std::size_t>(n);
        if (s >= 0) cfg.s = static_cast<std::size_t>(s);
        if (l >= 0) cfg.l = static_cast<std::size_t>(l);
        if (nonce >= 0) cfg.chat.nonce = nonce;
    }
};

void add_override_flags(CLI::App* cmd, PipelineOverrides& ov) {
    cmd->add_option("--mode", ov.mode, "chronos | direct | rewrite");
    cmd->add_option("--rounds", ov.rounds, "self-questioning rounds");
    cmd->add_option("-m", ov.m, "questions per round");
    cmd->add_option("-N", ov.n, "document budget per round");
    cmd->add_option("-s", ov.s, "few-shot examples per questioning call");
    cmd->add_option("-l", ov.l, "output date budget");
    cmd->add_option("--nonce", ov.nonce, "run index; varies the transcript key");
}

TokenizerConfig tokenizer_from_flags(bool stem, bool stopwords, bool keep_case) {
    TokenizerConfig cfg;
    cfg.lowercase = !keep_case;
    cfg.stemming = stem;
    cfg.stopword_removal = stopwords;
    return cfg;
}

int cmd_run(const std::string& config_path, const PipelineOverrides& ov, const std::string& query,
            const std::string& cutoff, const std::string& reference_path,
            const std::string& out_path, const std::string& report_path) {
    auto cfg = load_runner_config(config_path);
    ov.apply(cfg.pipeline);
    auto bundle = make_providers(cfg);

    Topic topic;
    topic.query = query;
    topic.cutoff = EventDate::parse(cutoff);
    if (!reference_path.empty()) topic.reference = load_timeline(reference_path);

    auto deps = bundle.deps();
    auto result = run_pipeline(topic, cfg.pipeline, deps);

    const auto timeline_json = timeline_to_json(result.timeline, 2) + "\n";
    if (out_path.empty()) {
        std::cout << timeline_json;
    } else {
        write_text_file(out_path, timeline_json);
    }
    if (!report_path.empty()) write_text_file(report_path, run_report_to_json(result.report));

    std::cerr << "mode=" << result.report.mode << " articles=" << result.report.total_articles
              << " events=" << result.timeline.events().size()
              << " dates=" << result.report.merged_distinct_dates
              << " warnings=" << result.report.warnings.size() << "\n";
    return 0;
}

int cmd_evaluate(const std::string& pred_path, const std::string& ref_path, bool stem,
                 bool stopwords, bool keep_case, const std::string& out_path) {
    const auto pred = load_timeline(pred_path);
    const auto ref = load_timeline(ref_path);
    const auto report = evaluate_timelines(pred, ref, tokenizer_from_flags(stem, stopwords, keep_case));
    const auto json = report_to_json(report, 2) + "\n";
    if (!out_path.empty()) write_text_file(out_path, json);
    std::cout << report_to_table(report);
    if (out_path.empty()) std::cout << json;
    return 0;
}

int cmd_build_pool(const std::string& config_path, const std::string& topics_path,
                   const std::string& out_path, const std::string& report_path, int m, int n,
                   int candidates) {
    auto cfg = load_runner_config(config_path);
    auto bundle = make_providers(cfg);
    const auto dataset = load_dataset(topics_path, DatasetKind::open_tls);

    PoolBuildOptions options;
    options.m = m > 0 ? static_cast<std::size_t>(m) : cfg.pipeline.m;
    options.n = n > 0 ? static_cast<std::size_t>(n) : cfg.pipeline.n;
    if (candidates > 0) options.candidate_count = static_cast<std::size_t>(candidates);
    options.article_word_budget = cfg.pipeline.article_word_budget;

    PoolBuildDeps deps{*bundle.gateway, cfg.pipeline.chat, *bundle.search, *bundle.embedder};
    auto result = build_pool(dataset.topics, options, deps);
    result.pool.save(out_path);
    const auto report_json = pool_build_report_to_json(result.report);
    if (!report_path.empty()) write_text_file(report_path, report_json);

    std::cerr << "pool entries=" << result.pool.size() << " built=" << result.report.built.size()
              << " skipped=" << result.report.skipped.size() << "\n";
    for (const auto& [topic, reason] : result.report.skipped) {
        std::cerr << "skipped \"" << topic << "\": " << reason << "\n";
    }
    return 0;
}

int cmd_index(const std::string& corpus_path, const std::string& out_dir, int chunk_size) {
    std::vector<CorpusDoc> docs;
    {
        std::ifstream probe(corpus_path);
        if (!probe) throw SchemaError("cannot open corpus " + corpus_path);
    }
    // Reuse the dataset corpus reader by constructing a JSONL loader inline.
    {
        std::ifstream in(corpus_path);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (trim(line).empty()) continue;
            auto j = nlohmann::json::parse(line, nullptr, false);
            if (j.is_discarded() || !j.is_object()) {
                throw SchemaError(corpus_path + ":" + std::to_string(line_no) + ": bad JSON");
            }
            CorpusDoc d;
            d.id = j.at("id").get<std::string>();
            d.title = j.value("title", std::string{});
            d.text = j.at("text").get<std::string>();
            if (j.contains("published") && j["published"].is_string()) {
                d.published = EventDate::try_parse_prefix(j["published"].get<std::string>());
            }
            docs.push_back(std::move(d));
        }
    }
    std::vector<CorpusIndex::Chunk> chunks;
    for (const auto& d : docs) {
        for (const auto& a :
             chunk_document(d.id, d.text, d.published, static_cast<std::size_t>(chunk_size))) {
            CorpusIndex::Chunk c;
            c.doc_id = d.id;
            c.text = a.body;
            c.published = a.published;
            // chunk index is encoded in the article id "doc#k"
            const auto pos = a.id.rfind('#');
            c.chunk_index = static_cast<std::size_t>(std::stoul(a.id.substr(pos + 1)));
            chunks.push_back(std::move(c));
        }
    }
    auto index = CorpusIndex::build(std::move(chunks));
    index.save(out_dir);
    std::cerr << "indexed " << docs.size() << " documents into " << index.size() << " chunks at "
              << out_dir << "\n";
    return 0;
}

struct BenchRow {
    std::string topic;
    MetricReport report;
    std::size_t articles = 0;
};

nlohmann::json mean_metrics(const std::vector<BenchRow>& rows) {
    nlohmann::json j;
    double c1 = 0, c2 = 0, a1 = 0, a2 = 0, l1 = 0, l2 = 0, df = 0;
    for (const auto& r : rows) {
        c1 += r.report.concat_r1;
        c2 += r.report.concat_r2;
        a1 += r.report.agree_r1;
        a2 += r.report.agree_r2;
        l1 += r.report.align_r1;
        l2 += r.report.align_r2;
        df += r.report.date_f1;
    }
    const double n = rows.empty() ? 1.0 : static_cast<double>(rows.size());
    j["concat_r1"] = c1 / n;
    j["concat_r2"] = c2 / n;
    j["agree_r1"] = a1 / n;
    j["agree_r2"] = a2 / n;
    j["align_r1"] = l1 / n;
    j["align_r2"] = l2 / n;
    j["date_f1"] = df / n;
    j["topics"] = rows.size();
    return j;
}

int cmd_bench(const std::string& config_path, const std::string& dataset_path,
              const std::string& kind_name, const std::vector<std::string>& modes,
              const std::vector<int>& sweep_rounds, const std::string& out_path, bool stem,
              bool stopwords, bool keep_case) {
    auto cfg = load_runner_config(config_path);
    const auto kind = parse_dataset_kind(kind_name);
    const auto dataset = load_dataset(dataset_path, kind);
    const auto tok = tokenizer_from_flags(stem, stopwords, keep_case);

    auto bundle = make_providers(cfg);
    std::shared_ptr<SearchProvider> search = bundle.search;
    if (!dataset.corpus.empty()) {
        // Closed-domain corpus: route retrieval through a local index.
        std::vector<CorpusIndex::Chunk> chunks;
        for (const auto& d : dataset.corpus) {
            for (const auto& a : chunk_document(d.id, d.text, d.published)) {
                CorpusIndex::Chunk c;
                c.doc_id = d.id;
                const auto pos = a.id.rfind('#');
                c.chunk_index = static_cast<std::size_t>(std::stoul(a.id.substr(pos + 1)));
                c.text = a.body;
                c.published = a.published;
                chunks.push_back(std::move(c));
            }
        }
        search = std::make_shared<Bm25SearchProvider>(CorpusIndex::build(std::move(chunks)));
    }

    nlohmann::json out;
    out["dataset"] = dataset_path;
    const auto stats = dataset_stats(dataset.topics);
    out["stats"] = {{"timelines", stats.timelines}, {"mean_l", stats.mean_l}, {"mean_k", stats.mean_k}};

    std::map<std::string, std::size_t> chronos_totals;  // topic -> articles, for parity
    const std::vector<int> rounds_list =
        sweep_rounds.empty() ? std::vector<int>{static_cast<int>(cfg.pipeline.rounds)} : sweep_rounds;

    for (const auto& mode_name : modes) {
        const auto mode = parse_run_mode(mode_name);
        for (const int rounds : rounds_list) {
            if (mode != RunMode::chronos && rounds != rounds_list.front()) continue;
            std::vector<BenchRow> rows;
            nlohmann::json per_topic = nlohmann::json::array();
            for (const auto& topic : dataset.topics) {
                if (!topic.reference) continue;
                auto run_cfg = cfg.pipeline;
                run_cfg.mode = mode;
                run_cfg.rounds = static_cast<std::size_t>(rounds);
                if (mode != RunMode::chronos && chronos_totals.contains(topic.query)) {
                    run_cfg.baseline_budget = chronos_totals.at(topic.query);
                }
                PipelineDeps deps{*search, *bundle.gateway, bundle.embedder.get(),
                                  bundle.pool ? &*bundle.pool : nullptr, {}};
                try {
                    auto result = run_pipeline(topic, run_cfg, deps);
                    if (mode == RunMode::chronos) {
                        chronos_totals[topic.query] = result.report.total_articles;
                    }
                    BenchRow row{topic.query, evaluate_timelines(result.timeline, *topic.reference, tok),
                                 result.report.total_articles};
                    per_topic.push_back({{"topic", row.topic},
                                         {"articles", row.articles},
                                         {"metrics", nlohmann::json::parse(report_to_json(row.report))}});
                    rows.push_back(std::move(row));
                } catch (const Error& e) {
                    per_topic.push_back({{"topic", topic.query}, {"error", e.what()}});
                }
            }
            const auto key = mode_name + (rounds_list.size() > 1 && mode == RunMode::chronos
                                              ? "@R" + std::to_string(rounds)
                                              : "");
            out["modes"][key] = {{"mean", mean_metrics(rows)}, {"per_topic", per_topic}};
            std::cout << key << ": " << mean_metrics(rows).dump() << "\n";
        }
    }
    if (!out_path.empty()) write_text_file(out_path, out.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"News timeline summarization engine"};
    app.require_subcommand(1);

    // run
    std::string config_path, query, cutoff, reference_path, out_path, report_path;
    PipelineOverrides ov;
    auto* run = app.add_subcommand("run", "Generate a timeline for one topic");
    run->add_option("--config", config_path, "runner config JSON")->required();
    run->add_option("--query", query, "target news query")->required();
    run->add_option("--cutoff", cutoff, "retrieval cutoff YYYY-MM-DD")->required();
    run->add_option("--reference", reference_path, "reference timeline JSON (sets l)");
    run->add_option("--out", out_path, "timeline output path (default stdout)");
    run->add_option("--report", report_path, "run report output path");
    add_override_flags(run, ov);

    // evaluate
    std::string pred_path, ref_path, eval_out;
    bool stem = false, stopwords = false, keep_case = false;
    auto* evaluate = app.add_subcommand("evaluate", "Score a predicted timeline against a reference");
    evaluate->add_option("--pred", pred_path, "predicted timeline JSON")->required();
    evaluate->add_option("--ref", ref_path, "reference timeline JSON")->required();
    evaluate->add_flag("--stem", stem, "apply stemming");
    evaluate->add_flag("--stopwords", stopwords, "remove stopwords");
    evaluate->add_flag("--keep-case", keep_case, "disable lowercasing");
    evaluate->add_option("--out", eval_out, "metric report JSON path");

    // build-pool
    std::string topics_path, pool_out, pool_report;
    int bp_m = -1, bp_n = -1, bp_candidates = -1;
    auto* build_pool_cmd = app.add_subcommand("build-pool", "Construct the few-shot example pool");
    build_pool_cmd->add_option("--config", config_path, "runner config JSON")->required();
    build_pool_cmd->add_option("--topics", topics_path, "topics file (with references)")->required();
    build_pool_cmd->add_option("--out", pool_out, "pool output path")->required();
    build_pool_cmd->add_option("--report", pool_report, "build report path");
    build_pool_cmd->add_option("-m", bp_m, "questions to select per topic");
    build_pool_cmd->add_option("-N", bp_n, "document budget per evaluation");
    build_pool_cmd->add_option("--candidates", bp_candidates, "candidate questions per topic");

    // index
    std::string corpus_path, index_out;
    int chunk_size = 500;
    auto* index_cmd = app.add_subcommand("index", "Build a local search index from corpus JSONL");
    index_cmd->add_option("--corpus", corpus_path, "corpus JSONL")->required();
    index_cmd->add_option("--out", index_out, "index directory")->required();
    index_cmd->add_option("--chunk-size", chunk_size, "words per chunk");

    // bench
    std::string dataset_path, kind_name = "open_tls", bench_out;
    std::vector<std::string> modes{"chronos"};
    std::vector<int> sweep_rounds;
    auto* bench = app.add_subcommand("bench", "Run a dataset and report aggregate metrics");
    bench->add_option("--config", config_path, "runner config JSON")->required();
    bench->add_option("--dataset", dataset_path, "dataset path")->required();
    bench->add_option("--kind", kind_name, "open_tls | t17_crisis");
    bench->add_option("--modes", modes, "modes to run")->delimiter(',');
    bench->add_option("--sweep-rounds", sweep_rounds, "R values to sweep")->delimiter(',');
    bench->add_option("--out", bench_out, "results JSON path");
    bench->add_flag("--stem", stem, "apply stemming");
    bench->add_flag("--stopwords", stopwords, "remove stopwords");
    bench->add_flag("--keep-case", keep_case, "disable lowercasing");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return cmd_run(config_path, ov, query, cutoff, reference_path, out_path, report_path);
        }
        if (evaluate->parsed()) {
            return cmd_evaluate(pred_path, ref_path, stem, stopwords, keep_case, eval_out);
        }
        if (build_pool_cmd->parsed()) {
            return cmd_build_pool(config_path, topics_path, pool_out, pool_report, bp_m, bp_n,
                                  bp_candidates);
        }
        if (index_cmd->parsed()) return cmd_index(corpus_path, index_out, chunk_size);
        if (bench->parsed()) {
            return cmd_bench(config_path, dataset_path, kind_name, modes, sweep_rounds, bench_out,
                             stem, stopwords, keep_case);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
