#pragma once

#include <string>
#include <string_view>

#include "chronos/text.hpp"
#include "chronos/timeline.hpp"

namespace chronos {

// All seven timeline scores plus the tokenizer that produced them.
struct MetricReport {
    double concat_r1 = 0.0;
    double concat_r2 = 0.0;
    double agree_r1 = 0.0;
    double agree_r2 = 0.0;
    double align_r1 = 0.0;
    double align_r2 = 0.0;
    double date_f1 = 0.0;
    TokenizerConfig tokenizer;
};

// Plain ROUGE-N F1 between two texts: clipped n-gram multiset overlap,
// precision over predicted grams, recall over reference grams. Zero when
// either side has no n-grams.
double rouge_f1(std::string_view pred, std::string_view ref, std::size_t n,
                const TokenizerConfig& cfg = {});

// ROUGE-N over the space-joined concatenation of all summaries, date order.
double concat_f1(const Timeline& pred, const Timeline& ref, std::size_t n,
                 const TokenizerConfig& cfg = {});

// Micro-averaged ROUGE-N restricted to dates present in both timelines;
// denominators count n-grams of every date on each side, so missed dates
// cost precision and recall.
double agree_f1(const Timeline& pred, const Timeline& ref, std::size_t n,
                const TokenizerConfig& cfg = {});

// ROUGE-N over a one-to-one date alignment chosen to maximize the total of
// unigram-F1 x 1/(1+|day gap|) pair scores; each aligned pair's overlap is
// scaled by the same day-gap penalty. Exact assignment when the smaller side
// has at most kAlignExactLimit dates, greedy beyond that.
double align_f1(const Timeline& pred, const Timeline& ref, std::size_t n,
                const TokenizerConfig& cfg = {});

inline constexpr std::size_t kAlignExactLimit = 12;

// Penalty applied to a pair of dates d days apart.
double date_gap_penalty(std::int64_t gap_days);

// Set F1 of distinct date sets; summary text never matters.
double date_f1(const Timeline& pred, const Timeline& ref);

MetricReport evaluate_timelines(const Timeline& pred, const Timeline& ref,
                                const TokenizerConfig& cfg = {});

std::string report_to_json(const MetricReport& report, int indent = -1);
std::string report_to_table(const MetricReport& report);

}  // namespace chronos
