#include "chronos/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <vector>

#include <json.hpp>

namespace chronos {

namespace {

struct DateText {
    EventDate date;
    std::string text;
};

// Summaries sharing a date are joined with a space into one date summary.
std::vector<DateText> per_date_texts(const Timeline& t) {
    std::vector<DateText> out;
    for (const auto& e : t.events()) {
        if (!out.empty() && out.back().date == e.date) {
            out.back().text += ' ';
            out.back().text += e.summary;
        } else {
            out.push_back({e.date, e.summary});
        }
    }
    return out;
}

double f1_from(double overlap, double pred_total, double ref_total) {
    if (pred_total <= 0.0 || ref_total <= 0.0 || overlap <= 0.0) return 0.0;
    const double p = overlap / pred_total;
    const double r = overlap / ref_total;
    return 2.0 * p * r / (p + r);
}

struct MatchedPair {
    std::size_t pred;
    std::size_t ref;
};

// Exact maximum-total assignment: iterate the larger side in order, bitmask
// over the smaller side. Ties are resolved deterministically (skip before
// match, lower partner index first).
std::vector<MatchedPair> assign_exact(const std::vector<std::vector<double>>& score,
                                      std::size_t n_pred, std::size_t n_ref) {
    const bool pred_small = n_pred <= n_ref;
    const std::size_t ns = pred_small ? n_pred : n_ref;   // masked side
    const std::size_t nl = pred_small ? n_ref : n_pred;   // iterated side
    auto pair_score = [&](std::size_t l, std::size_t s) {
        return pred_small ? score[s][l] : score[l][s];
    };

    const std::size_t masks = std::size_t{1} << ns;
    const double kNegInf = -std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> dp(nl + 1, std::vector<double>(masks, kNegInf));
    dp[0][0] = 0.0;
    for (std::size_t l = 0; l < nl; ++l) {
        for (std::size_t mask = 0; mask < masks; ++mask) {
            const double cur = dp[l][mask];
            if (cur == kNegInf) continue;
            if (cur > dp[l + 1][mask]) dp[l + 1][mask] = cur;
            for (std::size_t s = 0; s < ns; ++s) {
                if (mask & (std::size_t{1} << s)) continue;
                const std::size_t next = mask | (std::size_t{1} << s);
                const double v = cur + pair_score(l, s);
                if (v > dp[l + 1][next]) dp[l + 1][next] = v;
            }
        }
    }

    std::size_t best_mask = 0;
    for (std::size_t mask = 1; mask < masks; ++mask) {
        if (dp[nl][mask] > dp[nl][best_mask]) best_mask = mask;
    }

    std::vector<MatchedPair> matched;
    std::size_t mask = best_mask;
    for (std::size_t l = nl; l-- > 0;) {
        if (dp[l][mask] == dp[l + 1][mask]) continue;  // l skipped
        bool found = false;
        for (std::size_t s = 0; s < ns && !found; ++s) {
            const std::size_t bit = std::size_t{1} << s;
            if (!(mask & bit)) continue;
            const std::size_t prev = mask & ~bit;
            if (dp[l][prev] != kNegInf && dp[l][prev] + pair_score(l, s) == dp[l + 1][mask]) {
                if (pair_score(l, s) > 0.0) {
                    matched.push_back(pred_small ? MatchedPair{s, l} : MatchedPair{l, s});
                }
                mask = prev;
                found = true;
            }
        }
        if (!found) return matched;  // unreachable with consistent dp
    }
    return matched;
}

std::vector<MatchedPair> assign_greedy(const std::vector<std::vector<double>>& score,
                                       std::size_t n_pred, std::size_t n_ref) {
    struct Cand {
        double s;
        std::size_t p;
        std::size_t r;
    };
    std::vector<Cand> cands;
    for (std::size_t p = 0; p < n_pred; ++p) {
        for (std::size_t r = 0; r < n_ref; ++r) {
            if (score[p][r] > 0.0) cands.push_back({score[p][r], p, r});
        }
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.s != b.s) return a.s > b.s;
        if (a.p != b.p) return a.p < b.p;
        return a.r < b.r;
    });
    std::vector<bool> used_p(n_pred, false), used_r(n_ref, false);
    std::vector<MatchedPair> matched;
    for (const auto& c : cands) {
        if (used_p[c.p] || used_r[c.r]) continue;
        used_p[c.p] = true;
        used_r[c.r] = true;
        matched.push_back({c.p, c.r});
    }
    return matched;
}

}  // namespace

double date_gap_penalty(std::int64_t gap_days) {
    return 1.0 / (1.0 + static_cast<double>(gap_days));
}

double rouge_f1(std::string_view pred, std::string_view ref, std::size_t n,
                const TokenizerConfig& cfg) {
    const auto pred_counts = ngram_counts(tokenize(pred, cfg), n);
    const auto ref_counts = ngram_counts(tokenize(ref, cfg), n);
    const auto overlap = clipped_overlap(pred_counts, ref_counts);
    return f1_from(static_cast<double>(overlap),
                   static_cast<double>(total_count(pred_counts)),
                   static_cast<double>(total_count(ref_counts)));
}

double concat_f1(const Timeline& pred, const Timeline& ref, std::size_t n,
                 const TokenizerConfig& cfg) {
    auto join = [](const Timeline& t) {
        std::string out;
        for (const auto& e : t.events()) {
            if (!out.empty()) out += ' ';
            out += e.summary;
        }
        return out;
    };
    return rouge_f1(join(pred), join(ref), n, cfg);
}

double agree_f1(const Timeline& pred, const Timeline& ref, std::size_t n,
                const TokenizerConfig& cfg) {
    const auto pred_dates = per_date_texts(pred);
    const auto ref_dates = per_date_texts(ref);

    std::int64_t pred_total = 0, ref_total = 0, overlap = 0;
    std::vector<NgramCounts> pred_counts(pred_dates.size());
    for (std::size_t i = 0; i < pred_dates.size(); ++i) {
        pred_counts[i] = ngram_counts(tokenize(pred_dates[i].text, cfg), n);
        pred_total += total_count(pred_counts[i]);
    }
    for (const auto& rd : ref_dates) {
        const auto rc = ngram_counts(tokenize(rd.text, cfg), n);
        ref_total += total_count(rc);
        for (std::size_t i = 0; i < pred_dates.size(); ++i) {
            if (pred_dates[i].date == rd.date) {
                overlap += clipped_overlap(pred_counts[i], rc);
                break;
            }
        }
    }
    return f1_from(static_cast<double>(overlap), static_cast<double>(pred_total),
                   static_cast<double>(ref_total));
}

double align_f1(const Timeline& pred, const Timeline& ref, std::size_t n,
                const TokenizerConfig& cfg) {
    const auto pred_dates = per_date_texts(pred);
    const auto ref_dates = per_date_texts(ref);
    const std::size_t np = pred_dates.size();
    const std::size_t nr = ref_dates.size();
    if (np == 0 || nr == 0) return 0.0;

    std::vector<NgramCounts> pred_counts(np), ref_counts(nr);
    std::int64_t pred_total = 0, ref_total = 0;
    for (std::size_t p = 0; p < np; ++p) {
        pred_counts[p] = ngram_counts(tokenize(pred_dates[p].text, cfg), n);
        pred_total += total_count(pred_counts[p]);
    }
    for (std::size_t r = 0; r < nr; ++r) {
        ref_counts[r] = ngram_counts(tokenize(ref_dates[r].text, cfg), n);
        ref_total += total_count(ref_counts[r]);
    }

    // Pair affinity: unigram F1 weighted by date proximity, for every n.
    std::vector<std::vector<double>> affinity(np, std::vector<double>(nr, 0.0));
    std::vector<std::vector<double>> penalty(np, std::vector<double>(nr, 0.0));
    for (std::size_t p = 0; p < np; ++p) {
        for (std::size_t r = 0; r < nr; ++r) {
            penalty[p][r] = date_gap_penalty(days_between(pred_dates[p].date, ref_dates[r].date));
            affinity[p][r] =
                rouge_f1(pred_dates[p].text, ref_dates[r].text, 1, cfg) * penalty[p][r];
        }
    }

    const auto matched = std::min(np, nr) <= kAlignExactLimit
                             ? assign_exact(affinity, np, nr)
                             : assign_greedy(affinity, np, nr);

    double overlap = 0.0;
    for (const auto& m : matched) {
        const auto raw = clipped_overlap(pred_counts[m.pred], ref_counts[m.ref]);
        overlap += static_cast<double>(raw) * penalty[m.pred][m.ref];
    }
    return f1_from(overlap, static_cast<double>(pred_total), static_cast<double>(ref_total));
}

double date_f1(const Timeline& pred, const Timeline& ref) {
    const auto pd = pred.distinct_dates();
    const auto rd = ref.distinct_dates();
    if (pd.empty() || rd.empty()) return 0.0;
    std::set<std::int64_t> ref_set;
    for (const auto& d : rd) ref_set.insert(d.serial());
    std::size_t common = 0;
    for (const auto& d : pd) {
        if (ref_set.contains(d.serial())) ++common;
    }
    return f1_from(static_cast<double>(common), static_cast<double>(pd.size()),
                   static_cast<double>(rd.size()));
}

MetricReport evaluate_timelines(const Timeline& pred, const Timeline& ref,
                                const TokenizerConfig& cfg) {
    MetricReport report;
    report.concat_r1 = concat_f1(pred, ref, 1, cfg);
    report.concat_r2 = concat_f1(pred, ref, 2, cfg);
    report.agree_r1 = agree_f1(pred, ref, 1, cfg);
    report.agree_r2 = agree_f1(pred, ref, 2, cfg);
    report.align_r1 = align_f1(pred, ref, 1, cfg);
    report.align_r2 = align_f1(pred, ref, 2, cfg);
    report.date_f1 = date_f1(pred, ref);
    report.tokenizer = cfg;
    return report;
}

std::string report_to_json(const MetricReport& report, int indent) {
    nlohmann::json j = {
        {"concat_r1", report.concat_r1},
        {"concat_r2", report.concat_r2},
        {"agree_r1", report.agree_r1},
        {"agree_r2", report.agree_r2},
        {"align_r1", report.align_r1},
        {"align_r2", report.align_r2},
        {"date_f1", report.date_f1},
        {"tokenizer",
         {{"lowercase", report.tokenizer.lowercase},
          {"stemming", report.tokenizer.stemming},
          {"stopword_removal", report.tokenizer.stopword_removal}}},
    };
    return j.dump(indent);
}

std::string report_to_table(const MetricReport& report) {
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "%-8s %8s %8s\n"
                  "%-8s %8.4f %8.4f\n"
                  "%-8s %8.4f %8.4f\n"
                  "%-8s %8.4f %8.4f\n"
                  "%-8s %8.4f\n"
                  "tokenizer: lowercase=%s stemming=%s stopwords=%s\n",
                  "", "R-1", "R-2", "concat", report.concat_r1, report.concat_r2, "agree",
                  report.agree_r1, report.agree_r2, "align", report.align_r1, report.align_r2,
                  "date", report.date_f1, report.tokenizer.lowercase ? "on" : "off",
                  report.tokenizer.stemming ? "on" : "off",
                  report.tokenizer.stopword_removal ? "on" : "off");
    return buf;
}

}  // namespace chronos
