#include "chronos/prompts.hpp"

#include <algorithm>
#include <sstream>

#include "chronos/errors.hpp"

namespace chronos {

namespace {

const PromptTemplate kSelfQuestion{
    "self_question",
    "You are an experienced journalist building a timeline for the target news. "
    "You need to propose at least 5 questions related to the Target News that the "
    "current news database cannot answer.\n"
    "These questions should help continue organizing the timeline of news developments "
    "or the life history of individuals, focusing on the origins, development processes, "
    "and key figures of related events, emphasizing factual news knowledge rather than "
    "subjective evaluative content.\n"
    "These 5 questions must be independent and non-overlapping. The overall potential "
    "information volume of all questions should be as large as possible, and the time "
    "span covered should also be as extensive as possible. Avoid asking questions "
    "similar to those already searched. Directly output your questions in the "
    "specified format.\n"
    "Output format: [\"Question_1\", \"Question_2\", ...]\n"
    "\n"
    "{Retrieved Examples}\n"
    "\n"
    "Current News Database: {docs}\n"
    "Target News: {news}\n"
    "Questions Already Searched: {questions}\n",
    {"Retrieved Examples", "docs", "news", "questions"},
};

const PromptTemplate kRewrite{
    "rewrite",
    "Generate 2-3 rewrite queries of the question as a python list, directly output "
    "it as [\"..\", \"..\", ..]\n"
    "\n"
    "# Examples:\n"
    "Question: When did the initial protests that led to the Egyptian Crisis begin?\n"
    "Rewrite: [\"Egyptian Crisis initial protests\", \"Time of protests lead to Egyptian Crisis\"]\n"
    "\n"
    "Question: When and where did Robert Jasmiden die?\n"
    "Rewrite: [\"Robert Jasmiden's death time\", \"Robert Jasmiden's death place\"]\n"
    "\n"
    "Question: What profession do Nicholas Ray and Elia Kazan have in common?\n"
    "Rewrite: [\"Nicholas Ray profession\", \"Elia Kazan profession\"]\n"
    "\n"
    "Question: {question}\n"
    "Rewrite: ",
    {"question"},
};

const PromptTemplate kGenerate{
    "generate",
    "You are an experienced journalist building a timeline for the target news.\n"
    "\n"
    "Instructions:\n"
    "Step 1: Read each background news item and extract all significant milestone "
    "events related to the target news from your news database, along with their dates.\n"
    "Step 2: Write a description for each event, including key detail information about "
    "the event, using the phrasing from the news database as much as possible. Save all "
    "events as a list. The format should be: [{\"start\": <date|format as \"2023-02-02\", "
    "cannot be empty, must include specific year, month, and day>, \"summary\": "
    "\"<event description|no quotes allowed>\"}, ...]\n"
    "\n"
    "Target News: {news}\n"
    "Current news database: {docs}\n",
    {"news", "docs"},
};

const PromptTemplate kMerge{
    "merge",
    "You are an experienced journalist building a timeline for the target news.\n"
    "Merge the existing news summaries and timelines in chronological order. When "
    "merging the news summaries, select the top-{l} significant news from the original "
    "timeline, and strictly follow the chronological order from past to present without "
    "changing the original date, using \"\\n\" to separate events that occurred on "
    "different dates. Directly output your answer in the following format: "
    "[{\"start\": <date|format as \"2023-02-02\", cannot be empty, must include specific "
    "year, month, and day>, \"summary\": \"<event description|no quotes allowed>\"}, ...]\n"
    "\n"
    "Target News: {news}\n"
    "Original Timeline: {timelines}\n",
    {"l", "news", "timelines"},
};

}  // namespace

const PromptTemplate& prompt_template(const std::string& name) {
    if (name == "self_question") return kSelfQuestion;
    if (name == "rewrite") return kRewrite;
    if (name == "generate") return kGenerate;
    if (name == "merge") return kMerge;
    throw Error("unknown prompt template: " + name);
}

std::string render(const PromptTemplate& tmpl,
                   const std::map<std::string, std::string>& bindings) {
    const auto is_placeholder = [&](const std::string& name) {
        return std::find(tmpl.placeholders.begin(), tmpl.placeholders.end(), name) !=
               tmpl.placeholders.end();
    };

    std::string out;
    out.reserve(tmpl.body.size());
    const std::string& body = tmpl.body;
    std::size_t i = 0;
    while (i < body.size()) {
        if (body[i] != '{') {
            out.push_back(body[i++]);
            continue;
        }
        const auto close = body.find('}', i + 1);
        if (close == std::string::npos) {
            out.append(body, i, std::string::npos);
            break;
        }
        const auto name = body.substr(i + 1, close - i - 1);
        if (!is_placeholder(name)) {
            // Literal braces (the JSON output-format example) pass through.
            out.append(body, i, close - i + 1);
            i = close + 1;
            continue;
        }
        auto it = bindings.find(name);
        if (it == bindings.end()) {
            throw MissingBinding("template " + tmpl.name + " missing binding {" + name + "}");
        }
        out += it->second;
        i = close + 1;
    }
    return out;
}

std::string truncate_words(const std::string& text, std::size_t word_budget) {
    std::istringstream in(text);
    std::string word;
    std::string out;
    std::size_t n = 0;
    while (n < word_budget && in >> word) {
        if (n) out.push_back(' ');
        out += word;
        ++n;
    }
    return out;
}

std::string serialize_docs(const std::vector<Article>& docs, std::size_t word_budget) {
    if (docs.empty()) return "(empty)";
    std::string out;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        if (i) out += "\n\n";
        const auto& d = docs[i];
        out += "[" + d.id + "] " + d.title + " (" +
               (d.published ? d.published->str() : std::string("undated")) + "): " +
               truncate_words(d.body, word_budget);
    }
    return out;
}

}  // namespace chronos
