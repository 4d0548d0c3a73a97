#include "retrieval/keywords.hpp"

#include <fstream>
#include <sstream>

#include "core/text.hpp"

namespace hgrag::retrieval {

const char* kKeywordSystemPrompt =
    "Extract the key search terms from the user's question. "
    "Reply with a single comma-separated list of keywords and nothing else.";

const std::set<std::string>& default_stopwords() {
    static const std::set<std::string> words = {
        "a",         "about",   "above",    "after",   "again",      "against",
        "all",       "am",      "an",       "and",     "any",        "are",
        "as",        "at",      "be",       "because", "been",       "before",
        "being",     "below",   "between",  "both",    "but",        "by",
        "can",       "cannot",  "could",    "did",     "do",         "does",
        "doing",     "down",    "during",   "each",    "few",        "for",
        "from",      "further", "had",      "has",     "have",       "having",
        "he",        "her",     "here",     "hers",    "herself",    "him",
        "himself",   "his",     "how",      "i",       "if",         "in",
        "into",      "is",      "it",       "its",     "itself",     "just",
        "me",        "more",    "most",     "my",      "myself",     "no",
        "nor",       "not",     "now",      "of",      "off",        "on",
        "once",      "only",    "or",       "other",   "our",        "ours",
        "ourselves", "out",     "over",     "own",     "same",       "shall",
        "she",       "should",  "so",       "some",    "such",       "than",
        "that",      "the",     "their",    "theirs",  "them",       "themselves",
        "then",      "there",   "these",    "they",    "this",       "those",
        "through",   "to",      "too",      "under",   "until",      "up",
        "very",      "was",     "we",       "were",    "what",       "when",
        "where",     "which",   "while",    "who",     "whom",       "why",
        "will",      "with",    "would",    "you",     "your",       "yours",
        "yourself",
        "yourselves",
    };
    return words;
}

std::set<std::string> load_stopwords(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open stopword list: " + path);
    std::set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        const auto t = text::trim(line);
        if (t.empty() || t.front() == '#') continue;
        words.insert(text::normalize(t));
    }
    return words;
}

std::vector<std::string> extract_keywords(const std::string& query,
                                          const std::set<std::string>& stopwords) {
    if (text::trim(query).empty()) {
        throw std::invalid_argument("extract_keywords: empty query");
    }
    const auto tokens = text::split_tokens(text::normalize(query));
    std::vector<std::string> keywords;
    std::set<std::string> seen;
    for (const auto& tok : tokens) {
        if (stopwords.count(tok)) continue;
        if (seen.insert(tok).second) keywords.push_back(tok);
    }
    if (!keywords.empty()) return keywords;
    // Everything was a stopword; fall back to all tokens.
    for (const auto& tok : tokens) {
        if (seen.insert(tok).second) keywords.push_back(tok);
    }
    return keywords;
}

std::vector<std::string> extract_keywords_llm(const std::string& query,
                                              llm::CompletionProvider& completer,
                                              const std::string& model_name) {
    if (text::trim(query).empty()) {
        throw std::invalid_argument("extract_keywords_llm: empty query");
    }
    llm::CompletionRequest request;
    request.system_prompt = kKeywordSystemPrompt;
    request.user_prompt = query;
    request.model_name = model_name;
    const std::string response = completer.complete(request);

    std::vector<std::string> keywords;
    std::set<std::string> seen;
    std::istringstream in(response);
    std::string part;
    while (std::getline(in, part, ',')) {
        const std::string word = text::normalize(part);
        if (word.empty()) continue;
        if (seen.insert(word).second) keywords.push_back(word);
    }
    return keywords;
}

}  // namespace hgrag::retrieval
