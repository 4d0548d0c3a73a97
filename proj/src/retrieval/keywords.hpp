#pragma once

#include <set>
#include <string>
#include <vector>

#include "llm/provider.hpp"

namespace hgrag::retrieval {

// Built-in English stopword list (~120 entries). Overridable via
// load_stopwords(path): one word per line, '#' comments allowed.
const std::set<std::string>& default_stopwords();
std::set<std::string> load_stopwords(const std::string& path);

// Deterministic keyword extraction: case-fold, punctuation stripped,
// whitespace split, stopwords dropped, dedup preserving first occurrence.
// If everything is a stopword, falls back to all tokens.
std::vector<std::string> extract_keywords(const std::string& query,
                                          const std::set<std::string>& stopwords);

// LLM-backed variant: prompts for a comma-separated keyword list.
std::vector<std::string> extract_keywords_llm(const std::string& query,
                                              llm::CompletionProvider& completer,
                                              const std::string& model_name = {});

extern const char* kKeywordSystemPrompt;

}  // namespace hgrag::retrieval
