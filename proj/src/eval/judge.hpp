#pragma once

#include <string>
#include <vector>

#include "llm/provider.hpp"

namespace hgrag::eval {

struct JudgeScores {
    double comprehensiveness = 0;
    double diversity = 0;
    double empowerment = 0;
    double logicality = 0;
    double readability = 0;
    double overall = 0;  // arithmetic mean of the five
    std::vector<std::string> warnings;
};

std::string compose_judge_prompt(const std::string& answer,
                                 const std::string& reference_chunk);

// Parses `DIM<TAB>score` lines (COMP/DIV/EMP/LOG/READ, case-insensitive
// prefixes, markdown decoration tolerated). Out-of-range scores are
// clamped to [0,100] with a warning. Returns false if any dimension is
// missing.
bool parse_judge_scores(const std::string& judge_output, JudgeScores* out);

// One judge call; on unparseable output re-prompts once, then throws.
JudgeScores judge_answer(const std::string& answer, const std::string& reference_chunk,
                         llm::CompletionProvider& judge,
                         const std::string& model_name = {});

extern const char* kJudgeSystemPrompt;

}  // namespace hgrag::eval
