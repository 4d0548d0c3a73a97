#include "eval/judge.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

#include "core/text.hpp"

namespace hgrag::eval {

const char* kJudgeSystemPrompt =
    "You are a strict evaluator of instructional feedback for math teachers. "
    "Score the given response against the reference evidence on five dimensions, "
    "each as an integer from 0 to 100:\n"
    "COMP - comprehensiveness: covers the key ideas of the reference.\n"
    "DIV - diversity: offers alternative strategies.\n"
    "EMP - empowerment: helps the teacher empower student reasoning.\n"
    "LOG - logicality: maintains logical coherence.\n"
    "READ - readability: easy to understand.\n"
    "Output exactly five lines, one per dimension, each formatted as "
    "DIM<TAB>score, and nothing else.";

std::string compose_judge_prompt(const std::string& answer,
                                 const std::string& reference_chunk) {
    std::ostringstream oss;
    oss << "REFERENCE EVIDENCE:\n" << reference_chunk << "\n\n"
        << "RESPONSE TO SCORE:\n" << answer << "\n";
    return oss.str();
}

namespace {

std::string strip_decoration(std::string_view s, bool keep_sign = false) {
    std::size_t b = 0, e = s.size();
    auto junk = [&](char c) {
        if (c == '-') return !keep_sign;
        return c == '*' || c == '#' || c == '>' || c == '`' ||
               std::isspace(static_cast<unsigned char>(c));
    };
    while (b < e && junk(s[b])) ++b;
    while (e > b && junk(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

std::optional<std::pair<std::string, double>> parse_line(const std::string& raw) {
    const std::string line = strip_decoration(raw);
    std::size_t sep = line.find('\t');
    if (sep == std::string::npos) sep = line.find(':');
    if (sep == std::string::npos) return std::nullopt;
    const std::string key =
        text::to_upper_ascii(text::trim(std::string_view(line).substr(0, sep)));
    const std::string value =
        strip_decoration(std::string_view(line).substr(sep + 1), /*keep_sign=*/true);
    try {
        std::size_t used = 0;
        const double score = std::stod(value, &used);
        if (used == 0) return std::nullopt;
        return std::make_pair(key, score);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

}  // namespace

bool parse_judge_scores(const std::string& judge_output, JudgeScores* out) {
    JudgeScores scores;
    bool seen[5] = {false, false, false, false, false};
    std::istringstream in(judge_output);
    std::string line;
    auto assign = [&](int slot, double* field, const std::string& key, double value) {
        if (value < 0.0 || value > 100.0) {
            scores.warnings.push_back(key + " score " + std::to_string(value) +
                                      " out of range, clamped");
            value = std::clamp(value, 0.0, 100.0);
        }
        *field = value;
        seen[slot] = true;
    };
    while (std::getline(in, line)) {
        const auto parsed = parse_line(line);
        if (!parsed) continue;
        const auto& [key, value] = *parsed;
        if (key.rfind("COMP", 0) == 0) {
            assign(0, &scores.comprehensiveness, key, value);
        } else if (key.rfind("DIV", 0) == 0) {
            assign(1, &scores.diversity, key, value);
        } else if (key.rfind("EMP", 0) == 0) {
            assign(2, &scores.empowerment, key, value);
        } else if (key.rfind("LOG", 0) == 0) {
            assign(3, &scores.logicality, key, value);
        } else if (key.rfind("READ", 0) == 0) {
            assign(4, &scores.readability, key, value);
        }
    }
    for (const bool s : seen) {
        if (!s) return false;
    }
    scores.overall = (scores.comprehensiveness + scores.diversity + scores.empowerment +
                      scores.logicality + scores.readability) /
                     5.0;
    std::swap(*out, scores);
    return true;
}

JudgeScores judge_answer(const std::string& answer, const std::string& reference_chunk,
                         llm::CompletionProvider& judge, const std::string& model_name) {
    llm::CompletionRequest request;
    request.system_prompt = kJudgeSystemPrompt;
    request.user_prompt = compose_judge_prompt(answer, reference_chunk);
    request.model_name = model_name;
    request.temperature = 0.0;

    JudgeScores scores;
    for (int attempt = 0; attempt < 2; ++attempt) {
        const std::string output = judge.complete(request);
        if (parse_judge_scores(output, &scores)) return scores;
    }
    throw llm::ProviderError("judge output unparseable after re-prompt");
}

}  // namespace hgrag::eval
