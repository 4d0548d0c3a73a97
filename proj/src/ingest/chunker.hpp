#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hgrag::ingest {

struct Chunk {
    std::string id;  // "<document_id>#<ordinal>"
    std::string document_id;
    std::size_t ordinal = 0;
    std::string body;
    std::optional<std::vector<float>> embedding;
};

// Whitespace-token windows of target_tokens, carrying overlap_tokens into
// the next window; the last window may be short. Empty documents are
// skipped with a warning.
std::vector<Chunk> chunk_corpus(
    const std::vector<std::pair<std::string, std::string>>& documents,
    std::size_t target_tokens, std::size_t overlap_tokens,
    std::vector<std::string>* warnings = nullptr);

}  // namespace hgrag::ingest
