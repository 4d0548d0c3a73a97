#include "ingest/chunker.hpp"

#include <sstream>
#include <stdexcept>

namespace hgrag::ingest {

std::vector<Chunk> chunk_corpus(
    const std::vector<std::pair<std::string, std::string>>& documents,
    std::size_t target_tokens, std::size_t overlap_tokens,
    std::vector<std::string>* warnings) {
    if (target_tokens <= overlap_tokens) {
        throw std::invalid_argument("chunk_corpus: target_tokens must exceed overlap_tokens");
    }
    std::vector<Chunk> chunks;
    for (const auto& [doc_id, body] : documents) {
        std::vector<std::string> tokens;
        {
            std::istringstream in(body);
            std::string tok;
            while (in >> tok) tokens.push_back(tok);
        }
        if (tokens.empty()) {
            if (warnings) warnings->push_back("empty document skipped: " + doc_id);
            continue;
        }
        const std::size_t stride = target_tokens - overlap_tokens;
        std::size_t ordinal = 0;
        std::size_t start = 0;
        while (start < tokens.size()) {
            const std::size_t end = std::min(start + target_tokens, tokens.size());
            std::string text;
            for (std::size_t i = start; i < end; ++i) {
                if (i > start) text.push_back(' ');
                text += tokens[i];
            }
            Chunk chunk;
            chunk.document_id = doc_id;
            chunk.ordinal = ordinal;
            chunk.id = doc_id + "#" + std::to_string(ordinal);
            chunk.body = std::move(text);
            chunks.push_back(std::move(chunk));
            ++ordinal;
            if (end == tokens.size()) break;
            start += stride;
        }
    }
    return chunks;
}

}  // namespace hgrag::ingest
