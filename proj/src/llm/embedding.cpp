#include "llm/embedding.hpp"

#include <cmath>
#include <stdexcept>

#include "core/text.hpp"

namespace hgrag::llm {

std::vector<float> local_hash_embed(const std::string& raw_text, std::size_t dim) {
    if (dim == 0) throw std::invalid_argument("embedding dimension must be positive");
    std::vector<float> vec(dim, 0.0f);
    const std::string normalized = text::normalize(raw_text);
    bool any = false;
    for (const auto& token : text::split_tokens(normalized)) {
        const std::size_t bucket = text::fnv1a64(token) % dim;
        vec[bucket] += 1.0f;
        any = true;
    }
    if (!any) return vec;
    double sq = 0.0;
    for (const float v : vec) sq += static_cast<double>(v) * v;
    const double norm = std::sqrt(sq);
    for (auto& v : vec) v = static_cast<float>(v / norm);
    return vec;
}

double cosine(const std::vector<float>& a, const std::vector<float>& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("cosine: dimension mismatch");
    }
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += static_cast<double>(a[i]) * b[i];
        na += static_cast<double>(a[i]) * a[i];
        nb += static_cast<double>(b[i]) * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace hgrag::llm
