#include "core/text.hpp"

#include <cctype>
#include <sstream>

#include <openssl/evp.h>

namespace hgrag::text {

namespace {

bool is_unicode_punct(std::uint32_t cp) {
    if (cp == 0x00A1 || cp == 0x00A7 || cp == 0x00AB || cp == 0x00B6 ||
        cp == 0x00B7 || cp == 0x00BB || cp == 0x00BF) {
        return true;
    }
    if (cp >= 0x2010 && cp <= 0x2027) return true;  // dashes, quotes, ellipsis
    if (cp >= 0x2030 && cp <= 0x205E) return true;  // general punctuation
    if (cp >= 0x2E00 && cp <= 0x2E7F) return true;  // supplemental punctuation
    if (cp >= 0x3001 && cp <= 0x3003) return true;  // CJK comma / full stop
    if (cp == 0x300C || cp == 0x300D || cp == 0x300E || cp == 0x300F) return true;
    if (cp >= 0xFF01 && cp <= 0xFF0F) return true;  // fullwidth ! .. /
    if (cp >= 0xFF1A && cp <= 0xFF1F) return true;  // fullwidth : .. ?
    if (cp >= 0xFF3B && cp <= 0xFF40) return true;
    if (cp >= 0xFF5B && cp <= 0xFF65) return true;
    return false;
}

// Decodes one UTF-8 sequence starting at i; on malformed input consumes one
// byte and returns it as-is.
std::uint32_t decode_utf8(std::string_view s, std::size_t& i, std::size_t& len) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    std::size_t n = 0;
    std::uint32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        n = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        n = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        n = 4;
        cp = b0 & 0x07;
    } else {
        len = 1;
        return b0;
    }
    if (i + n > s.size()) {
        len = 1;
        return b0;
    }
    for (std::size_t k = 1; k < n; ++k) {
        const auto bk = static_cast<unsigned char>(s[i + k]);
        if ((bk & 0xC0) != 0x80) {
            len = 1;
            return b0;
        }
        cp = (cp << 6) | (bk & 0x3F);
    }
    len = n;
    return cp;
}

}  // namespace

std::string normalize(std::string_view input) {
    std::string out;
    out.reserve(input.size());
    bool pending_space = false;
    auto emit = [&](char c) {
        if (c == ' ') {
            if (!out.empty()) pending_space = true;
            return;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(c);
    };
    std::size_t i = 0;
    while (i < input.size()) {
        const auto b = static_cast<unsigned char>(input[i]);
        if (b < 0x80) {
            if (std::isspace(b) || std::ispunct(b)) {
                emit(' ');
            } else {
                emit(static_cast<char>(std::tolower(b)));
            }
            ++i;
            continue;
        }
        std::size_t len = 0;
        const std::uint32_t cp = decode_utf8(input, i, len);
        if (is_unicode_punct(cp)) {
            emit(' ');
        } else {
            for (std::size_t k = 0; k < len; ++k) emit(input[i + k]);
        }
        i += len;
    }
    return out;
}

std::vector<std::string> split_tokens(std::string_view normalized) {
    std::vector<std::string> tokens;
    std::size_t pos = 0;
    while (pos < normalized.size()) {
        const auto next = normalized.find(' ', pos);
        const auto end = (next == std::string_view::npos) ? normalized.size() : next;
        if (end > pos) tokens.emplace_back(normalized.substr(pos, end - pos));
        pos = end + 1;
    }
    return tokens;
}

std::map<std::string, int> token_multiset(std::string_view normalized) {
    std::map<std::string, int> counts;
    for (auto& tok : split_tokens(normalized)) counts[tok] += 1;
    return counts;
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (const char c : data) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int digest_len = 0;
    EVP_Digest(data.data(), data.size(), digest, &digest_len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(digest_len * 2);
    for (unsigned int i = 0; i < digest_len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0x0F]);
    }
    return out;
}

std::string_view trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string to_upper_ascii(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace hgrag::text
