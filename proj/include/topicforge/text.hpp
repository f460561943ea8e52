#pragma once

#include <cctype>
#include <fstream>
#include <mutex>
#include <regex>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "topicforge/errors.hpp"
#include "topicforge/wordlist.hpp"

namespace topicforge {

struct RawDocument {
    std::string id;
    std::string text;
};

struct PipelineConfig {
    std::unordered_set<std::string> stopwords;
    int min_word_len = 3;
    double language_filter_threshold = 0.2;
    std::string url_pattern = R"((https?|ftp)://\S+|www\.\S+)";
};

// Stopword file: UTF-8, one word per line, '#'-prefixed comment lines ignored.
inline std::unordered_set<std::string> load_stopwords(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArchiveError("cannot open stopword file: " + path);
    std::unordered_set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        line.erase(0, start);
        if (line.empty() || line[0] == '#') continue;
        for (char& c : line)
            c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        words.insert(line);
    }
    return words;
}

inline std::string normalize_whitespace(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    bool in_space = true;  // leading whitespace dropped
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            in_space = true;
        } else {
            if (in_space && !out.empty()) out.push_back(' ');
            out.push_back(c);
            in_space = false;
        }
    }
    return out;
}

// Drops exact duplicates (whitespace-normalized text), keeping the first
// occurrence; input order preserved.
inline std::vector<RawDocument> deduplicate(const std::vector<RawDocument>& docs) {
    std::vector<RawDocument> out;
    out.reserve(docs.size());
    std::unordered_set<std::string> seen;
    for (const auto& doc : docs) {
        if (seen.insert(normalize_whitespace(doc.text)).second) out.push_back(doc);
    }
    return out;
}

namespace detail {

inline bool is_token_char(unsigned char c) {
    // Bytes >= 0x80 are UTF-8 continuation/lead bytes of non-ASCII words;
    // they stay inside tokens untouched.
    return std::isalnum(c) || c >= 0x80;
}

// Lowercased alphanumeric runs; '#' and '@' stick to the token they prefix.
inline std::vector<std::string> split_tokens(const std::string& text) {
    std::vector<std::string> tokens;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) {
            tokens.push_back(cur);
            cur.clear();
        }
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const unsigned char c = static_cast<unsigned char>(text[i]);
        if (is_token_char(c)) {
            cur.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : text[i]);
        } else if ((c == '#' || c == '@') && i + 1 < text.size() &&
                   is_token_char(static_cast<unsigned char>(text[i + 1]))) {
            flush();
            cur.push_back(static_cast<char>(c));
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

inline const std::regex& compiled_pattern(const std::string& pattern) {
    thread_local std::unordered_map<std::string, std::regex> cache;
    auto it = cache.find(pattern);
    if (it == cache.end())
        it = cache.emplace(pattern, std::regex(pattern, std::regex::icase)).first;
    return it->second;
}

}  // namespace detail

inline std::string strip_urls(const std::string& text, const PipelineConfig& cfg) {
    if (cfg.url_pattern.empty()) return text;
    return std::regex_replace(text, detail::compiled_pattern(cfg.url_pattern), " ");
}

// URL spans removed, text lowercased, split on non-alphanumeric boundaries
// (keeping '#'/'@' prefixes), then short words and stopwords dropped.
inline std::vector<std::string> normalize_and_tokenize(const std::string& text,
                                                       const PipelineConfig& cfg) {
    std::vector<std::string> tokens = detail::split_tokens(strip_urls(text, cfg));
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (auto& tok : tokens) {
        if (tok.size() < static_cast<std::size_t>(cfg.min_word_len)) continue;
        if (cfg.stopwords.count(tok)) continue;
        out.push_back(std::move(tok));
    }
    return out;
}

// Fraction of raw tokens found in the stopword set or the bundled English
// list; a document is kept when the fraction reaches the threshold. Documents
// with no tokens are kept (nothing to judge them by).
inline double english_token_ratio(const std::string& text, const PipelineConfig& cfg) {
    const std::vector<std::string> tokens = detail::split_tokens(text);
    if (tokens.empty()) return 1.0;
    std::size_t hits = 0;
    const auto& wordlist = english_wordlist();
    for (const auto& tok : tokens) {
        if (cfg.stopwords.count(tok) || wordlist.count(tok)) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(tokens.size());
}

inline std::vector<RawDocument> filter_language(const std::vector<RawDocument>& docs,
                                                const PipelineConfig& cfg) {
    std::vector<RawDocument> out;
    out.reserve(docs.size());
    for (const auto& doc : docs) {
        if (english_token_ratio(doc.text, cfg) >= cfg.language_filter_threshold)
            out.push_back(doc);
    }
    return out;
}

}  // namespace topicforge
