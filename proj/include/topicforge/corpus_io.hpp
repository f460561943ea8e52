#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "topicforge/corpus.hpp"
#include "topicforge/errors.hpp"

namespace topicforge {

namespace detail {

inline void fnv1a(std::uint64_t& h, const char* data, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        h ^= static_cast<unsigned char>(data[i]);
        h *= 0x100000001b3ull;
    }
}

inline void fnv1a(std::uint64_t& h, const std::string& s) { fnv1a(h, s.data(), s.size()); }

inline std::string vocab_tsv(const Corpus& corpus) {
    std::string out;
    for (std::size_t w = 0; w < corpus.vocabulary.size(); ++w) {
        out += std::to_string(w);
        out += '\t';
        out += corpus.vocabulary.word(static_cast<std::uint32_t>(w));
        out += '\t';
        out += std::to_string(corpus.word_freq[w]);
        out += '\t';
        out += std::to_string(corpus.doc_freq[w]);
        out += '\n';
    }
    return out;
}

inline std::string docs_txt(const Corpus& corpus) {
    std::string out;
    for (const auto& doc : corpus.docs) {
        out += doc.id;
        out += '\t';
        for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(doc.tokens[i]);
        }
        out += '\n';
    }
    return out;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ArchiveError("cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw ArchiveError("short write to " + path.string());
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArchiveError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace detail

// Content identity of a corpus, stored in model archives so a model is never
// evaluated against a different corpus.
inline std::uint64_t corpus_hash(const Corpus& corpus) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    detail::fnv1a(h, detail::vocab_tsv(corpus));
    detail::fnv1a(h, detail::docs_txt(corpus));
    return h;
}

inline std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// Archive layout: vocab.tsv (id, word, frequency, doc frequency), docs.txt
// (id TAB space-separated token ids), stats.json.
inline void save_corpus_archive(const Corpus& corpus, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    detail::write_file(fs::path(dir) / "vocab.tsv", detail::vocab_tsv(corpus));
    detail::write_file(fs::path(dir) / "docs.txt", detail::docs_txt(corpus));
    nlohmann::json stats{
        {"num_docs", corpus.num_docs},
        {"num_tokens", corpus.num_tokens},
        {"excluded_docs", corpus.excluded_docs},
    };
    detail::write_file(fs::path(dir) / "stats.json", stats.dump(2) + "\n");
}

inline Corpus load_corpus_archive(const std::string& dir) {
    namespace fs = std::filesystem;
    Corpus corpus;

    std::istringstream vocab(detail::read_file(fs::path(dir) / "vocab.tsv"));
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(vocab, line)) {
        ++lineno;
        std::istringstream row(line);
        std::uint64_t id;
        std::string word;
        std::int64_t freq, dfreq;
        if (!(row >> id >> word >> freq >> dfreq))
            throw ParseError(lineno, "malformed vocab.tsv row");
        if (id != corpus.vocabulary.size())
            throw ParseError(lineno, "vocab.tsv ids must be dense and ascending");
        corpus.vocabulary.add(word);
        corpus.word_freq.push_back(freq);
        corpus.doc_freq.push_back(dfreq);
    }

    std::istringstream docs(detail::read_file(fs::path(dir) / "docs.txt"));
    lineno = 0;
    while (std::getline(docs, line)) {
        ++lineno;
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos) throw ParseError(lineno, "malformed docs.txt row");
        TokenizedDocument doc{line.substr(0, tab), {}};
        std::istringstream ids(line.substr(tab + 1));
        std::uint64_t t;
        while (ids >> t) {
            if (t >= corpus.vocabulary.size())
                throw ParseError(lineno, "token id out of vocabulary range");
            doc.tokens.push_back(static_cast<std::uint32_t>(t));
        }
        if (doc.tokens.empty()) throw ParseError(lineno, "document with no tokens");
        corpus.num_tokens += doc.tokens.size();
        corpus.docs.push_back(std::move(doc));
    }
    corpus.num_docs = corpus.docs.size();
    if (corpus.docs.empty()) throw EmptyCorpus("corpus archive contains no documents");

    nlohmann::json stats =
        nlohmann::json::parse(detail::read_file(fs::path(dir) / "stats.json"));
    corpus.excluded_docs = stats.at("excluded_docs").get<std::size_t>();
    if (stats.at("num_docs").get<std::size_t>() != corpus.num_docs ||
        stats.at("num_tokens").get<std::size_t>() != corpus.num_tokens)
        throw ArchiveError("stats.json disagrees with docs.txt in " + dir);
    return corpus;
}

}  // namespace topicforge
