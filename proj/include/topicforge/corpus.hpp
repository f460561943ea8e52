#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "topicforge/errors.hpp"
#include "topicforge/text.hpp"

namespace topicforge {

struct TokenizedDocument {
    std::string id;
    std::vector<std::uint32_t> tokens;
};

// A document still carrying word strings, between tokenization and
// vocabulary indexing.
struct WordDocument {
    std::string id;
    std::vector<std::string> words;
};

class Vocabulary {
public:
    std::uint32_t add(const std::string& word) {
        auto it = index_.find(word);
        if (it != index_.end()) return it->second;
        const auto id = static_cast<std::uint32_t>(words_.size());
        words_.push_back(word);
        index_.emplace(word, id);
        return id;
    }

    // Returns size() when the word is unknown.
    std::uint32_t lookup(const std::string& word) const {
        auto it = index_.find(word);
        return it == index_.end() ? static_cast<std::uint32_t>(words_.size()) : it->second;
    }

    bool contains(const std::string& word) const { return index_.count(word) != 0; }
    const std::string& word(std::uint32_t id) const { return words_.at(id); }
    std::size_t size() const { return words_.size(); }
    const std::vector<std::string>& words() const { return words_; }

private:
    std::vector<std::string> words_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

struct Corpus {
    Vocabulary vocabulary;
    std::vector<TokenizedDocument> docs;
    std::vector<std::int64_t> word_freq;  // total corpus frequency per token id
    std::vector<std::int64_t> doc_freq;   // number of documents containing the word
    std::size_t num_docs = 0;             // documents with >= 1 token
    std::size_t num_tokens = 0;
    std::size_t excluded_docs = 0;        // emptied by filtering, left out of training
};

// Vocabulary = words with total corpus frequency >= min_token_count, ids in
// order of first appearance. Documents emptied by the cut are excluded from
// docs but counted in excluded_docs.
inline Corpus build_corpus(const std::vector<WordDocument>& docs, int min_token_count) {
    if (min_token_count < 1)
        throw InvalidHyperparams("min_token_count must be >= 1, got " +
                                 std::to_string(min_token_count));

    std::unordered_map<std::string, std::int64_t> freq;
    for (const auto& doc : docs)
        for (const auto& word : doc.words) ++freq[word];

    Corpus corpus;
    for (const auto& doc : docs) {
        TokenizedDocument enc{doc.id, {}};
        enc.tokens.reserve(doc.words.size());
        for (const auto& word : doc.words) {
            if (freq[word] < min_token_count) continue;
            enc.tokens.push_back(corpus.vocabulary.add(word));
        }
        if (enc.tokens.empty()) {
            ++corpus.excluded_docs;
            continue;
        }
        corpus.num_tokens += enc.tokens.size();
        corpus.docs.push_back(std::move(enc));
    }
    corpus.num_docs = corpus.docs.size();
    if (corpus.docs.empty()) throw EmptyCorpus();

    const std::size_t vocab = corpus.vocabulary.size();
    corpus.word_freq.assign(vocab, 0);
    corpus.doc_freq.assign(vocab, 0);
    std::vector<std::uint32_t> last_doc(vocab, static_cast<std::uint32_t>(-1));
    for (std::size_t d = 0; d < corpus.docs.size(); ++d) {
        for (std::uint32_t t : corpus.docs[d].tokens) {
            ++corpus.word_freq[t];
            if (last_doc[t] != d) {
                last_doc[t] = static_cast<std::uint32_t>(d);
                ++corpus.doc_freq[t];
            }
        }
    }
    return corpus;
}

// Full preprocessing pipeline: dedup -> language filter -> normalize ->
// vocabulary cut.
inline Corpus preprocess_corpus(const std::vector<RawDocument>& raw,
                                const PipelineConfig& cfg, int min_token_count) {
    std::vector<WordDocument> tokenized;
    for (const auto& doc : filter_language(deduplicate(raw), cfg))
        tokenized.push_back({doc.id, normalize_and_tokenize(doc.text, cfg)});
    return build_corpus(tokenized, min_token_count);
}

}  // namespace topicforge
