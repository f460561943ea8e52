#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "topicforge/corpus_io.hpp"
#include "topicforge/errors.hpp"
#include "topicforge/lda.hpp"

namespace topicforge {

namespace detail {

inline std::string assignments_blob(const LdaModel& m) {
    std::string out;
    for (const auto& zd : m.z)
        for (std::uint32_t k : zd) {
            char b[4] = {static_cast<char>(k & 0xff), static_cast<char>((k >> 8) & 0xff),
                         static_cast<char>((k >> 16) & 0xff), static_cast<char>((k >> 24) & 0xff)};
            out.append(b, 4);
        }
    return out;
}

inline std::string topics_tsv(const LdaModel& m) {
    std::string out;
    for (std::uint32_t k = 0; k < m.num_topics(); ++k) {
        const auto ranked = ranked_topic_words(m, k);
        for (std::size_t r = 0; r < ranked.size(); ++r) {
            out += std::to_string(k);
            out += '\t';
            out += std::to_string(r + 1);
            out += '\t';
            out += ranked[r].first;
            out += '\t';
            out += std::to_string(ranked[r].second);
            out += '\n';
        }
    }
    return out;
}

inline std::string doc_topics_csv(const LdaModel& m) {
    std::string out = "doc_id";
    for (std::uint32_t k = 0; k < m.num_topics(); ++k) out += ",topic_" + std::to_string(k);
    out += '\n';
    char cell[32];
    for (std::size_t d = 0; d < m.num_docs(); ++d) {
        out += m.doc_ids[d];
        for (double p : doc_topic_distribution(m, d)) {
            std::snprintf(cell, sizeof cell, ",%.6f", p);
            out += cell;
        }
        out += '\n';
    }
    return out;
}

inline std::string labels_tsv(const LdaModel& m) {
    std::string out = "doc_id\tassignment_cluster\tposterior_label\n";
    for (std::size_t d = 0; d < m.num_docs(); ++d) {
        out += m.doc_ids[d];
        out += '\t';
        out += std::to_string(majority_assignment_cluster(m, d));
        out += '\t';
        out += std::to_string(m.posterior_labels.empty() ? hard_label(m, d)
                                                         : m.posterior_labels[d]);
        out += '\n';
    }
    return out;
}

}  // namespace detail

inline nlohmann::json hyperparams_json(const LdaHyperparams& hp) {
    return {
        {"num_topics", hp.num_topics},   {"alpha", hp.alpha},
        {"beta", hp.beta},               {"min_token_count", hp.min_token_count},
        {"iterations", hp.iterations},   {"seed", hp.seed},
    };
}

inline LdaHyperparams hyperparams_from_json(const nlohmann::json& j) {
    LdaHyperparams hp;
    hp.num_topics = j.at("num_topics").get<std::uint32_t>();
    hp.alpha = j.at("alpha").get<double>();
    hp.beta = j.at("beta").get<double>();
    hp.min_token_count = j.at("min_token_count").get<std::uint32_t>();
    hp.iterations = j.at("iterations").get<std::uint32_t>();
    hp.seed = j.at("seed").get<std::uint64_t>();
    return hp;
}

// Archive layout: model.json, assignments.bin (one little-endian 32-bit topic
// id per token, documents concatenated in corpus order), topics.tsv (full
// ranked word list per topic), doc_topics.csv, labels.tsv.
inline void save_model_archive(const LdaModel& m, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    nlohmann::json meta{
        {"hyperparams", hyperparams_json(m.hyperparams)},
        {"corpus_hash", hash_hex(m.corpus_hash)},
        {"vocab_size", m.vocab_size()},
        {"num_docs", m.num_docs()},
    };
    detail::write_file(fs::path(dir) / "model.json", meta.dump(2) + "\n");
    detail::write_file(fs::path(dir) / "assignments.bin", detail::assignments_blob(m));
    detail::write_file(fs::path(dir) / "topics.tsv", detail::topics_tsv(m));
    detail::write_file(fs::path(dir) / "doc_topics.csv", detail::doc_topics_csv(m));
    detail::write_file(fs::path(dir) / "labels.tsv", detail::labels_tsv(m));
}

// Rebuilds the full model from assignments.bin plus the training corpus; the
// count tables are derived, not stored. Refuses to pair with a corpus whose
// content hash differs from the one recorded at save time.
inline LdaModel load_model_archive(const std::string& dir, const Corpus& corpus) {
    namespace fs = std::filesystem;
    nlohmann::json meta =
        nlohmann::json::parse(detail::read_file(fs::path(dir) / "model.json"));

    LdaModel m;
    m.hyperparams = hyperparams_from_json(meta.at("hyperparams"));
    validate(m.hyperparams);
    m.corpus_hash = corpus_hash(corpus);
    if (hash_hex(m.corpus_hash) != meta.at("corpus_hash").get<std::string>())
        throw ArchiveMismatch("model at " + dir + " was trained on a different corpus");

    m.vocabulary = corpus.vocabulary;
    for (const auto& doc : corpus.docs) {
        m.doc_ids.push_back(doc.id);
        m.docs.push_back(doc.tokens);
    }

    const std::string blob = detail::read_file(fs::path(dir) / "assignments.bin");
    if (blob.size() != corpus.num_tokens * 4)
        throw ArchiveError("assignments.bin holds " + std::to_string(blob.size() / 4) +
                           " assignments, corpus has " + std::to_string(corpus.num_tokens) +
                           " tokens");
    const std::uint32_t n = m.hyperparams.num_topics;
    m.n_dk.resize(m.docs.size());
    m.n_kw.resize(n);
    m.n_k.assign(n, 0);
    std::vector<SparseRow> word_topic(m.vocab_size());
    std::size_t pos = 0;
    for (std::size_t d = 0; d < m.docs.size(); ++d) {
        auto& zd = m.z.emplace_back();
        for (std::uint32_t w : m.docs[d]) {
            const auto* b = reinterpret_cast<const unsigned char*>(blob.data() + pos);
            pos += 4;
            const std::uint32_t k = static_cast<std::uint32_t>(b[0]) |
                                    (static_cast<std::uint32_t>(b[1]) << 8) |
                                    (static_cast<std::uint32_t>(b[2]) << 16) |
                                    (static_cast<std::uint32_t>(b[3]) << 24);
            if (k >= n) throw ArchiveError("assignment topic id out of range in " + dir);
            zd.push_back(k);
            detail::bump_row(m.n_dk[d], k, +1);
            detail::bump_row(word_topic[w], k, +1);
            ++m.n_k[k];
        }
    }
    for (std::uint32_t w = 0; w < word_topic.size(); ++w)
        for (const auto& [k, c] : word_topic[w]) m.n_kw[k].emplace_back(w, c);

    std::istringstream labels(detail::read_file(fs::path(dir) / "labels.tsv"));
    std::string line;
    std::getline(labels, line);  // header
    std::size_t d = 0;
    while (std::getline(labels, line)) {
        if (line.empty()) continue;
        if (d >= m.num_docs()) throw ArchiveError("labels.tsv has more rows than documents");
        const std::size_t t1 = line.find('\t');
        const std::size_t t2 = line.find('\t', t1 + 1);
        if (t1 == std::string::npos || t2 == std::string::npos)
            throw ArchiveError("malformed labels.tsv row in " + dir);
        m.posterior_labels.push_back(
            static_cast<std::uint32_t>(std::stoul(line.substr(t2 + 1))));
        ++d;
    }
    if (d != m.num_docs()) throw ArchiveError("labels.tsv has fewer rows than documents");
    return m;
}

}  // namespace topicforge
