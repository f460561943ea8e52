#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "topicforge/corpus.hpp"
#include "topicforge/corpus_io.hpp"
#include "topicforge/errors.hpp"
#include "topicforge/rng.hpp"

namespace topicforge {

struct LdaHyperparams {
    std::uint32_t num_topics = 0;
    double alpha = 0.1;
    double beta = 0.01;
    std::uint32_t min_token_count = 5;
    std::uint32_t iterations = 1000;
    std::uint64_t seed = 0;
};

inline void validate(const LdaHyperparams& hp) {
    if (hp.num_topics < 1) throw InvalidHyperparams("num_topics must be at least 1");
    if (!(hp.alpha > 0.0)) throw InvalidHyperparams("alpha must be positive");
    if (!(hp.beta > 0.0)) throw InvalidHyperparams("beta must be positive");
    if (hp.min_token_count < 1) throw InvalidHyperparams("min_token_count must be at least 1");
    if (hp.iterations < 1) throw InvalidHyperparams("iterations must be at least 1");
}

// Sparse count row: (index, count) pairs sorted by index, counts positive.
using SparseRow = std::vector<std::pair<std::uint32_t, std::int32_t>>;

inline std::int32_t row_count(const SparseRow& row, std::uint32_t key) {
    auto it = std::lower_bound(row.begin(), row.end(), key,
                               [](const auto& e, std::uint32_t k) { return e.first < k; });
    return (it != row.end() && it->first == key) ? it->second : 0;
}

namespace detail {

inline void bump_row(SparseRow& row, std::uint32_t key, std::int32_t delta) {
    auto it = std::lower_bound(row.begin(), row.end(), key,
                               [](const auto& e, std::uint32_t k) { return e.first < k; });
    if (it != row.end() && it->first == key) {
        it->second += delta;
        if (it->second == 0) row.erase(it);
    } else {
        row.insert(it, {key, delta});
    }
}

}  // namespace detail

struct LdaModel {
    LdaHyperparams hyperparams;
    Vocabulary vocabulary;
    std::vector<std::string> doc_ids;
    std::vector<std::vector<std::uint32_t>> docs;  // token word ids per document
    std::vector<std::vector<std::uint32_t>> z;     // topic assignment per token
    std::vector<SparseRow> n_dk;                   // per document: topic -> count
    std::vector<SparseRow> n_kw;                   // per topic: word -> count
    std::vector<std::int64_t> n_k;                 // tokens per topic
    std::vector<std::uint32_t> posterior_labels;   // see GibbsTrainer::finish
    std::uint64_t corpus_hash = 0;

    std::uint32_t num_topics() const { return hyperparams.num_topics; }
    std::size_t num_docs() const { return docs.size(); }
    std::size_t vocab_size() const { return vocabulary.size(); }
};

struct TopicSummary {
    std::uint32_t topic_id = 0;
    std::vector<std::pair<std::string, std::int64_t>> entries;  // descending count
};

inline std::vector<double> doc_topic_distribution(const LdaModel& m, std::size_t d) {
    if (d >= m.num_docs()) throw UnknownDoc(d);
    const std::uint32_t n = m.num_topics();
    const double denom = static_cast<double>(m.docs[d].size()) + n * m.hyperparams.alpha;
    std::vector<double> theta(n, m.hyperparams.alpha / denom);
    for (const auto& [k, c] : m.n_dk[d]) theta[k] = (c + m.hyperparams.alpha) / denom;
    return theta;
}

inline std::vector<double> topic_word_distribution(const LdaModel& m, std::uint32_t k) {
    if (k >= m.num_topics()) throw UnknownTopic(k);
    const double beta = m.hyperparams.beta;
    const double denom = static_cast<double>(m.n_k[k]) + m.vocab_size() * beta;
    std::vector<double> phi(m.vocab_size(), beta / denom);
    for (const auto& [w, c] : m.n_kw[k]) phi[w] = (c + beta) / denom;
    return phi;
}

// Collapsed conditional p(z_di = k | z_-di), evaluated with token (d,i)'s
// current assignment arithmetically removed from the tables. Plain-division
// form; the trainer's fused inner loop must agree with this to ~1e-12.
inline std::vector<double> gibbs_conditional(const LdaModel& m, std::size_t d, std::size_t i) {
    if (d >= m.num_docs()) throw UnknownDoc(d);
    const std::uint32_t n = m.num_topics();
    const std::uint32_t w = m.docs[d][i];
    const std::uint32_t old = m.z[d][i];
    const double alpha = m.hyperparams.alpha;
    const double beta = m.hyperparams.beta;
    const double vbeta = static_cast<double>(m.vocab_size()) * beta;
    const SparseRow& dk = m.n_dk[d];

    std::vector<double> p(n);
    double total = 0.0;
    for (std::uint32_t k = 0; k < n; ++k) {
        double ndk = row_count(dk, k);
        double nkw = row_count(m.n_kw[k], w);
        double nk = static_cast<double>(m.n_k[k]);
        if (k == old) {
            ndk -= 1.0;
            nkw -= 1.0;
            nk -= 1.0;
        }
        p[k] = (ndk + alpha) * (nkw + beta) / (nk + vbeta);
        total += p[k];
    }
    for (double& v : p) v /= total;
    return p;
}

inline std::vector<std::pair<std::string, std::int64_t>> ranked_topic_words(const LdaModel& m,
                                                                            std::uint32_t k) {
    std::vector<std::pair<std::uint32_t, std::int32_t>> entries(m.n_kw[k].begin(),
                                                                m.n_kw[k].end());
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<std::pair<std::string, std::int64_t>> out;
    out.reserve(entries.size());
    for (const auto& [w, c] : entries) out.emplace_back(m.vocabulary.word(w), c);
    return out;
}

inline TopicSummary topic_summary(const LdaModel& m, std::uint32_t k, std::size_t top_m) {
    if (k >= m.num_topics()) throw UnknownTopic(k);
    TopicSummary summary{k, ranked_topic_words(m, k)};
    if (summary.entries.size() > top_m) summary.entries.resize(top_m);
    return summary;
}

// argmax theta_d; with a shared denominator this is the largest n_dk count,
// so ties and all resolve on raw counts. Smallest topic id wins ties.
inline std::uint32_t hard_label(const LdaModel& m, std::size_t d) {
    if (d >= m.num_docs()) throw UnknownDoc(d);
    std::uint32_t best = 0;
    std::int32_t best_count = 0;
    for (const auto& [k, c] : m.n_dk[d]) {
        if (c > best_count) {
            best = k;
            best_count = c;
        }
    }
    return best;
}

// Plurality topic among document d's token assignments in the final sample.
inline std::uint32_t majority_assignment_cluster(const LdaModel& m, std::size_t d) {
    if (d >= m.num_docs()) throw UnknownDoc(d);
    std::vector<std::int64_t> votes(m.num_topics(), 0);
    for (std::uint32_t k : m.z[d]) ++votes[k];
    std::uint32_t best = 0;
    for (std::uint32_t k = 1; k < votes.size(); ++k)
        if (votes[k] > votes[best]) best = k;
    return best;
}

// Collapsed Gibbs sampler. One instance owns one training run; the evolving
// model is readable between sweeps, so tests can check count conservation
// after each pass. Count rows stay sorted and zero-free throughout.
class GibbsTrainer {
public:
    GibbsTrainer(const Corpus& corpus, const LdaHyperparams& hp) : rng_(hp.seed) {
        validate(hp);
        if (corpus.docs.empty()) throw EmptyCorpus();
        const std::uint32_t n = hp.num_topics;
        model_.hyperparams = hp;
        model_.vocabulary = corpus.vocabulary;
        model_.corpus_hash = corpus_hash(corpus);
        model_.doc_ids.reserve(corpus.docs.size());
        model_.docs.reserve(corpus.docs.size());
        for (const auto& doc : corpus.docs) {
            model_.doc_ids.push_back(doc.id);
            model_.docs.push_back(doc.tokens);
        }
        model_.n_k.assign(n, 0);
        word_topic_.resize(corpus.vocabulary.size());
        doc_scratch_.assign(n, 0);
        word_scratch_.assign(n, 0);
        cumulative_.assign(n, 0.0);
        accum_.resize(corpus.docs.size());

        vbeta_ = static_cast<double>(corpus.vocabulary.size()) * hp.beta;
        model_.z.resize(model_.docs.size());
        model_.n_dk.resize(model_.docs.size());
        model_.n_kw.resize(n);
        for (std::size_t d = 0; d < model_.docs.size(); ++d) {
            auto& zd = model_.z[d];
            zd.reserve(model_.docs[d].size());
            for (std::uint32_t w : model_.docs[d]) {
                const std::uint32_t k = rng_.uniform_below(n);
                zd.push_back(k);
                ++doc_scratch_[k];
                detail::bump_row(word_topic_[w], k, +1);
                ++model_.n_k[k];
            }
            gather_doc(d);
        }
        recip_.resize(n);
        for (std::uint32_t k = 0; k < n; ++k)
            recip_[k] = 1.0 / (static_cast<double>(model_.n_k[k]) + vbeta_);
        sync_topic_rows();
    }

    // One full pass resampling every token in document, then token, order.
    void sweep() {
        const std::uint32_t n = model_.num_topics();
        const double alpha = model_.hyperparams.alpha;
        const double beta = model_.hyperparams.beta;
        for (std::size_t d = 0; d < model_.docs.size(); ++d) {
            for (const auto& [k, c] : model_.n_dk[d]) doc_scratch_[k] = c;
            const auto& tokens = model_.docs[d];
            auto& zd = model_.z[d];
            for (std::size_t i = 0; i < tokens.size(); ++i) {
                const std::uint32_t w = tokens[i];
                const std::uint32_t old = zd[i];
                auto& wt = word_topic_[w];
                for (const auto& e : wt) word_scratch_[e.first] = e.second;

                --doc_scratch_[old];
                --word_scratch_[old];
                --model_.n_k[old];
                recip_[old] = 1.0 / (static_cast<double>(model_.n_k[old]) + vbeta_);

                double total = 0.0;
                for (std::uint32_t k = 0; k < n; ++k) {
                    total += (doc_scratch_[k] + alpha) * (word_scratch_[k] + beta) * recip_[k];
                    cumulative_[k] = total;
                }
                const double u = rng_.uniform01() * total;
                std::uint32_t pick = n - 1;
                for (std::uint32_t k = 0; k < n; ++k) {
                    if (u < cumulative_[k]) {
                        pick = k;
                        break;
                    }
                }

                ++doc_scratch_[pick];
                ++word_scratch_[pick];
                ++model_.n_k[pick];
                recip_[pick] = 1.0 / (static_cast<double>(model_.n_k[pick]) + vbeta_);
                zd[i] = pick;

                // Write the word's touched counts back; drop zeros, keep order.
                bool seen_pick = false;
                std::size_t j = 0;
                for (std::size_t idx = 0; idx < wt.size(); ++idx) {
                    const std::uint32_t k = wt[idx].first;
                    if (k == pick) seen_pick = true;
                    const std::int32_t c = word_scratch_[k];
                    word_scratch_[k] = 0;
                    if (c != 0) wt[j++] = {k, c};
                }
                wt.resize(j);
                if (!seen_pick) {
                    word_scratch_[pick] = 0;
                    detail::bump_row(wt, pick, +1);
                }
            }
            gather_doc(d);
        }
        sync_topic_rows();
        ++sweeps_done_;
        if (sweeps_done_ > model_.hyperparams.iterations / 2) accumulate();
    }

    const LdaModel& model() const { return model_; }

    // Posterior labels average n_dk over the back half of the sweeps run so
    // far: argmax of the summed counts, smallest topic id on ties. A soft
    // consensus across samples, unlike hard_label's single final sample.
    LdaModel finish() {
        model_.posterior_labels.resize(model_.docs.size());
        for (std::size_t d = 0; d < model_.docs.size(); ++d) {
            if (accum_sweeps_ == 0) {
                model_.posterior_labels[d] = hard_label(model_, d);
                continue;
            }
            const auto& sums = accum_[d];
            std::uint32_t best = 0;
            for (std::uint32_t k = 1; k < sums.size(); ++k)
                if (sums[k] > sums[best]) best = k;
            model_.posterior_labels[d] = best;
        }
        return std::move(model_);
    }

private:
    void gather_doc(std::size_t d) {
        auto& row = model_.n_dk[d];
        row.clear();
        for (std::uint32_t k = 0; k < model_.num_topics(); ++k) {
            if (doc_scratch_[k] != 0) row.emplace_back(k, doc_scratch_[k]);
            doc_scratch_[k] = 0;
        }
    }

    // Transpose the word-major training counts into the model's topic rows.
    void sync_topic_rows() {
        for (auto& row : model_.n_kw) row.clear();
        for (std::uint32_t w = 0; w < word_topic_.size(); ++w)
            for (const auto& [k, c] : word_topic_[w]) model_.n_kw[k].emplace_back(w, c);
    }

    void accumulate() {
        ++accum_sweeps_;
        for (std::size_t d = 0; d < model_.docs.size(); ++d) {
            auto& sums = accum_[d];
            if (sums.empty()) sums.assign(model_.num_topics(), 0);
            for (const auto& [k, c] : model_.n_dk[d]) sums[k] += static_cast<std::uint64_t>(c);
        }
    }

    LdaModel model_;
    std::vector<SparseRow> word_topic_;  // per word: topic -> count
    std::vector<std::int32_t> doc_scratch_;
    std::vector<std::int32_t> word_scratch_;
    std::vector<double> cumulative_;
    std::vector<double> recip_;  // 1 / (n_k + V*beta), kept in step with n_k
    std::vector<std::vector<std::uint64_t>> accum_;
    double vbeta_ = 0.0;
    std::uint32_t sweeps_done_ = 0;
    std::uint32_t accum_sweeps_ = 0;
    Rng rng_;
};

inline LdaModel train(const Corpus& corpus, const LdaHyperparams& hp) {
    GibbsTrainer trainer(corpus, hp);
    for (std::uint32_t s = 0; s < hp.iterations; ++s) trainer.sweep();
    return trainer.finish();
}

}  // namespace topicforge
