#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "topicforge/corpus.hpp"
#include "topicforge/errors.hpp"
#include "topicforge/lda.hpp"
#include "topicforge/model_io.hpp"

namespace topicforge {

struct Clustering {
    std::vector<std::uint32_t> labels;  // per document cluster id
    std::uint32_t n_clusters = 0;
};

namespace detail {

// Entropy in bits from cluster sizes. Summing (c/n)*log2(n/c) keeps every
// term non-negative, and sorting first makes the result a function of the
// count multiset alone, so identical partitions get bit-identical entropies
// no matter how their labels are arranged.
inline double entropy_of_counts(std::vector<std::int64_t> counts, std::size_t total) {
    std::sort(counts.begin(), counts.end());
    const double n = static_cast<double>(total);
    double h = 0.0;
    for (std::int64_t c : counts)
        if (c > 0) h += (static_cast<double>(c) / n) * std::log2(n / static_cast<double>(c));
    return h;
}

inline std::vector<std::int64_t> cluster_sizes(const Clustering& c) {
    std::vector<std::int64_t> counts(c.n_clusters, 0);
    for (std::uint32_t label : c.labels) ++counts.at(label);
    return counts;
}

inline void require_same_universe(const Clustering& x, const Clustering& y) {
    if (x.labels.empty() || y.labels.empty()) throw EmptyClustering();
    if (x.labels.size() != y.labels.size())
        throw MismatchedUniverse("clusterings cover " + std::to_string(x.labels.size()) +
                                 " vs " + std::to_string(y.labels.size()) + " documents");
}

inline std::vector<std::int64_t> joint_sizes(const Clustering& x, const Clustering& y) {
    std::unordered_map<std::uint64_t, std::int64_t> cells;
    for (std::size_t d = 0; d < x.labels.size(); ++d) {
        const std::uint64_t key =
            (static_cast<std::uint64_t>(x.labels[d]) << 32) | y.labels[d];
        ++cells[key];
    }
    std::vector<std::int64_t> counts;
    counts.reserve(cells.size());
    for (const auto& [key, c] : cells) counts.push_back(c);
    return counts;
}

}  // namespace detail

inline double entropy(const Clustering& c) {
    if (c.labels.empty()) throw EmptyClustering();
    return detail::entropy_of_counts(detail::cluster_sizes(c), c.labels.size());
}

// I(X;Y) in bits, computed as H(X) + H(Y) - H(X,Y). Equal to the direct
// sum over contingency cells of p(x,y) log2(p(x,y)/(p(x)p(y))), but exact
// at the endpoints: identical partitions give I = H bit-for-bit.
inline double mutual_information(const Clustering& x, const Clustering& y) {
    detail::require_same_universe(x, y);
    const std::size_t n = x.labels.size();
    const double hx = detail::entropy_of_counts(detail::cluster_sizes(x), n);
    const double hy = detail::entropy_of_counts(detail::cluster_sizes(y), n);
    const double hxy = detail::entropy_of_counts(detail::joint_sizes(x, y), n);
    return std::max(hx + hy - hxy, 0.0);
}

// NMI = 2 I(X;Y) / (H(X) + H(Y)), in [0, 1]. Two degenerate one-cluster
// partitions are identical, so the 0/0 case reports 1.
inline double nmi(const Clustering& x, const Clustering& y) {
    detail::require_same_universe(x, y);
    const std::size_t n = x.labels.size();
    const double hx = detail::entropy_of_counts(detail::cluster_sizes(x), n);
    const double hy = detail::entropy_of_counts(detail::cluster_sizes(y), n);
    if (hx + hy == 0.0) return 1.0;
    const double i = std::max(hx + hy - detail::entropy_of_counts(detail::joint_sizes(x, y), n), 0.0);
    return std::min(2.0 * i / (hx + hy), 1.0);
}

// Document frequencies and pairwise document co-occurrence counts for a
// fixed word set, gathered in one corpus pass.
class CooccurrenceCounts {
public:
    CooccurrenceCounts(const Corpus& corpus, const std::vector<std::string>& words) {
        std::vector<std::uint32_t> token_ids;
        for (const auto& w : words) {
            if (ids_.count(w)) continue;
            const std::uint32_t t = corpus.vocabulary.lookup(w);
            if (t == corpus.vocabulary.size()) throw UnknownWord("word not in vocabulary: " + w);
            const auto local = static_cast<std::uint32_t>(doc_freq_.size());
            ids_.emplace(w, local);
            token_ids.push_back(t);
            doc_freq_.push_back(0);
        }
        std::unordered_map<std::uint32_t, std::uint32_t> token_to_local;
        for (std::uint32_t i = 0; i < token_ids.size(); ++i)
            token_to_local.emplace(token_ids[i], i);

        std::vector<std::uint32_t> present;
        for (const auto& doc : corpus.docs) {
            present.clear();
            for (std::uint32_t t : doc.tokens) {
                auto it = token_to_local.find(t);
                if (it != token_to_local.end()) present.push_back(it->second);
            }
            std::sort(present.begin(), present.end());
            present.erase(std::unique(present.begin(), present.end()), present.end());
            for (std::size_t a = 0; a < present.size(); ++a) {
                ++doc_freq_[present[a]];
                for (std::size_t b = a + 1; b < present.size(); ++b)
                    ++pairs_[pair_key(present[a], present[b])];
            }
        }
    }

    // T(w): number of documents containing w.
    std::int64_t t(const std::string& w) const { return doc_freq_[local(w)]; }

    // T(a,b): number of documents containing both; T(a,a) = T(a).
    std::int64_t t(const std::string& a, const std::string& b) const {
        const std::uint32_t la = local(a);
        const std::uint32_t lb = local(b);
        if (la == lb) return doc_freq_[la];
        auto it = pairs_.find(pair_key(std::min(la, lb), std::max(la, lb)));
        return it == pairs_.end() ? 0 : it->second;
    }

private:
    std::uint32_t local(const std::string& w) const {
        auto it = ids_.find(w);
        if (it == ids_.end()) throw UnknownWord("word not counted: " + w);
        return it->second;
    }
    static std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
        return (static_cast<std::uint64_t>(a) << 32) | b;
    }

    std::unordered_map<std::string, std::uint32_t> ids_;
    std::vector<std::int64_t> doc_freq_;
    std::unordered_map<std::uint64_t, std::int64_t> pairs_;
};

inline CooccurrenceCounts cooccurrence_counts(const Corpus& corpus,
                                              const std::vector<std::string>& words) {
    return CooccurrenceCounts(corpus, words);
}

// Co(k,W) over a ranked word list: sum for m = 2..M, l = 1..m-1 of
// ln((T(w_m,w_l) + 1) / T(w_l)), natural log. Higher is more coherent.
inline double topic_coherence_co(const std::vector<std::string>& topic_words,
                                 const CooccurrenceCounts& counts) {
    double co = 0.0;
    for (std::size_t m = 1; m < topic_words.size(); ++m)
        for (std::size_t l = 0; l < m; ++l)
            co += std::log(
                static_cast<double>(counts.t(topic_words[m], topic_words[l]) + 1) /
                static_cast<double>(counts.t(topic_words[l])));
    return co;
}

struct CoherenceReport {
    std::uint32_t top_m = 0;
    std::vector<std::vector<std::string>> word_sets;  // scored words per topic
    std::vector<double> per_topic_co;
    std::vector<double> per_topic_col;  // Co_k / |W_k|
    double mean_co = 0.0;
    double mean_col = 0.0;
    double sd = 0.0;  // over the Col values
};

// SD = sqrt(|sum(v^2)/N - (sum(v)/N)^2|); the absolute value only guards
// rounding, the variance itself cannot go negative.
inline double coherence_sd(const std::vector<double>& values) {
    double sum = 0.0, sumsq = 0.0;
    for (double v : values) {
        sum += v;
        sumsq += v * v;
    }
    const double n = static_cast<double>(values.size());
    const double mean = sum / n;
    return std::sqrt(std::fabs(sumsq / n - mean * mean));
}

inline CoherenceReport coherence_report(const LdaModel& model, const Corpus& corpus,
                                        std::uint32_t top_m) {
    if (top_m < 1) throw InvalidHyperparams("top_m must be at least 1");
    CoherenceReport report;
    report.top_m = top_m;

    std::vector<std::string> all_words;
    for (std::uint32_t k = 0; k < model.num_topics(); ++k) {
        auto& words = report.word_sets.emplace_back();
        for (const auto& [word, count] : topic_summary(model, k, top_m).entries)
            words.push_back(word);
        all_words.insert(all_words.end(), words.begin(), words.end());
    }
    const CooccurrenceCounts counts(corpus, all_words);

    for (std::uint32_t k = 0; k < model.num_topics(); ++k) {
        const auto& words = report.word_sets[k];
        const double co = topic_coherence_co(words, counts);
        report.per_topic_co.push_back(co);
        // A topic nothing was assigned to scores no words; call its Col 0.
        report.per_topic_col.push_back(words.empty() ? 0.0 : co / static_cast<double>(words.size()));
    }
    const auto n = static_cast<double>(model.num_topics());
    for (double v : report.per_topic_co) report.mean_co += v;
    for (double v : report.per_topic_col) report.mean_col += v;
    report.mean_co /= n;
    report.mean_col /= n;
    report.sd = coherence_sd(report.per_topic_col);
    return report;
}

inline Clustering assignment_clustering(const LdaModel& m) {
    Clustering c;
    c.n_clusters = m.num_topics();
    c.labels.reserve(m.num_docs());
    for (std::size_t d = 0; d < m.num_docs(); ++d)
        c.labels.push_back(majority_assignment_cluster(m, d));
    return c;
}

inline Clustering hard_label_clustering(const LdaModel& m) {
    Clustering c;
    c.n_clusters = m.num_topics();
    c.labels.reserve(m.num_docs());
    for (std::size_t d = 0; d < m.num_docs(); ++d) c.labels.push_back(hard_label(m, d));
    return c;
}

inline Clustering posterior_label_clustering(const LdaModel& m) {
    Clustering c;
    c.n_clusters = m.num_topics();
    if (m.posterior_labels.empty()) return hard_label_clustering(m);
    c.labels = m.posterior_labels;
    return c;
}

// Cluster quality of a trained model: agreement between the final sample's
// per-document plurality topic and the label consensus accumulated across
// late sweeps. A sampler still jumping between topics scores low.
inline double model_nmi(const LdaModel& m) {
    return nmi(assignment_clustering(m), posterior_label_clustering(m));
}

inline nlohmann::json eval_json(const LdaModel& model, double nmi_value,
                                const CoherenceReport& report) {
    nlohmann::json per_topic = nlohmann::json::array();
    for (std::size_t k = 0; k < report.per_topic_co.size(); ++k)
        per_topic.push_back({{"topic", k},
                             {"co", report.per_topic_co[k]},
                             {"col", report.per_topic_col[k]}});
    return {
        {"nmi", nmi_value},
        {"coherence",
         {{"top_m", report.top_m},
          {"per_topic", per_topic},
          {"mean_co", report.mean_co},
          {"mean_col", report.mean_col},
          {"sd", report.sd}}},
        {"model", hyperparams_json(model.hyperparams)},
    };
}

}  // namespace topicforge
