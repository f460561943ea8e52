#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <numeric>

#include "test_support.hpp"
#include "topicforge/corpus.hpp"
#include "topicforge/lda.hpp"
#include "topicforge/model_io.hpp"

using namespace topicforge;
using Catch::Approx;
namespace fs = std::filesystem;

namespace {

Corpus two_word_corpus() {
    std::vector<WordDocument> docs;
    for (int d = 0; d < 6; ++d)
        docs.push_back({std::to_string(d), {"left", "right", "left"}});
    return build_corpus(docs, 1);
}

// Two all-topic-0 documents over a 10 word vocabulary, arranged so removing
// doc 0's first token leaves counts n_d = [2,0], n_w = [3,0], n = [5,0].
LdaModel hand_model() {
    LdaModel m;
    m.hyperparams.num_topics = 2;
    m.hyperparams.alpha = 0.1;
    m.hyperparams.beta = 0.01;
    for (int i = 0; i < 10; ++i) m.vocabulary.add("w" + std::to_string(i));
    m.doc_ids = {"d0", "d1"};
    m.docs = {{0, 0, 1}, {0, 0, 2}};
    m.z = {{0, 0, 0}, {0, 0, 0}};
    m.n_dk = {{{0, 3}}, {{0, 3}}};
    m.n_kw = {{{0, 4}, {1, 1}, {2, 1}}, {}};
    m.n_k = {6, 0};
    return m;
}

}  // namespace

TEST_CASE("hyperparameter validation") {
    LdaHyperparams hp;
    hp.num_topics = 2;
    CHECK_NOTHROW(validate(hp));
    hp.num_topics = 0;
    CHECK_THROWS_AS(validate(hp), InvalidHyperparams);
    hp.num_topics = 2;
    hp.alpha = 0.0;
    CHECK_THROWS_AS(validate(hp), InvalidHyperparams);
    hp.alpha = 0.1;
    hp.beta = -0.01;
    CHECK_THROWS_AS(validate(hp), InvalidHyperparams);
    hp.beta = 0.01;
    hp.iterations = 0;
    CHECK_THROWS_AS(validate(hp), InvalidHyperparams);
    hp.iterations = 10;
    hp.min_token_count = 0;
    CHECK_THROWS_AS(validate(hp), InvalidHyperparams);
}

TEST_CASE("training with one topic assigns everything to it") {
    const Corpus corpus = two_word_corpus();
    LdaHyperparams hp;
    hp.num_topics = 1;
    hp.iterations = 3;
    const LdaModel m = train(corpus, hp);
    CHECK(m.n_k[0] == static_cast<std::int64_t>(corpus.num_tokens));
    for (const auto& zd : m.z)
        for (std::uint32_t k : zd) CHECK(k == 0);
    CHECK(doc_topic_distribution(m, 0) == std::vector<double>{1.0});
    CHECK(gibbs_conditional(m, 0, 0) == std::vector<double>{1.0});
    CHECK(hard_label(m, 0) == 0);
}

TEST_CASE("train refuses an empty corpus") {
    const Corpus corpus;
    LdaHyperparams hp;
    hp.num_topics = 2;
    CHECK_THROWS_AS(train(corpus, hp), EmptyCorpus);
}

TEST_CASE("gibbs conditional matches the hand evaluation") {
    const LdaModel m = hand_model();
    const auto p = gibbs_conditional(m, 0, 0);
    REQUIRE(p.size() == 2);
    // Unnormalized weights: (2.1 * 3.01) / 5.1 and (0.1 * 0.01) / 0.1.
    CHECK(p[0] == Approx(0.9919962335216572).margin(1e-12));
    CHECK(p[1] == Approx(0.0080037664783428).margin(1e-12));
    CHECK(p[0] + p[1] == Approx(1.0).margin(1e-12));
}

TEST_CASE("gibbs conditional is uniform when nothing else is assigned") {
    LdaModel m;
    m.hyperparams.num_topics = 4;
    m.hyperparams.alpha = 0.1;
    m.hyperparams.beta = 0.01;
    for (int i = 0; i < 10; ++i) m.vocabulary.add("w" + std::to_string(i));
    m.doc_ids = {"d0"};
    m.docs = {{0}};
    m.z = {{2}};
    m.n_dk = {{{2, 1}}};
    m.n_kw = {{}, {}, {{0, 1}}, {}};
    m.n_k = {0, 0, 1, 0};
    const auto p = gibbs_conditional(m, 0, 0);
    for (double v : p) CHECK(v == Approx(0.25).margin(1e-12));
}

TEST_CASE("gibbs conditional is positive and sums to one on trained models") {
    LdaHyperparams hp;
    hp.num_topics = 3;
    hp.iterations = 5;
    hp.seed = 11;
    const LdaModel m = train(two_word_corpus(), hp);
    for (std::size_t d = 0; d < m.num_docs(); ++d) {
        double sum = 0.0;
        for (double v : gibbs_conditional(m, d, 0)) {
            CHECK(v > 0.0);
            sum += v;
        }
        CHECK(sum == Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("doc_topic_distribution smooths counts") {
    LdaModel m = hand_model();
    m.docs = {{0, 1}, {0, 0, 1, 2}};
    m.z = {{0, 0}, {0, 0, 1, 1}};
    m.n_dk = {{{0, 2}}, {{0, 2}, {1, 2}}};
    m.n_kw = {{{0, 3}, {1, 1}}, {{1, 1}, {2, 1}}};
    m.n_k = {4, 2};

    const auto theta = doc_topic_distribution(m, 0);
    REQUIRE(theta.size() == 2);
    CHECK(theta[0] == Approx(0.9545454545454545).margin(1e-12));
    CHECK(theta[1] == Approx(0.0454545454545455).margin(1e-12));
    CHECK(theta[0] + theta[1] == Approx(1.0).margin(1e-12));

    const auto uniform = doc_topic_distribution(m, 1);
    CHECK(uniform[0] == Approx(0.5).margin(1e-12));
    CHECK(uniform[1] == Approx(0.5).margin(1e-12));

    CHECK_THROWS_AS(doc_topic_distribution(m, 2), UnknownDoc);
}

TEST_CASE("topic_word_distribution sums to one") {
    LdaHyperparams hp;
    hp.num_topics = 3;
    hp.iterations = 10;
    hp.seed = 4;
    const LdaModel m = train(two_word_corpus(), hp);
    for (std::uint32_t k = 0; k < 3; ++k) {
        const auto phi = topic_word_distribution(m, k);
        CHECK(std::accumulate(phi.begin(), phi.end(), 0.0) == Approx(1.0).margin(1e-12));
    }
    CHECK_THROWS_AS(topic_word_distribution(m, 3), UnknownTopic);
}

TEST_CASE("topic_summary ranks by count then token id") {
    LdaModel m;
    m.hyperparams.num_topics = 2;
    m.vocabulary.add("market");
    m.vocabulary.add("blast");
    m.vocabulary.add("tied");
    m.doc_ids = {"d0"};
    m.docs = {{0}};
    m.z = {{0}};
    m.n_dk = {{{0, 1}}};
    m.n_kw = {{{0, 7}, {1, 3}}, {}};
    m.n_k = {10, 0};

    const auto top1 = topic_summary(m, 0, 1);
    REQUIRE(top1.entries.size() == 1);
    CHECK(top1.entries[0].first == "market");
    CHECK(top1.entries[0].second == 7);

    CHECK(topic_summary(m, 1, 5).entries.empty());

    m.n_kw[0] = {{0, 2}, {2, 2}};
    const auto tied = topic_summary(m, 0, 2);
    REQUIRE(tied.entries.size() == 2);
    CHECK(tied.entries[0].first == "market");
    CHECK(tied.entries[1].first == "tied");

    CHECK_THROWS_AS(topic_summary(m, 2, 1), UnknownTopic);
}

TEST_CASE("hard_label picks the largest theta with low-id ties") {
    const LdaModel m = hand_model();
    CHECK(hard_label(m, 0) == 0);

    LdaModel tie = hand_model();
    tie.n_dk[0] = {{0, 2}, {1, 2}};
    CHECK(hard_label(tie, 0) == 0);
    CHECK_THROWS_AS(hard_label(m, 9), UnknownDoc);
}

TEST_CASE("majority_assignment_cluster is the plurality of assignments") {
    LdaModel m = hand_model();
    m.hyperparams.num_topics = 3;
    m.n_kw.push_back({});
    m.n_k = {4, 2, 0};
    m.z = {{1, 1, 0}, {2, 2, 2}};
    CHECK(majority_assignment_cluster(m, 0) == 1);
    CHECK(majority_assignment_cluster(m, 1) == 2);
    m.z[0] = {0, 1, 1};
    CHECK(majority_assignment_cluster(m, 0) == 1);
    m.z[0] = {1, 0, 0};
    CHECK(majority_assignment_cluster(m, 0) == 0);
    m.docs[0] = {0, 0};
    m.z[0] = {0, 1};
    CHECK(majority_assignment_cluster(m, 0) == 0);
    CHECK_THROWS_AS(majority_assignment_cluster(m, 5), UnknownDoc);
}

TEST_CASE("count tables stay conserved and rebuildable after training") {
    std::vector<WordDocument> docs;
    Rng rng(99);
    for (int d = 0; d < 40; ++d) {
        WordDocument doc{std::to_string(d), {}};
        const std::size_t len = 2 + rng.uniform_below(9);
        for (std::size_t i = 0; i < len; ++i)
            doc.words.push_back("v" + std::to_string(rng.uniform_below(25)));
        docs.push_back(std::move(doc));
    }
    const Corpus corpus = build_corpus(docs, 1);

    LdaHyperparams hp;
    hp.num_topics = 5;
    hp.iterations = 8;
    hp.seed = 123;
    const LdaModel m = train(corpus, hp);

    std::int64_t total = 0;
    for (std::size_t d = 0; d < m.num_docs(); ++d) {
        std::int64_t row = 0;
        for (const auto& [k, c] : m.n_dk[d]) row += c;
        CHECK(row == static_cast<std::int64_t>(m.docs[d].size()));
    }
    for (std::uint32_t k = 0; k < m.num_topics(); ++k) {
        std::int64_t row = 0;
        for (const auto& [w, c] : m.n_kw[k]) row += c;
        CHECK(row == m.n_k[k]);
        total += m.n_k[k];
    }
    CHECK(total == static_cast<std::int64_t>(corpus.num_tokens));

    const auto rebuilt = oracle::rebuild_tables(m);
    CHECK(rebuilt.n_dk == m.n_dk);
    CHECK(rebuilt.n_kw == m.n_kw);
    CHECK(rebuilt.n_k == m.n_k);
}

TEST_CASE("training is deterministic under a fixed seed") {
    const Corpus corpus = two_word_corpus();
    LdaHyperparams hp;
    hp.num_topics = 3;
    hp.iterations = 25;
    hp.seed = 2024;
    const LdaModel a = train(corpus, hp);
    const LdaModel b = train(corpus, hp);
    CHECK(a.z == b.z);
    CHECK(a.n_dk == b.n_dk);
    CHECK(a.n_kw == b.n_kw);
    CHECK(a.n_k == b.n_k);
    CHECK(a.posterior_labels == b.posterior_labels);

    hp.seed = 2025;
    const LdaModel c = train(corpus, hp);
    CHECK(a.z != c.z);
}

TEST_CASE("posterior labels with one sweep equal the final-sample argmax") {
    const Corpus corpus = two_word_corpus();
    LdaHyperparams hp;
    hp.num_topics = 4;
    hp.iterations = 1;
    hp.seed = 31;
    const LdaModel m = train(corpus, hp);
    REQUIRE(m.posterior_labels.size() == m.num_docs());
    for (std::size_t d = 0; d < m.num_docs(); ++d) {
        CHECK(m.posterior_labels[d] == hard_label(m, d));
        CHECK(m.posterior_labels[d] < m.num_topics());
    }
}

TEST_CASE("two disjoint vocabularies are recovered as two topics") {
    std::vector<WordDocument> docs;
    Rng rng(7);
    for (int d = 0; d < 80; ++d) {
        WordDocument doc{std::to_string(d), {}};
        const std::string prefix = (d % 2 == 0) ? "cat" : "dog";
        for (int i = 0; i < 8; ++i)
            doc.words.push_back(prefix + std::to_string(rng.uniform_below(10)));
        docs.push_back(std::move(doc));
    }
    const Corpus corpus = build_corpus(docs, 1);

    LdaHyperparams hp;
    hp.num_topics = 2;
    hp.iterations = 150;
    hp.seed = 5;
    const LdaModel m = train(corpus, hp);
    for (std::uint32_t k = 0; k < 2; ++k) {
        const auto top = topic_summary(m, k, 10);
        REQUIRE_FALSE(top.entries.empty());
        const std::string lead = top.entries[0].first.substr(0, 3);
        for (const auto& [word, count] : top.entries) CHECK(word.substr(0, 3) == lead);
    }
}

TEST_CASE("model archives round trip through save and load") {
    const Corpus corpus = two_word_corpus();
    LdaHyperparams hp;
    hp.num_topics = 2;
    hp.iterations = 12;
    hp.seed = 77;
    const LdaModel m = train(corpus, hp);

    const fs::path dir = fs::temp_directory_path() / "topicforge_model_rt";
    fs::remove_all(dir);
    save_model_archive(m, dir.string());

    const LdaModel loaded = load_model_archive(dir.string(), corpus);
    CHECK(loaded.z == m.z);
    CHECK(loaded.n_dk == m.n_dk);
    CHECK(loaded.n_kw == m.n_kw);
    CHECK(loaded.n_k == m.n_k);
    CHECK(loaded.posterior_labels == m.posterior_labels);
    CHECK(loaded.doc_ids == m.doc_ids);
    CHECK(loaded.hyperparams.seed == m.hyperparams.seed);
    CHECK(loaded.hyperparams.alpha == m.hyperparams.alpha);

    // assignments.bin is little-endian 32-bit, token order within doc order.
    const std::string blob = detail::read_file(dir / "assignments.bin");
    REQUIRE(blob.size() == corpus.num_tokens * 4);
    CHECK(static_cast<unsigned char>(blob[0]) == (m.z[0][0] & 0xff));
    CHECK(static_cast<unsigned char>(blob[1]) == ((m.z[0][0] >> 8) & 0xff));

    const fs::path dir2 = fs::temp_directory_path() / "topicforge_model_rt2";
    fs::remove_all(dir2);
    save_model_archive(loaded, dir2.string());
    for (const char* name :
         {"model.json", "assignments.bin", "topics.tsv", "doc_topics.csv", "labels.tsv"}) {
        CHECK(detail::read_file(dir / name) == detail::read_file(dir2 / name));
    }

    // A different corpus must be rejected.
    std::vector<WordDocument> other{{"0", {"left", "left", "right"}}};
    const Corpus wrong = build_corpus(other, 1);
    CHECK_THROWS_AS(load_model_archive(dir.string(), wrong), ArchiveMismatch);
    fs::remove_all(dir);
    fs::remove_all(dir2);
}
