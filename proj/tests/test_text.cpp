#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "topicforge/text.hpp"

using namespace topicforge;

namespace {

PipelineConfig config_with(std::initializer_list<const char*> stopwords) {
    PipelineConfig cfg;
    for (const char* w : stopwords) cfg.stopwords.insert(w);
    return cfg;
}

std::string join(const std::vector<std::string>& tokens) {
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty()) out += ' ';
        out += t;
    }
    return out;
}

}  // namespace

TEST_CASE("deduplicate keeps first occurrence in order") {
    std::vector<RawDocument> docs{{"1", "RT bomb"}, {"2", "RT bomb"}};
    auto out = deduplicate(docs);
    REQUIRE(out.size() == 1);
    CHECK(out[0].id == "1");

    docs = {{"1", "a"}, {"2", "b"}, {"3", "a"}};
    out = deduplicate(docs);
    REQUIRE(out.size() == 2);
    CHECK(out[0].id == "1");
    CHECK(out[1].id == "2");

    CHECK(deduplicate({}).empty());
}

TEST_CASE("deduplicate compares whitespace-normalized text") {
    const std::vector<RawDocument> docs{{"1", "  bomb   blast "}, {"2", "bomb blast"}};
    const auto out = deduplicate(docs);
    REQUIRE(out.size() == 1);
    CHECK(out[0].id == "1");
}

TEST_CASE("deduplicate is idempotent") {
    const std::vector<RawDocument> docs{{"1", "x y"}, {"2", "x  y"}, {"3", "z"}, {"4", "z"}};
    const auto once = deduplicate(docs);
    const auto twice = deduplicate(once);
    REQUIRE(once.size() == twice.size());
    for (std::size_t i = 0; i < once.size(); ++i) CHECK(once[i].id == twice[i].id);
}

TEST_CASE("normalize_and_tokenize applies url, case, length and stopword rules") {
    const PipelineConfig cfg = config_with({"at", "the"});
    CHECK(join(normalize_and_tokenize("Bomb blast at the Gikomba market http://t.co/abc", cfg)) ==
          "bomb blast gikomba market");
    CHECK(normalize_and_tokenize("", cfg).empty());
    CHECK(normalize_and_tokenize("OF of Of", config_with({"of"})).empty());
}

TEST_CASE("tokenize strips https ftp and www urls") {
    const PipelineConfig cfg;
    CHECK(join(normalize_and_tokenize("see https://ex.com/a?b=1 and www.foo.org rest", cfg)) ==
          "see and rest");
    CHECK(join(normalize_and_tokenize("ftp://host/file fetched", cfg)) == "fetched");
}

TEST_CASE("tokenize keeps hashtag and mention prefixes") {
    const PipelineConfig cfg;
    const auto tokens = normalize_and_tokenize("#MpeketoniAttack by @RobertAlai today", cfg);
    REQUIRE(tokens.size() == 3);
    CHECK(tokens[0] == "#mpeketoniattack");
    CHECK(tokens[1] == "@robertalai");
    CHECK(tokens[2] == "today");
}

TEST_CASE("tokenize drops words shorter than min_word_len") {
    PipelineConfig cfg;
    CHECK(join(normalize_and_tokenize("a an the cat ran by it", cfg)) == "the cat ran");
    cfg.min_word_len = 4;
    CHECK(join(normalize_and_tokenize("a an the cat ran by it", cfg)).empty());
    cfg.min_word_len = 1;
    CHECK(join(normalize_and_tokenize("a b", cfg)) == "a b");
}

TEST_CASE("tokenize splits on punctuation and keeps utf8 bytes inside tokens") {
    const PipelineConfig cfg;
    CHECK(join(normalize_and_tokenize("end.of,line;here", cfg)) == "end line here");
    // "caf\xc3\xa9" is 5 bytes; the accented byte pair stays in the token.
    CHECK(join(normalize_and_tokenize("caf\xc3\xa9 time", cfg)) == "caf\xc3\xa9 time");
}

TEST_CASE("tokenization is stable under a second pass") {
    const PipelineConfig cfg = config_with({"the", "and"});
    const char* samples[] = {
        "Bomb blast at the Gikomba market http://t.co/abc",
        "#tag @user MIXED case 12ab ab12 x yz",
        "commas, dots. and; colons: everywhere!",
    };
    for (const char* s : samples) {
        const auto once = normalize_and_tokenize(s, cfg);
        const auto twice = normalize_and_tokenize(join(once), cfg);
        CHECK(once == twice);
    }
}

TEST_CASE("filter_language ratio rules") {
    PipelineConfig cfg = config_with({"the", "is", "on"});
    cfg.language_filter_threshold = 0.2;
    const std::vector<RawDocument> docs{{"1", "the market is on fire"}};
    CHECK(filter_language(docs, cfg).size() == 1);

    cfg.language_filter_threshold = 0.0;
    const std::vector<RawDocument> foreign{{"1", "habari za asubuhi rafiki"}};
    CHECK(filter_language(foreign, cfg).size() == 1);

    cfg.language_filter_threshold = 0.9;
    CHECK(filter_language(foreign, cfg).empty());

    const std::vector<RawDocument> empty_doc{{"1", "..."}};
    CHECK(filter_language(empty_doc, cfg).size() == 1);
}

TEST_CASE("english_token_ratio counts stopword and wordlist hits over raw tokens") {
    PipelineConfig cfg = config_with({"kwa"});
    CHECK(english_token_ratio("", cfg) == 1.0);
    // 1 hit ("kwa" via stopwords) out of 2 tokens.
    CHECK(english_token_ratio("kwa zzyyxx", cfg) == 0.5);
    // "and" comes from the built-in wordlist, not the stopword set.
    CHECK(english_token_ratio("and zzyyxx", cfg) == 0.5);
}

TEST_CASE("load_stopwords trims, lowercases and skips comments") {
    namespace fs = std::filesystem;
    const fs::path path = fs::temp_directory_path() / "topicforge_stop_test.txt";
    {
        std::ofstream out(path);
        out << "# comment line\n"
            << "The\n"
            << "  and  \n"
            << "\n"
            << "of\r\n";
    }
    const auto words = load_stopwords(path.string());
    fs::remove(path);
    CHECK(words.size() == 3);
    CHECK(words.count("the") == 1);
    CHECK(words.count("and") == 1);
    CHECK(words.count("of") == 1);
    CHECK(words.count("# comment line") == 0);
}

TEST_CASE("load_stopwords rejects missing files") {
    CHECK_THROWS_AS(load_stopwords("/nonexistent/stopwords.txt"), ArchiveError);
}
