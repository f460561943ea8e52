#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "topicforge/document_io.hpp"

using namespace topicforge;
namespace fs = std::filesystem;

namespace {

struct TempFile {
    fs::path path;
    explicit TempFile(const std::string& content) {
        static int counter = 0;
        path = fs::temp_directory_path() / ("topicforge_io_" + std::to_string(counter++));
        std::ofstream out(path, std::ios::binary);
        out << content;
    }
    ~TempFile() { fs::remove(path); }
};

}  // namespace

TEST_CASE("read_jsonl parses ids and text") {
    const TempFile file(
        "{\"id\":\"a1\",\"text\":\"first doc\"}\n"
        "{\"text\":\"no id here\"}\n"
        "{\"id\":42,\"text\":\"numeric id\"}\n");
    const auto docs = read_jsonl(file.path.string());
    REQUIRE(docs.size() == 3);
    CHECK(docs[0].id == "a1");
    CHECK(docs[0].text == "first doc");
    CHECK(docs[1].id == "2");  // synthesized from the line number
    CHECK(docs[2].id == "42");
}

TEST_CASE("read_jsonl skips blank lines and handles crlf") {
    const TempFile file("\n{\"text\":\"one\"}\r\n\n{\"text\":\"two\"}\n");
    const auto docs = read_jsonl(file.path.string());
    REQUIRE(docs.size() == 2);
    CHECK(docs[0].text == "one");
    CHECK(docs[0].id == "2");
    CHECK(docs[1].id == "4");
}

TEST_CASE("read_jsonl reports the offending line on parse failure") {
    const TempFile file("{\"text\":\"fine\"}\n{not json}\n");
    try {
        read_jsonl(file.path.string());
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("read_jsonl requires a string text field") {
    const TempFile missing("{\"id\":\"x\"}\n");
    CHECK_THROWS_AS(read_jsonl(missing.path.string()), ParseError);
    const TempFile wrong_type("{\"text\":7}\n");
    CHECK_THROWS_AS(read_jsonl(wrong_type.path.string()), ParseError);
}

TEST_CASE("read_csv picks columns by header name") {
    const TempFile file(
        "tweet_id,when,body\n"
        "t1,monday,first text\n"
        "t2,tuesday,second text\n");
    const auto docs = read_csv(file.path.string(), "body", "tweet_id");
    REQUIRE(docs.size() == 2);
    CHECK(docs[0].id == "t1");
    CHECK(docs[0].text == "first text");
    CHECK(docs[1].id == "t2");
    CHECK(docs[1].text == "second text");
}

TEST_CASE("read_csv synthesizes ids when no id column is given") {
    const TempFile file("body\nalpha\nbeta\n");
    const auto docs = read_csv(file.path.string(), "body");
    REQUIRE(docs.size() == 2);
    CHECK(docs[0].id == "1");
    CHECK(docs[1].id == "2");
}

TEST_CASE("read_csv handles quoted fields with commas escapes and newlines") {
    const TempFile file(
        "id,body\n"
        "1,\"hello, world\"\n"
        "2,\"she said \"\"hi\"\"\"\n"
        "3,\"line one\nline two\"\n");
    const auto docs = read_csv(file.path.string(), "body", "id");
    REQUIRE(docs.size() == 3);
    CHECK(docs[0].text == "hello, world");
    CHECK(docs[1].text == "she said \"hi\"");
    CHECK(docs[2].text == "line one\nline two");
}

TEST_CASE("read_csv rejects unknown columns and short rows") {
    const TempFile file("id,body\n1,text\n");
    CHECK_THROWS_AS(read_csv(file.path.string(), "nope"), ParseError);
    const TempFile short_row("id,body\n1\n");
    CHECK_THROWS_AS(read_csv(short_row.path.string(), "body", "id"), ParseError);
}
