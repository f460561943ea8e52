#pragma once

#include <stdexcept>
#include <string>

namespace topicforge {

struct EmptyCorpus : std::runtime_error {
    EmptyCorpus() : std::runtime_error("corpus has no document with at least one token") {}
    explicit EmptyCorpus(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidHyperparams : std::invalid_argument {
    explicit InvalidHyperparams(const std::string& what) : std::invalid_argument(what) {}
};

struct UnknownDoc : std::out_of_range {
    explicit UnknownDoc(std::size_t d)
        : std::out_of_range("unknown document index " + std::to_string(d)) {}
};

struct UnknownTopic : std::out_of_range {
    explicit UnknownTopic(long k)
        : std::out_of_range("unknown topic id " + std::to_string(k)) {}
};

struct UnknownWord : std::out_of_range {
    explicit UnknownWord(const std::string& what) : std::out_of_range(what) {}
};

struct EmptyClustering : std::invalid_argument {
    EmptyClustering() : std::invalid_argument("clustering covers no documents") {}
};

struct MismatchedUniverse : std::invalid_argument {
    explicit MismatchedUniverse(const std::string& what) : std::invalid_argument(what) {}
};

struct EmptyRows : std::invalid_argument {
    EmptyRows() : std::invalid_argument("no sweep rows to render") {}
};

// Line-addressed failure while reading an input file (JSONL/CSV/archive member).
struct ParseError : std::runtime_error {
    std::size_t line;
    ParseError(std::size_t line_, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

struct ArchiveError : std::runtime_error {
    explicit ArchiveError(const std::string& what) : std::runtime_error(what) {}
};

// Model and corpus archives disagree (corpus hash mismatch).
struct ArchiveMismatch : std::runtime_error {
    explicit ArchiveMismatch(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace topicforge
