#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "topicforge/errors.hpp"
#include "topicforge/text.hpp"

namespace topicforge {

// JSON-lines reader: one object per line, `text` required, `id` synthesized
// from the 1-based line number when absent. Blank lines are skipped.
inline std::vector<RawDocument> read_jsonl(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArchiveError("cannot open input file: " + path);
    std::vector<RawDocument> docs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
        if (obj.is_discarded() || !obj.is_object())
            throw ParseError(lineno, "not a JSON object");
        auto text = obj.find("text");
        if (text == obj.end() || !text->is_string())
            throw ParseError(lineno, "missing required string field \"text\"");
        std::string id;
        auto idf = obj.find("id");
        if (idf != obj.end()) {
            if (idf->is_string())
                id = idf->get<std::string>();
            else if (idf->is_number_integer())
                id = std::to_string(idf->get<long long>());
            else
                throw ParseError(lineno, "field \"id\" must be a string or integer");
        } else {
            id = std::to_string(lineno);
        }
        docs.push_back({std::move(id), text->get<std::string>()});
    }
    return docs;
}

namespace detail {

// One RFC-4180 record (quotes, embedded commas/newlines). Returns false on
// clean EOF; lineno advances past consumed lines.
inline bool read_csv_record(std::istream& in, std::vector<std::string>& fields,
                            std::size_t& lineno) {
    fields.clear();
    int c = in.get();
    if (c == EOF) return false;
    ++lineno;
    std::string field;
    bool quoted = false;
    while (true) {
        if (c == EOF) {
            if (quoted) throw ParseError(lineno, "unterminated quoted CSV field");
            fields.push_back(std::move(field));
            return true;
        }
        if (quoted) {
            if (c == '"') {
                const int next = in.peek();
                if (next == '"') {
                    field.push_back('"');
                    in.get();
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++lineno;
                field.push_back(static_cast<char>(c));
            }
        } else if (c == '"') {
            if (!field.empty()) throw ParseError(lineno, "stray quote inside CSV field");
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c == '\n') {
            if (!field.empty() && field.back() == '\r') field.pop_back();
            fields.push_back(std::move(field));
            return true;
        } else {
            field.push_back(static_cast<char>(c));
        }
        c = in.get();
    }
}

}  // namespace detail

// CSV reader with a header row naming the text column; id_column optional
// (row number used when empty or absent).
inline std::vector<RawDocument> read_csv(const std::string& path,
                                         const std::string& text_column,
                                         const std::string& id_column = "") {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArchiveError("cannot open input file: " + path);
    std::vector<std::string> fields;
    std::size_t lineno = 0;
    if (!detail::read_csv_record(in, fields, lineno))
        throw ParseError(1, "empty CSV file, expected a header row");
    std::size_t text_idx = fields.size(), id_idx = fields.size();
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i] == text_column) text_idx = i;
        if (!id_column.empty() && fields[i] == id_column) id_idx = i;
    }
    if (text_idx == fields.size())
        throw ParseError(1, "CSV header has no column named \"" + text_column + "\"");
    if (!id_column.empty() && id_idx == fields.size())
        throw ParseError(1, "CSV header has no column named \"" + id_column + "\"");

    std::vector<RawDocument> docs;
    std::size_t record = 0;
    while (true) {
        const std::size_t record_line = lineno + 1;
        if (!detail::read_csv_record(in, fields, lineno)) break;
        ++record;
        if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
        if (text_idx >= fields.size())
            throw ParseError(record_line, "row has no value for the text column");
        std::string id = (id_idx < fields.size() && !fields[id_idx].empty())
                             ? fields[id_idx]
                             : std::to_string(record);
        docs.push_back({std::move(id), fields[text_idx]});
    }
    return docs;
}

}  // namespace topicforge
