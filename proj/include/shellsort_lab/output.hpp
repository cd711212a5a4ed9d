#pragma once

// Machine-readable result records for the command-line front end.
//
// CSV: a header line naming the columns `command,seed,<parameters>,<results>`
// followed by one row per record; a new header is written whenever the column
// set changes. Doubles use the shortest representation that round-trips, with
// '.' as decimal separator regardless of locale. Lists are joined with ';'.
// Non-finite doubles are written as inf, -inf or nan.
//
// JSON: one object per line,
//   {"command": ..., "seed": ..., "parameters": {...}, "results": {...}}
// carrying the same values.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace shellsort_lab {

using Value = std::variant<std::int64_t, std::uint64_t, double, bool, std::string, std::vector<double>,
                           std::vector<std::int64_t>>;

struct Field {
    std::string key;
    Value value;
};

struct OutputRecord {
    std::string command;
    std::vector<Field> parameters;
    std::vector<Field> results;
    std::optional<std::uint64_t> seed;

    OutputRecord& param(std::string key, Value v) {
        parameters.push_back({std::move(key), std::move(v)});
        return *this;
    }
    OutputRecord& result(std::string key, Value v) {
        results.push_back({std::move(key), std::move(v)});
        return *this;
    }
};

enum class Format { csv, json };

/// Shortest round-trip text for a double; inf, -inf, nan for non-finite values.
std::string format_double(double x);

std::string format_value(const Value& v);

class RecordWriter {
public:
    RecordWriter(std::ostream& out, Format format) : out_(out), format_(format) {}

    void write(const OutputRecord& record);
    /// Resolved configuration ahead of the results: `# key=value` lines in
    /// CSV, a {"manifest": {...}} line in JSON.
    void write_manifest(const std::vector<Field>& entries);

private:
    std::ostream& out_;
    Format format_;
    std::vector<std::string> columns_;
};

}  // namespace shellsort_lab
