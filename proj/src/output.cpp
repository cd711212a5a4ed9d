#include "shellsort_lab/output.hpp"

#include <charconv>
#include <cmath>
#include <type_traits>

#include <json.hpp>

namespace shellsort_lab {
namespace {

using Json = nlohmann::ordered_json;

template <typename T>
std::string join(const std::vector<T>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i != 0) out += ';';
        if constexpr (std::is_same_v<T, double>) {
            out += format_double(items[i]);
        } else {
            out += std::to_string(items[i]);
        }
    }
    return out;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

Json json_double(double x) {
    if (std::isfinite(x)) return Json(x);
    return Json(format_double(x));
}

Json to_json(const Value& v) {
    return std::visit(
        [](const auto& x) -> Json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, double>) {
                return json_double(x);
            } else if constexpr (std::is_same_v<T, std::vector<double>>) {
                Json arr = Json::array();
                for (double d : x) arr.push_back(json_double(d));
                return arr;
            } else {
                return Json(x);
            }
        },
        v);
}

Json to_json(const std::vector<Field>& fields) {
    Json obj = Json::object();
    for (const auto& f : fields) obj[f.key] = to_json(f.value);
    return obj;
}

}  // namespace

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string format_value(const Value& v) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, double>) {
                return format_double(x);
            } else if constexpr (std::is_same_v<T, bool>) {
                return x ? "true" : "false";
            } else if constexpr (std::is_same_v<T, std::string>) {
                return x;
            } else if constexpr (std::is_same_v<T, std::vector<double>> ||
                                 std::is_same_v<T, std::vector<std::int64_t>>) {
                return join(x);
            } else {
                return std::to_string(x);
            }
        },
        v);
}

void RecordWriter::write(const OutputRecord& record) {
    if (format_ == Format::json) {
        Json obj = Json::object();
        obj["command"] = record.command;
        obj["seed"] = record.seed ? Json(*record.seed) : Json(nullptr);
        obj["parameters"] = to_json(record.parameters);
        obj["results"] = to_json(record.results);
        out_ << obj.dump() << '\n';
        return;
    }

    std::vector<std::string> columns{"command", "seed"};
    for (const auto& f : record.parameters) columns.push_back(f.key);
    for (const auto& f : record.results) columns.push_back(f.key);
    if (columns != columns_) {
        for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << csv_escape(columns[i]);
        out_ << '\n';
        columns_ = std::move(columns);
    }

    out_ << csv_escape(record.command) << ',' << (record.seed ? std::to_string(*record.seed) : "");
    for (const auto& f : record.parameters) out_ << ',' << csv_escape(format_value(f.value));
    for (const auto& f : record.results) out_ << ',' << csv_escape(format_value(f.value));
    out_ << '\n';
}

void RecordWriter::write_manifest(const std::vector<Field>& entries) {
    if (format_ == Format::json) {
        Json obj = Json::object();
        obj["manifest"] = to_json(entries);
        out_ << obj.dump() << '\n';
        return;
    }
    for (const auto& e : entries) out_ << "# " << e.key << '=' << format_value(e.value) << '\n';
}

}  // namespace shellsort_lab
