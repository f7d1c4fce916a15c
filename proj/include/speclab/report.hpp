#pragma once

// Diff-stable run reports.  All numbers go through std::to_chars (scientific,
// 12 significant digits), keys are emitted sorted, and the duration field is
// always last so consumers can strip it before byte comparison.

#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "speclab/errors.hpp"

namespace speclab {

enum class OutputFormat { text, json, csv };

inline OutputFormat parse_output_format(const std::string& s) {
    if (s == "text") return OutputFormat::text;
    if (s == "json") return OutputFormat::json;
    if (s == "csv") return OutputFormat::csv;
    throw ConfigParseError("unknown output format '" + s + "' (expected text, json or csv)");
}

// Locale-independent scientific rendering with 12 significant digits.
inline std::string format_double(double v) {
    if (v == 0.0) v = 0.0;  // normalize -0
    char buf[48];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 11);
    return std::string(buf, res.ptr);
}

struct ReportValue {
    std::variant<double, std::int64_t, bool, std::string> v;

    std::string plain() const {
        switch (v.index()) {
            case 0: return format_double(std::get<double>(v));
            case 1: return std::to_string(std::get<std::int64_t>(v));
            case 2: return std::get<bool>(v) ? "true" : "false";
            default: return std::get<std::string>(v);
        }
    }

    bool is_string() const { return v.index() == 3; }
};

struct ReportTable {
    std::vector<std::string> columns;
    std::vector<std::vector<ReportValue>> rows;
};

namespace detail {

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

} // namespace detail

class RunReport {
  public:
    void set(const std::string& key, double v) { fields_[key] = ReportValue{v}; }
    void set(const std::string& key, std::int64_t v) { fields_[key] = ReportValue{v}; }
    void set(const std::string& key, int v) { fields_[key] = ReportValue{std::int64_t(v)}; }
    void set(const std::string& key, bool v) { fields_[key] = ReportValue{v}; }
    void set(const std::string& key, const std::string& v) { fields_[key] = ReportValue{v}; }
    void set(const std::string& key, const char* v) { fields_[key] = ReportValue{std::string(v)}; }

    void set_table(ReportTable t) { table_ = std::move(t); }
    void set_duration_ms(double ms) { duration_ms_ = ms; }

    const std::map<std::string, ReportValue>& fields() const { return fields_; }

    std::string emit(OutputFormat fmt) const {
        switch (fmt) {
            case OutputFormat::text: return emit_text();
            case OutputFormat::json: return emit_json();
            default: return emit_csv();
        }
    }

  private:
    std::map<std::string, ReportValue> fields_;  // sorted by key
    std::optional<ReportTable> table_;
    std::optional<double> duration_ms_;

    std::string emit_text() const {
        std::string out;
        for (const auto& [k, v] : fields_) out += k + " = " + v.plain() + "\n";
        if (table_) {
            out += "\n";
            std::string header;
            for (const auto& c : table_->columns) header += (header.empty() ? "" : " ") + c;
            out += header + "\n";
            for (const auto& row : table_->rows) {
                std::string line;
                for (const auto& cell : row) line += (line.empty() ? "" : " ") + cell.plain();
                out += line + "\n";
            }
        }
        if (duration_ms_) out += "duration_ms = " + format_double(*duration_ms_) + "\n";
        return out;
    }

    std::string emit_json() const {
        std::string out = "{\n";
        bool first = true;
        auto add_line = [&](const std::string& key, const std::string& rendered) {
            if (!first) out += ",\n";
            first = false;
            out += "  \"" + detail::json_escape(key) + "\": " + rendered;
        };
        auto render = [](const ReportValue& v) {
            return v.is_string() ? "\"" + detail::json_escape(v.plain()) + "\"" : v.plain();
        };
        for (const auto& [k, v] : fields_) add_line(k, render(v));
        if (table_) {
            std::string t = "{\"columns\": [";
            for (std::size_t i = 0; i < table_->columns.size(); ++i)
                t += (i ? ", " : "") + ("\"" + detail::json_escape(table_->columns[i]) + "\"");
            t += "], \"rows\": [";
            for (std::size_t r = 0; r < table_->rows.size(); ++r) {
                t += (r ? ", [" : "[");
                for (std::size_t i = 0; i < table_->rows[r].size(); ++i)
                    t += (i ? ", " : "") + render(table_->rows[r][i]);
                t += "]";
            }
            t += "]}";
            add_line("table", t);
        }
        if (duration_ms_) add_line("duration_ms", format_double(*duration_ms_));
        out += "\n}\n";
        return out;
    }

    std::string emit_csv() const {
        std::string out;
        if (table_) {
            // Tables stand alone in CSV; scalar context goes to text/json.
            std::string header;
            for (const auto& c : table_->columns)
                header += (header.empty() ? "" : ",") + detail::csv_escape(c);
            out += header + "\n";
            for (const auto& row : table_->rows) {
                std::string line;
                for (const auto& cell : row)
                    line += (line.empty() ? "" : ",") + detail::csv_escape(cell.plain());
                out += line + "\n";
            }
            return out;
        }
        std::string header, values;
        for (const auto& [k, v] : fields_) {
            header += (header.empty() ? "" : ",") + detail::csv_escape(k);
            values += (values.empty() ? "" : ",") + detail::csv_escape(v.plain());
        }
        if (duration_ms_) {
            header += (header.empty() ? "" : ",") + std::string("duration_ms");
            values += (values.empty() ? "" : ",") + format_double(*duration_ms_);
        }
        out += header + "\n" + values + "\n";
        return out;
    }
};

} // namespace speclab
