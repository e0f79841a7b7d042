#pragma once

// Minimal deterministic JSON/CSV emitters for the CLI artifacts.  Keys keep
// insertion order and every float is printed with 17 significant digits, so
// identical runs produce byte-identical files.

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "ascop/common.hpp"

namespace ascop {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class JsonValue {
  public:
    static JsonValue number(double v) { return JsonValue(format_double(v)); }
    static JsonValue integer(long v) { return JsonValue(std::to_string(v)); }
    static JsonValue boolean(bool v) { return JsonValue(v ? "true" : "false"); }
    static JsonValue string(const std::string& s) {
        std::string out = "\"";
        for (char c : s) {
            switch (c) {
                case '"': out += "\\\""; break;
                case '\\': out += "\\\\"; break;
                case '\n': out += "\\n"; break;
                case '\t': out += "\\t"; break;
                default: out += c;
            }
        }
        out += '"';
        return JsonValue(out);
    }
    static JsonValue object() { return JsonValue("", Kind::object); }
    static JsonValue array() { return JsonValue("", Kind::array); }

    JsonValue& add(const std::string& key, JsonValue v) {  // object member
        entries_.push_back({key, std::move(v)});
        return *this;
    }
    JsonValue& push(JsonValue v) {  // array element
        entries_.push_back({"", std::move(v)});
        return *this;
    }

    void render(std::string& out, int indent = 0) const {
        if (kind_ == Kind::scalar) {
            out += scalar_;
            return;
        }
        const char open = kind_ == Kind::object ? '{' : '[';
        const char close = kind_ == Kind::object ? '}' : ']';
        if (entries_.empty()) {
            out += open;
            out += close;
            return;
        }
        out += open;
        out += '\n';
        for (size_t i = 0; i < entries_.size(); ++i) {
            out.append(static_cast<size_t>(indent) + 2, ' ');
            if (kind_ == Kind::object) {
                JsonValue::string(entries_[i].first).render(out);
                out += ": ";
            }
            entries_[i].second.render(out, indent + 2);
            if (i + 1 < entries_.size()) out += ',';
            out += '\n';
        }
        out.append(static_cast<size_t>(indent), ' ');
        out += close;
    }

    std::string str() const {
        std::string out;
        render(out);
        out += '\n';
        return out;
    }

  private:
    enum class Kind { scalar, object, array };
    explicit JsonValue(std::string scalar) : kind_(Kind::scalar), scalar_(std::move(scalar)) {}
    JsonValue(std::string, Kind k) : kind_(k) {}
    Kind kind_;
    std::string scalar_;
    std::vector<std::pair<std::string, JsonValue>> entries_;
};

struct CsvWriter {
    std::string out;

    void header(const std::vector<std::string>& cols) { row_strings(cols); }
    void row_strings(const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    }
    void row(const std::vector<double>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += format_double(cells[i]);
        }
        out += '\n';
    }
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << content;
}

}  // namespace ascop
