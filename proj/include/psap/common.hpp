#pragma once

// Shared plumbing: error types for resource/precision guards, deterministic
// number formatting, and a minimal JSON writer (flat reports, ordered keys,
// floats at 17 significant digits so output is byte-stable across runs).

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace psap {

// Thrown when certified arithmetic would exceed the configured precision cap.
struct precision_cap_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a table or sieve would exceed its configured memory budget.
struct resource_guard_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string json_escape(std::string_view s) {
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

// Insertion-ordered JSON emitter. Keys are written in call order, numbers in
// fixed formats, so identical inputs yield identical bytes.
class JsonWriter {
  public:
    JsonWriter& begin_obj() { open('{'); return *this; }
    JsonWriter& end_obj() { close('}'); return *this; }
    JsonWriter& begin_arr() { open('['); return *this; }
    JsonWriter& end_arr() { close(']'); return *this; }

    JsonWriter& key(std::string_view k) {
        comma();
        out_ += '"';
        out_ += json_escape(k);
        out_ += "\":";
        pending_value_ = true;
        return *this;
    }

    JsonWriter& value(std::string_view v) {
        comma();
        out_ += '"';
        out_ += json_escape(v);
        out_ += '"';
        return *this;
    }
    JsonWriter& value(const char* v) { return value(std::string_view(v)); }
    JsonWriter& value(double v) { comma(); out_ += format_double(v); return *this; }
    JsonWriter& value(bool v) { comma(); out_ += v ? "true" : "false"; return *this; }
    JsonWriter& value(std::int64_t v) { comma(); out_ += std::to_string(v); return *this; }
    JsonWriter& value(std::uint64_t v) { comma(); out_ += std::to_string(v); return *this; }
    JsonWriter& value(int v) { return value(static_cast<std::int64_t>(v)); }
    JsonWriter& null() { comma(); out_ += "null"; return *this; }

    const std::string& str() const { return out_; }

  private:
    void open(char c) {
        comma();
        out_ += c;
        fresh_ = true;
    }
    void close(char c) {
        out_ += c;
        fresh_ = false;
    }
    void comma() {
        if (pending_value_) {
            pending_value_ = false;
            return;
        }
        if (!fresh_ && !out_.empty() && out_.back() != '{' && out_.back() != '[') out_ += ',';
        fresh_ = false;
    }

    std::string out_;
    bool fresh_ = true;
    bool pending_value_ = false;
};

}  // namespace psap
