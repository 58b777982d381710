#pragma once

#include <cstdio>
#include <string>

namespace selfaffine {

/// Minimal deterministic JSON emitter. Numbers are printed with 17
/// significant digits so doubles round-trip bit-exactly; output bytes are a
/// pure function of the values written.
class JsonWriter {
public:
    std::string str() const { return out_; }

    JsonWriter& raw(const std::string& s) {
        out_ += s;
        return *this;
    }

    JsonWriter& key(const std::string& k) {
        comma();
        out_ += '"';
        out_ += k;
        out_ += "\":";
        fresh_ = true;
        return *this;
    }

    JsonWriter& begin_object() {
        comma();
        out_ += '{';
        fresh_ = true;
        return *this;
    }
    JsonWriter& end_object() {
        out_ += '}';
        fresh_ = false;
        return *this;
    }
    JsonWriter& begin_array() {
        comma();
        out_ += '[';
        fresh_ = true;
        return *this;
    }
    JsonWriter& end_array() {
        out_ += ']';
        fresh_ = false;
        return *this;
    }

    JsonWriter& value(double v) {
        comma();
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out_ += buf;
        fresh_ = false;
        return *this;
    }

    JsonWriter& value(long long v) {
        comma();
        out_ += std::to_string(v);
        fresh_ = false;
        return *this;
    }

    JsonWriter& value(int v) { return value(static_cast<long long>(v)); }

    JsonWriter& value(bool v) {
        comma();
        out_ += v ? "true" : "false";
        fresh_ = false;
        return *this;
    }

    JsonWriter& value(const std::string& s) {
        comma();
        out_ += '"';
        for (char c : s) {
            if (c == '"' || c == '\\') out_ += '\\';
            out_ += c;
        }
        out_ += '"';
        fresh_ = false;
        return *this;
    }

    JsonWriter& value(const char* s) { return value(std::string(s)); }

private:
    void comma() {
        if (!fresh_ && !out_.empty()) {
            char last = out_.back();
            if (last != '{' && last != '[' && last != ':') out_ += ',';
        }
        fresh_ = false;
    }

    std::string out_;
    bool fresh_ = true;
};

}  // namespace selfaffine
