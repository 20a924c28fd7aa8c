// Weight parsing and deterministic CSV/JSON rendering for the CLI.

#ifndef CRAMER_IO_HPP
#define CRAMER_IO_HPP

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cramer/core.hpp"

namespace cramer {

/// Parses whitespace/newline-separated decimal reals with "#" line comments.
inline std::vector<double> parse_weights_text(const std::string& text)
{
    std::vector<double> out;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream toks(line);
        std::string tok;
        while (toks >> tok) {
            std::size_t used = 0;
            double v;
            try {
                v = std::stod(tok, &used);
            } catch (const std::exception&) {
                throw std::invalid_argument("weights: cannot parse '" + tok + "'");
            }
            if (used != tok.size())
                throw std::invalid_argument("weights: cannot parse '" + tok + "'");
            out.push_back(v);
        }
    }
    return out;
}

/// Weights argument: inline list ("1 0.5 -2") or "@path" to a weights file.
inline std::vector<double> parse_weights_arg(const std::string& arg)
{
    if (!arg.empty() && arg[0] == '@') {
        std::ifstream in(arg.substr(1));
        if (!in)
            throw std::runtime_error("weights: cannot open file '" + arg.substr(1) + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_weights_text(ss.str());
    }
    return parse_weights_text(arg);
}

/// 17 significant digits; "inf"/"-inf" for infinities.  Shared by the CSV
/// and JSON emitters so both carry identical values.
inline std::string format_double(double x)
{
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// Minimal deterministic JSON writer: keys appear in insertion order and
/// numbers are rendered with format_double (infinities as the string "inf").
class JsonWriter {
public:
    JsonWriter() { out_.precision(17); }

    JsonWriter& begin_object() { sep(); out_ << '{'; fresh_ = true; depth_++; return *this; }
    JsonWriter& end_object() { out_ << '}'; fresh_ = false; depth_--; return *this; }
    JsonWriter& begin_array() { sep(); out_ << '['; fresh_ = true; depth_++; return *this; }
    JsonWriter& end_array() { out_ << ']'; fresh_ = false; depth_--; return *this; }

    JsonWriter& key(const std::string& k)
    {
        sep();
        out_ << '"' << escape(k) << "\":";
        fresh_ = true;  // value follows without comma
        return *this;
    }

    JsonWriter& value(double v)
    {
        sep();
        if (std::isfinite(v)) out_ << format_double(v);
        else out_ << '"' << format_double(v) << '"';
        return *this;
    }
    JsonWriter& value(const std::string& s) { sep(); out_ << '"' << escape(s) << '"'; return *this; }
    JsonWriter& value(const char* s) { return value(std::string(s)); }
    JsonWriter& value(bool b) { sep(); out_ << (b ? "true" : "false"); return *this; }
    JsonWriter& value(int v) { sep(); out_ << v; return *this; }
    JsonWriter& value(std::uint64_t v) { sep(); out_ << v; return *this; }

    std::string str() const { return out_.str(); }

private:
    void sep()
    {
        if (!fresh_) out_ << ',';
        fresh_ = false;
    }
    static std::string escape(const std::string& s)
    {
        std::string r;
        for (char c : s) {
            if (c == '"' || c == '\\') { r += '\\'; r += c; }
            else if (c == '\n') r += "\\n";
            else r += c;
        }
        return r;
    }

    std::ostringstream out_;
    bool fresh_ = true;
    int depth_ = 0;
};

} // namespace cramer

#endif
