// csv.hpp - CSV emission with full round-trip numeric precision.

#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace qtm::cli {

// 17 significant digits round-trip any double exactly; infinities print "inf".
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Comma-separated, LF line endings, no quoting (numeric and enum fields only).
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void header(const std::vector<std::string>& columns) { line(columns); }

    void row(const std::vector<std::string>& fields) { line(fields); }

private:
    void line(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out_ << ',';
            out_ << fields[i];
        }
        out_ << '\n';
    }

    std::ostream& out_;
};

}  // namespace qtm::cli
