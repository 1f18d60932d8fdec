#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace cri {

/// Numeric cell format shared by every emitted file: 17 significant digits,
/// '.' decimal separator, no locale involvement. Keeps regression
/// comparisons bit-exact.
inline std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Builds one CSV document in memory (LF line endings).
class CsvBuilder {
public:
    explicit CsvBuilder(const std::vector<std::string>& header) : columns_(header.size()) {
        if (header.empty()) throw std::invalid_argument("CsvBuilder: empty header");
        append_row(header);
    }

    void row(const std::vector<std::string>& cells) {
        if (cells.size() != columns_)
            throw std::invalid_argument("CsvBuilder: row width does not match header");
        append_row(cells);
    }

    void row_values(const std::vector<double>& cells) {
        std::vector<std::string> text;
        text.reserve(cells.size());
        for (double v : cells) text.push_back(csv_number(v));
        row(text);
    }

    const std::string& str() const noexcept { return out_; }

private:
    void append_row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ += ',';
            out_ += cells[i];
        }
        out_ += '\n';
    }

    std::string out_;
    std::size_t columns_;
};

}  // namespace cri
