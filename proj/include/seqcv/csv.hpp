#pragma once

#include <string>
#include <vector>

#include "seqcv/errors.hpp"

namespace seqcv {

// Shortest decimal representation that round-trips to the same double.
// All CSV and JSON output goes through this, so files are byte-stable.
std::string format_double(double v);

// Reads a single-column CSV of reals. A non-numeric first line is
// treated as a header and skipped; every other line must parse as one
// real ('.' decimal, no thousands separators). Errors carry the path
// and 1-based line number.
std::vector<double> read_column_csv(const std::string& path);

// Writes content to path via a temporary file in the same directory and
// an atomic rename, so readers never observe a half-written file.
void write_text_atomic(const std::string& path, const std::string& content);

// Row-by-row CSV assembly with a mandatory header, written atomically.
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header);

    // All cells formatted as doubles.
    void row(const std::vector<double>& cells);
    // Pre-formatted cells, for mixed integer/text columns.
    void row_raw(const std::vector<std::string>& cells);

    void write(const std::string& path) const;
    const std::string& content() const { return body_; }

  private:
    std::size_t columns_;
    std::string body_;
};

}  // namespace seqcv
