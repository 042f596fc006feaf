#include "seqcv/csv.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <system_error>

namespace seqcv {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

bool parse_double(const std::string& text, double& out) {
    const char* begin = text.c_str();
    const char* end = begin + text.size();
    // Tolerate surrounding spaces and a UTF-8 BOM on the first line.
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    if (end - begin >= 3 && std::memcmp(begin, "\xEF\xBB\xBF", 3) == 0) begin += 3;
    while (end > begin && (end[-1] == ' ' || end[-1] == '\t' || end[-1] == '\r')) --end;
    if (begin == end) return false;
    const auto res = std::from_chars(begin, end, out);
    return res.ec == std::errc() && res.ptr == end && std::isfinite(out);
}

}  // namespace

std::vector<double> read_column_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    std::vector<double> values;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // Blank trailing lines are common; skip empty lines anywhere.
        std::string trimmed = line;
        while (!trimmed.empty() && (trimmed.back() == '\r' || trimmed.back() == ' '))
            trimmed.pop_back();
        if (trimmed.empty()) continue;
        double v;
        if (parse_double(line, v)) {
            values.push_back(v);
        } else if (lineno == 1) {
            continue;  // header row
        } else {
            throw DataError(path + ":" + std::to_string(lineno) + ": cannot parse '" + trimmed +
                            "' as a real number");
        }
    }
    if (in.bad()) throw DataError("read failure on " + path);
    if (values.empty()) throw DataError(path + " contains no numeric rows");
    return values;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot create " + tmp);
        out << content;
        out.flush();
        if (!out) throw DataError("write failure on " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        const int err = errno;
        std::remove(tmp.c_str());
        throw DataError("cannot move " + tmp + " to " + path + ": " + std::strerror(err));
    }
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
    if (header.empty()) throw DataError("csv header must have at least one column");
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) body_ += ',';
        body_ += header[i];
    }
    body_ += '\n';
}

void CsvWriter::row(const std::vector<double>& cells) {
    std::vector<std::string> formatted;
    formatted.reserve(cells.size());
    for (double c : cells) formatted.push_back(format_double(c));
    row_raw(formatted);
}

void CsvWriter::row_raw(const std::vector<std::string>& cells) {
    if (cells.size() != columns_)
        throw DataError("csv row has " + std::to_string(cells.size()) + " cells, header has " +
                        std::to_string(columns_));
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) body_ += ',';
        body_ += cells[i];
    }
    body_ += '\n';
}

void CsvWriter::write(const std::string& path) const { write_text_atomic(path, body_); }

}  // namespace seqcv
