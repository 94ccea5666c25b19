#pragma once

// Minimal streaming CSV for the one dialect volatix reads and writes:
// UTF-8, comma separated, double-quote escaping, LF or CRLF line ends.

#include <cstddef>
#include <functional>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace volatix::csv {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what);
    [[nodiscard]] std::size_t line() const { return line_; }
    // 1-based field index.
    [[nodiscard]] std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// Pulls records from a stream in fixed-size chunks; memory use is bounded by
// the longest record, not the input size. Blank lines are skipped.
class Reader {
public:
    explicit Reader(std::istream& in, std::size_t chunk_size = 1 << 16);

    // Every chunk read from the stream is passed here before parsing.
    void on_bytes(std::function<void(std::string_view)> observer) { observer_ = std::move(observer); }

    // Fills `fields` with the next record. Returns false at end of input.
    bool next(std::vector<std::string>& fields);

    // Line on which the most recently returned record started (1-based).
    [[nodiscard]] std::size_t record_line() const { return record_line_; }

private:
    bool fill();

    std::istream& in_;
    std::vector<char> buf_;
    std::size_t pos_ = 0;
    std::size_t len_ = 0;
    bool eof_ = false;
    std::size_t line_ = 1;
    std::size_t record_line_ = 0;
    std::function<void(std::string_view)> observer_;
};

// Quotes a field when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);

void write_row(std::ostream& out, std::span<const std::string> fields);
void write_row(std::ostream& out, std::initializer_list<std::string_view> fields);

}  // namespace volatix::csv
