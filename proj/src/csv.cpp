#include "volatix/csv.hpp"

namespace volatix::csv {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

Reader::Reader(std::istream& in, std::size_t chunk_size) : in_(in), buf_(chunk_size) {}

bool Reader::fill() {
    if (eof_) return false;
    in_.read(buf_.data(), std::streamsize(buf_.size()));
    len_ = std::size_t(in_.gcount());
    pos_ = 0;
    if (len_ == 0) {
        eof_ = true;
        return false;
    }
    if (observer_) observer_(std::string_view(buf_.data(), len_));
    return true;
}

bool Reader::next(std::vector<std::string>& fields) {
    enum class State { field_start, unquoted, quoted, quote_in_quoted, cr_after_quote };

    std::size_t used = 0;
    auto current = [&]() -> std::string& {
        if (used == fields.size()) fields.emplace_back();
        return fields[used];
    };
    auto start_field = [&] { current().clear(); };

    State state = State::field_start;
    bool any_char = false;
    start_field();
    record_line_ = line_;

    auto finish = [&](bool strip_cr) {
        std::string& last = current();
        if (strip_cr && !last.empty() && last.back() == '\r') last.pop_back();
        ++used;
        fields.resize(used);
    };

    while (true) {
        if (pos_ == len_ && !fill()) {
            if (state == State::quoted)
                throw ParseError(record_line_, used + 1, "unterminated quoted field at end of input");
            if (state == State::cr_after_quote)
                throw ParseError(line_, used + 1, "carriage return not followed by line feed");
            if (!any_char) {
                fields.clear();
                return false;
            }
            finish(state == State::unquoted);
            return true;
        }
        const char ch = buf_[pos_++];
        any_char = true;
        switch (state) {
            case State::field_start:
                if (ch == '"') {
                    state = State::quoted;
                    break;
                }
                state = State::unquoted;
                [[fallthrough]];
            case State::unquoted:
                if (ch == ',') {
                    ++used;
                    start_field();
                    state = State::field_start;
                } else if (ch == '\n') {
                    ++line_;
                    // A lone newline (or CRLF) with nothing before it is a blank line.
                    if (used == 0 && (current().empty() || current() == "\r")) {
                        current().clear();
                        state = State::field_start;
                        any_char = false;
                        record_line_ = line_;
                        break;
                    }
                    finish(true);
                    return true;
                } else if (ch == '"') {
                    throw ParseError(line_, used + 1, "quote inside unquoted field");
                } else {
                    current().push_back(ch);
                }
                break;
            case State::quoted:
                if (ch == '"') {
                    state = State::quote_in_quoted;
                } else {
                    if (ch == '\n') ++line_;
                    current().push_back(ch);
                }
                break;
            case State::quote_in_quoted:
                if (ch == '"') {
                    current().push_back('"');
                    state = State::quoted;
                } else if (ch == ',') {
                    ++used;
                    start_field();
                    state = State::field_start;
                } else if (ch == '\n') {
                    ++line_;
                    finish(false);
                    return true;
                } else if (ch == '\r') {
                    state = State::cr_after_quote;
                } else {
                    throw ParseError(line_, used + 1, "unexpected character after closing quote");
                }
                break;
            case State::cr_after_quote:
                if (ch != '\n') throw ParseError(line_, used + 1, "carriage return not followed by line feed");
                ++line_;
                finish(false);
                return true;
        }
    }
}

std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char ch : field) {
        if (ch == '"') out.push_back('"');
        out.push_back(ch);
    }
    out.push_back('"');
    return out;
}

void write_row(std::ostream& out, std::span<const std::string> fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << escape(fields[i]);
    }
    out << '\n';
}

void write_row(std::ostream& out, std::initializer_list<std::string_view> fields) {
    bool first = true;
    for (auto f : fields) {
        if (!first) out << ',';
        first = false;
        out << escape(f);
    }
    out << '\n';
}

}  // namespace volatix::csv
