#pragma once

#include <stdexcept>
#include <string>

namespace hypermon {

struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

struct parse_error : error {
    int line;
    int col;
    parse_error(const std::string& msg, int line_, int col_)
        : error(msg + " (line " + std::to_string(line_) + ", col " + std::to_string(col_) + ")"),
          line(line_), col(col_) {}
};

} // namespace hypermon
