#pragma once

#include <string>

#include "cpn/net.hpp"

namespace cpn {

struct ParseError : std::runtime_error {
    int line = 0;
    int column = 0;
    ParseError(const std::string& msg, int l, int c)
        : std::runtime_error(msg + " at line " + std::to_string(l) + ", column " +
                             std::to_string(c)),
          line(l),
          column(c) {}
};

/// Line-oriented colored-net fixture format; see docs/fixture-format.md.
ColoredNet parse_textual(const std::string& text);
std::string write_textual(const ColoredNet& net);

/// P/T net in the same keyword style ("ptnet" header).
PtNet parse_pt_textual(const std::string& text);
std::string write_pt_textual(const PtNet& net);

}  // namespace cpn
