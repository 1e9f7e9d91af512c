#pragma once

#include <stdexcept>
#include <string>

namespace germstab {

/* Bad call arguments: dimension or order mismatches, out-of-range indices,
   unknown catalog names. */
struct argument_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/* A documented operation precondition does not hold on otherwise
   well-formed data (family not in general position, stratum data
   inconsistent with the germ, per-germ solution does not solve its
   system). */
struct precondition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* Syntax error in a problem file. Positions are 1-based. */
struct parse_error : std::runtime_error {
    int line = 0;
    int column = 0;
    parse_error(const std::string& what, int line_, int column_)
        : std::runtime_error(what + " (line " + std::to_string(line_) + ", column " +
                             std::to_string(column_) + ")"),
          line(line_),
          column(column_) {}
};

}  // namespace germstab
