#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "nearopt/lp/standard_form.hpp"

namespace nearopt::lp {

// Plain-text LP fixtures. Grammar (one statement per line, '#' starts a
// comment, blank lines ignored, tokens separated by whitespace):
//
//   names    <name_1> ... <name_n>          optional, at most once
//   min      <c_1> ... <c_n>                required, exactly once
//   <a_1> ... <a_n> <rel> <rhs> [@<name>]   constraint; rel is <=, = or >=
//   interest <name> ...                     optional, at most once
//
// The `min` line fixes n; a `names` line must agree with it. Numbers use the
// C locale and may be written in any strtod-compatible form.
struct LpText {
    std::vector<std::string> names;
    std::vector<double> costs;
    std::vector<RowSpec> rows;
    std::vector<std::string> interest;

    StandardFormLP to_standard_form() const;
};

LpText parse_lp_text(std::string_view text);
LpText read_lp_file(const std::string& path);

/// Writes an equality-form LP that parses back to the same StandardFormLP
/// bit for bit.
void write_lp_text(std::ostream& os, const StandardFormLP& lp);
std::string to_lp_text(const StandardFormLP& lp);

} // namespace nearopt::lp
