#pragma once

/**
 * @file report.hpp
 * @brief JSON Lines serialization of verification results.
 *
 * One object per line with keys name, params, lhs, rhs, margin, tolerance,
 * relative, relation, pass, gated and (when set) note. Non-finite numbers are
 * written as the strings "inf", "-inf" and "nan".
 */

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qtf/uncertainty.hpp"

namespace qtf {

std::string to_json_line(const InequalityResult& r);
std::string to_jsonl(const std::vector<InequalityResult>& results);

/// Throws FormatError with the byte offset of the bad line.
std::vector<InequalityResult> parse_jsonl(std::string_view text);

/// Fixed-width table, one row per result, with a pass/fail summary line.
void print_table(std::ostream& os, const std::vector<InequalityResult>& results);

}  // namespace qtf
