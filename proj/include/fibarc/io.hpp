#pragma once

#include <string>
#include <string_view>

#include "fibarc/augmented.hpp"
#include "fibarc/presentation.hpp"

namespace fibarc {

/// Text format:
///   FIBARC-PRESENTATION v1
///   field <p>
///   generators <n0>          then n0 lines `<x> <y>`
///   relations <n1>           then n1 lines `<x> <y> : <row>:<coef> ...`
/// `#` starts a comment. Throws ParseError with the offending position,
/// including for presentations that fail validation.
Presentation parse_presentation(std::string_view text);
std::string format_presentation(const Presentation& p);

/// Versioned JSON. The point locator is not stored; it is rebuilt on load.
std::string save_arrangement(const AugmentedArrangement& aug);
/// Throws ParseError for malformed JSON and PreconditionError for content
/// that does not form a valid arrangement.
AugmentedArrangement load_arrangement(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace fibarc
