#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace olac::text {

std::string ascii_lower(std::string_view s);
bool iequals(std::string_view a, std::string_view b);

/// Unicode simple case folding for Latin, Greek and Cyrillic; other code
/// points pass through unchanged. Invalid UTF-8 bytes are kept verbatim.
std::string fold_case(std::string_view s);

bool is_blank(std::string_view s);
std::string_view trim(std::string_view s);

/// Trims and collapses every internal whitespace run to a single space.
std::string collapse_whitespace(std::string_view s);

/// Name normalization used by alias tables: case-fold, trim, collapse.
std::string normalize_name(std::string_view s);

/// Case-folded word tokens. A word is a maximal run of letters and digits;
/// any non-ASCII code point outside the common punctuation blocks counts as
/// a letter.
std::vector<std::string> tokenize(std::string_view s);

/// "isPartOf" -> "Is Part Of", "linguistic-field" -> "Linguistic Field".
std::string title_case(std::string_view identifier);

/// Truncates to at most max_bytes without splitting a UTF-8 sequence.
std::string utf8_prefix(std::string_view s, std::size_t max_bytes);

/// Well-formed UTF-8 containing only characters XML 1.0 can carry.
bool valid_xml_text(std::string_view s);

std::vector<std::string_view> split(std::string_view s, char sep);

/// Splits a line-oriented file, dropping the trailing '\r' of CRLF endings.
std::vector<std::string_view> lines(std::string_view content);

}  // namespace olac::text
