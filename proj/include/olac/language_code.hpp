#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace olac {

enum class LanguageScheme { Iso639_1, Iso639_2, Extension };

std::string_view to_string(LanguageScheme scheme);

/// A structured RFC 3066 style language identifier. Primary ISO subtags are
/// stored lowercase, extension namespaces lowercase, and extension codes as
/// written (Ethnologue codes are conventionally uppercase).
struct LanguageCode {
    LanguageScheme scheme = LanguageScheme::Iso639_1;
    std::string ns;    // extension namespace, e.g. "sil"; empty for ISO codes
    std::string code;  // "en", "eng", "BAN"
    std::vector<std::string> subtags;  // trailing ISO subtags such as a region
    std::string raw;   // the tag as it was read

    /// Canonical tag text; parse(to_string()) is a fixed point.
    std::string to_string() const;

    /// Case-insensitive identity used for matching and table lookups.
    std::string key() const;

    friend bool operator==(const LanguageCode& a, const LanguageCode& b) {
        return a.scheme == b.scheme && a.ns == b.ns && a.code == b.code && a.subtags == b.subtags;
    }
};

/// Throws MalformedTag.
LanguageCode parse_language_code(std::string_view tag);
std::optional<LanguageCode> try_parse_language_code(std::string_view tag);

}  // namespace olac
