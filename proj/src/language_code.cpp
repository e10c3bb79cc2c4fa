#include "olac/language_code.hpp"

#include <algorithm>
#include <cctype>

#include "olac/error.hpp"
#include "olac/text.hpp"

namespace olac {

namespace {

bool all_alpha(std::string_view s) {
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return c < 0x80 && std::isalpha(c); });
}

bool valid_subtag(std::string_view s) {
    return !s.empty() && s.size() <= 8 &&
           std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return c < 0x80 && std::isalnum(c); });
}

std::string join(const std::vector<std::string_view>& parts, std::size_t from) {
    std::string out;
    for (std::size_t i = from; i < parts.size(); ++i) {
        if (i > from) out.push_back('-');
        out.append(parts[i]);
    }
    return out;
}

}  // namespace

std::string_view to_string(LanguageScheme scheme) {
    switch (scheme) {
        case LanguageScheme::Iso639_1: return "iso639-1";
        case LanguageScheme::Iso639_2: return "iso639-2";
        case LanguageScheme::Extension: return "extension";
    }
    return "unknown";
}

std::string LanguageCode::to_string() const {
    std::string out;
    if (scheme == LanguageScheme::Extension) {
        out = "x-" + ns + "-" + code;
    } else {
        out = code;
        for (const auto& s : subtags) out += "-" + s;
    }
    return out;
}

std::string LanguageCode::key() const { return text::ascii_lower(to_string()); }

LanguageCode parse_language_code(std::string_view tag) {
    const std::string quoted = "'" + std::string(tag) + "'";
    if (tag.empty()) throw MalformedTag("empty language tag");
    auto parts = text::split(tag, '-');
    for (auto p : parts) {
        if (!valid_subtag(p)) throw MalformedTag("illegal subtag in language tag " + quoted);
    }

    LanguageCode lc;
    lc.raw = std::string(tag);
    if (text::iequals(parts[0], "x")) {
        if (parts.size() < 3) throw MalformedTag("extension tag needs x-<namespace>-<code>: " + quoted);
        lc.scheme = LanguageScheme::Extension;
        lc.ns = text::ascii_lower(parts[1]);
        lc.code = join(parts, 2);
        return lc;
    }
    if (!all_alpha(parts[0])) throw MalformedTag("primary subtag must be letters: " + quoted);
    if (parts[0].size() == 2)
        lc.scheme = LanguageScheme::Iso639_1;
    else if (parts[0].size() == 3)
        lc.scheme = LanguageScheme::Iso639_2;
    else
        throw MalformedTag("primary subtag must have 2 or 3 letters: " + quoted);
    lc.code = text::ascii_lower(parts[0]);
    for (std::size_t i = 1; i < parts.size(); ++i) lc.subtags.emplace_back(parts[i]);
    return lc;
}

std::optional<LanguageCode> try_parse_language_code(std::string_view tag) {
    try {
        return parse_language_code(tag);
    } catch (const MalformedTag&) {
        return std::nullopt;
    }
}

}  // namespace olac
