#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "olac/record.hpp"
#include "olac/vocabulary.hpp"

namespace olac {

/// Appended to codes that no vocabulary can label.
inline constexpr std::string_view kUnrecognizedCodeMarker = " [?]";

/// Human-readable value of an element: the vocabulary label of its code,
/// combined with the content as `label (content)` when both exist. Content
/// is whitespace-collapsed.
std::string render_value(const MetadataElement& element, const Profile& profile = Profile::builtin());

/// Dumb-down to simple Dublin Core: refinements collapse to their parents,
/// codes become labels, lang is kept. One output element per input element.
DcRecord to_simple_dc(const OlacRecord& record, const Profile& profile = Profile::builtin());

/// Reads a simple-DC record back as an unqualified OLAC record.
OlacRecord lift(const DcRecord& record);

struct LanguageAnnotation {
    std::string tag;
    std::optional<std::string> name;

    friend bool operator==(const LanguageAnnotation&, const LanguageAnnotation&) = default;
};

struct DisplayLine {
    std::string label;  // "Date (Created)", "Subject (Linguistic Field)"
    std::string text;
    std::optional<LanguageAnnotation> lang;

    friend bool operator==(const DisplayLine&, const DisplayLine&) = default;
};

struct DisplayDocument {
    std::vector<DisplayLine> lines;
};

DisplayDocument render_display(const OlacRecord& record, const Profile& profile = Profile::builtin());

/// `Label: text [tag: name]` per line.
std::string to_text(const DisplayDocument& doc);
/// A `<dl class="olac-record">` fragment.
std::string to_html(const DisplayDocument& doc);

}  // namespace olac
