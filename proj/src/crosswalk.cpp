#include "olac/crosswalk.hpp"

#include "olac/text.hpp"
#include "olac/xml.hpp"

namespace olac {

namespace {

std::string code_label(const MetadataElement& e, const Profile& profile) {
    const std::string& code = *e.code;
    if (!e.qualifier || !e.qualifier->is_vocabulary()) return code;
    if (e.qualifier->id != kLanguageVocabulary && !profile.vocabularies.find(e.qualifier->id))
        return code + std::string(kUnrecognizedCodeMarker);
    if (auto term = profile.find_term(e.qualifier->id, code)) return term->label;
    return code + std::string(kUnrecognizedCodeMarker);
}

std::string element_label(const MetadataElement& e) {
    std::string label = text::title_case(to_string(e.name));
    std::vector<std::string> parts;
    if (e.refinement) parts.push_back(text::title_case(e.refinement->name));
    if (e.qualifier && e.qualifier->is_vocabulary()) parts.push_back(text::title_case(e.qualifier->id));
    if (!parts.empty()) {
        label += " (";
        for (std::size_t i = 0; i < parts.size(); ++i) label += (i ? ", " : "") + parts[i];
        label += ")";
    }
    return label;
}

}  // namespace

std::string render_value(const MetadataElement& element, const Profile& profile) {
    std::optional<std::string> content;
    if (element.content) {
        auto c = text::collapse_whitespace(*element.content);
        if (!c.empty()) content = std::move(c);
    }
    if (!element.code) return content.value_or("");
    std::string label = code_label(element, profile);
    return content ? label + " (" + *content + ")" : label;
}

DcRecord to_simple_dc(const OlacRecord& record, const Profile& profile) {
    DcRecord out;
    out.elements.reserve(record.size());
    for (const auto& e : record.elements())
        out.elements.push_back(DcElement{e.name, e.lang, render_value(e, profile)});
    return out;
}

OlacRecord lift(const DcRecord& record) {
    OlacRecord out;
    for (const auto& e : record.elements) {
        MetadataElement m;
        m.name = e.name;
        m.lang = e.lang;
        m.content = e.content;
        out.append(std::move(m));
    }
    return out;
}

DisplayDocument render_display(const OlacRecord& record, const Profile& profile) {
    DisplayDocument doc;
    for (const auto& e : record.elements()) {
        DisplayLine line{element_label(e), render_value(e, profile), std::nullopt};
        if (e.lang) {
            LanguageAnnotation ann{e.lang->to_string(), std::nullopt};
            if (const std::string* name = profile.language_name(*e.lang)) ann.name = *name;
            line.lang = std::move(ann);
        }
        doc.lines.push_back(std::move(line));
    }
    return doc;
}

std::string to_text(const DisplayDocument& doc) {
    std::string out;
    for (const auto& line : doc.lines) {
        out += line.label + ": " + line.text;
        if (line.lang) {
            out += " [" + line.lang->tag;
            if (line.lang->name) out += ": " + *line.lang->name;
            out += "]";
        }
        out += '\n';
    }
    return out;
}

std::string to_html(const DisplayDocument& doc) {
    std::string out = "<dl class=\"olac-record\">\n";
    for (const auto& line : doc.lines) {
        out += "  <dt>" + xml::escape_text(line.label) + "</dt>\n  <dd";
        if (line.lang) out += " lang=\"" + xml::escape_attribute(line.lang->tag) + "\"";
        out += ">" + xml::escape_text(line.text);
        if (line.lang && line.lang->name) out += " <span class=\"lang\">(" + xml::escape_text(*line.lang->name) + ")</span>";
        out += "</dd>\n";
    }
    out += "</dl>\n";
    return out;
}

}  // namespace olac
