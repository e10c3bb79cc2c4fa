#include "olac/record.hpp"

#include <fstream>
#include <sstream>

#include "olac/embedded_data.hpp"
#include "olac/error.hpp"
#include "olac/text.hpp"

namespace olac {

std::string_view to_string(ElementName name) {
    switch (name) {
        case ElementName::Title: return "title";
        case ElementName::Creator: return "creator";
        case ElementName::Subject: return "subject";
        case ElementName::Description: return "description";
        case ElementName::Publisher: return "publisher";
        case ElementName::Contributor: return "contributor";
        case ElementName::Date: return "date";
        case ElementName::Type: return "type";
        case ElementName::Format: return "format";
        case ElementName::Identifier: return "identifier";
        case ElementName::Source: return "source";
        case ElementName::Language: return "language";
        case ElementName::Relation: return "relation";
        case ElementName::Coverage: return "coverage";
        case ElementName::Rights: return "rights";
    }
    return "";
}

std::optional<ElementName> element_name_from(std::string_view s) {
    for (auto name : kAllElementNames) {
        if (to_string(name) == s) return name;
    }
    return std::nullopt;
}

ElementName parse_element_name(std::string_view s) {
    if (auto name = element_name_from(s)) return *name;
    throw InvariantViolation("element-name", "'" + std::string(s) + "' is not a Dublin Core element");
}

RefinementTable RefinementTable::parse(std::string_view content) {
    RefinementTable table;
    std::size_t lineno = 0;
    for (auto line : text::lines(content)) {
        ++lineno;
        if (text::is_blank(line) || line.front() == '#') continue;
        auto fields = text::split(line, '\t');
        if (fields.size() != 2 || text::trim(fields[0]).empty())
            throw ParseError("refinement table line " + std::to_string(lineno) +
                             ": expected refinement<TAB>parent-element");
        auto parent = element_name_from(text::trim(fields[1]));
        if (!parent)
            throw ParseError("refinement table line " + std::to_string(lineno) + ": unknown element '" +
                             std::string(fields[1]) + "'");
        table.add(std::string(text::trim(fields[0])), *parent);
    }
    return table;
}

RefinementTable RefinementTable::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read refinement table " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

const RefinementTable& RefinementTable::builtin() {
    static const RefinementTable table = parse(embedded::files().at("refinements.tsv"));
    return table;
}

void RefinementTable::add(std::string name, ElementName parent) {
    auto [it, inserted] = table_.emplace(std::move(name), parent);
    if (!inserted && it->second != parent)
        throw DuplicateId("refinement '" + it->first + "' already maps to " +
                          std::string(to_string(it->second)));
}

std::optional<Refinement> RefinementTable::find(std::string_view name) const {
    auto it = table_.find(name);
    if (it == table_.end()) return std::nullopt;
    return Refinement{it->first, it->second};
}

void MetadataElement::check() const {
    const std::string where = std::string(to_string(name));
    if (refinement && refinement->parent != name)
        throw InvariantViolation("refinement-parent", "refinement '" + refinement->name + "' belongs to " +
                                                          std::string(to_string(refinement->parent)) +
                                                          ", not " + where);
    if (qualifier && qualifier->id.empty())
        throw InvariantViolation("empty-qualifier", where + " has a qualifier with an empty id");
    if (qualifier && qualifier->is_vocabulary() && !code)
        throw InvariantViolation("missing-code", where + " is typed with vocabulary '" + qualifier->id +
                                                     "' but carries no code");
    if (code && text::is_blank(*code))
        throw InvariantViolation("blank-code", where + " has an empty code");
    if (content && text::is_blank(*content))
        throw InvariantViolation("blank-content", where + " has whitespace-only content");
    if (!code && !content)
        throw InvariantViolation("missing-value", where + " carries neither a code nor content");
    if ((code && !text::valid_xml_text(*code)) || (content && !text::valid_xml_text(*content)) ||
        (refinement && !text::valid_xml_text(refinement->name)) ||
        (qualifier && !text::valid_xml_text(qualifier->id)))
        throw InvariantViolation("invalid-character", where + " contains text XML cannot carry");
}

bool MetadataElement::valid() const noexcept {
    try {
        check();
        return true;
    } catch (const InvariantViolation&) {
        return false;
    }
}

void OlacRecord::append(MetadataElement element) {
    element.check();
    elements_.push_back(std::move(element));
}

OlacRecord OlacRecord::with(MetadataElement element) const {
    OlacRecord copy = *this;
    copy.append(std::move(element));
    return copy;
}

const MetadataElement* OlacRecord::first(ElementName name) const {
    for (const auto& e : elements_) {
        if (e.name == name) return &e;
    }
    return nullptr;
}

OlacRecord add_element(const OlacRecord& record, MetadataElement element) {
    return record.with(std::move(element));
}

std::vector<MetadataElement> elements_of(const OlacRecord& record, ElementName name) {
    std::vector<MetadataElement> out;
    for (const auto& e : record.elements()) {
        if (e.name == name) out.push_back(e);
    }
    return out;
}

}  // namespace olac
