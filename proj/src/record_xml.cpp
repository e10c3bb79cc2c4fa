#include "olac/record_xml.hpp"

#include <algorithm>

#include "olac/error.hpp"
#include "olac/text.hpp"

namespace olac {

namespace {

using xml::kCatalogNs;
using xml::kDcNs;
using xml::kDctermsNs;
using xml::kOaiDcNs;
using xml::kOlacNs;
using xml::kXmlNs;
using xml::kXsiNs;

std::string schema_location() { return std::string(kOlacNs) + " " + std::string(xml::kOlacSchema); }

xml::Attributes record_namespaces() {
    return {{"xmlns:olac", std::string(kOlacNs)},
            {"xmlns", std::string(kDcNs)},
            {"xmlns:dcterms", std::string(kDctermsNs)},
            {"xmlns:xsi", std::string(kXsiNs)}};
}

xml::Attributes stream_namespaces() {
    auto attrs = record_namespaces();
    attrs.insert(attrs.begin(), {"xmlns:cat", std::string(kCatalogNs)});
    attrs.emplace_back("xmlns:oai_dc", std::string(kOaiDcNs));
    attrs.emplace_back("xmlns:dc", std::string(kDcNs));
    return attrs;
}

Rule rule_for_violation(const std::string& id) {
    if (id == "missing-code") return Rule::MissingCode;
    if (id == "missing-value") return Rule::MissingValue;
    return Rule::InvalidElement;
}

Location at(const xml::Element& el) { return Location{el.line, el.column, -1}; }

// Maps one child of the record container; returns nullopt (with an error
// diagnostic) when the element has to be skipped.
std::optional<MetadataElement> map_element(const xml::Element& el, const Profile& profile,
                                           std::vector<Diagnostic>& diags) {
    MetadataElement out;
    const std::string shown = "<" + el.local + ">";
    if (el.ns == kDcNs) {
        auto name = element_name_from(el.local);
        if (!name) {
            diags.push_back(Diagnostic::make(Rule::UnknownElement, at(el), shown + " is not a Dublin Core element"));
            return std::nullopt;
        }
        out.name = *name;
    } else if (el.ns == kDctermsNs) {
        auto refinement = profile.refinements.find(el.local);
        if (!refinement) {
            diags.push_back(Diagnostic::make(Rule::UnknownRefinement, at(el),
                                             "dcterms:" + el.local + " is not a known refinement"));
            return std::nullopt;
        }
        out.name = refinement->parent;
        out.refinement = std::move(*refinement);
    } else {
        diags.push_back(Diagnostic::make(Rule::UnknownElement, at(el),
                                         shown + " in namespace '" + el.ns + "' is not a metadata element"));
        return std::nullopt;
    }

    if (!el.children.empty()) {
        diags.push_back(Diagnostic::make(Rule::NestedMarkup, at(el), shown + " contains child elements"));
        return std::nullopt;
    }

    for (const auto& a : el.attributes) {
        if (a.ns == kXsiNs && a.local == "type") {
            if (!a.resolved) {
                diags.push_back(Diagnostic::make(Rule::UnresolvedType, at(el),
                                                 "xsi:type '" + a.value + "' uses an undeclared prefix"));
                return std::nullopt;
            }
            if (a.resolved->ns == kOlacNs) {
                out.qualifier = Qualifier::vocabulary(a.resolved->local);
            } else if (a.resolved->ns == kDctermsNs) {
                out.qualifier = Qualifier::scheme(a.resolved->local);
            } else {
                diags.push_back(Diagnostic::make(Rule::UnknownTypeNamespace, at(el),
                                                 "xsi:type '" + a.value + "' is not an OLAC or dcterms type"));
            }
        } else if (a.local == "code" && (a.ns.empty() || a.ns == kOlacNs)) {
            if (out.code) {
                diags.push_back(Diagnostic::make(Rule::UnknownAttribute, at(el), "duplicate code attribute dropped"));
                continue;
            }
            out.code = a.value;
        } else if (a.ns == kXmlNs && a.local == "lang") {
            auto lang = try_parse_language_code(a.value);
            if (!lang) {
                diags.push_back(Diagnostic::make(Rule::MalformedLang, at(el),
                                                 "xml:lang '" + a.value + "' is not a language tag"));
                return std::nullopt;
            }
            out.lang = std::move(*lang);
        } else {
            std::string qn = a.ns.empty() ? a.local : "{" + a.ns + "}" + a.local;
            diags.push_back(Diagnostic::make(Rule::UnknownAttribute, at(el), "attribute " + qn + " dropped"));
        }
    }

    if (!text::is_blank(el.text)) out.content = el.text;

    try {
        out.check();
    } catch (const InvariantViolation& v) {
        diags.push_back(Diagnostic::make(rule_for_violation(v.rule()), at(el), v.what()));
        return std::nullopt;
    }
    return out;
}

std::string element_qname(const MetadataElement& e) {
    if (e.refinement) return "dcterms:" + e.refinement->name;
    return std::string(to_string(e.name));
}

xml::Attributes element_attributes(const MetadataElement& e) {
    xml::Attributes attrs;
    if (e.qualifier) {
        attrs.emplace_back("xsi:type", (e.qualifier->is_vocabulary() ? "olac:" : "dcterms:") + e.qualifier->id);
    }
    if (e.code) attrs.emplace_back("code", *e.code);
    if (e.lang) attrs.emplace_back("xml:lang", e.lang->to_string());
    return attrs;
}

StreamEntry entry_from_element(const xml::Element& el, const Profile& profile) {
    StreamEntry entry;
    entry.line = el.line;
    const xml::Element* body = &el;
    if (el.is(kCatalogNs, "entry")) {
        for (const auto& a : el.attributes) {
            if (a.ns.empty()) entry.meta[a.local] = a.value;
        }
        body = nullptr;
        for (const auto& c : el.children) {
            if (body) throw FatalParse("stream entry holds more than one record", c.line, c.column);
            body = &c;
        }
        if (!body) return entry;
    }
    if (body->is(kOlacNs, "olac")) {
        entry.record = record_from_element(*body, profile);
    } else if (body->is(kOaiDcNs, "dc")) {
        entry.dc = dc_from_element(*body);
    } else {
        throw FatalParse("unexpected element {" + body->ns + "}" + body->local + " in stream", body->line,
                         body->column);
    }
    return entry;
}

}  // namespace

bool ParsedRecord::has_errors() const {
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

ParsedRecord record_from_element(const xml::Element& root, const Profile& profile) {
    if (!root.is(kOlacNs, "olac"))
        throw FatalParse("root element must be olac in namespace " + std::string(kOlacNs) + ", found {" + root.ns +
                             "}" + root.local,
                         root.line, root.column);
    ParsedRecord parsed;
    for (const auto& a : root.attributes) {
        if (a.ns == kXsiNs && a.local == "schemaLocation") continue;
        std::string qn = a.ns.empty() ? a.local : "{" + a.ns + "}" + a.local;
        parsed.diagnostics.push_back(
            Diagnostic::make(Rule::UnknownAttribute, at(root), "attribute " + qn + " on the record dropped"));
    }
    if (!text::is_blank(root.text))
        parsed.diagnostics.push_back(
            Diagnostic::make(Rule::StrayText, at(root), "text inside the record container ignored"));
    for (const auto& child : root.children) {
        if (auto element = map_element(child, profile, parsed.diagnostics)) {
            parsed.record.append(std::move(*element));
            parsed.positions.push_back({child.line, child.column});
        }
    }
    return parsed;
}

ParsedRecord parse_record(std::string_view bytes, const Profile& profile) {
    return record_from_element(xml::parse_document(bytes), profile);
}

void write_record(xml::Writer& writer, const OlacRecord& record, bool declare_namespaces) {
    xml::Attributes attrs;
    if (declare_namespaces) {
        attrs = record_namespaces();
        attrs.emplace_back("xsi:schemaLocation", schema_location());
    }
    writer.open("olac:olac", attrs);
    for (const auto& e : record.elements()) writer.leaf(element_qname(e), element_attributes(e), e.content);
    writer.close();
}

std::string serialize_record(const OlacRecord& record) {
    std::string out;
    xml::Writer writer(out);
    writer.declaration();
    write_record(writer, record, true);
    return out;
}

void write_dc_record(xml::Writer& writer, const DcRecord& record, bool declare_namespaces) {
    xml::Attributes attrs;
    if (declare_namespaces) {
        attrs = {{"xmlns:oai_dc", std::string(kOaiDcNs)},
                 {"xmlns:dc", std::string(kDcNs)},
                 {"xmlns:xsi", std::string(kXsiNs)},
                 {"xsi:schemaLocation", std::string(kOaiDcNs) + " " + std::string(xml::kOaiDcSchema)}};
    }
    writer.open("oai_dc:dc", attrs);
    for (const auto& e : record.elements) {
        xml::Attributes a;
        if (e.lang) a.emplace_back("xml:lang", e.lang->to_string());
        writer.leaf("dc:" + std::string(to_string(e.name)), a, e.content);
    }
    writer.close();
}

std::string serialize_dc_record(const DcRecord& record) {
    std::string out;
    xml::Writer writer(out);
    writer.declaration();
    write_dc_record(writer, record, true);
    return out;
}

DcRecord dc_from_element(const xml::Element& root) {
    if (!root.is(kOaiDcNs, "dc"))
        throw FatalParse("root element must be oai_dc:dc, found {" + root.ns + "}" + root.local, root.line,
                         root.column);
    DcRecord out;
    for (const auto& c : root.children) {
        auto name = c.ns == kDcNs ? element_name_from(c.local) : std::nullopt;
        if (!name) throw FatalParse("unexpected element <" + c.local + "> in oai_dc record", c.line, c.column);
        DcElement e{*name, std::nullopt, c.text};
        if (const auto* lang = c.attribute(kXmlNs, "lang")) {
            e.lang = try_parse_language_code(lang->value);
            if (!e.lang) throw FatalParse("malformed xml:lang '" + lang->value + "'", c.line, c.column);
        }
        out.elements.push_back(std::move(e));
    }
    return out;
}

DcRecord parse_dc_record(std::string_view bytes) { return dc_from_element(xml::parse_document(bytes)); }

std::vector<StreamEntry> parse_stream(std::string_view bytes, const Profile& profile) {
    auto root = xml::parse_document(bytes);
    if (!root.is(kCatalogNs, "stream"))
        throw FatalParse("root element must be stream in namespace " + std::string(kCatalogNs), root.line,
                         root.column);
    std::vector<StreamEntry> entries;
    entries.reserve(root.children.size());
    for (const auto& child : root.children) entries.push_back(entry_from_element(child, profile));
    return entries;
}

StreamEntry parse_entry_document(std::string_view bytes, const Profile& profile) {
    auto root = xml::parse_document(bytes);
    if (!root.is(kCatalogNs, "entry"))
        throw FatalParse("root element must be entry in namespace " + std::string(kCatalogNs), root.line,
                         root.column);
    return entry_from_element(root, profile);
}

StreamWriter::StreamWriter() : writer_(out_) {
    writer_.declaration();
    writer_.open("cat:stream", stream_namespaces());
}

void StreamWriter::add(const xml::Attributes& meta, const OlacRecord* record) {
    if (!record) {
        writer_.leaf("cat:entry", meta, std::nullopt);
        return;
    }
    writer_.open("cat:entry", meta);
    write_record(writer_, *record, false);
    writer_.close();
}

void StreamWriter::add_dc(const xml::Attributes& meta, const DcRecord* record) {
    if (!record) {
        writer_.leaf("cat:entry", meta, std::nullopt);
        return;
    }
    writer_.open("cat:entry", meta);
    write_dc_record(writer_, *record, false);
    writer_.close();
}

std::string StreamWriter::finish() {
    writer_.close();
    return std::move(out_);
}

std::string serialize_entry_document(const xml::Attributes& meta, const OlacRecord* record) {
    std::string out;
    xml::Writer writer(out);
    auto attrs = stream_namespaces();
    attrs.insert(attrs.end(), meta.begin(), meta.end());
    if (!record) {
        writer.leaf("cat:entry", attrs, std::nullopt);
        return out;
    }
    writer.open("cat:entry", attrs);
    write_record(writer, *record, false);
    writer.close();
    return out;
}

}  // namespace olac
