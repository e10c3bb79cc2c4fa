#include "olac/diagnostic.hpp"

namespace olac {

namespace {

struct RuleInfo {
    Rule rule;
    std::string_view id;
    Severity severity;
    std::string_view description;
};

constexpr RuleInfo kRuleTable[] = {
    {Rule::UnknownElement, "unknown-element", Severity::Error,
     "child of the record is not a Dublin Core element or a known refinement"},
    {Rule::UnknownRefinement, "unknown-refinement", Severity::Error,
     "dcterms element is not in the refinement table"},
    {Rule::NestedMarkup, "nested-markup", Severity::Error, "metadata element contains child elements"},
    {Rule::MalformedLang, "malformed-lang", Severity::Error, "xml:lang is not a well-formed language tag"},
    {Rule::UnresolvedType, "unresolved-type", Severity::Error, "xsi:type uses an undeclared prefix"},
    {Rule::UnknownTypeNamespace, "unknown-type", Severity::Warning,
     "xsi:type names neither an OLAC vocabulary nor a dcterms scheme; the type is dropped"},
    {Rule::UnknownAttribute, "unknown-attribute", Severity::Warning, "attribute is not recognized and is dropped"},
    {Rule::StrayText, "stray-text", Severity::Warning, "text directly inside the record container is ignored"},
    {Rule::MissingCode, "missing-code", Severity::Error, "vocabulary-typed element has no code"},
    {Rule::MissingValue, "missing-value", Severity::Error, "element has neither a code nor content"},
    {Rule::InvalidElement, "invalid-element", Severity::Error, "element violates a structural rule"},
    {Rule::VocabularyTerm, "vocabulary-term", Severity::Error,
     "code is not a term of the accepted vocabulary named by the type"},
    {Rule::ThirdPartyTerm, "third-party-term", Severity::Warning,
     "code is not a term of the third-party vocabulary named by the type"},
    {Rule::UnknownVocabulary, "unknown-vocabulary", Severity::Error, "type names an unregistered OLAC vocabulary"},
    {Rule::LanguageCodeMalformed, "language-code-malformed", Severity::Error,
     "language code is not a well-formed tag"},
    {Rule::LanguageCodeUnknown, "language-code-unknown", Severity::Warning,
     "well-formed language code is not in the known language table"},
    {Rule::W3cDtf, "w3cdtf", Severity::Error, "W3C-DTF typed content is not a W3C date/time"},
    {Rule::CodeWithoutType, "code-without-type", Severity::Warning, "element has a code but no type"},
    {Rule::RefinementWithVocabulary, "refinement-with-vocabulary", Severity::Warning,
     "element carries both a refinement and a vocabulary type"},
    {Rule::VocabularyPlacement, "vocabulary-placement", Severity::Warning,
     "vocabulary is used on an element it does not describe"},
};

const RuleInfo& info(Rule rule) {
    for (const auto& r : kRuleTable) {
        if (r.rule == rule) return r;
    }
    return kRuleTable[0];
}

}  // namespace

std::string_view to_string(Severity severity) { return severity == Severity::Error ? "error" : "warning"; }

std::string_view to_string(Rule rule) { return info(rule).id; }

std::optional<Rule> rule_from(std::string_view id) {
    for (const auto& r : kRuleTable) {
        if (r.id == id) return r.rule;
    }
    return std::nullopt;
}

std::string_view describe(Rule rule) { return info(rule).description; }

Severity severity_of(Rule rule) { return info(rule).severity; }

std::string Location::to_string() const {
    if (line > 0) return std::to_string(line) + ":" + std::to_string(column);
    if (element >= 0) return "element " + std::to_string(element + 1);
    return "-";
}

std::string Diagnostic::to_tsv() const {
    std::string msg = message;
    for (auto& c : msg) {
        if (c == '\t' || c == '\n' || c == '\r') c = ' ';
    }
    return std::string(olac::to_string(severity)) + "\t" + std::string(olac::to_string(rule)) + "\t" +
           location.to_string() + "\t" + msg;
}

}  // namespace olac
