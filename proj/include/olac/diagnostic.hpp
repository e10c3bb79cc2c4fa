#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace olac {

enum class Severity { Error, Warning };

std::string_view to_string(Severity severity);

/// Closed set of diagnostic rule ids. docs/rules.md documents each one.
enum class Rule {
    // Raised while reading XML; the offending element is skipped when the
    // severity is Error.
    UnknownElement,
    UnknownRefinement,
    NestedMarkup,
    MalformedLang,
    UnresolvedType,
    UnknownTypeNamespace,
    UnknownAttribute,
    StrayText,
    MissingCode,
    MissingValue,
    InvalidElement,
    // Raised by conformance validation.
    VocabularyTerm,
    ThirdPartyTerm,
    UnknownVocabulary,
    LanguageCodeMalformed,
    LanguageCodeUnknown,
    W3cDtf,
    CodeWithoutType,
    RefinementWithVocabulary,
    VocabularyPlacement,
};

inline constexpr std::array<Rule, 20> kAllRules{
    Rule::UnknownElement,        Rule::UnknownRefinement,   Rule::NestedMarkup,
    Rule::MalformedLang,         Rule::UnresolvedType,      Rule::UnknownTypeNamespace,
    Rule::UnknownAttribute,      Rule::StrayText,           Rule::MissingCode,
    Rule::MissingValue,          Rule::InvalidElement,      Rule::VocabularyTerm,
    Rule::ThirdPartyTerm,        Rule::UnknownVocabulary,   Rule::LanguageCodeMalformed,
    Rule::LanguageCodeUnknown,   Rule::W3cDtf,              Rule::CodeWithoutType,
    Rule::RefinementWithVocabulary, Rule::VocabularyPlacement,
};

std::string_view to_string(Rule rule);
std::optional<Rule> rule_from(std::string_view id);
/// One-line description for the rule table.
std::string_view describe(Rule rule);
/// Severity the rule is always reported with.
Severity severity_of(Rule rule);

/// Source position when known; otherwise the element's index in the record.
struct Location {
    long line = 0;
    long column = 0;
    long element = -1;

    std::string to_string() const;

    friend bool operator==(const Location&, const Location&) = default;
};

struct Diagnostic {
    Severity severity = Severity::Error;
    Rule rule = Rule::InvalidElement;
    Location location;
    std::string message;

    static Diagnostic make(Rule rule, Location location, std::string message) {
        return {severity_of(rule), rule, location, std::move(message)};
    }

    /// `severity<TAB>rule<TAB>location<TAB>message`
    std::string to_tsv() const;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

}  // namespace olac
