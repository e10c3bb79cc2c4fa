#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "olac/language_code.hpp"

namespace olac {

/// The fifteen Dublin Core elements.
enum class ElementName {
    Title,
    Creator,
    Subject,
    Description,
    Publisher,
    Contributor,
    Date,
    Type,
    Format,
    Identifier,
    Source,
    Language,
    Relation,
    Coverage,
    Rights,
};

inline constexpr std::array<ElementName, 15> kAllElementNames{
    ElementName::Title,      ElementName::Creator,  ElementName::Subject,
    ElementName::Description, ElementName::Publisher, ElementName::Contributor,
    ElementName::Date,       ElementName::Type,     ElementName::Format,
    ElementName::Identifier, ElementName::Source,   ElementName::Language,
    ElementName::Relation,   ElementName::Coverage, ElementName::Rights,
};

std::string_view to_string(ElementName name);
std::optional<ElementName> element_name_from(std::string_view s);
/// Throws InvariantViolation for anything outside the closed set.
ElementName parse_element_name(std::string_view s);

/// A DC-terms refinement; always narrows exactly one parent element.
struct Refinement {
    std::string name;
    ElementName parent;

    friend bool operator==(const Refinement&, const Refinement&) = default;
};

/// Refinement name -> parent element, loaded from `refinement<TAB>parent`
/// lines. Blank lines and lines starting with '#' are ignored.
class RefinementTable {
public:
    RefinementTable() = default;

    static RefinementTable parse(std::string_view content);
    static RefinementTable load(const std::string& path);
    static const RefinementTable& builtin();

    /// Throws DuplicateId when the name is already mapped to another parent.
    void add(std::string name, ElementName parent);
    std::optional<Refinement> find(std::string_view name) const;
    std::size_t size() const { return table_.size(); }

private:
    std::map<std::string, ElementName, std::less<>> table_;
};

/// The xsi:type of an element: either an OLAC vocabulary (whose value lives
/// in the code attribute) or an encoding scheme such as W3C-DTF.
struct Qualifier {
    enum class Kind { Vocabulary, EncodingScheme };

    Kind kind = Kind::Vocabulary;
    std::string id;

    static Qualifier vocabulary(std::string id) { return {Kind::Vocabulary, std::move(id)}; }
    static Qualifier scheme(std::string id) { return {Kind::EncodingScheme, std::move(id)}; }

    bool is_vocabulary() const { return kind == Kind::Vocabulary; }
    bool is_vocabulary(std::string_view vocab) const { return is_vocabulary() && id == vocab; }

    friend bool operator==(const Qualifier&, const Qualifier&) = default;
};

struct MetadataElement {
    ElementName name = ElementName::Title;
    std::optional<Refinement> refinement;
    std::optional<Qualifier> qualifier;
    std::optional<std::string> code;
    std::optional<LanguageCode> lang;
    std::optional<std::string> content;  // verbatim, surrounding whitespace included

    /// Throws InvariantViolation naming the first broken rule.
    void check() const;
    bool valid() const noexcept;

    friend bool operator==(const MetadataElement&, const MetadataElement&) = default;
};

/// An ordered multiset of metadata elements describing one resource.
class OlacRecord {
public:
    OlacRecord() = default;

    const std::vector<MetadataElement>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    bool empty() const { return elements_.empty(); }

    /// Checks and appends in place.
    void append(MetadataElement element);

    /// A copy of this record with the element appended; *this is untouched.
    OlacRecord with(MetadataElement element) const;

    /// First element with the given name, if any.
    const MetadataElement* first(ElementName name) const;

    friend bool operator==(const OlacRecord&, const OlacRecord&) = default;

private:
    std::vector<MetadataElement> elements_;
};

OlacRecord add_element(const OlacRecord& record, MetadataElement element);
std::vector<MetadataElement> elements_of(const OlacRecord& record, ElementName name);

/// Simple Dublin Core: bare elements only.
struct DcElement {
    ElementName name = ElementName::Title;
    std::optional<LanguageCode> lang;
    std::string content;

    friend bool operator==(const DcElement&, const DcElement&) = default;
};

struct DcRecord {
    std::vector<DcElement> elements;

    friend bool operator==(const DcRecord&, const DcRecord&) = default;
};

}  // namespace olac
