#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace olac::xml {

inline constexpr std::string_view kOlacNs = "http://www.language-archives.org/OLAC/1.0/";
inline constexpr std::string_view kOlacSchema = "http://www.language-archives.org/OLAC/1.0/olac.xsd";
inline constexpr std::string_view kDcNs = "http://purl.org/dc/elements/1.1/";
inline constexpr std::string_view kDctermsNs = "http://purl.org/dc/terms/";
inline constexpr std::string_view kXsiNs = "http://www.w3.org/2001/XMLSchema-instance";
inline constexpr std::string_view kXmlNs = "http://www.w3.org/XML/1998/namespace";
inline constexpr std::string_view kOaiDcNs = "http://www.openarchives.org/OAI/2.0/oai_dc/";
inline constexpr std::string_view kOaiDcSchema = "http://www.openarchives.org/OAI/2.0/oai_dc.xsd";
inline constexpr std::string_view kCatalogNs = "urn:x-olac-catalog:1";

struct QName {
    std::string ns;
    std::string local;

    friend bool operator==(const QName&, const QName&) = default;
};

struct Attribute {
    std::string ns;  // empty for unqualified attributes
    std::string local;
    std::string value;
    /// For xsi:type, the value resolved against the in-scope namespace
    /// declarations at parse time. Unset if the prefix is undeclared.
    std::optional<QName> resolved;
};

/// A parsed element with expanded names. Prefixes are not retained; names
/// are resolved through the declarations in scope.
struct Element {
    std::string ns;
    std::string local;
    std::vector<Attribute> attributes;
    std::vector<Element> children;
    std::string text;  // all character data directly inside this element
    long line = 0;
    long column = 0;

    bool is(std::string_view n, std::string_view l) const { return ns == n && local == l; }
    const Attribute* attribute(std::string_view n, std::string_view l) const;
    const Element* child(std::string_view n, std::string_view l) const;
};

/// Parses a UTF-8 document. DOCTYPE declarations are refused. Throws
/// FatalParse with the expat location on malformed input.
Element parse_document(std::string_view bytes);

/// A canonical text form for comparing documents: expanded names,
/// namespace declarations dropped, attributes sorted, attribute values and
/// text whitespace-collapsed, whitespace-only text removed and xsi:type
/// values resolved to expanded names.
std::string canonicalize(std::string_view bytes);
std::string canonicalize(const Element& root);

std::string escape_text(std::string_view s);
std::string escape_attribute(std::string_view s);

using Attributes = std::vector<std::pair<std::string, std::string>>;

/// Indenting writer. Elements holding only text stay on one line.
class Writer {
public:
    explicit Writer(std::string& out, int base_depth = 0) : out_(out), depth_(base_depth) {}

    void declaration();
    void open(std::string_view qname, const Attributes& attributes = {});
    void close();
    /// `<q attrs>text</q>`, or `<q attrs/>` when text is unset.
    void leaf(std::string_view qname, const Attributes& attributes,
              const std::optional<std::string>& text);

private:
    void indent();
    void start_tag(std::string_view qname, const Attributes& attributes);

    std::string& out_;
    int depth_;
    std::vector<std::string> stack_;
};

}  // namespace olac::xml
