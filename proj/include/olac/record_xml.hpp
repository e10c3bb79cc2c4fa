#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "olac/diagnostic.hpp"
#include "olac/record.hpp"
#include "olac/vocabulary.hpp"
#include "olac/xml.hpp"

namespace olac {

struct SourcePosition {
    long line = 0;
    long column = 0;
};

struct ParsedRecord {
    OlacRecord record;
    std::vector<Diagnostic> diagnostics;
    /// Source position of each element of `record`, index for index.
    std::vector<SourcePosition> positions;

    bool has_errors() const;
};

/// Parses a standalone `olac:olac` document. Throws FatalParse for malformed
/// XML or a wrong root; element-level problems become diagnostics.
ParsedRecord parse_record(std::string_view bytes, const Profile& profile = Profile::builtin());

/// Maps an already-parsed `olac:olac` element (for example one embedded in a
/// protocol response) onto a record.
ParsedRecord record_from_element(const xml::Element& root, const Profile& profile = Profile::builtin());

/// Byte-stable serialization: two-space indentation, attributes in the order
/// xsi:type, code, xml:lang.
std::string serialize_record(const OlacRecord& record);

/// Writes the `olac:olac` element at the writer's depth; namespace
/// declarations are emitted only when `declare_namespaces` is set.
void write_record(xml::Writer& writer, const OlacRecord& record, bool declare_namespaces);

std::string serialize_dc_record(const DcRecord& record);
void write_dc_record(xml::Writer& writer, const DcRecord& record, bool declare_namespaces);

/// Parses an `oai_dc:dc` element or document. Throws FatalParse.
DcRecord dc_from_element(const xml::Element& root);
DcRecord parse_dc_record(std::string_view bytes);

/// One item of a multi-record stream: provenance attributes plus either an
/// OLAC record, a simple-DC record, or neither (a deleted entry).
struct StreamEntry {
    std::map<std::string, std::string> meta;
    std::optional<ParsedRecord> record;
    std::optional<DcRecord> dc;
    long line = 0;
};

/// Stream form: a `cat:stream` container whose children are `cat:entry`
/// wrappers (carrying provenance attributes) or bare `olac:olac` records.
/// Throws FatalParse.
std::vector<StreamEntry> parse_stream(std::string_view bytes, const Profile& profile = Profile::builtin());

/// Parses one standalone `cat:entry` document. Throws FatalParse.
StreamEntry parse_entry_document(std::string_view bytes, const Profile& profile = Profile::builtin());

/// Builds a stream document incrementally.
class StreamWriter {
public:
    StreamWriter();
    StreamWriter(const StreamWriter&) = delete;
    StreamWriter& operator=(const StreamWriter&) = delete;

    void add(const xml::Attributes& meta, const OlacRecord* record);
    void add_dc(const xml::Attributes& meta, const DcRecord* record);
    /// Closes the container and returns the document.
    std::string finish();

private:
    std::string out_;
    xml::Writer writer_;
};

/// A `cat:entry` element as a standalone document with its own namespace
/// declarations; `record` may be null for deleted entries.
std::string serialize_entry_document(const xml::Attributes& meta, const OlacRecord* record);

}  // namespace olac
