#include <doctest.h>

#include "fixtures.hpp"
#include "olac/error.hpp"
#include "olac/journal.hpp"
#include "olac/record_xml.hpp"
#include "olac/xml.hpp"

using namespace olac;
using testing::element;

namespace {

std::string bloomfield() { return journal::read_file(std::string(OLAC_TEST_DATA) + "/bloomfield.xml"); }

const std::string kHead = R"(<olac:olac xmlns:olac="http://www.language-archives.org/OLAC/1.0/"
  xmlns="http://purl.org/dc/elements/1.1/" xmlns:dcterms="http://purl.org/dc/terms/"
  xmlns:xsi="http://www.w3.org/2001/XMLSchema-instance">)";

ParsedRecord parse_body(const std::string& body) { return parse_record(kHead + body + "</olac:olac>"); }

std::vector<Rule> rules(const ParsedRecord& p) {
    std::vector<Rule> out;
    for (const auto& d : p.diagnostics) out.push_back(d.rule);
    return out;
}

}  // namespace

TEST_CASE("the example record parses into four elements") {
    ParsedRecord p = parse_record(bloomfield());
    CHECK(p.diagnostics.empty());
    REQUIRE(p.record.size() == 4);
    const auto& e = p.record.elements();
    CHECK(e[0].name == ElementName::Creator);
    CHECK(e[0].content == "Bloomfield, Leonard");
    CHECK(e[1].name == ElementName::Date);
    CHECK(e[1].content == "1933");
    CHECK(e[2].name == ElementName::Title);
    CHECK(e[2].content == "Language");
    CHECK(e[3].name == ElementName::Publisher);
    CHECK(e[3].content == "New York: Holt");
    CHECK(p.positions.size() == 4);
    CHECK(p.positions[0].line == 8);
}

TEST_CASE("the example record round-trips under canonicalization") {
    ParsedRecord p = parse_record(bloomfield());
    const std::string out = serialize_record(p.record);
    CHECK(xml::canonicalize(out) == xml::canonicalize(bloomfield()));
    CHECK(parse_record(out).record == p.record);
}

TEST_CASE("serialization layout") {
    OlacRecord r;
    MetadataElement s = element(ElementName::Subject, "Balinese grammar", "language", "x-sil-BAN");
    s.lang = parse_language_code("en");
    r.append(s);
    MetadataElement d = element(ElementName::Date, "1933");
    d.refinement = RefinementTable::builtin().find("created");
    d.qualifier = Qualifier::scheme("W3C-DTF");
    r.append(d);
    CHECK(serialize_record(r) ==
          "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
          "<olac:olac xmlns:olac=\"http://www.language-archives.org/OLAC/1.0/\" "
          "xmlns=\"http://purl.org/dc/elements/1.1/\" xmlns:dcterms=\"http://purl.org/dc/terms/\" "
          "xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\" "
          "xsi:schemaLocation=\"http://www.language-archives.org/OLAC/1.0/ "
          "http://www.language-archives.org/OLAC/1.0/olac.xsd\">\n"
          "  <subject xsi:type=\"olac:language\" code=\"x-sil-BAN\" xml:lang=\"en\">Balinese grammar</subject>\n"
          "  <dcterms:created xsi:type=\"dcterms:W3C-DTF\">1933</dcterms:created>\n"
          "</olac:olac>\n");
}

TEST_CASE("parse(serialize(r)) == r for generated records") {
    testing::Rng rng(23);
    for (int i = 0; i < 500; ++i) {
        OlacRecord r = testing::random_record(rng);
        const std::string bytes = serialize_record(r);
        ParsedRecord p = parse_record(bytes);
        CHECK(p.diagnostics.empty());
        CHECK(p.record == r);
        CHECK(serialize_record(p.record) == bytes);
    }
}

TEST_CASE("code attribute accepted with or without prefix") {
    auto a = parse_body(R"(<subject xsi:type="olac:language" code="x-sil-BAN"/>)");
    auto b = parse_body(R"(<subject xsi:type="olac:language" olac:code="x-sil-BAN"/>)");
    CHECK(a.diagnostics.empty());
    CHECK(a.record == b.record);
    CHECK(a.record.elements()[0].code == "x-sil-BAN");
}

TEST_CASE("element-level problems become diagnostics") {
    CHECK(rules(parse_body("<bogus>x</bogus>")) == std::vector<Rule>{Rule::UnknownElement});
    CHECK(rules(parse_body("<dcterms:bogus>x</dcterms:bogus>")) == std::vector<Rule>{Rule::UnknownRefinement});
    CHECK(rules(parse_body("<title><b>x</b></title>")) == std::vector<Rule>{Rule::NestedMarkup});
    CHECK(rules(parse_body(R"(<title xml:lang="english">x</title>)")) == std::vector<Rule>{Rule::MalformedLang});
    CHECK(rules(parse_body(R"(<subject xsi:type="nope:language" code="en"/>)")) ==
          std::vector<Rule>{Rule::UnresolvedType});
    CHECK(rules(parse_body(R"(<subject xmlns:o="urn:other" xsi:type="o:t">x</subject>)")) ==
          std::vector<Rule>{Rule::UnknownTypeNamespace});
    CHECK(rules(parse_body(R"(<title foo="1">x</title>)")) == std::vector<Rule>{Rule::UnknownAttribute});
    CHECK(rules(parse_body("stray<title>x</title>")) == std::vector<Rule>{Rule::StrayText});
    CHECK(rules(parse_body(R"(<subject xsi:type="olac:language">Balinese</subject>)")) ==
          std::vector<Rule>{Rule::MissingCode});
    CHECK(rules(parse_body("<title>  </title>")) == std::vector<Rule>{Rule::MissingValue});
    CHECK(rules(parse_body("<title/>")) == std::vector<Rule>{Rule::MissingValue});
}

TEST_CASE("dropped elements do not stop the rest of the record") {
    auto p = parse_body("<bogus>x</bogus><title>kept</title>");
    REQUIRE(p.record.size() == 1);
    CHECK(p.record.elements()[0].content == "kept");
    CHECK(p.has_errors());
}

TEST_CASE("wrong root or malformed XML is fatal") {
    CHECK_THROWS_AS(parse_record("<olac/>"), FatalParse);
    CHECK_THROWS_AS(parse_record(kHead + "<title>x</title>"), FatalParse);
    CHECK_THROWS_AS(parse_record("not xml"), FatalParse);
}

TEST_CASE("simple DC serialization round-trips") {
    DcRecord dc;
    dc.elements.push_back(DcElement{ElementName::Title, parse_language_code("fr"), "Langue"});
    dc.elements.push_back(DcElement{ElementName::Subject, std::nullopt, "Balinese [?]"});
    const std::string bytes = serialize_dc_record(dc);
    CHECK(bytes.find("<oai_dc:dc") != std::string::npos);
    CHECK(bytes.find("<dc:title xml:lang=\"fr\">Langue</dc:title>") != std::string::npos);
    CHECK(parse_dc_record(bytes) == dc);
}

TEST_CASE("streams carry entries, bare records and deletions") {
    testing::Rng rng(29);
    std::vector<OlacRecord> records;
    StreamWriter w;
    for (int i = 0; i < 20; ++i) {
        records.push_back(testing::random_record(rng));
        w.add({{"id", "r" + std::to_string(i)}}, &records.back());
    }
    w.add({{"id", "gone"}, {"deleted", "true"}}, nullptr);
    auto entries = parse_stream(w.finish());
    REQUIRE(entries.size() == 21);
    for (int i = 0; i < 20; ++i) {
        CHECK(entries[i].meta.at("id") == "r" + std::to_string(i));
        REQUIRE(entries[i].record);
        CHECK(entries[i].record->record == records[i]);
    }
    CHECK_FALSE(entries[20].record);

    StreamWriter empty;
    CHECK(parse_stream(empty.finish()).empty());

    const std::string single = serialize_entry_document({{"id", "x"}}, &records[0]);
    auto one = parse_entry_document(single);
    CHECK(one.meta.at("id") == "x");
    CHECK(one.record->record == records[0]);
}
