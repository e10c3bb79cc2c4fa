#include <doctest.h>

#include "fixtures.hpp"
#include "olac/error.hpp"
#include "olac/xml.hpp"

using namespace olac;

TEST_CASE("parse_document resolves namespaces and xsi:type") {
    auto root = xml::parse_document(R"(<r xmlns="urn:a" xmlns:p="urn:p" xmlns:xsi="http://www.w3.org/2001/XMLSchema-instance">
  <p:c xsi:type="p:t" k="v">text</p:c>
</r>)");
    CHECK(root.ns == "urn:a");
    CHECK(root.local == "r");
    REQUIRE(root.children.size() == 1);
    const auto& c = root.children[0];
    CHECK(c.is("urn:p", "c"));
    CHECK(c.text == "text");
    CHECK(c.attribute("", "k")->value == "v");
    const auto* type = c.attribute(xml::kXsiNs, "type");
    REQUIRE(type);
    REQUIRE(type->resolved);
    CHECK(type->resolved->ns == "urn:p");
    CHECK(type->resolved->local == "t");
    CHECK(c.line == 2);
}

TEST_CASE("undeclared xsi:type prefix stays unresolved") {
    auto root = xml::parse_document(
        R"(<r xmlns:xsi="http://www.w3.org/2001/XMLSchema-instance" xsi:type="q:t"/>)");
    CHECK_FALSE(root.attribute(xml::kXsiNs, "type")->resolved);
}

TEST_CASE("fatal parse errors carry a location") {
    try {
        xml::parse_document("<a>\n<b></a>");
        FAIL("expected FatalParse");
    } catch (const FatalParse& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(xml::parse_document(""), FatalParse);
    CHECK_THROWS_AS(xml::parse_document("<a/><b/>"), FatalParse);
}

TEST_CASE("DOCTYPE and entity expansion are refused") {
    CHECK_THROWS_AS(xml::parse_document("<!DOCTYPE a [<!ENTITY x \"y\">]><a>&x;</a>"), FatalParse);
    CHECK_THROWS_AS(xml::parse_document("<!DOCTYPE a SYSTEM \"file:///etc/passwd\"><a/>"), FatalParse);
}

TEST_CASE("canonical form ignores prefixes, declarations and attribute order") {
    const std::string a = R"(<x:r xmlns:x="urn:a" b="2" a="1"><x:c>  t   u </x:c></x:r>)";
    const std::string b = R"(<r xmlns="urn:a" a="1"
        b="2">
      <c>t u</c>
    </r>)";
    CHECK(xml::canonicalize(a) == xml::canonicalize(b));
    CHECK(xml::canonicalize(a) != xml::canonicalize(R"(<r xmlns="urn:b" a="1" b="2"><c>t u</c></r>)"));
}

TEST_CASE("escaping round-trips arbitrary text") {
    testing::Rng rng(17);
    const std::string alphabet = "ab <>&\"'\t\r\n\xC3\xA9";
    for (int i = 0; i < 500; ++i) {
        std::string s;
        for (int j = rng.between(1, 20); j > 0; --j) {
            std::size_t k = rng.below(alphabet.size() - 1);
            if (alphabet[k] == '\xC3') s += "\xC3\xA9";
            else s += alphabet[k];
        }
        std::string doc = "<r a=\"" + xml::escape_attribute(s) + "\">" + xml::escape_text(s) + "</r>";
        auto root = xml::parse_document(doc);
        CHECK(root.attribute("", "a")->value == s);
        CHECK(root.text == s);
    }
}

TEST_CASE("writer layout") {
    std::string out;
    xml::Writer w(out);
    w.declaration();
    w.open("a", {{"k", "v&"}});
    w.leaf("b", {}, std::string("x<y"));
    w.leaf("c", {{"z", "1"}}, std::nullopt);
    w.close();
    CHECK(out == "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<a k=\"v&amp;\">\n  <b>x&lt;y</b>\n  <c z=\"1\"/>\n</a>\n");
}
