#include <doctest.h>

#include <set>

#include "olac/error.hpp"
#include "olac/vocabulary.hpp"

using namespace olac;

namespace {

std::set<std::string> labels(std::string_view id) {
    std::set<std::string> out;
    for (const auto& t : VocabularyRegistry::builtin().find(id)->terms()) out.insert(t.label);
    return out;
}

std::set<std::string> codes(std::string_view id) {
    std::set<std::string> out;
    for (const auto& t : VocabularyRegistry::builtin().find(id)->terms()) out.insert(t.code);
    return out;
}

}  // namespace

// Term lists as published for the four OLAC vocabularies.
TEST_CASE("shipped vocabularies match the published lists") {
    CHECK(codes("role") == std::set<std::string>{
                               "annotator", "artist", "author", "compiler", "consultant", "depositor", "developer",
                               "editor", "illustrator", "interviewer", "participant", "performer", "photographer",
                               "recorder", "researcher", "respondent", "signer", "speaker", "sponsor",
                               "transcriber", "translator"});
    CHECK(labels("discourse-type") ==
          std::set<std::string>{"drama", "formulaic discourse", "interactive discourse", "language play", "oratory",
                                "narrative", "procedural discourse", "report", "singing", "unintelligible speech"});
    CHECK(labels("linguistic-field") ==
          std::set<std::string>{"anthropological linguistics", "applied linguistics", "cognitive science",
                                "computational linguistics", "discourse analysis", "forensic linguistics",
                                "general linguistics", "historical linguistics", "history of linguistics",
                                "language acquisition", "language documentation", "lexicography",
                                "linguistics and literature", "linguistic theories", "mathematical linguistics",
                                "morphology", "neurolinguistics", "philosophy of language", "phonetics",
                                "phonology", "pragmatics", "psycholinguistics", "semantics", "sociolinguistics",
                                "syntax", "text and corpus linguistics", "translating and interpreting",
                                "typology", "writing systems"});
    CHECK(codes("linguistic-type") == std::set<std::string>{"lexicon", "primary_text", "language_description"});
    CHECK(codes("role").size() == 21);
    CHECK(labels("discourse-type").size() == 10);
    CHECK(labels("linguistic-field").size() == 29);
}

TEST_CASE("term lookup tolerates underscore and case variants") {
    const auto& p = Profile::builtin();
    CHECK(p.lookup_term("linguistic-type", "primary_text").code == "primary_text");
    CHECK(p.lookup_term("linguistic-type", "Primary Text").code == "primary_text");
    CHECK(p.lookup_term("discourse-type", "formulaic_discourse").code == "formulaic discourse");
    CHECK_THROWS_AS(p.lookup_term("role", "singer"), NotFound);
    CHECK_THROWS_AS(p.lookup_term("nosuch", "x"), UnknownVocabulary);
    CHECK(p.lookup_term("language", "x-sil-BAN").label == "Balinese");
}

TEST_CASE("registry rejects duplicate and reserved ids") {
    VocabularyRegistry r = VocabularyRegistry::builtin();
    CHECK_THROWS_AS(r.register_extension("vocab role\nx\tx\n"), DuplicateId);
    CHECK_THROWS_AS(r.register_extension("vocab language\nx\tx\n"), DuplicateId);
    const Vocabulary& v = r.register_extension("vocab x-genre\nfolk\tfolk tale\n");
    CHECK(v.status() == VocabStatus::ThirdParty);
    CHECK(r.find("x-genre")->find("folk")->label == "folk tale");
    CHECK_THROWS_AS(r.register_extension("vocab x-dup\na\ta\na\tb\n"), ParseError);
    CHECK_THROWS_AS(r.register_extension("a\tb\n"), ParseError);
}

TEST_CASE("all seven Fadicca variants resolve to one code") {
    const auto& aliases = AliasTable::builtin();
    const auto target = parse_language_code("x-sil-FIA");
    for (const char* name : {"Fadicca", "Fadicha", "Fedija", "Fadija", "Fiadidja", "Fiyadikkya", "Fedicca"}) {
        CAPTURE(name);
        CHECK(resolve_language_name(name, aliases) == std::vector<LanguageCode>{target});
        CHECK(resolve_language_name(std::string("  ") + name + " ", aliases) == std::vector<LanguageCode>{target});
    }
    CHECK(resolve_language_name("fEDIJA", aliases) == std::vector<LanguageCode>{target});
    CHECK(resolve_language_name("Klingon", aliases).empty());
}

TEST_CASE("named fixture languages") {
    const auto& p = Profile::builtin();
    CHECK(*p.language_name(parse_language_code("x-sil-BAN")) == "Balinese");
    CHECK(*p.language_name(parse_language_code("x-sil-LLU")) == "Lau");
    CHECK(*p.language_name(parse_language_code("x-sil-MGE")) == "Mango");
    CHECK(*p.language_name(parse_language_code("x-sil-STC")) == "Santa Cruz");
    CHECK(p.language_name(parse_language_code("x-sil-ZZZZ")) == nullptr);
}

TEST_CASE("equivalence classes key on the ISO code") {
    const auto& eq = EquivalenceTable::builtin();
    CHECK(eq.class_key(parse_language_code("x-sil-ENG")) == "en");
    CHECK(eq.class_key(parse_language_code("EN")) == "en");
    CHECK(eq.class_key(parse_language_code("x-sil-BAN")) == "x-sil-ban");
    CHECK(eq.members("en") == std::vector<std::string>{"en", "x-sil-eng"});
    CHECK(Profile::builtin().language_class_label("en") == "English");
    CHECK_THROWS(EquivalenceTable::parse("x-sil-ENG\ten\n"));
}

TEST_CASE("alias table entries each resolve to their code") {
    const auto& aliases = AliasTable::builtin();
    CHECK(aliases.entries().size() > 500);
    for (const auto& [name, code] : aliases.entries()) {
        CAPTURE(name);
        auto r = aliases.resolve(name);
        CHECK(std::find(r.begin(), r.end(), code) != r.end());
    }
}
