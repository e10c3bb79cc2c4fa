#include "fixtures.hpp"

#include <unistd.h>

#include <atomic>
#include <cstdlib>

#include "olac/journal.hpp"

namespace olac::testing {

namespace fs = std::filesystem;

const std::vector<std::string>& word_pool() {
    static const std::vector<std::string> words = {
        "grammar",  "dictionary", "mango",    "fruit",     "cultivation", "songs",     "field",
        "notes",    "recordings", "Santa",    "Cruz",      "village",     "wordlist",  "texts",
        "Lau",      "Balinese",   "verbs",    "tones",     "kinship",     "harvest",   "river",
        "Ñandú",    "Ελληνικά",   "русский",  "Straße",    "café",        "ÉCOLE",     "analysis",
        "stories",  "phonology",  "morphology", "dialect", "survey",      "corpus",    "Fadicca",
    };
    return words;
}

MetadataElement element(ElementName name, std::optional<std::string> content, std::optional<std::string> vocab,
                        std::optional<std::string> code) {
    MetadataElement e;
    e.name = name;
    e.content = std::move(content);
    if (vocab) e.qualifier = Qualifier::vocabulary(*vocab);
    e.code = std::move(code);
    return e;
}

namespace {

std::string words(Rng& rng, int lo, int hi) {
    std::string out;
    int n = rng.between(lo, hi);
    for (int i = 0; i < n; ++i) {
        if (i) out += rng.chance(0.05) ? "  " : " ";
        out += rng.pick(word_pool());
    }
    return out;
}

std::string language_code(Rng& rng, const Profile& profile) {
    const auto& entries = profile.languages.entries();
    double r = rng.between(0, 99);
    if (r < 85) return entries[rng.below(entries.size())].first.to_string();
    if (r < 95) return "x-sil-Q" + std::string(1, static_cast<char>('A' + rng.below(26))) + "Q";
    const auto& aliases = profile.aliases.entries();
    return aliases[rng.below(aliases.size())].second.to_string();
}

const std::vector<std::string> kPeople = {"Bloomfield, Leonard", "Sapir, Edward", "Boas, Franz", "Haas, Mary",
                                          "Hale, Ken",           "Dixon, R. M. W.", "Müller, Jürgen",
                                          "Ōno, Susumu"};

const std::vector<std::string> kDcTypes = {"Text", "Sound", "MovingImage", "Dataset", "Image"};

}  // namespace

OlacRecord random_record(Rng& rng, const Profile& profile) {
    OlacRecord r;
    auto terms = [&](std::string_view vocab) -> const std::vector<VocabTerm>& {
        return profile.vocabularies.find(vocab)->terms();
    };
    auto maybe_lang = [&](MetadataElement& e) {
        if (rng.chance(0.15)) e.lang = parse_language_code(rng.pick(std::vector<std::string>{"en", "fr", "de", "x-sil-BAN"}));
    };

    MetadataElement title = element(ElementName::Title, words(rng, 1, 5));
    maybe_lang(title);
    r.append(title);
    if (rng.chance(0.2)) {
        MetadataElement alt = element(ElementName::Title, words(rng, 1, 3));
        alt.refinement = profile.refinements.find("alternative");
        r.append(alt);
    }
    for (int i = rng.between(0, 3); i > 0; --i) {
        const bool creator = rng.chance(0.5);
        MetadataElement p = element(creator ? ElementName::Creator : ElementName::Contributor, rng.pick(kPeople));
        if (rng.chance(0.7)) {
            p.qualifier = Qualifier::vocabulary(std::string(kRoleVocabulary));
            p.code = rng.pick(terms(kRoleVocabulary)).code;
        }
        r.append(p);
    }
    for (int i = rng.between(0, 2); i > 0; --i) {
        MetadataElement s = element(ElementName::Subject, std::nullopt, std::string(kLanguageVocabulary),
                                    language_code(rng, profile));
        if (rng.chance(0.4)) s.content = words(rng, 1, 2);
        r.append(s);
    }
    for (int i = rng.between(0, 2); i > 0; --i) {
        r.append(element(ElementName::Language, std::nullopt, std::string(kLanguageVocabulary),
                         language_code(rng, profile)));
    }
    if (rng.chance(0.6))
        r.append(element(ElementName::Type, std::nullopt, std::string(kLinguisticTypeVocabulary),
                         rng.pick(terms(kLinguisticTypeVocabulary)).code));
    if (rng.chance(0.4))
        r.append(element(ElementName::Type, std::nullopt, std::string(kDiscourseTypeVocabulary),
                         rng.pick(terms(kDiscourseTypeVocabulary)).code));
    if (rng.chance(0.5)) r.append(element(ElementName::Type, rng.pick(kDcTypes)));
    if (rng.chance(0.5)) {
        MetadataElement f = element(ElementName::Subject, std::nullopt, std::string(kLinguisticFieldVocabulary),
                                    rng.pick(terms(kLinguisticFieldVocabulary)).code);
        if (rng.chance(0.3)) f.content = words(rng, 1, 2);
        r.append(f);
    }
    if (rng.chance(0.7)) {
        MetadataElement d = element(ElementName::Description, words(rng, 2, 12));
        maybe_lang(d);
        r.append(d);
    }
    if (rng.chance(0.6)) {
        MetadataElement d = element(ElementName::Date, std::to_string(rng.between(1900, 2003)) + "-0" +
                                                           std::to_string(rng.between(1, 9)) + "-1" +
                                                           std::to_string(rng.between(0, 9)));
        if (rng.chance(0.5)) d.refinement = profile.refinements.find("created");
        d.qualifier = Qualifier::scheme(std::string(kW3cDtfScheme));
        r.append(d);
    }
    if (rng.chance(0.3)) r.append(element(ElementName::Publisher, words(rng, 1, 3)));
    if (rng.chance(0.3)) {
        MetadataElement rel = element(ElementName::Relation, "collection " + std::to_string(rng.between(1, 50)));
        rel.refinement = profile.refinements.find("isPartOf");
        r.append(rel);
    }
    if (rng.chance(0.2)) r.append(element(ElementName::Rights, "Open access & <free> \"use\""));
    if (rng.chance(0.2)) r.append(element(ElementName::Identifier, "urn:x-fixture:" + std::to_string(rng.below(100000))));
    return r;
}

TempDir::TempDir() {
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path() /
            ("olac-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
}

FixtureProvider::FixtureProvider(std::size_t page_size, std::string name)
    : repo_(std::make_shared<oai::MemoryRepository>()) {
    int port = service_.bind("127.0.0.1", 0);
    url_ = service_.url("/oai");
    oai::ProviderConfig config;
    config.identity.repository_name = std::move(name);
    config.identity.base_url = url_;
    config.identity.admin_email = "fixture@example.org";
    config.page_size = page_size;
    (void)port;
    provider_ = std::make_shared<oai::Provider>(config, repo_);
    service_.mount_provider(provider_);
    service_.listen();
}

std::shared_ptr<oai::Provider> golden_provider() {
    auto repo = std::make_shared<oai::MemoryRepository>();
    OlacRecord bloomfield;
    bloomfield.append(element(ElementName::Creator, "Bloomfield, Leonard"));
    bloomfield.append(element(ElementName::Date, "1933"));
    bloomfield.append(element(ElementName::Title, "Language"));
    bloomfield.append(element(ElementName::Publisher, "New York: Holt"));
    repo->put("oai:example.org:bloomfield", bloomfield, Datestamp::from_ymd(2002, 11, 28));

    OlacRecord lau;
    MetadataElement title = element(ElementName::Title, "Na tala 'uria na idulaa diana");
    title.lang = parse_language_code("x-sil-LLU");
    lau.append(title);
    lau.append(element(ElementName::Subject, std::nullopt, "language", "x-sil-LLU"));
    lau.append(element(ElementName::Contributor, "J. Smith", "role", "transcriber"));
    lau.append(element(ElementName::Type, std::nullopt, "linguistic-type", "primary_text"));
    repo->put("oai:example.org:lau", lau, Datestamp::from_ymd(2002, 12, 3));

    repo->put("oai:example.org:withdrawn", bloomfield, Datestamp::from_ymd(2002, 11, 1));
    repo->remove("oai:example.org:withdrawn", Datestamp::from_ymd(2002, 12, 5));

    oai::ProviderConfig config;
    config.identity.repository_name = "Golden Archive";
    config.identity.base_url = "http://archive.example.org/oai";
    config.identity.admin_email = "admin@example.org";
    config.page_size = 2;
    config.token_secret = "golden";
    config.clock = [] { return Datestamp::from_ymd(2003, 1, 15); };
    return std::make_shared<oai::Provider>(config, repo);
}

std::vector<GoldenCase> golden_cases() {
    using oai::ErrorCode;
    auto args = [](std::initializer_list<std::pair<const std::string, std::string>> list) {
        return oai::RequestArgs(list);
    };
    return {
        {"identify", args({{"verb", "Identify"}}), std::nullopt},
        {"list-metadata-formats", args({{"verb", "ListMetadataFormats"}}), std::nullopt},
        {"list-sets", args({{"verb", "ListSets"}}), std::nullopt},
        {"get-record-olac",
         args({{"verb", "GetRecord"}, {"identifier", "oai:example.org:lau"}, {"metadataPrefix", "olac"}}),
         std::nullopt},
        {"get-record-oai-dc",
         args({{"verb", "GetRecord"}, {"identifier", "oai:example.org:lau"}, {"metadataPrefix", "oai_dc"}}),
         std::nullopt},
        {"get-record-deleted",
         args({{"verb", "GetRecord"}, {"identifier", "oai:example.org:withdrawn"}, {"metadataPrefix", "olac"}}),
         std::nullopt},
        {"list-identifiers-page1", args({{"verb", "ListIdentifiers"}, {"metadataPrefix", "olac"}}), std::nullopt},
        {"list-records-from",
         args({{"verb", "ListRecords"}, {"metadataPrefix", "oai_dc"}, {"from", "2002-12-01"}}), std::nullopt},
        {"error-bad-verb", args({{"verb", "Explode"}}), ErrorCode::BadVerb},
        {"error-missing-verb", args({{"identifier", "x"}}), ErrorCode::BadVerb},
        {"error-repeated-verb", args({{"verb", "Identify"}, {"verb", "Identify"}}), ErrorCode::BadVerb},
        {"error-illegal-argument", args({{"verb", "Identify"}, {"metadataPrefix", "olac"}}), ErrorCode::BadArgument},
        {"error-missing-argument", args({{"verb", "GetRecord"}, {"metadataPrefix", "olac"}}), ErrorCode::BadArgument},
        {"error-repeated-argument",
         args({{"verb", "ListRecords"}, {"metadataPrefix", "olac"}, {"metadataPrefix", "olac"}}),
         ErrorCode::BadArgument},
        {"error-bad-from", args({{"verb", "ListRecords"}, {"metadataPrefix", "olac"}, {"from", "yesterday"}}),
         ErrorCode::BadArgument},
        {"error-from-after-until",
         args({{"verb", "ListRecords"}, {"metadataPrefix", "olac"}, {"from", "2002-12-01"}, {"until", "2002-11-01"}}),
         ErrorCode::BadArgument},
        {"error-mixed-granularity",
         args({{"verb", "ListRecords"},
               {"metadataPrefix", "olac"},
               {"from", "2002-11-01"},
               {"until", "2002-12-01T00:00:00Z"}}),
         ErrorCode::BadArgument},
        {"error-token-with-prefix",
         args({{"verb", "ListRecords"}, {"metadataPrefix", "olac"}, {"resumptionToken", "abc"}}),
         ErrorCode::BadArgument},
        {"error-id-does-not-exist",
         args({{"verb", "GetRecord"}, {"identifier", "nope"}, {"metadataPrefix", "olac"}}),
         ErrorCode::IdDoesNotExist},
        {"error-no-records-match", args({{"verb", "ListRecords"}, {"metadataPrefix", "olac"}, {"from", "2100-01-01"}}),
         ErrorCode::NoRecordsMatch},
        {"error-set", args({{"verb", "ListIdentifiers"}, {"metadataPrefix", "olac"}, {"set", "any"}}),
         ErrorCode::NoRecordsMatch},
        {"error-cannot-disseminate", args({{"verb", "ListRecords"}, {"metadataPrefix", "marc"}}),
         ErrorCode::CannotDisseminateFormat},
        {"error-cannot-disseminate-get",
         args({{"verb", "GetRecord"}, {"identifier", "oai:example.org:lau"}, {"metadataPrefix", "marc"}}),
         ErrorCode::CannotDisseminateFormat},
        {"error-bad-token", args({{"verb", "ListRecords"}, {"resumptionToken", "bm90LWEtdG9rZW4.0000"}}),
         ErrorCode::BadResumptionToken},
        {"error-list-sets-token", args({{"verb", "ListSets"}, {"resumptionToken", "x"}}),
         ErrorCode::BadResumptionToken},
    };
}

std::string check_golden(const std::string& dir, const std::string& name, const std::string& actual) {
    const fs::path path = fs::path(dir) / (name + ".xml");
    if (std::getenv("OLAC_UPDATE_GOLDEN")) {
        journal::write_file_atomic(path.string(), actual);
        return {};
    }
    std::string expected;
    try {
        expected = journal::read_file(path.string());
    } catch (const std::exception& e) {
        return "missing golden file " + path.string();
    }
    if (expected == actual) return {};
    std::size_t i = 0;
    while (i < expected.size() && i < actual.size() && expected[i] == actual[i]) ++i;
    return name + ": differs from golden at byte " + std::to_string(i);
}

}  // namespace olac::testing
