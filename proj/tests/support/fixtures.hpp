#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "olac/http.hpp"
#include "olac/oai.hpp"
#include "olac/record.hpp"
#include "olac/vocabulary.hpp"

namespace olac::testing {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }
    int between(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
    bool chance(double p) { return std::bernoulli_distribution(p)(engine_); }
    template <typename C>
    const auto& pick(const C& c) {
        return c[below(c.size())];
    }
    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

/// Words used for titles and descriptions; includes language names so that
/// free text and facets interact.
const std::vector<std::string>& word_pool();

/// A valid record exercising refinements, schemes, every shipped
/// vocabulary, language codes (known, equivalent, unknown) and xml:lang.
OlacRecord random_record(Rng& rng, const Profile& profile = Profile::builtin());

/// A minimal element helper.
MetadataElement element(ElementName name, std::optional<std::string> content,
                        std::optional<std::string> vocab = std::nullopt, std::optional<std::string> code = std::nullopt);

class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

/// A data provider over a MemoryRepository, served on an ephemeral port.
class FixtureProvider {
public:
    explicit FixtureProvider(std::size_t page_size = 500, std::string name = "fixture");

    oai::MemoryRepository& repo() { return *repo_; }
    std::shared_ptr<oai::MemoryRepository> repo_ptr() { return repo_; }
    const std::string& url() const { return url_; }
    const oai::Provider& provider() const { return *provider_; }

private:
    std::shared_ptr<oai::MemoryRepository> repo_;
    std::shared_ptr<oai::Provider> provider_;
    http::Service service_;
    std::string url_;
};

/// A provider with a fixed clock, secret and three records (one deleted),
/// page size 2. Responses from it are byte-stable.
std::shared_ptr<oai::Provider> golden_provider();

struct GoldenCase {
    std::string name;  // file stem under the golden directory
    oai::RequestArgs args;
    std::optional<oai::ErrorCode> expected;  // none for successful responses
};

/// Every invalid-request class plus one request per verb.
std::vector<GoldenCase> golden_cases();

/// Compares against `<dir>/<name>.xml`; with OLAC_UPDATE_GOLDEN set, rewrites
/// the file instead. Returns an empty string on a match.
std::string check_golden(const std::string& dir, const std::string& name, const std::string& actual);

}  // namespace olac::testing
