#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "olac/aggregator.hpp"
#include "olac/datestamp.hpp"
#include "olac/oai.hpp"
#include "olac/vocabulary.hpp"

namespace olac {

/// Operator configuration, read from a JSON file. Relative paths resolve
/// against the file's directory (or the working directory without a file).
struct Config {
    std::optional<std::filesystem::path> file;

    std::filesystem::path catalog_dir = "catalog";
    std::optional<std::filesystem::path> providers;
    std::vector<std::filesystem::path> vocabularies;
    std::optional<std::filesystem::path> languages;
    std::optional<std::filesystem::path> aliases;
    std::optional<std::filesystem::path> equivalences;
    std::optional<std::filesystem::path> static_dir;

    std::string host = "127.0.0.1";
    int port = 8080;
    std::size_t page_size = 500;
    std::chrono::seconds harvest_interval{0};
    std::size_t compact_after = 10000;

    std::string repository_name = "OLAC union catalog";
    std::string admin_email = "admin@localhost";
    std::optional<std::string> base_url;
    std::string token_secret = "olac-provider";
    Granularity granularity = Granularity::Day;

    int harvest_attempts = 3;
    std::chrono::milliseconds harvest_backoff{250};
    std::chrono::seconds harvest_timeout{30};
};

inline constexpr const char* kConfigEnv = "OLAC_CONFIG";

/// Uses `explicit_path`, else $OLAC_CONFIG, else defaults. Validates every
/// referenced path; throws ConfigError before any side effect.
Config load_config(const std::optional<std::filesystem::path>& explicit_path);
Config parse_config(std::string_view json_text, const std::filesystem::path& base_dir);

/// Builtin profile with the configured tables and extension vocabularies.
Profile build_profile(const Config& config);

/// `archive-id<TAB>base-url` lines; `#` comments and blank lines skipped.
std::vector<std::pair<std::string, std::string>> read_providers(const std::filesystem::path& path);

catalog::AggregatorOptions aggregator_options(const Config& config);
oai::ProviderConfig provider_config(const Config& config, int bound_port);

}  // namespace olac
