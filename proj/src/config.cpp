#include "olac/config.hpp"

#include <cstdlib>

#include <json.hpp>

#include "olac/error.hpp"
#include "olac/journal.hpp"
#include "olac/text.hpp"

namespace olac {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path resolve(const fs::path& base, const std::string& p) {
    fs::path path(p);
    return path.is_absolute() ? path : base / path;
}

fs::path existing_file(const fs::path& base, const json& value, const std::string& key) {
    if (!value.is_string()) throw ConfigError("config: '" + key + "' must be a path string");
    fs::path p = resolve(base, value.get<std::string>());
    if (!fs::is_regular_file(p)) throw ConfigError("config: " + key + " file " + p.string() + " does not exist");
    return p;
}

template <typename T>
T number(const json& value, const std::string& key, T lo, T hi) {
    if (!value.is_number_integer()) throw ConfigError("config: '" + key + "' must be an integer");
    auto v = value.get<long long>();
    if (v < static_cast<long long>(lo) || v > static_cast<long long>(hi))
        throw ConfigError("config: '" + key + "' is out of range");
    return static_cast<T>(v);
}

std::string string_of(const json& value, const std::string& key) {
    if (!value.is_string()) throw ConfigError("config: '" + key + "' must be a string");
    return value.get<std::string>();
}

}  // namespace

Config parse_config(std::string_view json_text, const fs::path& base_dir) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config: top level must be an object");

    Config c;
    for (const auto& [key, value] : doc.items()) {
        if (key == "catalog") {
            c.catalog_dir = resolve(base_dir, string_of(value, key));
        } else if (key == "providers") {
            c.providers = existing_file(base_dir, value, key);
        } else if (key == "vocabularies") {
            if (!value.is_array()) throw ConfigError("config: 'vocabularies' must be a list of paths");
            for (const auto& v : value) c.vocabularies.push_back(existing_file(base_dir, v, key));
        } else if (key == "languages") {
            c.languages = existing_file(base_dir, value, key);
        } else if (key == "aliases") {
            c.aliases = existing_file(base_dir, value, key);
        } else if (key == "equivalences") {
            c.equivalences = existing_file(base_dir, value, key);
        } else if (key == "static") {
            c.static_dir = resolve(base_dir, string_of(value, key));
        } else if (key == "host") {
            c.host = string_of(value, key);
        } else if (key == "port") {
            c.port = number<int>(value, key, 0, 65535);
        } else if (key == "page_size") {
            c.page_size = number<std::size_t>(value, key, 1, 100000);
        } else if (key == "harvest_interval") {
            c.harvest_interval = std::chrono::seconds(number<long>(value, key, 0, 365L * 86400));
        } else if (key == "compact_after") {
            c.compact_after = number<std::size_t>(value, key, 0, 100000000);
        } else if (key == "repository_name") {
            c.repository_name = string_of(value, key);
        } else if (key == "admin_email") {
            c.admin_email = string_of(value, key);
        } else if (key == "base_url") {
            c.base_url = string_of(value, key);
        } else if (key == "token_secret") {
            c.token_secret = string_of(value, key);
            if (c.token_secret.empty()) throw ConfigError("config: 'token_secret' must not be empty");
        } else if (key == "granularity") {
            std::string g = string_of(value, key);
            if (g == "day") c.granularity = Granularity::Day;
            else if (g == "second") c.granularity = Granularity::Second;
            else throw ConfigError("config: 'granularity' must be \"day\" or \"second\"");
        } else if (key == "harvest_attempts") {
            c.harvest_attempts = number<int>(value, key, 1, 20);
        } else if (key == "harvest_backoff_ms") {
            c.harvest_backoff = std::chrono::milliseconds(number<long>(value, key, 0, 600000));
        } else if (key == "harvest_timeout") {
            c.harvest_timeout = std::chrono::seconds(number<long>(value, key, 1, 3600));
        } else {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }
    if (!doc.contains("catalog")) c.catalog_dir = base_dir / c.catalog_dir;
    const fs::path parent = c.catalog_dir.parent_path();
    if (!parent.empty() && !fs::is_directory(parent))
        throw ConfigError("config: catalog parent directory " + parent.string() + " does not exist");
    if (fs::exists(c.catalog_dir) && !fs::is_directory(c.catalog_dir))
        throw ConfigError("config: catalog " + c.catalog_dir.string() + " is not a directory");
    if (c.providers) read_providers(*c.providers);
    return c;
}

Config load_config(const std::optional<fs::path>& explicit_path) {
    std::optional<fs::path> path = explicit_path;
    if (!path) {
        if (const char* env = std::getenv(kConfigEnv); env && *env) path = fs::path(env);
    }
    if (!path) return parse_config("{}", fs::current_path());
    if (!fs::is_regular_file(*path)) throw ConfigError("config file " + path->string() + " does not exist");
    fs::path base = fs::absolute(*path).parent_path();
    Config c = parse_config(journal::read_file(*path), base);
    c.file = fs::absolute(*path);
    build_profile(c);
    return c;
}

Profile build_profile(const Config& config) {
    Profile p = Profile::builtin();
    try {
        if (config.languages) p.languages = LanguageTable::load(config.languages->string());
        if (config.aliases) p.aliases = AliasTable::load(config.aliases->string());
        if (config.equivalences) p.equivalences = EquivalenceTable::load(config.equivalences->string());
        for (const auto& v : config.vocabularies) p.vocabularies.register_extension_file(v.string());
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return p;
}

std::vector<std::pair<std::string, std::string>> read_providers(const fs::path& path) {
    std::vector<std::pair<std::string, std::string>> out;
    std::size_t n = 0;
    const std::string content = journal::read_file(path);
    for (auto line : text::lines(content)) {
        ++n;
        if (text::is_blank(line) || text::trim(line).front() == '#') continue;
        auto f = text::split(line, '\t');
        if (f.size() != 2 || text::is_blank(f[0]) || text::is_blank(f[1]))
            throw ConfigError(path.string() + ":" + std::to_string(n) + ": expected archive-id<TAB>base-url");
        out.emplace_back(std::string(text::trim(f[0])), std::string(text::trim(f[1])));
    }
    return out;
}

catalog::AggregatorOptions aggregator_options(const Config& config) {
    catalog::AggregatorOptions o;
    o.harvest.max_attempts = config.harvest_attempts;
    o.harvest.initial_backoff = config.harvest_backoff;
    o.harvest.timeout = config.harvest_timeout;
    o.compact_after = config.compact_after;
    return o;
}

oai::ProviderConfig provider_config(const Config& config, int bound_port) {
    oai::ProviderConfig p;
    p.identity.repository_name = config.repository_name;
    p.identity.admin_email = config.admin_email;
    p.identity.base_url = config.base_url.value_or("http://" + config.host + ":" + std::to_string(bound_port) + "/oai");
    p.identity.granularity = config.granularity;
    p.page_size = config.page_size;
    p.token_secret = config.token_secret;
    return p;
}

}  // namespace olac
