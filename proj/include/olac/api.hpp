#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include <json.hpp>

#include "olac/aggregator.hpp"
#include "olac/search.hpp"

namespace httplib {
class Server;
}

namespace olac::api {

using Params = std::multimap<std::string, std::string>;

struct SearchRequest {
    search::Query query;
    std::size_t offset = 0;
    std::optional<std::size_t> limit;
};

/// Maps request parameters (q, subject_language, language, linguistic_type,
/// discourse_type, linguistic_field, role, name, archive, type, offset,
/// limit) to a query. Throws ConfigError on malformed or unknown parameters.
SearchRequest parse_search_params(const Params& params);

nlohmann::json to_json(const search::ResultSet& results);
nlohmann::json to_json(const std::vector<search::FacetCount>& counts);
nlohmann::json record_json(const catalog::CatalogEntry& entry, std::uint64_t snapshot, const Profile& profile);

/// The JSON API over an aggregator. The index is rebuilt by refresh(), off
/// the request path; requests use whichever index is current.
class Service {
public:
    Service(std::shared_ptr<const catalog::Aggregator> aggregator, const Profile& profile);

    /// Rebuilds the index if the catalog has a newer snapshot.
    void refresh();
    std::shared_ptr<const search::Index> index() const;

    /// `/api/search`, `/api/facets/<id>`, `/api/record/<archive>/<id>` and
    /// static assets at `/` (a built-in page when `static_dir` is unset or
    /// missing).
    void mount(httplib::Server& server, const std::optional<std::filesystem::path>& static_dir) const;

    /// Shared by the HTTP routes and the CLI: returns (status, body).
    std::pair<int, nlohmann::json> search(const Params& params) const;
    std::pair<int, nlohmann::json> facets(const std::string& id) const;
    std::pair<int, nlohmann::json> record(const std::string& archive, const std::string& id) const;

private:
    std::shared_ptr<const catalog::Aggregator> aggregator_;
    const Profile* profile_;
    mutable std::mutex mutex_;
    std::shared_ptr<const search::Index> index_;
};

/// Minimal search page served when no UI assets are installed.
extern const char* const kFallbackPage;

}  // namespace olac::api
