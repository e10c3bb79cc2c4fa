#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "olac/datestamp.hpp"
#include "olac/record.hpp"
#include "olac/vocabulary.hpp"

namespace olac::oai {

inline constexpr std::string_view kOaiNs = "http://www.openarchives.org/OAI/2.0/";
inline constexpr std::string_view kOaiSchema = "http://www.openarchives.org/OAI/2.0/OAI-PMH.xsd";
inline constexpr std::string_view kProtocolVersion = "2.0";

enum class MetadataFormat { Olac, OaiDc };

std::string_view prefix(MetadataFormat format);
std::optional<MetadataFormat> format_from_prefix(std::string_view prefix);

/// The six in-band protocol error codes.
enum class ErrorCode {
    BadVerb,
    BadArgument,
    IdDoesNotExist,
    NoRecordsMatch,
    CannotDisseminateFormat,
    BadResumptionToken,
};

std::string_view to_string(ErrorCode code);
std::optional<ErrorCode> error_code_from(std::string_view code);

struct RecordHeader {
    std::string identifier;
    Datestamp datestamp;
    bool deleted = false;

    friend bool operator==(const RecordHeader&, const RecordHeader&) = default;
};

struct ProviderIdentity {
    std::string repository_name;
    std::string base_url;
    std::string protocol_version = std::string(kProtocolVersion);
    std::string admin_email;
    Datestamp earliest_datestamp;
    Granularity granularity = Granularity::Day;

    friend bool operator==(const ProviderIdentity&, const ProviderIdentity&) = default;
};

/// One record as served; `record` is null for deleted headers.
struct ServedRecord {
    RecordHeader header;
    std::shared_ptr<const OlacRecord> record;
};

/// An immutable view of a repository; `records` is sorted by identifier.
struct RepositoryView {
    std::uint64_t snapshot_id = 0;
    std::vector<ServedRecord> records;

    const ServedRecord* find(std::string_view identifier) const;
    std::optional<Datestamp> earliest() const;
};

/// Anything a data provider can serve.
class RecordSource {
public:
    virtual ~RecordSource() = default;
    virtual std::shared_ptr<const RepositoryView> view() const = 0;
};

/// Thread-safe in-memory repository with persistent deletion tracking. Every
/// mutation starts a new snapshot.
class MemoryRepository : public RecordSource {
public:
    MemoryRepository() = default;

    void put(const std::string& identifier, OlacRecord record, Datestamp datestamp);
    /// Leaves a deleted header behind; returns false if the id is unknown.
    bool remove(const std::string& identifier, Datestamp datestamp);
    std::size_t size() const;

    std::shared_ptr<const RepositoryView> view() const override;

private:
    mutable std::mutex mutex_;
    std::map<std::string, ServedRecord> records_;
    std::uint64_t snapshot_id_ = 1;
    mutable std::shared_ptr<const RepositoryView> cached_;
};

struct ProviderConfig {
    ProviderIdentity identity;
    /// When set, overrides the earliest datestamp computed from the records.
    bool fixed_earliest_datestamp = false;
    std::size_t page_size = 500;
    std::chrono::seconds token_ttl{600};
    std::string token_secret = "olac-provider";
    std::function<Datestamp()> clock = &Datestamp::now;
};

/// Request parameters; repeated keys are kept so they can be rejected.
using RequestArgs = std::multimap<std::string, std::string>;

/// The data-provider endpoint. Stateless per request: each request pins the
/// current view of the source, and resumption tokens are signed cursors that
/// carry the query, position, snapshot id and expiry.
class Provider {
public:
    Provider(ProviderConfig config, std::shared_ptr<const RecordSource> source,
             const Profile& profile = Profile::builtin());

    /// Returns the UTF-8 XML response, errors included.
    std::string handle(const RequestArgs& args) const;

    const ProviderConfig& config() const { return config_; }

private:
    struct ListQuery;

    std::string identify(const std::shared_ptr<const RepositoryView>& view, const RequestArgs& args) const;
    std::string list_metadata_formats(const std::shared_ptr<const RepositoryView>& view,
                                      const RequestArgs& args) const;
    std::string list_sets(const RequestArgs& args) const;
    std::string get_record(const std::shared_ptr<const RepositoryView>& view, const RequestArgs& args) const;
    std::string list(const std::shared_ptr<const RepositoryView>& view, const RequestArgs& args,
                     bool with_metadata) const;

    std::string error(const RequestArgs& args, ErrorCode code, const std::string& message) const;
    std::string begin(const RequestArgs& args, bool echo) const;

    std::string make_token(const ListQuery& q, std::size_t cursor, std::uint64_t snapshot, Datestamp expiry) const;
    std::optional<ListQuery> read_token(const std::string& token, std::uint64_t snapshot, std::size_t& cursor) const;

    ProviderConfig config_;
    std::shared_ptr<const RecordSource> source_;
    const Profile* profile_;
};

}  // namespace olac::oai
