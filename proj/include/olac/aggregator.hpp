#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "olac/harvester.hpp"
#include "olac/journal.hpp"
#include "olac/oai.hpp"
#include "olac/record.hpp"

namespace olac::catalog {

struct EntryKey {
    std::string archive;
    std::string id;

    friend auto operator<=>(const EntryKey&, const EntryKey&) = default;
    friend bool operator==(const EntryKey&, const EntryKey&) = default;
};

/// One harvested record. `record` is null iff the header is deleted.
struct CatalogEntry {
    EntryKey key;
    oai::RecordHeader header;
    std::shared_ptr<const OlacRecord> record;
    Datestamp first_seen;
    Datestamp last_updated;

    bool deleted() const { return header.deleted; }
    /// Equality on key, header and record body; ignores bookkeeping times.
    bool same_state(const CatalogEntry& other) const;
};

enum class SourceStatus { Active, Failing };

std::string_view to_string(SourceStatus status);

struct ArchiveSource {
    std::string id;
    std::string base_url;
    std::optional<Datestamp> last_harvest;
    SourceStatus status = SourceStatus::Active;
    int consecutive_failures = 0;

    friend bool operator==(const ArchiveSource&, const ArchiveSource&) = default;
};

struct ArchiveStats {
    std::size_t live = 0;
    std::size_t deleted = 0;
};

/// An immutable published state of the catalog.
struct Snapshot {
    std::uint64_t id = 0;
    std::map<EntryKey, std::shared_ptr<const CatalogEntry>> entries;
    std::map<std::string, ArchiveStats> per_archive;

    const CatalogEntry* find(const EntryKey& key) const;
    std::size_t live_count() const;
};

struct HarvestReport {
    std::string archive;
    bool incremental = false;
    std::size_t received = 0;
    std::size_t added = 0;
    std::size_t updated = 0;
    std::size_t deleted = 0;
    /// Record-level problems and provider self-description problems.
    std::vector<std::string> errors;
};

enum class ExportFormat { OlacStream, OaiDcStream, Display };

struct AggregatorOptions {
    oai::HarvestOptions harvest;
    std::function<Datestamp()> clock = &Datestamp::now;
    /// Compact the journal into a snapshot after this many frames; 0 never.
    std::size_t compact_after = 0;
    /// Check provider self-descriptions during full harvests.
    bool check_identity = true;
};

/// Union catalog over registered archives. Single writer: commits are
/// serialized, readers work on published snapshots. With a directory the
/// catalog persists as `journal.olacx`, `snapshot-<id>.olacx` and
/// `sources.tsv`; without one it lives in memory only.
class Aggregator : public oai::RecordSource {
public:
    using Options = AggregatorOptions;

    /// Opens (or creates) a catalog directory, replaying the journal.
    explicit Aggregator(std::optional<std::filesystem::path> dir = std::nullopt, Options options = {});
    ~Aggregator() override;

    ArchiveSource register_archive(const std::string& id, const std::string& base_url);
    std::vector<ArchiveSource> sources() const;
    ArchiveSource source(const std::string& id) const;

    /// Throws UnknownArchive, ProviderUnreachable or ProtocolError; on error
    /// nothing is committed and the last harvest time is unchanged.
    HarvestReport harvest_full(const std::string& archive);
    /// Harvests from the last harvest day on. Throws NoPriorHarvest if the
    /// archive was never harvested successfully.
    HarvestReport harvest_incremental(const std::string& archive);

    std::shared_ptr<const Snapshot> snapshot() const;
    /// The protocol view: identifiers are `archive:id`, datestamps are the
    /// time each entry last changed here.
    std::shared_ptr<const oai::RepositoryView> view() const override;

    std::string export_catalog(ExportFormat format, const Profile& profile = Profile::builtin()) const;

    /// Writes a snapshot file and empties the journal.
    void compact();

    /// Replay statistics from opening.
    std::size_t replayed_frames() const { return replayed_frames_; }
    bool discarded_torn_tail() const { return torn_tail_; }

private:
    struct Staged;

    HarvestReport harvest(const std::string& archive, bool incremental);
    void commit(const std::string& archive, Staged& staged, HarvestReport& report, Datestamp harvested_at);
    void record_failure(const std::string& archive);
    void publish(std::map<EntryKey, std::shared_ptr<const CatalogEntry>> entries, std::uint64_t id);
    void save_sources();
    void compact_locked();
    void load();

    std::optional<std::filesystem::path> dir_;
    Options options_;
    oai::Harvester harvester_;

    mutable std::mutex writer_mutex_;
    std::map<std::string, ArchiveSource> sources_;
    std::unique_ptr<journal::Writer> journal_;
    std::uint64_t next_seq_ = 1;
    std::size_t frames_since_compaction_ = 0;

    mutable std::mutex publish_mutex_;
    std::shared_ptr<const Snapshot> current_;
    mutable std::shared_ptr<const oai::RepositoryView> view_cache_;

    std::size_t replayed_frames_ = 0;
    bool torn_tail_ = false;
};

/// Structural checks on a catalog state; returns one message per violation.
std::vector<std::string> check_invariants(const Snapshot& snapshot, const std::vector<ArchiveSource>& sources,
                                          Datestamp now);

/// Entry-state equality of two snapshots (keys, headers, records).
bool same_entries(const Snapshot& a, const Snapshot& b);

}  // namespace olac::catalog
