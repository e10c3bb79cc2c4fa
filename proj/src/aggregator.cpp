#include "olac/aggregator.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "olac/crosswalk.hpp"
#include "olac/error.hpp"
#include "olac/record_xml.hpp"
#include "olac/text.hpp"

namespace olac::catalog {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kSnapshotPrefix = "snapshot-";
constexpr std::string_view kSnapshotSuffix = ".olacx";

std::string stamp(Datestamp d) { return d.format(Granularity::Second); }

Datestamp parse_stamp(const std::map<std::string, std::string>& meta, const std::string& key) {
    auto it = meta.find(key);
    if (it == meta.end()) throw ParseError("catalog entry lacks '" + key + "'");
    auto d = Datestamp::parse(it->second);
    if (!d) throw ParseError("catalog entry has a bad " + key + " '" + it->second + "'");
    return *d;
}

xml::Attributes entry_meta(const CatalogEntry& e) {
    xml::Attributes meta{{"archive", e.key.archive}, {"id", e.key.id}, {"datestamp", stamp(e.header.datestamp)}};
    if (e.deleted()) meta.emplace_back("deleted", "true");
    meta.emplace_back("first-seen", stamp(e.first_seen));
    meta.emplace_back("last-updated", stamp(e.last_updated));
    return meta;
}

CatalogEntry entry_from_stream(StreamEntry&& s) {
    CatalogEntry e;
    auto get = [&](const std::string& key) {
        auto it = s.meta.find(key);
        if (it == s.meta.end() || it->second.empty()) throw ParseError("catalog entry lacks '" + key + "'");
        return it->second;
    };
    e.key = EntryKey{get("archive"), get("id")};
    e.header.identifier = e.key.id;
    e.header.datestamp = parse_stamp(s.meta, "datestamp");
    e.header.deleted = s.meta.count("deleted") && s.meta.at("deleted") == "true";
    e.first_seen = parse_stamp(s.meta, "first-seen");
    e.last_updated = parse_stamp(s.meta, "last-updated");
    if (e.header.deleted != !s.record)
        throw ParseError("catalog entry " + e.key.archive + ":" + e.key.id + " has inconsistent deletion state");
    if (s.record) e.record = std::make_shared<const OlacRecord>(std::move(s.record->record));
    return e;
}

std::optional<std::uint64_t> snapshot_id_of(const fs::path& p) {
    const std::string name = p.filename().string();
    if (name.size() <= kSnapshotPrefix.size() + kSnapshotSuffix.size()) return std::nullopt;
    if (name.compare(0, kSnapshotPrefix.size(), kSnapshotPrefix) != 0) return std::nullopt;
    if (name.compare(name.size() - kSnapshotSuffix.size(), kSnapshotSuffix.size(), kSnapshotSuffix) != 0)
        return std::nullopt;
    std::string_view digits(name.data() + kSnapshotPrefix.size(),
                            name.size() - kSnapshotPrefix.size() - kSnapshotSuffix.size());
    std::uint64_t id = 0;
    auto [p2, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), id);
    if (ec != std::errc{} || p2 != digits.data() + digits.size()) return std::nullopt;
    return id;
}

fs::path snapshot_path(const fs::path& dir, std::uint64_t id) {
    return dir / (std::string(kSnapshotPrefix) + std::to_string(id) + std::string(kSnapshotSuffix));
}

}  // namespace

bool CatalogEntry::same_state(const CatalogEntry& other) const {
    if (key != other.key || header != other.header) return false;
    if (!record || !other.record) return !record && !other.record;
    return *record == *other.record;
}

std::string_view to_string(SourceStatus status) { return status == SourceStatus::Active ? "active" : "failing"; }

const CatalogEntry* Snapshot::find(const EntryKey& key) const {
    auto it = entries.find(key);
    return it == entries.end() ? nullptr : it->second.get();
}

std::size_t Snapshot::live_count() const {
    std::size_t n = 0;
    for (const auto& [a, s] : per_archive) n += s.live;
    return n;
}

struct Aggregator::Staged {
    std::vector<oai::HarvestedRecord> records;
    bool incremental = false;
};

Aggregator::Aggregator(std::optional<fs::path> dir, Options options)
    : dir_(std::move(dir)), options_(std::move(options)), harvester_(options_.harvest) {
    if (dir_) load();
    else publish({}, 0);
}

Aggregator::~Aggregator() = default;

void Aggregator::publish(std::map<EntryKey, std::shared_ptr<const CatalogEntry>> entries, std::uint64_t id) {
    auto snap = std::make_shared<Snapshot>();
    snap->id = id;
    snap->entries = std::move(entries);
    for (const auto& [key, e] : snap->entries) {
        auto& stats = snap->per_archive[key.archive];
        if (e->deleted()) ++stats.deleted;
        else ++stats.live;
    }
    std::lock_guard lock(publish_mutex_);
    current_ = std::move(snap);
    view_cache_.reset();
}

std::shared_ptr<const Snapshot> Aggregator::snapshot() const {
    std::lock_guard lock(publish_mutex_);
    return current_;
}

std::shared_ptr<const oai::RepositoryView> Aggregator::view() const {
    std::lock_guard lock(publish_mutex_);
    if (!view_cache_) {
        auto v = std::make_shared<oai::RepositoryView>();
        v->snapshot_id = current_->id;
        v->records.reserve(current_->entries.size());
        for (const auto& [key, e] : current_->entries) {
            v->records.push_back(oai::ServedRecord{
                oai::RecordHeader{key.archive + ":" + key.id, e->last_updated, e->deleted()}, e->record});
        }
        std::sort(v->records.begin(), v->records.end(), [](const auto& a, const auto& b) {
            return a.header.identifier < b.header.identifier;
        });
        view_cache_ = std::move(v);
    }
    return view_cache_;
}

void Aggregator::load() {
    fs::create_directories(*dir_);
    const fs::path sources_path = *dir_ / "sources.tsv";
    if (fs::exists(sources_path)) {
        const std::string content = journal::read_file(sources_path);
        for (auto line : text::lines(content)) {
            if (line.empty() || line.front() == '#') continue;
            auto f = text::split(line, '\t');
            if (f.size() != 5) throw ParseError("sources.tsv: bad line '" + std::string(line) + "'");
            ArchiveSource s;
            s.id = std::string(f[0]);
            s.base_url = std::string(f[1]);
            if (f[2] != "-") {
                auto d = Datestamp::parse(f[2]);
                if (!d) throw ParseError("sources.tsv: bad timestamp '" + std::string(f[2]) + "'");
                s.last_harvest = *d;
            }
            s.status = f[3] == "failing" ? SourceStatus::Failing : SourceStatus::Active;
            s.consecutive_failures = std::atoi(std::string(f[4]).c_str());
            if (!sources_.emplace(s.id, s).second) throw ParseError("sources.tsv: duplicate archive " + s.id);
        }
    }

    std::map<EntryKey, std::shared_ptr<const CatalogEntry>> entries;
    std::uint64_t snapshot_id = 0;
    for (const auto& item : fs::directory_iterator(*dir_)) {
        if (auto id = snapshot_id_of(item.path()); id && *id >= snapshot_id) snapshot_id = *id;
    }
    if (snapshot_id > 0 || fs::exists(snapshot_path(*dir_, 0))) {
        const fs::path p = snapshot_path(*dir_, snapshot_id);
        try {
            for (auto& s : parse_stream(journal::read_file(p))) {
                CatalogEntry e = entry_from_stream(std::move(s));
                EntryKey key = e.key;
                entries[key] = std::make_shared<const CatalogEntry>(std::move(e));
            }
        } catch (const FatalParse& e) {
            throw ParseError(p.string() + ": " + e.what());
        }
    }

    const fs::path journal_path = *dir_ / "journal.olacx";
    journal::Scan scan = journal::scan(journal_path);
    std::uint64_t last = snapshot_id;
    for (auto& frame : scan.frames) {
        if (frame.seq <= snapshot_id) continue;
        try {
            CatalogEntry e = entry_from_stream(parse_entry_document(frame.payload));
            EntryKey key = e.key;
            entries[key] = std::make_shared<const CatalogEntry>(std::move(e));
        } catch (const FatalParse& e) {
            throw ParseError("journal frame " + std::to_string(frame.seq) + ": " + e.what());
        }
        last = frame.seq;
        ++replayed_frames_;
        ++frames_since_compaction_;
    }
    torn_tail_ = scan.torn;
    next_seq_ = last + 1;
    journal_ = std::make_unique<journal::Writer>(journal_path, scan.valid_length);
    publish(std::move(entries), last);
}

void Aggregator::save_sources() {
    if (!dir_) return;
    std::string out = "# archive-id\tbase-url\tlast-harvest\tstatus\tconsecutive-failures\n";
    for (const auto& [id, s] : sources_) {
        out += s.id + "\t" + s.base_url + "\t" + (s.last_harvest ? stamp(*s.last_harvest) : std::string("-")) +
               "\t" + std::string(to_string(s.status)) + "\t" + std::to_string(s.consecutive_failures) + "\n";
    }
    journal::write_file_atomic(*dir_ / "sources.tsv", out);
}

ArchiveSource Aggregator::register_archive(const std::string& id, const std::string& base_url) {
    if (id.empty() || id.find_first_of(":\t\n ") != std::string::npos)
        throw ConfigError("archive id '" + id + "' must be a non-empty slug");
    if (base_url.find_first_of("\t\n") != std::string::npos) throw ConfigError("bad base URL for " + id);
    std::lock_guard lock(writer_mutex_);
    if (sources_.count(id)) throw DuplicateArchiveId("archive '" + id + "' is already registered");
    ArchiveSource s{id, base_url, std::nullopt, SourceStatus::Active, 0};
    sources_.emplace(id, s);
    save_sources();
    return s;
}

std::vector<ArchiveSource> Aggregator::sources() const {
    std::lock_guard lock(writer_mutex_);
    std::vector<ArchiveSource> out;
    for (const auto& [id, s] : sources_) out.push_back(s);
    return out;
}

ArchiveSource Aggregator::source(const std::string& id) const {
    std::lock_guard lock(writer_mutex_);
    auto it = sources_.find(id);
    if (it == sources_.end()) throw UnknownArchive("no archive '" + id + "'");
    return it->second;
}

HarvestReport Aggregator::harvest_full(const std::string& archive) { return harvest(archive, false); }

HarvestReport Aggregator::harvest_incremental(const std::string& archive) { return harvest(archive, true); }

void Aggregator::record_failure(const std::string& archive) {
    std::lock_guard lock(writer_mutex_);
    auto& s = sources_.at(archive);
    ++s.consecutive_failures;
    if (s.consecutive_failures >= 3) s.status = SourceStatus::Failing;
    save_sources();
}

HarvestReport Aggregator::harvest(const std::string& archive, bool incremental) {
    const ArchiveSource src = source(archive);
    if (incremental && !src.last_harvest)
        throw NoPriorHarvest("archive '" + archive + "' has no successful harvest to continue from");

    HarvestReport report;
    report.archive = archive;
    report.incremental = incremental;
    Staged staged;
    staged.incremental = incremental;
    oai::HarvestWindow window;
    if (incremental) window.from = src.last_harvest->day();

    oai::HarvestStats stats;
    try {
        std::optional<oai::ProviderIdentity> identity;
        if (!incremental && options_.check_identity) identity = harvester_.identify(src.base_url);
        stats = harvester_.harvest(src.base_url, window,
                                   [&](oai::HarvestedRecord&& r) { staged.records.push_back(std::move(r)); });
        if (identity) {
            std::vector<oai::RecordHeader> headers;
            headers.reserve(staged.records.size());
            for (const auto& r : staged.records) headers.push_back(r.header);
            for (auto& p : oai::check_identity(*identity, headers)) report.errors.push_back("identity: " + p);
        }
    } catch (const ProviderUnreachable&) {
        record_failure(archive);
        throw;
    } catch (const ProtocolError&) {
        record_failure(archive);
        throw;
    }

    Datestamp now = options_.clock();
    Datestamp harvested_at = stats.response_date ? std::min(*stats.response_date, now) : now;
    commit(archive, staged, report, harvested_at);
    return report;
}

void Aggregator::commit(const std::string& archive, Staged& staged, HarvestReport& report, Datestamp harvested_at) {
    std::lock_guard lock(writer_mutex_);
    auto base = snapshot();
    auto entries = base->entries;
    const Datestamp now = options_.clock();
    std::vector<journal::Frame> frames;
    std::set<std::string> seen;

    auto stage = [&](CatalogEntry e) {
        e.last_updated = now;
        if (dir_) frames.push_back(journal::Frame{next_seq_ + frames.size(),
                                                  serialize_entry_document(entry_meta(e), e.record.get())});
        else frames.push_back(journal::Frame{next_seq_ + frames.size(), {}});
        EntryKey key = e.key;
        entries[key] = std::make_shared<const CatalogEntry>(std::move(e));
    };

    for (auto& r : staged.records) {
        ++report.received;
        for (const auto& d : r.diagnostics) {
            if (d.severity == Severity::Error)
                report.errors.push_back(r.header.identifier + ": " + std::string(olac::to_string(d.rule)) + ": " +
                                        d.message);
        }
        seen.insert(r.header.identifier);
        CatalogEntry e;
        e.key = EntryKey{archive, r.header.identifier};
        e.header = r.header;
        if (!r.header.deleted) {
            e.record = std::make_shared<const OlacRecord>(r.olac ? std::move(*r.olac) : OlacRecord{});
        }
        auto it = entries.find(e.key);
        if (it == entries.end()) {
            e.first_seen = now;
            if (!e.deleted()) ++report.added;
            stage(std::move(e));
            continue;
        }
        const CatalogEntry& old = *it->second;
        if (old.same_state(e)) continue;
        e.first_seen = old.first_seen;
        if (e.deleted()) {
            if (!old.deleted()) ++report.deleted;
        } else if (old.deleted()) {
            ++report.added;
        } else {
            ++report.updated;
        }
        stage(std::move(e));
    }

    if (!staged.incremental) {
        std::vector<CatalogEntry> vanished;
        for (auto it = entries.lower_bound(EntryKey{archive, ""}); it != entries.end() && it->first.archive == archive;
             ++it) {
            if (!it->second->deleted() && !seen.count(it->first.id)) vanished.push_back(*it->second);
        }
        for (auto& e : vanished) {
            e.header.deleted = true;
            e.record.reset();
            ++report.deleted;
            stage(std::move(e));
        }
    }

    if (!frames.empty()) {
        if (journal_) journal_->append(frames);
        next_seq_ += frames.size();
        frames_since_compaction_ += frames.size();
        publish(std::move(entries), next_seq_ - 1);
    }

    auto& s = sources_.at(archive);
    s.last_harvest = harvested_at;
    s.status = SourceStatus::Active;
    s.consecutive_failures = 0;
    save_sources();

    if (dir_ && options_.compact_after > 0 && frames_since_compaction_ >= options_.compact_after) compact_locked();
}

void Aggregator::compact() {
    std::lock_guard lock(writer_mutex_);
    if (dir_) compact_locked();
}

void Aggregator::compact_locked() {
    auto snap = snapshot();
    StreamWriter w;
    for (const auto& [key, e] : snap->entries) w.add(entry_meta(*e), e->record.get());
    journal::write_file_atomic(snapshot_path(*dir_, snap->id), w.finish());
    journal_->reset();
    frames_since_compaction_ = 0;
    for (const auto& item : fs::directory_iterator(*dir_)) {
        if (auto id = snapshot_id_of(item.path()); id && *id != snap->id) fs::remove(item.path());
    }
}

std::string Aggregator::export_catalog(ExportFormat format, const Profile& profile) const {
    auto snap = snapshot();
    if (format == ExportFormat::Display) {
        std::string out;
        for (const auto& [key, e] : snap->entries) {
            if (e->deleted()) continue;
            out += "== " + key.archive + ":" + key.id + " ==\n";
            out += to_text(render_display(*e->record, profile));
            out += "\n";
        }
        return out;
    }
    StreamWriter w;
    for (const auto& [key, e] : snap->entries) {
        if (e->deleted()) continue;
        xml::Attributes meta{{"archive", key.archive}, {"id", key.id}, {"datestamp", stamp(e->header.datestamp)}};
        if (format == ExportFormat::OlacStream) {
            w.add(meta, e->record.get());
        } else {
            DcRecord dc = to_simple_dc(*e->record, profile);
            w.add_dc(meta, &dc);
        }
    }
    return w.finish();
}

std::vector<std::string> check_invariants(const Snapshot& snapshot, const std::vector<ArchiveSource>& sources,
                                          Datestamp now) {
    std::vector<std::string> problems;
    std::set<std::string> archives;
    for (const auto& s : sources) {
        if (!archives.insert(s.id).second) problems.push_back("archive id " + s.id + " is registered twice");
        if (s.last_harvest && now < *s.last_harvest) problems.push_back("archive " + s.id + " was harvested in the future");
    }
    std::map<std::string, ArchiveStats> counted;
    for (const auto& [key, e] : snapshot.entries) {
        const std::string name = key.archive + ":" + key.id;
        if (!e) {
            problems.push_back(name + ": null entry");
            continue;
        }
        if (e->key != key) problems.push_back(name + ": stored under the wrong key");
        if (e->header.identifier != key.id) problems.push_back(name + ": header identifier differs from key");
        if (key.id.empty()) problems.push_back(name + ": empty identifier");
        if (e->deleted() == static_cast<bool>(e->record))
            problems.push_back(name + (e->deleted() ? ": deleted entry carries a record" : ": live entry has no record"));
        if (e->last_updated < e->first_seen) problems.push_back(name + ": updated before first seen");
        if (!archives.count(key.archive)) problems.push_back(name + ": archive is not registered");
        if (e->record) {
            for (const auto& el : e->record->elements()) {
                if (!el.valid()) {
                    problems.push_back(name + ": holds an invalid element");
                    break;
                }
            }
        }
        auto& c = counted[key.archive];
        if (e->deleted()) ++c.deleted;
        else ++c.live;
    }
    std::size_t total = 0;
    for (const auto& [archive, stats] : snapshot.per_archive) {
        total += stats.live + stats.deleted;
        auto it = counted.find(archive);
        if (it == counted.end() || it->second.live != stats.live || it->second.deleted != stats.deleted)
            problems.push_back("per-archive counts for " + archive + " do not match the entries");
    }
    if (total != snapshot.entries.size()) problems.push_back("entry count differs from the sum of per-archive counts");
    return problems;
}

bool same_entries(const Snapshot& a, const Snapshot& b) {
    if (a.entries.size() != b.entries.size()) return false;
    auto ia = a.entries.begin();
    auto ib = b.entries.begin();
    for (; ia != a.entries.end(); ++ia, ++ib) {
        if (!ia->second->same_state(*ib->second)) return false;
    }
    return true;
}

}  // namespace olac::catalog
