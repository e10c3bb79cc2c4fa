#include "olac/cli.hpp"

#include <CLI11.hpp>
#include <httplib.h>
#include <json.hpp>
#include <signal.h>

#include <atomic>
#include <condition_variable>
#include <fstream>
#include <future>
#include <iostream>
#include <mutex>
#include <thread>

#include "olac/aggregator.hpp"
#include "olac/api.hpp"
#include "olac/config.hpp"
#include "olac/error.hpp"
#include "olac/http.hpp"
#include "olac/journal.hpp"
#include "olac/record_xml.hpp"
#include "olac/search.hpp"
#include "olac/validation.hpp"
#include "olac/xml.hpp"

namespace olac {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kDomainFailure = 1;
constexpr int kUsage = 2;

struct Globals {
    std::string config;
    bool json = false;
};

/// Thrown for usage problems detected after argument parsing.
struct Usage : Error {
    using Error::Error;
};

Config load(const Globals& g) {
    return load_config(g.config.empty() ? std::nullopt : std::optional<fs::path>(g.config));
}

json diagnostic_json(const Diagnostic& d) {
    return {{"severity", std::string(to_string(d.severity))},
            {"rule", std::string(to_string(d.rule))},
            {"location", d.location.to_string()},
            {"message", d.message}};
}

json report_json(const ConformanceReport& r) {
    json diags = json::array();
    for (const auto& d : r.diagnostics) diags.push_back(diagnostic_json(d));
    return {{"context", r.context},
            {"verdict", std::string(to_string(r.verdict))},
            {"errors", r.errors()},
            {"warnings", r.warnings()},
            {"diagnostics", diags}};
}

json summary_json(const BatchSummary& s) {
    json rules = json::object();
    for (const auto& [rule, n] : s.per_rule) rules[std::string(to_string(rule))] = n;
    return {{"records", s.records},   {"conformant", s.conformant}, {"conformant_with_warnings", s.with_warnings},
            {"nonconformant", s.nonconformant}, {"errors", s.errors}, {"warnings", s.warnings},
            {"per_rule", rules}};
}

// ---------------------------------------------------------------- validate

struct ValidateArgs {
    std::vector<std::string> paths;
    bool strict = false;
    bool tsv = false;
    bool summary = false;
};

std::vector<ConformanceReport> validate_file(const std::string& path, const Profile& profile) {
    const std::string bytes = journal::read_file(path);
    const xml::Element root = xml::parse_document(bytes);
    std::vector<ConformanceReport> out;
    if (root.is(xml::kOlacNs, "olac")) {
        out.push_back(validate(record_from_element(root, profile), profile, path));
    } else if (root.is(xml::kCatalogNs, "stream")) {
        std::size_t n = 0;
        for (auto& entry : parse_stream(bytes, profile)) {
            ++n;
            if (!entry.record) continue;
            auto id = entry.meta.find("id");
            std::string ctx = path + "#" + (id != entry.meta.end() ? id->second : std::to_string(n));
            out.push_back(validate(*entry.record, profile, ctx));
        }
    } else if (root.is(oai::kOaiNs, "OAI-PMH")) {
        for (const auto& list : root.children) {
            for (const auto& rec : list.children) {
                if (!rec.is(oai::kOaiNs, "record")) continue;
                const xml::Element* md = rec.child(oai::kOaiNs, "metadata");
                const xml::Element* h = rec.child(oai::kOaiNs, "header");
                if (!md || md->children.empty() || !md->children.front().is(xml::kOlacNs, "olac")) continue;
                const xml::Element* id = h ? h->child(oai::kOaiNs, "identifier") : nullptr;
                std::string ctx = path + "#" + (id ? id->text : std::to_string(out.size() + 1));
                out.push_back(validate(record_from_element(md->children.front(), profile), profile, ctx));
            }
        }
    } else {
        throw FatalParse("root element {" + root.ns + "}" + root.local + " is not an OLAC record or stream",
                         root.line, root.column);
    }
    return out;
}

int cmd_validate(const Globals& g, const ValidateArgs& a, std::ostream& out, std::ostream& err) {
    Config config = load(g);
    Profile profile = build_profile(config);
    BatchSummary summary;
    json reports = json::array();
    json fatal = json::array();
    bool any_fatal = false;
    for (const auto& path : a.paths) {
        std::vector<ConformanceReport> rs;
        try {
            rs = validate_file(path, profile);
        } catch (const FatalParse& e) {
            any_fatal = true;
            std::string msg = path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " + e.what();
            err << msg << "\n";
            fatal.push_back({{"path", path}, {"message", msg}});
            continue;
        } catch (const ConfigError& e) {
            any_fatal = true;
            err << e.what() << "\n";
            fatal.push_back({{"path", path}, {"message", e.what()}});
            continue;
        }
        for (const auto& r : rs) {
            summary.add(r);
            if (g.json) reports.push_back(report_json(r));
            else if (a.tsv) {
                for (const auto& d : r.diagnostics) out << r.context << '\t' << d.to_tsv() << '\n';
            } else {
                out << format_text(r);
            }
        }
    }
    if (g.json) {
        out << json{{"reports", reports}, {"summary", summary_json(summary)}, {"fatal", fatal}}.dump(2) << "\n";
    } else if (a.summary || summary.records > 1) {
        out << format_text(summary);
    }
    if (any_fatal) return kUsage;
    if (summary.nonconformant > 0) return kDomainFailure;
    if (a.strict && summary.with_warnings > 0) return kDomainFailure;
    return kOk;
}

// ---------------------------------------------------------------- catalog helpers

std::shared_ptr<catalog::Aggregator> open_catalog(const Config& config, bool must_exist) {
    if (must_exist && !fs::is_directory(config.catalog_dir))
        throw ConfigError("no catalog at " + config.catalog_dir.string() + " (run harvest first)");
    return std::make_shared<catalog::Aggregator>(config.catalog_dir, aggregator_options(config));
}

// Registers providers listed in the config that the catalog does not know.
void sync_providers(const Config& config, catalog::Aggregator& agg) {
    if (!config.providers) return;
    auto listed = read_providers(*config.providers);
    std::map<std::string, std::string> known;
    for (const auto& s : agg.sources()) known[s.id] = s.base_url;
    std::set<std::string> ids;
    for (const auto& [id, url] : listed) {
        if (!ids.insert(id).second) throw ConfigError("providers file lists archive '" + id + "' twice");
        auto it = known.find(id);
        if (it != known.end() && it->second != url)
            throw ConfigError("archive '" + id + "' is registered with " + it->second + ", not " + url);
    }
    for (const auto& [id, url] : listed)
        if (!known.count(id)) agg.register_archive(id, url);
}

struct HarvestOutcome {
    std::string archive;
    bool ok = false;
    std::string mode;
    catalog::HarvestReport report;
    std::string error;
};

HarvestOutcome harvest_one(catalog::Aggregator& agg, const std::string& id, bool full) {
    HarvestOutcome o;
    o.archive = id;
    try {
        if (!full) {
            try {
                o.report = agg.harvest_incremental(id);
                o.mode = "incremental";
            } catch (const NoPriorHarvest&) {
                full = true;
            }
        }
        if (full) {
            o.report = agg.harvest_full(id);
            o.mode = "full";
        }
        o.ok = true;
    } catch (const ProviderUnreachable& e) {
        o.error = e.what();
    } catch (const ProtocolError& e) {
        o.error = e.what();
    } catch (const ConfigError& e) {
        o.error = e.what();
    }
    return o;
}

std::vector<HarvestOutcome> harvest_all(catalog::Aggregator& agg, const std::vector<std::string>& ids, bool full,
                                        unsigned jobs) {
    std::vector<HarvestOutcome> out(ids.size());
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(ids.size()))); ++w) {
        workers.emplace_back([&] {
            for (std::size_t i; (i = next++) < ids.size();) out[i] = harvest_one(agg, ids[i], full);
        });
    }
    for (auto& t : workers) t.join();
    return out;
}

// ---------------------------------------------------------------- harvest

struct HarvestArgs {
    bool full = false;
    bool incremental = false;
    std::vector<std::string> archives;
    unsigned jobs = 4;
};

int cmd_harvest(const Globals& g, const HarvestArgs& a, std::ostream& out, std::ostream&) {
    Config config = load(g);
    auto agg = open_catalog(config, false);
    sync_providers(config, *agg);
    std::vector<std::string> ids;
    std::set<std::string> registered;
    for (const auto& s : agg->sources()) registered.insert(s.id);
    if (a.archives.empty() || (a.archives.size() == 1 && a.archives[0] == "all")) {
        ids.assign(registered.begin(), registered.end());
    } else {
        for (const auto& id : a.archives) {
            if (!registered.count(id)) throw UnknownArchive("no archive '" + id + "' is configured");
            ids.push_back(id);
        }
    }
    auto outcomes = harvest_all(*agg, ids, a.full, a.jobs);
    bool failed = false;
    json items = json::array();
    for (const auto& o : outcomes) {
        failed |= !o.ok;
        if (g.json) {
            json j = {{"archive", o.archive}, {"ok", o.ok}};
            if (o.ok) {
                j["mode"] = o.mode;
                j["received"] = o.report.received;
                j["added"] = o.report.added;
                j["updated"] = o.report.updated;
                j["deleted"] = o.report.deleted;
                j["errors"] = o.report.errors;
            } else {
                j["error"] = o.error;
            }
            items.push_back(std::move(j));
        } else if (o.ok) {
            out << o.archive << ": ok " << o.mode << " received=" << o.report.received << " added=" << o.report.added
                << " updated=" << o.report.updated << " deleted=" << o.report.deleted << "\n";
            for (const auto& e : o.report.errors) out << "  " << e << "\n";
        } else {
            out << o.archive << ": FAILED " << o.error << "\n";
        }
    }
    if (g.json) out << json{{"snapshot", agg->snapshot()->id}, {"archives", items}}.dump(2) << "\n";
    return failed ? kDomainFailure : kOk;
}

// ---------------------------------------------------------------- serve / provide

sigset_t termination_signals() {
    sigset_t set;
    sigemptyset(&set);
    sigaddset(&set, SIGINT);
    sigaddset(&set, SIGTERM);
    return set;
}

// Must run before any thread starts so every thread inherits the mask.
void block_termination_signals() {
    sigset_t set = termination_signals();
    pthread_sigmask(SIG_BLOCK, &set, nullptr);
}

int wait_for_termination() {
    sigset_t set = termination_signals();
    int sig = 0;
    sigwait(&set, &sig);
    return sig;
}

void restore_signals() {
    sigset_t set = termination_signals();
    pthread_sigmask(SIG_UNBLOCK, &set, nullptr);
}

struct ServeArgs {
    std::optional<int> port;
    std::optional<std::string> host;
    std::optional<std::string> static_dir;
    std::optional<long> interval;
};

int cmd_serve(const Globals& g, const ServeArgs& a, std::ostream& out, std::ostream& err) {
    Config config = load(g);
    if (a.port) config.port = *a.port;
    if (a.host) config.host = *a.host;
    if (a.static_dir) config.static_dir = fs::absolute(*a.static_dir);
    if (a.interval) config.harvest_interval = std::chrono::seconds(*a.interval);
    Profile profile = build_profile(config);

    block_termination_signals();
    struct Restore {
        ~Restore() { restore_signals(); }
    } restore;

    auto agg = open_catalog(config, false);
    sync_providers(config, *agg);
    auto api = std::make_shared<api::Service>(agg, profile);
    http::Service service;
    try {
        int port = service.bind(config.host, config.port);
        service.mount_provider(std::make_shared<const oai::Provider>(provider_config(config, port), agg, profile));
        api->mount(service.server(), config.static_dir);
        service.listen();
    } catch (const ConfigError& e) {
        err << e.what() << "\n";
        return kUsage;
    }
    out << "serving on " << service.url() << " (snapshot " << agg->snapshot()->id << ")" << std::endl;

    std::mutex m;
    std::condition_variable cv;
    bool stopping = false;
    std::thread scheduler;
    if (config.harvest_interval.count() > 0) {
        scheduler = std::thread([&] {
            std::unique_lock lock(m);
            while (!cv.wait_for(lock, config.harvest_interval, [&] { return stopping; })) {
                lock.unlock();
                std::vector<std::string> ids;
                for (const auto& s : agg->sources()) ids.push_back(s.id);
                for (const auto& o : harvest_all(*agg, ids, false, 4)) {
                    if (o.ok) err << "harvest " << o.archive << ": " << o.mode << " added=" << o.report.added
                                  << " updated=" << o.report.updated << " deleted=" << o.report.deleted << std::endl;
                    else err << "harvest " << o.archive << " failed: " << o.error << std::endl;
                }
                api->refresh();
                lock.lock();
            }
        });
    }

    int sig = wait_for_termination();
    {
        std::lock_guard lock(m);
        stopping = true;
    }
    cv.notify_all();
    if (scheduler.joinable()) scheduler.join();
    service.stop();
    out << "stopped on signal " << sig << std::endl;
    return kOk;
}

struct ProvideArgs {
    std::vector<std::string> paths;
    std::optional<int> port;
    std::optional<std::string> host;
};

int cmd_provide(const Globals& g, const ProvideArgs& a, std::ostream& out, std::ostream& err) {
    Config config = load(g);
    if (a.port) config.port = *a.port;
    if (a.host) config.host = *a.host;
    Profile profile = build_profile(config);

    auto repo = std::make_shared<oai::MemoryRepository>();
    const Datestamp now = Datestamp::now();
    for (const auto& path : a.paths) {
        try {
            const std::string bytes = journal::read_file(path);
            const xml::Element root = xml::parse_document(bytes);
            if (root.is(xml::kCatalogNs, "stream")) {
                std::size_t n = 0;
                for (auto& e : parse_stream(bytes, profile)) {
                    ++n;
                    if (!e.record) continue;
                    auto id = e.meta.count("id") ? e.meta.at("id") : fs::path(path).stem().string() + "-" + std::to_string(n);
                    Datestamp d = now;
                    if (auto it = e.meta.find("datestamp"); it != e.meta.end())
                        if (auto parsed = Datestamp::parse(it->second)) d = *parsed;
                    repo->put(id, std::move(e.record->record), d);
                }
            } else {
                repo->put(fs::path(path).stem().string(), record_from_element(root, profile).record, now);
            }
        } catch (const FatalParse& e) {
            err << path << ":" << e.line() << ":" << e.column() << ": " << e.what() << "\n";
            return kUsage;
        }
    }

    block_termination_signals();
    struct Restore {
        ~Restore() { restore_signals(); }
    } restore;
    http::Service service;
    try {
        int port = service.bind(config.host, config.port);
        service.mount_provider(std::make_shared<const oai::Provider>(provider_config(config, port), repo, profile));
        service.listen();
    } catch (const ConfigError& e) {
        err << e.what() << "\n";
        return kUsage;
    }
    out << "providing " << repo->size() << " records on " << service.url("/oai") << std::endl;
    wait_for_termination();
    service.stop();
    return kOk;
}

// ---------------------------------------------------------------- search / facets

struct SearchArgs {
    std::map<std::string, std::string> params;
};

int cmd_search(const Globals& g, const SearchArgs& a, std::ostream& out, std::ostream& err) {
    Config config = load(g);
    Profile profile = build_profile(config);
    api::Params params(a.params.begin(), a.params.end());
    // Reject empty queries before touching the catalog.
    api::SearchRequest req = api::parse_search_params(params);
    if (req.query.empty()) throw Usage("give at least one search criterion (see olac search --help)");
    auto agg = open_catalog(config, true);
    api::Service service(agg, profile);
    auto [status, body] = service.search(params);
    if (status != 200) {
        err << body.value("error", std::string("search failed")) << "\n";
        return kUsage;
    }
    if (g.json) {
        out << body.dump(2) << "\n";
        return kOk;
    }
    out << body["total"].get<std::size_t>() << " results (snapshot " << body["snapshot"].get<std::uint64_t>()
        << ")\n";
    for (const auto& item : body["items"]) {
        out << item["archive"].get<std::string>() << ":" << item["id"].get<std::string>() << "\t"
            << item["score"].get<std::size_t>() << "\t" << item["title"].get<std::string>() << "\n";
    }
    return kOk;
}

int cmd_facets(const Globals& g, const std::string& id, std::ostream& out, std::ostream&) {
    search::parse_facet(id);
    Config config = load(g);
    Profile profile = build_profile(config);
    auto agg = open_catalog(config, true);
    api::Service service(agg, profile);
    auto [status, body] = service.facets(id);
    if (g.json) {
        out << body.dump(2) << "\n";
        return kOk;
    }
    for (const auto& v : body["values"])
        out << v["value"].get<std::string>() << "\t" << v["count"].get<std::size_t>() << "\t"
            << v["label"].get<std::string>() << "\n";
    return kOk;
}

// ---------------------------------------------------------------- export / stats

int cmd_export(const Globals& g, const std::string& format, const std::string& output, std::ostream& out,
               std::ostream&) {
    Config config = load(g);
    Profile profile = build_profile(config);
    auto agg = open_catalog(config, true);
    catalog::ExportFormat f = format == "olac"     ? catalog::ExportFormat::OlacStream
                              : format == "oai_dc" ? catalog::ExportFormat::OaiDcStream
                                                   : catalog::ExportFormat::Display;
    std::string bytes = agg->export_catalog(f, profile);
    if (output.empty() || output == "-") {
        out << bytes;
    } else {
        journal::write_file_atomic(output, bytes);
        if (g.json) out << json{{"output", output}, {"bytes", bytes.size()}}.dump() << "\n";
    }
    return kOk;
}

int cmd_stats(const Globals& g, std::ostream& out, std::ostream&) {
    Config config = load(g);
    auto agg = open_catalog(config, true);
    auto snap = agg->snapshot();
    auto sources = agg->sources();
    auto problems = catalog::check_invariants(*snap, sources, Datestamp::now());
    if (g.json) {
        json archives = json::array();
        for (const auto& s : sources) {
            auto it = snap->per_archive.find(s.id);
            catalog::ArchiveStats st = it == snap->per_archive.end() ? catalog::ArchiveStats{} : it->second;
            archives.push_back({{"archive", s.id},
                                {"base_url", s.base_url},
                                {"status", std::string(catalog::to_string(s.status))},
                                {"consecutive_failures", s.consecutive_failures},
                                {"last_harvest", s.last_harvest ? json(s.last_harvest->format(Granularity::Second)) : json()},
                                {"live", st.live},
                                {"deleted", st.deleted}});
        }
        out << json{{"snapshot", snap->id},
                    {"entries", snap->entries.size()},
                    {"live", snap->live_count()},
                    {"archives", archives},
                    {"invariant_violations", problems}}
                   .dump(2)
            << "\n";
    } else {
        out << "snapshot " << snap->id << ": " << snap->entries.size() << " entries, " << snap->live_count()
            << " live\n";
        for (const auto& s : sources) {
            auto it = snap->per_archive.find(s.id);
            catalog::ArchiveStats st = it == snap->per_archive.end() ? catalog::ArchiveStats{} : it->second;
            out << s.id << "\t" << catalog::to_string(s.status) << "\tfailures=" << s.consecutive_failures
                << "\tlast=" << (s.last_harvest ? s.last_harvest->format(Granularity::Second) : "-")
                << "\tlive=" << st.live << "\tdeleted=" << st.deleted << "\t" << s.base_url << "\n";
        }
        for (const auto& p : problems) out << "invariant violated: " << p << "\n";
    }
    return problems.empty() ? kOk : kDomainFailure;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"OLAC metadata tools: validate records, harvest archives, serve and search a union catalog.", "olac"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--config", g.config, "Configuration file (overrides $OLAC_CONFIG)");
    app.add_flag("--json", g.json, "Machine-readable output");

    ValidateArgs va;
    auto* validate_cmd = app.add_subcommand("validate", "Check records for conformance");
    validate_cmd->add_option("paths", va.paths, "Record, stream or protocol response files")->required();
    validate_cmd->add_flag("--strict", va.strict, "Treat warnings as failures");
    validate_cmd->add_flag("--tsv", va.tsv, "One diagnostic per line, tab-separated");
    validate_cmd->add_flag("--summary", va.summary, "Always print the batch summary");

    HarvestArgs ha;
    auto* harvest_cmd = app.add_subcommand("harvest", "Harvest configured archives into the catalog");
    auto* full = harvest_cmd->add_flag("--full", ha.full, "Re-harvest everything");
    auto* inc = harvest_cmd->add_flag("--incremental", ha.incremental, "Harvest changes since the last harvest (default)");
    full->excludes(inc);
    harvest_cmd->add_option("--archive", ha.archives, "Archive id, or 'all' (default)");
    harvest_cmd->add_option("--jobs", ha.jobs, "Archives harvested concurrently")->check(CLI::Range(1, 64));

    ServeArgs sa;
    auto* serve_cmd = app.add_subcommand("serve", "Serve the protocol endpoint, JSON API and UI");
    serve_cmd->add_option("--port", sa.port, "Port (0 picks a free one)")->check(CLI::Range(0, 65535));
    serve_cmd->add_option("--host", sa.host, "Address to bind");
    serve_cmd->add_option("--static", sa.static_dir, "Directory of UI assets served at /");
    serve_cmd->add_option("--interval", sa.interval, "Seconds between scheduled harvests (0 disables)")
        ->check(CLI::NonNegativeNumber);

    ProvideArgs pa;
    auto* provide_cmd = app.add_subcommand("provide", "Serve record files as a standalone data provider");
    provide_cmd->add_option("paths", pa.paths, "Record or stream files")->required();
    provide_cmd->add_option("--port", pa.port, "Port (0 picks a free one)")->check(CLI::Range(0, 65535));
    provide_cmd->add_option("--host", pa.host, "Address to bind");

    SearchArgs qa;
    auto* search_cmd = app.add_subcommand("search", "Query the union catalog");
    const std::vector<std::pair<std::string, std::string>> search_flags = {
        {"text", "q"},
        {"subject-language", "subject_language"},
        {"language", "language"},
        {"linguistic-type", "linguistic_type"},
        {"discourse-type", "discourse_type"},
        {"linguistic-field", "linguistic_field"},
        {"role", "role"},
        {"name", "name"},
        {"archive", "archive"},
        {"type", "type"},
        {"offset", "offset"},
        {"limit", "limit"},
    };
    std::map<std::string, std::string> search_values;
    for (const auto& [flag, param] : search_flags) {
        search_cmd->add_option("--" + flag, search_values[param], "Criterion '" + param + "'");
    }

    std::string facet_id;
    auto* facets_cmd = app.add_subcommand("facets", "List facet values with counts");
    facets_cmd->add_option("facet", facet_id, "Facet id")->required();

    std::string export_format = "olac";
    std::string export_output;
    auto* export_cmd = app.add_subcommand("export", "Write the catalog as a stream");
    export_cmd->add_option("--format", export_format, "olac, oai_dc or display")
        ->check(CLI::IsMember({"olac", "oai_dc", "display"}));
    export_cmd->add_option("--output", export_output, "Output file (default stdout)");

    auto* stats_cmd = app.add_subcommand("stats", "Catalog and archive statistics");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }

    try {
        if (*validate_cmd) return cmd_validate(g, va, out, err);
        if (*harvest_cmd) return cmd_harvest(g, ha, out, err);
        if (*serve_cmd) return cmd_serve(g, sa, out, err);
        if (*provide_cmd) return cmd_provide(g, pa, out, err);
        if (*search_cmd) {
            for (const auto& [flag, param] : search_flags) {
                if (search_cmd->count("--" + flag)) qa.params[param] = search_values[param];
            }
            return cmd_search(g, qa, out, err);
        }
        if (*facets_cmd) return cmd_facets(g, facet_id, out, err);
        if (*export_cmd) return cmd_export(g, export_format, export_output, out, err);
        if (*stats_cmd) return cmd_stats(g, out, err);
    } catch (const Usage& e) {
        err << "usage: " << e.what() << "\n";
        return kUsage;
    } catch (const EmptyQuery&) {
        err << "usage: give at least one search criterion\n";
        return kUsage;
    } catch (const ConfigError& e) {
        err << e.what() << "\n";
        return kUsage;
    } catch (const UnknownArchive& e) {
        err << e.what() << "\n";
        return kUsage;
    } catch (const UnknownFacet& e) {
        err << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        err << "catalog cannot be read: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kDomainFailure;
    } catch (const std::filesystem::filesystem_error& e) {
        err << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace olac
