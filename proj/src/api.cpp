#include "olac/api.hpp"

#include <httplib.h>

#include <charconv>

#include "olac/crosswalk.hpp"
#include "olac/error.hpp"
#include "olac/record_xml.hpp"
#include "olac/text.hpp"

namespace olac::api {

using nlohmann::json;

namespace {

std::size_t parse_size(const std::string& key, const std::string& value) {
    std::size_t n = 0;
    auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
    if (ec != std::errc{} || p != value.data() + value.size() || value.empty())
        throw ConfigError("parameter '" + key + "' must be a non-negative integer");
    return n;
}

std::string url_encode(const std::string& s) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : s) {
        if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
            out += static_cast<char>(c);
        } else {
            out += '%';
            out += hex[c >> 4];
            out += hex[c & 0xF];
        }
    }
    return out;
}

}  // namespace

const char* const kFallbackPage = R"html(<!DOCTYPE html>
<html lang="en">
<head><meta charset="utf-8"><title>OLAC search</title></head>
<body>
<h1>OLAC search</h1>
<form id="f"><input name="q" placeholder="text"> <input name="language" placeholder="language">
<button>Search</button></form>
<pre id="out"></pre>
<script>
document.getElementById('f').onsubmit = async (e) => {
  e.preventDefault();
  const p = new URLSearchParams(new FormData(e.target));
  for (const [k, v] of [...p]) if (!v) p.delete(k);
  const r = await fetch('/api/search?' + p);
  const j = await r.json();
  document.getElementById('out').textContent = j.error ? j.error :
    j.total + ' results\n' + j.items.map(i => i.archive + ':' + i.id + '  ' + i.title).join('\n');
};
</script>
</body>
</html>
)html";

SearchRequest parse_search_params(const Params& params) {
    SearchRequest req;
    auto& q = req.query;
    const std::map<std::string, std::optional<std::string>*> fields = {
        {"q", &q.text},
        {"subject_language", &q.subject_language},
        {"language", &q.language},
        {"linguistic_type", &q.linguistic_type},
        {"discourse_type", &q.discourse_type},
        {"linguistic_field", &q.linguistic_field},
        {"role", &q.role},
        {"name", &q.name},
        {"archive", &q.archive},
        {"type", &q.dc_type},
    };
    for (const auto& [key, value] : params) {
        if (params.count(key) > 1) throw ConfigError("parameter '" + key + "' is repeated");
        if (key == "offset") {
            req.offset = parse_size(key, value);
        } else if (key == "limit") {
            req.limit = parse_size(key, value);
        } else if (auto it = fields.find(key); it != fields.end()) {
            if (!text::is_blank(value)) *it->second = value;
        } else {
            throw ConfigError("unknown parameter '" + key + "'");
        }
    }
    return req;
}

json to_json(const std::vector<search::FacetCount>& counts) {
    json out = json::array();
    for (const auto& c : counts) out.push_back({{"value", c.value}, {"label", c.label}, {"count", c.count}});
    return out;
}

json to_json(const search::ResultSet& results) {
    json items = json::array();
    for (const auto& i : results.items) {
        items.push_back({{"archive", i.key.archive},
                         {"id", i.key.id},
                         {"title", i.title},
                         {"language", i.language},
                         {"type", i.type},
                         {"snippet", i.snippet},
                         {"score", i.score}});
    }
    json facets = json::object();
    for (const auto& [id, counts] : results.facets) facets[id] = to_json(counts);
    return {{"snapshot", results.snapshot}, {"total", results.total}, {"items", items}, {"facets", facets}};
}

json record_json(const catalog::CatalogEntry& entry, std::uint64_t snapshot, const Profile& profile) {
    json out = {{"snapshot", snapshot},
                {"archive", entry.key.archive},
                {"id", entry.key.id},
                {"datestamp", entry.header.datestamp.format(Granularity::Second)},
                {"deleted", entry.deleted()}};
    if (entry.record) {
        DisplayDocument doc = render_display(*entry.record, profile);
        json lines = json::array();
        for (const auto& l : doc.lines) {
            json line = {{"label", l.label}, {"text", l.text}};
            if (l.lang) line["lang"] = {{"tag", l.lang->tag}, {"name", l.lang->name ? json(*l.lang->name) : json()}};
            lines.push_back(std::move(line));
        }
        out["display"] = std::move(lines);
        out["html"] = to_html(doc);
        out["xml"] = "/api/record/" + url_encode(entry.key.archive) + "/" + url_encode(entry.key.id) + "?format=xml";
    }
    return out;
}

Service::Service(std::shared_ptr<const catalog::Aggregator> aggregator, const Profile& profile)
    : aggregator_(std::move(aggregator)), profile_(&profile) {
    refresh();
}

void Service::refresh() {
    auto snap = aggregator_->snapshot();
    {
        std::lock_guard lock(mutex_);
        if (index_ && index_->snapshot_id() == snap->id) return;
    }
    auto fresh = std::make_shared<const search::Index>(search::Index::build(*snap, *profile_));
    std::lock_guard lock(mutex_);
    if (!index_ || index_->snapshot_id() < fresh->snapshot_id()) index_ = std::move(fresh);
}

std::shared_ptr<const search::Index> Service::index() const {
    std::lock_guard lock(mutex_);
    return index_;
}

std::pair<int, json> Service::search(const Params& params) const {
    try {
        SearchRequest req = parse_search_params(params);
        return {200, to_json(index()->execute(req.query, req.offset, req.limit))};
    } catch (const EmptyQuery&) {
        return {400, {{"error", "empty query: give at least one criterion"}}};
    } catch (const ConfigError& e) {
        return {400, {{"error", e.what()}}};
    }
}

std::pair<int, json> Service::facets(const std::string& id) const {
    auto ix = index();
    try {
        return {200, {{"snapshot", ix->snapshot_id()}, {"facet", id}, {"values", to_json(ix->facet_values(id))}}};
    } catch (const UnknownFacet& e) {
        return {404, {{"error", e.what()}}};
    }
}

std::pair<int, json> Service::record(const std::string& archive, const std::string& id) const {
    auto snap = aggregator_->snapshot();
    const catalog::CatalogEntry* e = snap->find(catalog::EntryKey{archive, id});
    if (!e) return {404, {{"error", "no record " + archive + ":" + id}}};
    return {200, record_json(*e, snap->id, *profile_)};
}

void Service::mount(httplib::Server& server, const std::optional<std::filesystem::path>& static_dir) const {
    auto reply = [](httplib::Response& res, const std::pair<int, json>& r) {
        res.status = r.first;
        res.set_content(r.second.dump(), "application/json");
    };
    server.Get("/api/search", [this, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, search(Params(req.params.begin(), req.params.end())));
    });
    server.Get(R"(/api/facets/([^/]+))", [this, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, facets(req.matches[1]));
    });
    server.Get(R"(/api/record/([^/]+)/(.+))", [this, reply](const httplib::Request& req, httplib::Response& res) {
        const std::string archive = req.matches[1];
        const std::string id = req.matches[2];
        if (req.get_param_value("format") == "xml") {
            auto snap = aggregator_->snapshot();
            const catalog::CatalogEntry* e = snap->find(catalog::EntryKey{archive, id});
            if (!e || !e->record) {
                res.status = 404;
                res.set_content("not found\n", "text/plain");
                return;
            }
            res.set_content(serialize_record(*e->record), "text/xml; charset=UTF-8");
            return;
        }
        reply(res, record(archive, id));
    });
    if (static_dir && std::filesystem::is_directory(*static_dir)) {
        server.set_mount_point("/", static_dir->string());
    } else {
        server.Get("/", [](const httplib::Request&, httplib::Response& res) {
            res.set_content(kFallbackPage, "text/html; charset=utf-8");
        });
    }
}

}  // namespace olac::api
