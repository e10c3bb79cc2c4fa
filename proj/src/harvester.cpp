#include "olac/harvester.hpp"

#include <httplib.h>

#include <set>
#include <thread>

#include "olac/error.hpp"
#include "olac/record_xml.hpp"
#include "olac/xml.hpp"

namespace olac::oai {

namespace {

struct Endpoint {
    std::string origin;  // scheme://host[:port]
    std::string path;
};

Endpoint split_url(const std::string& url) {
    auto scheme = url.find("://");
    if (scheme == std::string::npos || url.compare(0, scheme, "http") != 0)
        throw ConfigError("unsupported base URL '" + url + "' (expected http://host[:port]/path)");
    auto slash = url.find('/', scheme + 3);
    if (slash == std::string::npos) return {url, "/"};
    return {url.substr(0, slash), url.substr(slash)};
}

std::string describe(const std::string& base_url, const RequestArgs& args) {
    std::string out = base_url + "?";
    bool first = true;
    for (const auto& [k, v] : args) {
        if (!first) out += "&";
        first = false;
        out += k + "=" + (k == "resumptionToken" && v.size() > 24 ? v.substr(0, 24) + "..." : v);
    }
    return out;
}

std::string element_text(const xml::Element* el) { return el ? el->text : std::string(); }

xml::Element parse_response(const std::string& body, const std::string& request) {
    xml::Element root;
    try {
        root = xml::parse_document(body);
    } catch (const FatalParse& e) {
        throw ProtocolError("malformed response to " + request + ": " + e.what());
    }
    if (!root.is(kOaiNs, "OAI-PMH")) throw ProtocolError("response to " + request + " is not an OAI-PMH document");
    return root;
}

// Returns the first in-band error code, if any, after rejecting all codes
// other than `tolerated`.
std::optional<ErrorCode> check_errors(const xml::Element& root, const std::string& request,
                                      std::optional<ErrorCode> tolerated) {
    for (const auto& child : root.children) {
        if (!child.is(kOaiNs, "error")) continue;
        const xml::Attribute* code = child.attribute("", "code");
        std::string c = code ? code->value : "";
        auto parsed = error_code_from(c);
        if (parsed && parsed == tolerated) return parsed;
        throw ProtocolError("provider error " + c + " for " + request + ": " + child.text);
    }
    return std::nullopt;
}

RecordHeader read_header(const xml::Element& h, const std::string& request) {
    RecordHeader out;
    out.identifier = element_text(h.child(kOaiNs, "identifier"));
    auto stamp = Datestamp::parse(element_text(h.child(kOaiNs, "datestamp")));
    if (out.identifier.empty() || !stamp) throw ProtocolError("incomplete record header in response to " + request);
    out.datestamp = *stamp;
    const xml::Attribute* status = h.attribute("", "status");
    out.deleted = status && status->value == "deleted";
    return out;
}

}  // namespace

Harvester::Harvester(HarvestOptions options, const Profile& profile)
    : options_(options), profile_(&profile) {
    if (options_.max_attempts < 1) options_.max_attempts = 1;
}

std::string Harvester::fetch(const std::string& base_url, const RequestArgs& args) const {
    const Endpoint ep = split_url(base_url);
    const std::string request = describe(base_url, args);
    httplib::Params params(args.begin(), args.end());
    std::string last_problem;
    auto delay = options_.initial_backoff;
    for (int attempt = 1; attempt <= options_.max_attempts; ++attempt) {
        httplib::Client client(ep.origin);
        client.set_connection_timeout(options_.timeout);
        client.set_read_timeout(options_.timeout);
        auto res = client.Get(ep.path, params, httplib::Headers{});
        if (!res) {
            last_problem = httplib::to_string(res.error());
        } else if (res->status >= 500 || res->status == 429) {
            last_problem = "HTTP " + std::to_string(res->status);
        } else if (res->status != 200) {
            throw ProtocolError("HTTP " + std::to_string(res->status) + " for " + request);
        } else {
            return res->body;
        }
        if (attempt < options_.max_attempts) {
            std::this_thread::sleep_for(delay);
            delay *= 2;
        }
    }
    throw ProviderUnreachable(request + " failed after " + std::to_string(options_.max_attempts) +
                              " attempts: " + last_problem);
}

HarvestStats Harvester::harvest(const std::string& base_url, const HarvestWindow& window,
                                const std::function<void(HarvestedRecord&&)>& sink) const {
    HarvestStats stats;
    RequestArgs args{{"verb", "ListRecords"}, {"metadataPrefix", std::string(prefix(window.format))}};
    if (window.from) args.emplace("from", window.from->format(window.granularity));
    if (window.until) args.emplace("until", window.until->format(window.granularity));

    std::set<std::string> seen_ids;
    std::set<std::string> seen_tokens;
    for (;;) {
        const std::string request = describe(base_url, args);
        const std::string body = fetch(base_url, args);
        ++stats.requests;
        const xml::Element root = parse_response(body, request);
        if (!stats.response_date) stats.response_date = Datestamp::parse(element_text(root.child(kOaiNs, "responseDate")));
        if (check_errors(root, request, ErrorCode::NoRecordsMatch)) {
            if (stats.requests == 1) return stats;
            throw ProtocolError("noRecordsMatch in the middle of a list at " + request);
        }
        const xml::Element* list = root.child(kOaiNs, "ListRecords");
        if (!list) throw ProtocolError("response to " + request + " lacks a ListRecords element");

        std::string token;
        for (const auto& el : list->children) {
            if (el.is(kOaiNs, "resumptionToken")) {
                token = el.text;
                continue;
            }
            if (!el.is(kOaiNs, "record")) continue;
            const xml::Element* h = el.child(kOaiNs, "header");
            if (!h) throw ProtocolError("record without header in response to " + request);
            HarvestedRecord rec;
            rec.header = read_header(*h, request);
            if (!seen_ids.insert(rec.header.identifier).second)
                throw ProtocolError("identifier " + rec.header.identifier + " delivered twice (at " + request + ")");
            if (!rec.header.deleted) {
                const xml::Element* md = el.child(kOaiNs, "metadata");
                if (!md || md->children.size() != 1)
                    throw ProtocolError("record " + rec.header.identifier + " has no metadata in response to " + request);
                const xml::Element& payload = md->children.front();
                try {
                    if (window.format == MetadataFormat::Olac) {
                        ParsedRecord parsed = record_from_element(payload, *profile_);
                        rec.olac = std::move(parsed.record);
                        rec.diagnostics = std::move(parsed.diagnostics);
                    } else {
                        rec.dc = dc_from_element(payload);
                    }
                } catch (const FatalParse& e) {
                    throw ProtocolError("record " + rec.header.identifier + " in response to " + request + ": " + e.what());
                }
            }
            ++stats.records;
            sink(std::move(rec));
        }
        if (token.empty()) break;
        if (!seen_tokens.insert(token).second) throw ProtocolError("resumption token repeated at " + request);
        args = RequestArgs{{"verb", "ListRecords"}, {"resumptionToken", token}};
    }
    return stats;
}

std::vector<HarvestedRecord> Harvester::harvest_all(const std::string& base_url, const HarvestWindow& window) const {
    std::vector<HarvestedRecord> out;
    harvest(base_url, window, [&](HarvestedRecord&& r) { out.push_back(std::move(r)); });
    return out;
}

ProviderIdentity Harvester::identify(const std::string& base_url) const {
    RequestArgs args{{"verb", "Identify"}};
    const std::string request = describe(base_url, args);
    const xml::Element root = parse_response(fetch(base_url, args), request);
    check_errors(root, request, std::nullopt);
    const xml::Element* id = root.child(kOaiNs, "Identify");
    if (!id) throw ProtocolError("response to " + request + " lacks an Identify element");
    ProviderIdentity out;
    out.repository_name = element_text(id->child(kOaiNs, "repositoryName"));
    out.base_url = element_text(id->child(kOaiNs, "baseURL"));
    out.protocol_version = element_text(id->child(kOaiNs, "protocolVersion"));
    out.admin_email = element_text(id->child(kOaiNs, "adminEmail"));
    const std::string g = element_text(id->child(kOaiNs, "granularity"));
    out.granularity = g == "YYYY-MM-DDThh:mm:ssZ" ? Granularity::Second : Granularity::Day;
    auto earliest = Datestamp::parse(element_text(id->child(kOaiNs, "earliestDatestamp")));
    if (!earliest) throw ProtocolError("Identify response from " + base_url + " has no valid earliestDatestamp");
    out.earliest_datestamp = *earliest;
    return out;
}

std::vector<std::string> check_identity(const ProviderIdentity& identity, std::span<const RecordHeader> headers) {
    std::vector<std::string> problems;
    const Datestamp earliest =
        identity.granularity == Granularity::Day ? identity.earliest_datestamp.day() : identity.earliest_datestamp;
    for (const auto& h : headers) {
        Datestamp d = identity.granularity == Granularity::Day ? h.datestamp.day() : h.datestamp;
        if (d < earliest) {
            problems.push_back("earliestDatestamp " + identity.earliest_datestamp.format(identity.granularity) +
                               " is later than the datestamp " + h.datestamp.format(identity.granularity) +
                               " of " + h.identifier);
            break;
        }
    }
    if (identity.protocol_version != kProtocolVersion)
        problems.push_back("protocolVersion is '" + identity.protocol_version + "'");
    return problems;
}

}  // namespace olac::oai
