#include "olac/oai.hpp"

#include <openssl/evp.h>
#include <openssl/hmac.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <set>

#include "olac/crosswalk.hpp"
#include "olac/record_xml.hpp"
#include "olac/text.hpp"
#include "olac/xml.hpp"

namespace olac::oai {

std::string_view prefix(MetadataFormat format) { return format == MetadataFormat::Olac ? "olac" : "oai_dc"; }

std::optional<MetadataFormat> format_from_prefix(std::string_view p) {
    if (p == "olac") return MetadataFormat::Olac;
    if (p == "oai_dc") return MetadataFormat::OaiDc;
    return std::nullopt;
}

namespace {

constexpr std::array<std::pair<ErrorCode, std::string_view>, 6> kErrorNames{{
    {ErrorCode::BadVerb, "badVerb"},
    {ErrorCode::BadArgument, "badArgument"},
    {ErrorCode::IdDoesNotExist, "idDoesNotExist"},
    {ErrorCode::NoRecordsMatch, "noRecordsMatch"},
    {ErrorCode::CannotDisseminateFormat, "cannotDisseminateFormat"},
    {ErrorCode::BadResumptionToken, "badResumptionToken"},
}};

}  // namespace

std::string_view to_string(ErrorCode code) {
    for (const auto& [c, n] : kErrorNames)
        if (c == code) return n;
    return "badArgument";
}

std::optional<ErrorCode> error_code_from(std::string_view code) {
    for (const auto& [c, n] : kErrorNames)
        if (n == code) return c;
    return std::nullopt;
}

const ServedRecord* RepositoryView::find(std::string_view identifier) const {
    auto it = std::lower_bound(records.begin(), records.end(), identifier,
                               [](const ServedRecord& r, std::string_view id) { return r.header.identifier < id; });
    if (it == records.end() || it->header.identifier != identifier) return nullptr;
    return &*it;
}

std::optional<Datestamp> RepositoryView::earliest() const {
    std::optional<Datestamp> best;
    for (const auto& r : records)
        if (!best || r.header.datestamp < *best) best = r.header.datestamp;
    return best;
}

void MemoryRepository::put(const std::string& identifier, OlacRecord record, Datestamp datestamp) {
    std::lock_guard lock(mutex_);
    ServedRecord served{RecordHeader{identifier, datestamp, false},
                        std::make_shared<const OlacRecord>(std::move(record))};
    records_[identifier] = std::move(served);
    ++snapshot_id_;
    cached_.reset();
}

bool MemoryRepository::remove(const std::string& identifier, Datestamp datestamp) {
    std::lock_guard lock(mutex_);
    auto it = records_.find(identifier);
    if (it == records_.end()) return false;
    it->second = ServedRecord{RecordHeader{identifier, datestamp, true}, nullptr};
    ++snapshot_id_;
    cached_.reset();
    return true;
}

std::size_t MemoryRepository::size() const {
    std::lock_guard lock(mutex_);
    return records_.size();
}

std::shared_ptr<const RepositoryView> MemoryRepository::view() const {
    std::lock_guard lock(mutex_);
    if (!cached_) {
        auto v = std::make_shared<RepositoryView>();
        v->snapshot_id = snapshot_id_;
        v->records.reserve(records_.size());
        for (const auto& [id, r] : records_) v->records.push_back(r);
        cached_ = std::move(v);
    }
    return cached_;
}

// ---------------------------------------------------------------------------

struct Provider::ListQuery {
    std::string verb;
    MetadataFormat format = MetadataFormat::Olac;
    std::string from;   // as requested, possibly empty
    std::string until;  // as requested, possibly empty
};

namespace {

const std::vector<std::string_view> kEchoOrder = {"identifier", "metadataPrefix", "from",
                                                  "until",      "set",            "resumptionToken"};

std::string hex(const unsigned char* data, std::size_t n) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(n * 2);
    for (std::size_t i = 0; i < n; ++i) {
        out += digits[data[i] >> 4];
        out += digits[data[i] & 0xF];
    }
    return out;
}

std::string mac(const std::string& secret, const std::string& payload) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    HMAC(EVP_sha256(), secret.data(), static_cast<int>(secret.size()),
         reinterpret_cast<const unsigned char*>(payload.data()), payload.size(), digest, &len);
    return hex(digest, 16);
}

std::string base64url_encode(const std::string& in) {
    std::string out(4 * ((in.size() + 2) / 3) + 1, '\0');
    int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                            reinterpret_cast<const unsigned char*>(in.data()), static_cast<int>(in.size()));
    out.resize(static_cast<std::size_t>(n));
    while (!out.empty() && out.back() == '=') out.pop_back();
    for (char& c : out) {
        if (c == '+') c = '-';
        else if (c == '/') c = '_';
    }
    return out;
}

std::optional<std::string> base64url_decode(std::string in) {
    for (char& c : in) {
        if (c == '-') c = '+';
        else if (c == '_') c = '/';
        else if (!std::isalnum(static_cast<unsigned char>(c))) return std::nullopt;
    }
    std::size_t pad = (4 - in.size() % 4) % 4;
    if (pad == 3) return std::nullopt;
    in.append(pad, '=');
    std::string out(in.size() / 4 * 3, '\0');
    int n = EVP_DecodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                            reinterpret_cast<const unsigned char*>(in.data()), static_cast<int>(in.size()));
    if (n < 0) return std::nullopt;
    out.resize(static_cast<std::size_t>(n) - pad);
    return out;
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
    T value{};
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) return std::nullopt;
    return value;
}

std::string second_stamp(Datestamp d) { return d.format(Granularity::Second); }

}  // namespace

Provider::Provider(ProviderConfig config, std::shared_ptr<const RecordSource> source, const Profile& profile)
    : config_(std::move(config)), source_(std::move(source)), profile_(&profile) {
    if (config_.page_size == 0) config_.page_size = 1;
}

std::string Provider::begin(const RequestArgs& args, bool echo) const {
    std::string out;
    xml::Writer w(out);
    w.declaration();
    w.open("OAI-PMH", {{"xmlns", std::string(kOaiNs)},
                       {"xmlns:xsi", std::string(xml::kXsiNs)},
                       {"xsi:schemaLocation", std::string(kOaiNs) + " " + std::string(kOaiSchema)}});
    w.leaf("responseDate", {}, second_stamp(config_.clock()));
    xml::Attributes attrs;
    if (echo) {
        auto verb = args.find("verb");
        if (verb != args.end()) attrs.emplace_back("verb", verb->second);
        for (auto key : kEchoOrder) {
            auto it = args.find(std::string(key));
            if (it != args.end()) attrs.emplace_back(std::string(key), it->second);
        }
    }
    w.leaf("request", attrs, config_.identity.base_url);
    return out;
}

std::string Provider::error(const RequestArgs& args, ErrorCode code, const std::string& message) const {
    bool echo = code != ErrorCode::BadVerb && code != ErrorCode::BadArgument;
    std::string out = begin(args, echo);
    xml::Writer w(out, 1);
    w.leaf("error", {{"code", std::string(to_string(code))}}, message);
    out += "</OAI-PMH>\n";
    return out;
}

std::string Provider::handle(const RequestArgs& args) const {
    auto verbs = args.equal_range("verb");
    std::size_t verb_count = static_cast<std::size_t>(std::distance(verbs.first, verbs.second));
    if (verb_count == 0) return error(args, ErrorCode::BadVerb, "missing verb argument");
    if (verb_count > 1) return error(args, ErrorCode::BadVerb, "verb argument is repeated");
    const std::string verb = verbs.first->second;

    std::set<std::string> seen;
    for (const auto& [key, value] : args) {
        if (!seen.insert(key).second) return error(args, ErrorCode::BadArgument, "argument '" + key + "' is repeated");
    }

    auto view = source_->view();
    if (verb == "Identify") return identify(view, args);
    if (verb == "ListMetadataFormats") return list_metadata_formats(view, args);
    if (verb == "ListSets") return list_sets(args);
    if (verb == "GetRecord") return get_record(view, args);
    if (verb == "ListRecords") return list(view, args, true);
    if (verb == "ListIdentifiers") return list(view, args, false);
    return error(args, ErrorCode::BadVerb, "'" + verb + "' is not a legal verb");
}

namespace {

// Returns the first argument not in `allowed`, if any.
std::optional<std::string> illegal_argument(const RequestArgs& args, std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, value] : args) {
        if (key == "verb") continue;
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) return key;
    }
    return std::nullopt;
}

std::optional<std::string> arg(const RequestArgs& args, const std::string& key) {
    auto it = args.find(key);
    if (it == args.end()) return std::nullopt;
    return it->second;
}

}  // namespace

std::string Provider::identify(const std::shared_ptr<const RepositoryView>& view, const RequestArgs& args) const {
    if (auto bad = illegal_argument(args, {}))
        return error(args, ErrorCode::BadArgument, "Identify takes no argument '" + *bad + "'");
    const auto& id = config_.identity;
    Datestamp earliest = id.earliest_datestamp;
    if (!config_.fixed_earliest_datestamp) earliest = view->earliest().value_or(config_.clock());

    std::string out = begin(args, true);
    xml::Writer w(out, 1);
    w.open("Identify");
    w.leaf("repositoryName", {}, id.repository_name);
    w.leaf("baseURL", {}, id.base_url);
    w.leaf("protocolVersion", {}, id.protocol_version);
    w.leaf("adminEmail", {}, id.admin_email);
    w.leaf("earliestDatestamp", {}, earliest.format(id.granularity));
    w.leaf("deletedRecord", {}, std::string("persistent"));
    w.leaf("granularity", {},
           std::string(id.granularity == Granularity::Day ? "YYYY-MM-DD" : "YYYY-MM-DDThh:mm:ssZ"));
    w.close();
    out += "</OAI-PMH>\n";
    return out;
}

std::string Provider::list_metadata_formats(const std::shared_ptr<const RepositoryView>& view,
                                            const RequestArgs& args) const {
    if (auto bad = illegal_argument(args, {"identifier"}))
        return error(args, ErrorCode::BadArgument, "ListMetadataFormats takes no argument '" + *bad + "'");
    if (auto id = arg(args, "identifier"); id && !view->find(*id))
        return error(args, ErrorCode::IdDoesNotExist, "no item '" + *id + "'");

    std::string out = begin(args, true);
    xml::Writer w(out, 1);
    w.open("ListMetadataFormats");
    w.open("metadataFormat");
    w.leaf("metadataPrefix", {}, std::string("olac"));
    w.leaf("schema", {}, std::string(xml::kOlacSchema));
    w.leaf("metadataNamespace", {}, std::string(xml::kOlacNs));
    w.close();
    w.open("metadataFormat");
    w.leaf("metadataPrefix", {}, std::string("oai_dc"));
    w.leaf("schema", {}, std::string(xml::kOaiDcSchema));
    w.leaf("metadataNamespace", {}, std::string(xml::kOaiDcNs));
    w.close();
    w.close();
    out += "</OAI-PMH>\n";
    return out;
}

std::string Provider::list_sets(const RequestArgs& args) const {
    if (auto bad = illegal_argument(args, {"resumptionToken"}))
        return error(args, ErrorCode::BadArgument, "ListSets takes no argument '" + *bad + "'");
    if (arg(args, "resumptionToken"))
        return error(args, ErrorCode::BadResumptionToken, "no set list is ever resumed");
    std::string out = begin(args, true);
    xml::Writer w(out, 1);
    w.leaf("ListSets", {}, std::nullopt);
    out += "</OAI-PMH>\n";
    return out;
}

namespace {

void write_header(xml::Writer& w, const RecordHeader& h, Granularity g) {
    xml::Attributes attrs;
    if (h.deleted) attrs.emplace_back("status", "deleted");
    w.open("header", attrs);
    w.leaf("identifier", {}, h.identifier);
    w.leaf("datestamp", {}, h.datestamp.format(g));
    w.close();
}

void write_served(xml::Writer& w, const ServedRecord& r, MetadataFormat format, Granularity g,
                  const Profile& profile) {
    w.open("record");
    write_header(w, r.header, g);
    if (!r.header.deleted && r.record) {
        w.open("metadata");
        if (format == MetadataFormat::Olac) write_record(w, *r.record, true);
        else write_dc_record(w, to_simple_dc(*r.record, profile), true);
        w.close();
    }
    w.close();
}

}  // namespace

std::string Provider::get_record(const std::shared_ptr<const RepositoryView>& view, const RequestArgs& args) const {
    if (auto bad = illegal_argument(args, {"identifier", "metadataPrefix"}))
        return error(args, ErrorCode::BadArgument, "GetRecord takes no argument '" + *bad + "'");
    auto id = arg(args, "identifier");
    auto pfx = arg(args, "metadataPrefix");
    if (!id) return error(args, ErrorCode::BadArgument, "GetRecord requires an identifier");
    if (!pfx) return error(args, ErrorCode::BadArgument, "GetRecord requires a metadataPrefix");
    auto format = format_from_prefix(*pfx);
    if (!format) return error(args, ErrorCode::CannotDisseminateFormat, "'" + *pfx + "' is not supported");
    const ServedRecord* r = view->find(*id);
    if (!r) return error(args, ErrorCode::IdDoesNotExist, "no item '" + *id + "'");

    std::string out = begin(args, true);
    xml::Writer w(out, 1);
    w.open("GetRecord");
    write_served(w, *r, *format, config_.identity.granularity, *profile_);
    w.close();
    out += "</OAI-PMH>\n";
    return out;
}

std::string Provider::make_token(const ListQuery& q, std::size_t cursor, std::uint64_t snapshot,
                                 Datestamp expiry) const {
    std::string payload = "1|" + std::to_string(snapshot) + "|" + std::to_string(cursor) + "|" +
                          std::to_string(expiry.unix_seconds()) + "|" + q.verb + "|" +
                          std::string(prefix(q.format)) + "|" + q.from + "|" + q.until;
    return base64url_encode(payload) + "." + mac(config_.token_secret, payload);
}

std::optional<Provider::ListQuery> Provider::read_token(const std::string& token, std::uint64_t snapshot,
                                                        std::size_t& cursor) const {
    auto dot = token.find('.');
    if (dot == std::string::npos) return std::nullopt;
    auto payload = base64url_decode(token.substr(0, dot));
    if (!payload) return std::nullopt;
    if (mac(config_.token_secret, *payload) != token.substr(dot + 1)) return std::nullopt;
    auto parts = text::split(*payload, '|');
    if (parts.size() != 8 || parts[0] != "1") return std::nullopt;
    auto snap = parse_number<std::uint64_t>(parts[1]);
    auto pos = parse_number<std::size_t>(parts[2]);
    auto expiry = parse_number<std::int64_t>(parts[3]);
    auto format = format_from_prefix(parts[5]);
    if (!snap || !pos || !expiry || !format) return std::nullopt;
    if (*snap != snapshot) return std::nullopt;
    if (config_.clock().unix_seconds() > *expiry) return std::nullopt;
    cursor = *pos;
    return ListQuery{std::string(parts[4]), *format, std::string(parts[6]), std::string(parts[7])};
}

std::string Provider::list(const std::shared_ptr<const RepositoryView>& view, const RequestArgs& args,
                           bool with_metadata) const {
    const std::string verb = with_metadata ? "ListRecords" : "ListIdentifiers";
    ListQuery q;
    std::size_t cursor = 0;

    if (auto token = arg(args, "resumptionToken")) {
        if (args.size() != 2)
            return error(args, ErrorCode::BadArgument, "resumptionToken is an exclusive argument");
        auto read = read_token(*token, view->snapshot_id, cursor);
        if (!read || read->verb != verb)
            return error(args, ErrorCode::BadResumptionToken, "the resumption token is invalid or has expired");
        q = std::move(*read);
    } else {
        if (auto bad = illegal_argument(args, {"metadataPrefix", "from", "until", "set"}))
            return error(args, ErrorCode::BadArgument, verb + " takes no argument '" + *bad + "'");
        auto pfx = arg(args, "metadataPrefix");
        if (!pfx) return error(args, ErrorCode::BadArgument, verb + " requires a metadataPrefix");
        q.verb = verb;
        q.from = arg(args, "from").value_or("");
        q.until = arg(args, "until").value_or("");
        Granularity gf{}, gu{};
        std::optional<Datestamp> from, until;
        if (!q.from.empty() && !(from = Datestamp::parse(q.from, &gf)))
            return error(args, ErrorCode::BadArgument, "'" + q.from + "' is not a valid datestamp");
        if (!q.until.empty() && !(until = Datestamp::parse(q.until, &gu)))
            return error(args, ErrorCode::BadArgument, "'" + q.until + "' is not a valid datestamp");
        if (from && until && gf != gu)
            return error(args, ErrorCode::BadArgument, "from and until have different granularities");
        const bool fine = (from && gf == Granularity::Second) || (until && gu == Granularity::Second);
        if (fine && config_.identity.granularity == Granularity::Day)
            return error(args, ErrorCode::BadArgument, "this repository supports day granularity only");
        if (from && until && *until < *from)
            return error(args, ErrorCode::BadArgument, "from is later than until");
        auto format = format_from_prefix(*pfx);
        if (!format) return error(args, ErrorCode::CannotDisseminateFormat, "'" + *pfx + "' is not supported");
        q.format = *format;
        if (arg(args, "set")) return error(args, ErrorCode::NoRecordsMatch, "this repository has no sets");
    }

    const Granularity g = config_.identity.granularity;
    Granularity gf{}, gu{};
    std::optional<Datestamp> from = q.from.empty() ? std::nullopt : Datestamp::parse(q.from, &gf);
    std::optional<Datestamp> until = q.until.empty() ? std::nullopt : Datestamp::parse(q.until, &gu);
    if (until && gu == Granularity::Day) until = Datestamp(until->next_day().unix_seconds() - 1);

    std::vector<const ServedRecord*> matches;
    for (const auto& r : view->records) {
        Datestamp d = g == Granularity::Day ? r.header.datestamp.day() : r.header.datestamp;
        if (from && d < *from) continue;
        if (until && *until < d) continue;
        matches.push_back(&r);
    }
    if (matches.empty()) return error(args, ErrorCode::NoRecordsMatch, "no records match the request");
    if (cursor >= matches.size())
        return error(args, ErrorCode::BadResumptionToken, "the resumption token is past the end of the list");

    const std::size_t end = std::min(matches.size(), cursor + config_.page_size);
    std::string out = begin(args, true);
    xml::Writer w(out, 1);
    w.open(verb);
    for (std::size_t i = cursor; i < end; ++i) {
        if (with_metadata) write_served(w, *matches[i], q.format, g, *profile_);
        else write_header(w, matches[i]->header, g);
    }
    const bool paged = cursor > 0 || end < matches.size();
    if (paged) {
        xml::Attributes attrs;
        std::optional<std::string> token;
        if (end < matches.size()) {
            Datestamp expiry(config_.clock().unix_seconds() + config_.token_ttl.count());
            token = make_token(q, end, view->snapshot_id, expiry);
            attrs.emplace_back("expirationDate", second_stamp(expiry));
        }
        attrs.emplace_back("completeListSize", std::to_string(matches.size()));
        attrs.emplace_back("cursor", std::to_string(cursor));
        w.leaf("resumptionToken", attrs, token);
    }
    w.close();
    out += "</OAI-PMH>\n";
    return out;
}

}  // namespace olac::oai
