#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "olac/diagnostic.hpp"
#include "olac/oai.hpp"
#include "olac/record.hpp"

namespace olac::oai {

struct HarvestWindow {
    std::optional<Datestamp> from;
    std::optional<Datestamp> until;
    Granularity granularity = Granularity::Day;
    MetadataFormat format = MetadataFormat::Olac;
};

struct HarvestedRecord {
    RecordHeader header;
    std::optional<OlacRecord> olac;  // set for live olac-format records
    std::optional<DcRecord> dc;      // set for live oai_dc-format records
    std::vector<Diagnostic> diagnostics;
};

struct HarvestOptions {
    int max_attempts = 3;
    std::chrono::milliseconds initial_backoff{250};
    std::chrono::seconds timeout{30};
};

struct HarvestStats {
    std::size_t requests = 0;
    std::size_t records = 0;
    /// responseDate of the first response, usable as the next `from`.
    std::optional<Datestamp> response_date;
};

/// Protocol client. Follows resumption tokens to exhaustion; each record is
/// delivered exactly once. Transport failures and 5xx responses are retried
/// with exponential backoff before ProviderUnreachable is thrown; malformed
/// responses and in-band errors (other than noRecordsMatch) throw
/// ProtocolError naming the failed request.
class Harvester {
public:
    explicit Harvester(HarvestOptions options = {}, const Profile& profile = Profile::builtin());

    HarvestStats harvest(const std::string& base_url, const HarvestWindow& window,
                         const std::function<void(HarvestedRecord&&)>& sink) const;
    std::vector<HarvestedRecord> harvest_all(const std::string& base_url, const HarvestWindow& window = {}) const;

    ProviderIdentity identify(const std::string& base_url) const;

    /// Raw request, retried like any other; returns the response body.
    std::string fetch(const std::string& base_url, const RequestArgs& args) const;

private:
    HarvestOptions options_;
    const Profile* profile_;
};

/// Problems with a provider's self-description given the headers it served:
/// an earliest datestamp later than any served record is reported.
std::vector<std::string> check_identity(const ProviderIdentity& identity, std::span<const RecordHeader> headers);

}  // namespace olac::oai
