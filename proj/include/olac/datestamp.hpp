#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace olac {

/// True iff text is a W3C-DTF date: YYYY, YYYY-MM, YYYY-MM-DD, or a full
/// date followed by Thh:mm[:ss[.s+]] and a zone designator (Z or +hh:mm).
bool validate_w3cdtf(std::string_view text);

enum class Granularity { Day, Second };

std::string_view to_string(Granularity g);

/// A UTC instant with one-second resolution, as used in protocol headers.
class Datestamp {
public:
    using Clock = std::chrono::system_clock;

    Datestamp() = default;
    explicit Datestamp(std::int64_t unix_seconds) : seconds_(unix_seconds) {}

    static Datestamp from_ymd(int year, unsigned month, unsigned day);
    static Datestamp now();

    /// Accepts YYYY-MM-DD and YYYY-MM-DDThh:mm:ssZ.
    static std::optional<Datestamp> parse(std::string_view text, Granularity* granularity = nullptr);

    std::int64_t unix_seconds() const { return seconds_; }
    Datestamp day() const;
    Datestamp next_day() const { return Datestamp(day().seconds_ + 86400); }
    std::string format(Granularity g) const;

    friend auto operator<=>(const Datestamp&, const Datestamp&) = default;

private:
    std::int64_t seconds_ = 0;
};

}  // namespace olac
