#include "olac/datestamp.hpp"

#include <cctype>
#include <cstdio>

namespace olac {

using namespace std::chrono;

namespace {

// Reads exactly n digits at pos.
bool digits(std::string_view s, std::size_t pos, std::size_t n, int& value) {
    if (pos + n > s.size()) return false;
    value = 0;
    for (std::size_t i = pos; i < pos + n; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        value = value * 10 + (s[i] - '0');
    }
    return true;
}

bool valid_date(int y, int m, int d) {
    return year_month_day{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}}.ok();
}

// Parses the time-and-zone tail starting at 'T'; returns false on any
// deviation from hh:mm[:ss[.s+]]TZD.
bool valid_time_tail(std::string_view s, std::size_t pos) {
    int hh, mm, ss;
    if (pos >= s.size() || s[pos] != 'T') return false;
    if (!digits(s, pos + 1, 2, hh) || pos + 3 >= s.size() || s[pos + 3] != ':' || !digits(s, pos + 4, 2, mm))
        return false;
    if (hh > 23 || mm > 59) return false;
    pos += 6;
    if (pos < s.size() && s[pos] == ':') {
        if (!digits(s, pos + 1, 2, ss) || ss > 59) return false;
        pos += 3;
        if (pos < s.size() && s[pos] == '.') {
            std::size_t start = ++pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (pos == start) return false;
        }
    }
    if (pos >= s.size()) return false;
    if (s[pos] == 'Z') return pos + 1 == s.size();
    if (s[pos] != '+' && s[pos] != '-') return false;
    int zh, zm;
    if (!digits(s, pos + 1, 2, zh) || pos + 3 >= s.size() || s[pos + 3] != ':' || !digits(s, pos + 4, 2, zm))
        return false;
    return zh <= 23 && zm <= 59 && pos + 6 == s.size();
}

}  // namespace

bool validate_w3cdtf(std::string_view s) {
    int y, m, d;
    if (!digits(s, 0, 4, y)) return false;
    if (s.size() == 4) return true;
    if (s[4] != '-' || !digits(s, 5, 2, m) || m < 1 || m > 12) return false;
    if (s.size() == 7) return true;
    if (s[7] != '-' || !digits(s, 8, 2, d) || !valid_date(y, m, d)) return false;
    if (s.size() == 10) return true;
    return valid_time_tail(s, 10);
}

std::string_view to_string(Granularity g) { return g == Granularity::Day ? "YYYY-MM-DD" : "YYYY-MM-DDThh:mm:ssZ"; }

Datestamp Datestamp::from_ymd(int y, unsigned m, unsigned d) {
    sys_days date{year_month_day{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}}};
    return Datestamp(duration_cast<seconds>(date.time_since_epoch()).count());
}

Datestamp Datestamp::now() {
    return Datestamp(duration_cast<seconds>(Clock::now().time_since_epoch()).count());
}

std::optional<Datestamp> Datestamp::parse(std::string_view s, Granularity* granularity) {
    int y, m, d;
    if (s.size() != 10 && s.size() != 20) return std::nullopt;
    if (!digits(s, 0, 4, y) || s[4] != '-' || !digits(s, 5, 2, m) || s[7] != '-' || !digits(s, 8, 2, d))
        return std::nullopt;
    if (m < 1 || m > 12 || !valid_date(y, m, d)) return std::nullopt;
    auto base = from_ymd(y, static_cast<unsigned>(m), static_cast<unsigned>(d));
    if (s.size() == 10) {
        if (granularity) *granularity = Granularity::Day;
        return base;
    }
    int hh, mm, ss;
    if (s[10] != 'T' || !digits(s, 11, 2, hh) || s[13] != ':' || !digits(s, 14, 2, mm) || s[16] != ':' ||
        !digits(s, 17, 2, ss) || s[19] != 'Z' || hh > 23 || mm > 59 || ss > 59)
        return std::nullopt;
    if (granularity) *granularity = Granularity::Second;
    return Datestamp(base.seconds_ + hh * 3600 + mm * 60 + ss);
}

Datestamp Datestamp::day() const {
    std::int64_t r = seconds_ % 86400;
    if (r < 0) r += 86400;
    return Datestamp(seconds_ - r);
}

std::string Datestamp::format(Granularity g) const {
    sys_seconds tp{seconds(seconds_)};
    auto date = floor<std::chrono::days>(tp);
    year_month_day ymd{date};
    char buf[32];
    if (g == Granularity::Day) {
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    } else {
        hh_mm_ss hms{tp - date};
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                      static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                      static_cast<int>(hms.seconds().count()));
    }
    return buf;
}

}  // namespace olac
