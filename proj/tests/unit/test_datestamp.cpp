#include <doctest.h>

#include <ctime>

#include "fixtures.hpp"
#include "olac/datestamp.hpp"

using namespace olac;

TEST_CASE("W3C-DTF forms") {
    for (const char* ok : {"1933", "1933-05", "1933-05-17", "1997-07-16T19:20+01:00", "1997-07-16T19:20:30Z",
                           "1997-07-16T19:20:30.45-05:00", "2000-02-29"}) {
        CAPTURE(ok);
        CHECK(validate_w3cdtf(ok));
    }
    for (const char* bad : {"", "33", "1933-5", "1933-13", "1933-02-30", "1900-02-29", "1997-07-16T19:20",
                            "1997-07-16T25:00Z", "1997-07-16 19:20Z", "May 1933", "1933-05-17Z", "19330517"}) {
        CAPTURE(bad);
        CHECK_FALSE(validate_w3cdtf(bad));
    }
}

TEST_CASE("Datestamp parse and format") {
    Granularity g{};
    auto d = Datestamp::parse("2003-01-15", &g);
    REQUIRE(d);
    CHECK(g == Granularity::Day);
    CHECK(d->format(Granularity::Day) == "2003-01-15");
    CHECK(d->format(Granularity::Second) == "2003-01-15T00:00:00Z");
    auto s = Datestamp::parse("2003-01-15T10:20:30Z", &g);
    REQUIRE(s);
    CHECK(g == Granularity::Second);
    CHECK(s->day() == *d);
    CHECK(d->next_day() == *Datestamp::parse("2003-01-16"));
    CHECK_FALSE(Datestamp::parse("2003-01-15T10:20Z"));
    CHECK_FALSE(Datestamp::parse("2003-02-29"));
}

TEST_CASE("Datestamp agrees with timegm") {
    testing::Rng rng(3);
    for (int i = 0; i < 2000; ++i) {
        std::int64_t secs = static_cast<std::int64_t>(rng.below(4102444800ULL));
        Datestamp d(secs);
        std::time_t t = static_cast<std::time_t>(secs);
        std::tm tm{};
        gmtime_r(&t, &tm);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
        CHECK(d.format(Granularity::Second) == buf);
        CHECK(Datestamp::parse(buf) == d);
        CHECK(d.day().unix_seconds() == secs - secs % 86400);
    }
}

TEST_CASE("from_ymd") {
    CHECK(Datestamp::from_ymd(1970, 1, 1).unix_seconds() == 0);
    CHECK(Datestamp::from_ymd(2003, 1, 1).format(Granularity::Day) == "2003-01-01");
}
