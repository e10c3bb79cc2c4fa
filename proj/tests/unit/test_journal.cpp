#include <doctest.h>

#include <zlib.h>

#include <fstream>

#include "fixtures.hpp"
#include "olac/error.hpp"
#include "olac/journal.hpp"

using namespace olac;
using namespace olac::journal;

namespace {

std::string frames_bytes(const std::vector<Frame>& frames) {
    std::string out(kHeader);
    for (const auto& f : frames) out += encode_frame(f.seq, f.payload);
    return out;
}

std::vector<Frame> sample(testing::Rng& rng, int n) {
    std::vector<Frame> out;
    for (int i = 0; i < n; ++i) {
        std::string payload;
        int len = rng.between(0, 200);
        for (int k = 0; k < len; ++k) payload.push_back(static_cast<char>(rng.between(0, 255)));
        out.push_back({static_cast<std::uint64_t>(i + 1), payload});
    }
    return out;
}

void write_raw(const std::filesystem::path& p, const std::string& bytes) {
    std::ofstream(p, std::ios::binary | std::ios::trunc) << bytes;
}

}  // namespace

TEST_CASE("frame layout") {
    const std::string payload = "hello\nworld";
    char crc[16];
    std::snprintf(crc, sizeof crc, "%08lx",
                  crc32(0, reinterpret_cast<const Bytef*>(payload.data()), static_cast<uInt>(payload.size())));
    CHECK(encode_frame(7, payload) == "@ 7 11 " + std::string(crc) + "\n" + payload + "\n");
}

TEST_CASE("scanning intact journals") {
    testing::Rng rng(61);
    auto frames = sample(rng, 20);
    const std::string bytes = frames_bytes(frames);
    Scan s = scan_bytes(bytes);
    CHECK_FALSE(s.torn);
    CHECK(s.valid_length == bytes.size());
    REQUIRE(s.frames.size() == frames.size());
    for (std::size_t i = 0; i < frames.size(); ++i) {
        CHECK(s.frames[i].seq == frames[i].seq);
        CHECK(s.frames[i].payload == frames[i].payload);
    }
    CHECK(scan_bytes("").frames.empty());
    CHECK(scan_bytes(kHeader.substr(0, 5)).frames.empty());
    CHECK_THROWS_AS(scan_bytes("NOT A JOURNAL\n"), ParseError);
}

TEST_CASE("every truncation keeps exactly the complete frames") {
    testing::Rng rng(62);
    auto frames = sample(rng, 6);
    const std::string bytes = frames_bytes(frames);
    std::vector<std::size_t> ends{kHeader.size()};
    for (const auto& f : frames) ends.push_back(ends.back() + encode_frame(f.seq, f.payload).size());
    for (std::size_t cut = kHeader.size(); cut <= bytes.size(); ++cut) {
        Scan s = scan_bytes(std::string_view(bytes).substr(0, cut));
        std::size_t complete = static_cast<std::size_t>(std::upper_bound(ends.begin(), ends.end(), cut) - ends.begin()) - 1;
        CHECK(s.frames.size() == complete);
        CHECK(s.valid_length == ends[complete]);
        CHECK(s.torn == (cut != ends[complete]));
    }
}

TEST_CASE("corruption stops the scan at the damaged frame") {
    testing::Rng rng(63);
    auto frames = sample(rng, 8);
    const std::string bytes = frames_bytes(frames);
    std::size_t second = kHeader.size() + encode_frame(frames[0].seq, frames[0].payload).size();
    for (int trial = 0; trial < 200; ++trial) {
        std::string damaged = bytes;
        std::size_t at = second + rng.below(bytes.size() - second);
        damaged[at] = static_cast<char>(damaged[at] ^ (1 + rng.below(255)));
        Scan s = scan_bytes(damaged);
        CHECK(s.frames.size() >= 1);
        CHECK(s.valid_length <= at + 1);
        for (std::size_t i = 0; i < s.frames.size(); ++i) CHECK(s.frames[i].payload == frames[i].payload);
    }
    std::string out_of_order = std::string(kHeader) + encode_frame(2, "a") + encode_frame(2, "b");
    CHECK(scan_bytes(out_of_order).frames.size() == 1);
    CHECK(scan_bytes(out_of_order).torn);
}

TEST_CASE("the writer truncates a torn tail before appending") {
    testing::TempDir dir;
    auto path = dir.path() / "j.olacx";
    {
        Writer w(path, 0);
        w.append({{1, "one"}, {2, "two"}});
    }
    std::string bytes = read_file(path);
    write_raw(path, bytes + "@ 3 100 deadbeef\npartial");
    Scan s = scan(path);
    CHECK(s.torn);
    CHECK(s.frames.size() == 2);
    {
        Writer w(path, s.valid_length);
        w.append({{3, "three"}});
    }
    Scan after = scan(path);
    CHECK_FALSE(after.torn);
    REQUIRE(after.frames.size() == 3);
    CHECK(after.frames[2].payload == "three");
    {
        Writer w(path, after.valid_length);
        w.reset();
        w.append({{9, "nine"}});
    }
    Scan reset = scan(path);
    REQUIRE(reset.frames.size() == 1);
    CHECK(reset.frames[0].seq == 9);
}

TEST_CASE("atomic file writes") {
    testing::TempDir dir;
    auto path = dir.path() / "f.txt";
    write_file_atomic(path, "first");
    write_file_atomic(path, "second");
    CHECK(read_file(path) == "second");
    CHECK(std::distance(std::filesystem::directory_iterator(dir.path()), std::filesystem::directory_iterator{}) == 1);
    CHECK_THROWS_AS(read_file(dir.path() / "missing"), ConfigError);
    CHECK(scan(dir.path() / "missing").frames.empty());
}
