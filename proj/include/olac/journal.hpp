#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace olac::journal {

inline constexpr std::string_view kHeader = "OLACX-JOURNAL 1\n";

struct Frame {
    std::uint64_t seq = 0;
    std::string payload;
};

struct Scan {
    std::vector<Frame> frames;
    /// Bytes covered by the header and intact frames.
    std::uint64_t valid_length = 0;
    /// True if bytes after the last intact frame were discarded.
    bool torn = false;
};

/// `@ <seq> <length> <crc32 hex>\n<payload>\n`
std::string encode_frame(std::uint64_t seq, std::string_view payload);

/// Reads a journal, stopping at the first incomplete or corrupt frame. A
/// missing file, or one holding a prefix of the header, scans as empty.
/// Throws ParseError if the header is wrong.
Scan scan(const std::filesystem::path& path);
Scan scan_bytes(std::string_view bytes);

/// Append-only writer. Opening truncates the file to `valid_length` so a
/// torn tail never precedes new frames.
class Writer {
public:
    Writer(const std::filesystem::path& path, std::uint64_t valid_length);
    ~Writer();
    Writer(const Writer&) = delete;
    Writer& operator=(const Writer&) = delete;

    /// Appends the frames and fsyncs.
    void append(const std::vector<Frame>& frames);
    /// Replaces the journal with an empty one.
    void reset();

private:
    void open_fd(std::uint64_t valid_length);

    std::filesystem::path path_;
    int fd_ = -1;
};

/// Writes via a temporary file, fsync and rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

}  // namespace olac::journal
