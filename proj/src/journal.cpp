#include "olac/journal.hpp"

#include <fcntl.h>
#include <unistd.h>
#include <zlib.h>

#include <cerrno>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include "olac/error.hpp"

namespace olac::journal {

namespace {

std::uint32_t checksum(std::string_view s) {
    return static_cast<std::uint32_t>(
        crc32(0L, reinterpret_cast<const Bytef*>(s.data()), static_cast<uInt>(s.size())));
}

template <typename T>
bool parse_num(std::string_view s, T& out, int base = 10) {
    if (s.empty()) return false;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out, base);
    return ec == std::errc{} && p == s.data() + s.size();
}

[[noreturn]] void fail(const std::string& what, const std::filesystem::path& path) {
    throw ConfigError(what + " " + path.string() + ": " + std::strerror(errno));
}

void write_all(int fd, std::string_view data, const std::filesystem::path& path) {
    while (!data.empty()) {
        ssize_t n = ::write(fd, data.data(), data.size());
        if (n < 0) {
            if (errno == EINTR) continue;
            fail("cannot write", path);
        }
        data.remove_prefix(static_cast<std::size_t>(n));
    }
}

void sync_dir(const std::filesystem::path& dir) {
    int fd = ::open(dir.empty() ? "." : dir.c_str(), O_RDONLY | O_DIRECTORY);
    if (fd >= 0) {
        ::fsync(fd);
        ::close(fd);
    }
}

}  // namespace

std::string encode_frame(std::uint64_t seq, std::string_view payload) {
    char crc[9];
    std::snprintf(crc, sizeof crc, "%08x", checksum(payload));
    std::string out = "@ " + std::to_string(seq) + " " + std::to_string(payload.size()) + " " + crc + "\n";
    out.append(payload);
    out += '\n';
    return out;
}

Scan scan_bytes(std::string_view bytes) {
    Scan out;
    if (bytes.size() < kHeader.size()) {
        if (kHeader.substr(0, bytes.size()) != bytes) throw ParseError("journal header is corrupt");
        out.torn = !bytes.empty();
        return out;
    }
    if (bytes.substr(0, kHeader.size()) != kHeader) throw ParseError("journal header is corrupt");
    std::size_t pos = kHeader.size();
    out.valid_length = pos;
    std::uint64_t last_seq = 0;
    while (pos < bytes.size()) {
        std::size_t eol = bytes.find('\n', pos);
        if (eol == std::string_view::npos) break;
        std::string_view line = bytes.substr(pos, eol - pos);
        if (line.size() < 2 || line.substr(0, 2) != "@ ") break;
        line.remove_prefix(2);
        auto sp1 = line.find(' ');
        auto sp2 = sp1 == std::string_view::npos ? sp1 : line.find(' ', sp1 + 1);
        if (sp2 == std::string_view::npos) break;
        std::uint64_t seq = 0, length = 0;
        std::uint32_t crc = 0;
        if (!parse_num(line.substr(0, sp1), seq) || !parse_num(line.substr(sp1 + 1, sp2 - sp1 - 1), length) ||
            !parse_num(line.substr(sp2 + 1), crc, 16))
            break;
        std::size_t body = eol + 1;
        if (body + length + 1 > bytes.size()) break;
        std::string_view payload = bytes.substr(body, length);
        if (bytes[body + length] != '\n' || checksum(payload) != crc || seq <= last_seq) break;
        out.frames.push_back(Frame{seq, std::string(payload)});
        last_seq = seq;
        pos = body + length + 1;
        out.valid_length = pos;
    }
    out.torn = out.valid_length < bytes.size();
    return out;
}

Scan scan(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) return {};
    return scan_bytes(read_file(path));
}

Writer::Writer(const std::filesystem::path& path, std::uint64_t valid_length) : path_(path) {
    open_fd(valid_length);
}

Writer::~Writer() {
    if (fd_ >= 0) ::close(fd_);
}

void Writer::open_fd(std::uint64_t valid_length) {
    if (fd_ >= 0) ::close(fd_);
    fd_ = ::open(path_.c_str(), O_WRONLY | O_CREAT, 0644);
    if (fd_ < 0) fail("cannot open", path_);
    if (valid_length < kHeader.size()) {
        if (::ftruncate(fd_, 0) != 0) fail("cannot truncate", path_);
        write_all(fd_, kHeader, path_);
        valid_length = kHeader.size();
    } else if (::ftruncate(fd_, static_cast<off_t>(valid_length)) != 0) {
        fail("cannot truncate", path_);
    }
    if (::lseek(fd_, static_cast<off_t>(valid_length), SEEK_SET) < 0) fail("cannot seek", path_);
    ::fsync(fd_);
    sync_dir(path_.parent_path());
}

void Writer::append(const std::vector<Frame>& frames) {
    if (frames.empty()) return;
    std::string buffer;
    for (const auto& f : frames) buffer += encode_frame(f.seq, f.payload);
    write_all(fd_, buffer, path_);
    if (::fsync(fd_) != 0) fail("cannot sync", path_);
}

void Writer::reset() { open_fd(0); }

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (fd < 0) fail("cannot create", tmp);
    write_all(fd, content, tmp);
    if (::fsync(fd) != 0) fail("cannot sync", tmp);
    ::close(fd);
    std::filesystem::rename(tmp, path);
    sync_dir(path.parent_path());
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace olac::journal
