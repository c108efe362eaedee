#include "vereval/util/files.hpp"

#include "vereval/errors.hpp"

#include <fmt/format.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <vector>

namespace vereval::util {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(fmt::format("cannot open '{}': {}", path.string(), std::strerror(errno)));
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) {
        throw IoError(fmt::format("read failed for '{}'", path.string()));
    }
    return std::move(ss).str();
}

namespace {
std::atomic<unsigned> g_tmp_counter{0};
}

AtomicFileWriter::AtomicFileWriter(fs::path path) : path_(std::move(path)) {
    tmp_ = path_;
    tmp_ += fmt::format(".tmp.{}.{}", ::getpid(), g_tmp_counter++);
    out_.open(tmp_, std::ios::binary | std::ios::trunc);
    if (!out_) {
        throw IoError(fmt::format("cannot open '{}' for writing: {}", tmp_.string(), std::strerror(errno)));
    }
}

AtomicFileWriter::~AtomicFileWriter() {
    if (!committed_) {
        out_.close();
        std::error_code ec;
        fs::remove(tmp_, ec);
    }
}

void AtomicFileWriter::commit() {
    out_.flush();
    if (!out_) {
        throw IoError(fmt::format("write failed for '{}'", tmp_.string()));
    }
    out_.close();
    std::error_code ec;
    fs::rename(tmp_, path_, ec);
    if (ec) {
        throw IoError(fmt::format("cannot rename '{}' to '{}': {}", tmp_.string(), path_.string(), ec.message()));
    }
    committed_ = true;
}

void write_file_atomic(const fs::path& path, std::string_view content) {
    AtomicFileWriter w(path);
    w.stream().write(content.data(), static_cast<std::streamsize>(content.size()));
    w.commit();
}

ScratchDir::ScratchDir(const fs::path& root, std::string_view prefix) {
    std::error_code ec;
    fs::create_directories(root, ec);
    std::string templ = (root / (std::string(prefix) + "XXXXXX")).string();
    std::vector<char> buf(templ.begin(), templ.end());
    buf.push_back('\0');
    if (::mkdtemp(buf.data()) == nullptr) {
        throw IoError(fmt::format("mkdtemp under '{}' failed: {}", root.string(), std::strerror(errno)));
    }
    path_ = buf.data();
}

ScratchDir::~ScratchDir() {
    if (keep_ || path_.empty()) return;
    std::error_code ec;
    fs::remove_all(path_, ec);
}

}  // namespace vereval::util
