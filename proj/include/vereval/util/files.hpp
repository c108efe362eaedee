#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

namespace vereval::util {

namespace fs = std::filesystem;

/// Reads a whole file as raw bytes. Throws IoError.
std::string read_file(const fs::path& path);

/// Writes through a sibling temp file and renames over `path` on commit().
/// A writer destroyed without commit() removes the temp file.
class AtomicFileWriter {
public:
    explicit AtomicFileWriter(fs::path path);
    ~AtomicFileWriter();
    AtomicFileWriter(const AtomicFileWriter&) = delete;
    AtomicFileWriter& operator=(const AtomicFileWriter&) = delete;

    std::ostream& stream() { return out_; }
    void commit();

private:
    fs::path path_;
    fs::path tmp_;
    std::ofstream out_;
    bool committed_ = false;
};

void write_file_atomic(const fs::path& path, std::string_view content);

/// Private directory created under a root, removed on destruction unless kept.
class ScratchDir {
public:
    ScratchDir(const fs::path& root, std::string_view prefix);
    ~ScratchDir();
    ScratchDir(const ScratchDir&) = delete;
    ScratchDir& operator=(const ScratchDir&) = delete;

    const fs::path& path() const noexcept { return path_; }
    void keep(bool k = true) noexcept { keep_ = k; }

private:
    fs::path path_;
    bool keep_ = false;
};

}  // namespace vereval::util
