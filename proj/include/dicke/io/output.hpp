// output.hpp — staged output files committed together or not at all

#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

namespace dicke::io {

namespace fs = std::filesystem;

/// Directory for staging files: DICKE_SCRATCH if set, else the destination's own directory.
inline fs::path scratch_directory(const fs::path& destination) {
    if (const char* env = std::getenv("DICKE_SCRATCH"); env && *env) return fs::path(env);
    const auto parent = destination.parent_path();
    return parent.empty() ? fs::path(".") : parent;
}

/// Throws std::invalid_argument naming `key` when `path` cannot be created.
inline void require_writable(const fs::path& path, const std::string& key) {
    if (path.empty()) throw std::invalid_argument("invalid '" + key + "': empty path");
    const auto parent = path.parent_path().empty() ? fs::path(".") : path.parent_path();
    std::error_code ec;
    if (!fs::is_directory(parent, ec))
        throw std::invalid_argument("invalid '" + key + "': directory " + parent.string() + " does not exist");
    if (fs::is_directory(path, ec)) throw std::invalid_argument("invalid '" + key + "': " + path.string() + " is a directory");
}

/// Files are written to temporaries and only renamed into place by commit().
/// Anything not committed (including on exceptions) is removed by the destructor.
class OutputSet {
public:
    OutputSet() = default;
    OutputSet(const OutputSet&) = delete;
    OutputSet& operator=(const OutputSet&) = delete;
    ~OutputSet() { discard(); }

    std::ostream& open(const fs::path& destination) {
        auto& f = files_.emplace_back();
        f.destination = destination;
        const auto dir = scratch_directory(destination);
        f.temp = dir / (destination.filename().string() + ".tmp" + std::to_string(counter_++) + "." +
                        std::to_string(reinterpret_cast<std::uintptr_t>(this) & 0xffffff));
        f.stream = std::make_unique<std::ofstream>(f.temp, std::ios::binary | std::ios::trunc);
        if (!*f.stream) throw std::runtime_error("cannot open " + f.temp.string() + " for writing");
        return *f.stream;
    }

    std::vector<fs::path> destinations() const {
        std::vector<fs::path> out;
        for (const auto& f : files_) out.push_back(f.destination);
        return out;
    }

    void commit() {
        for (auto& f : files_) {
            f.stream->flush();
            if (!*f.stream) throw std::runtime_error("write failed for " + f.destination.string());
            f.stream->close();
        }
        std::vector<fs::path> done;
        try {
            for (auto& f : files_) {
                std::error_code ec;
                fs::rename(f.temp, f.destination, ec);
                if (ec) {
                    // scratch on another filesystem
                    fs::copy_file(f.temp, f.destination, fs::copy_options::overwrite_existing);
                    fs::remove(f.temp);
                }
                done.push_back(f.destination);
            }
        } catch (...) {
            std::error_code ec;
            for (const auto& p : done) fs::remove(p, ec);
            throw;
        }
        files_.clear();
    }

    void discard() noexcept {
        for (auto& f : files_) {
            if (f.stream) f.stream->close();
            std::error_code ec;
            fs::remove(f.temp, ec);
        }
        files_.clear();
    }

private:
    struct Staged {
        fs::path destination;
        fs::path temp;
        std::unique_ptr<std::ofstream> stream;
    };
    std::vector<Staged> files_;
    int counter_{0};
};

} // namespace dicke::io
