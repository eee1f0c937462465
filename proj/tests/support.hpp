#pragma once

#include "gigagap/io.hpp"

#include <filesystem>
#include <random>
#include <string>
#include <string_view>

namespace gigagap::test {

namespace fs = std::filesystem;

fs::path source_dir();
/// A directory under data/, e.g. "fixture-2019".
fs::path data_dir(std::string_view name);

/// Unique scratch directory, removed on destruction.
class TempDir {
public:
    explicit TempDir(std::string_view tag = "t");
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const fs::path& path() const noexcept { return path_; }
    fs::path operator/(std::string_view name) const { return path_ / name; }

private:
    fs::path path_;
};

std::string read_file(const fs::path& p);
void write_file(const fs::path& p, std::string_view text);
void copy_dir(const fs::path& from, const fs::path& to);
/// Replaces the first occurrence of `from`; fails the calling check if absent.
bool replace_once(const fs::path& file, std::string_view from, std::string_view to);

/// Loads a dataset that must validate; throws std::runtime_error with the report otherwise.
io::Dataset load_ok(const fs::path& dir);

struct RandomDatasetOptions {
    int max_countries = 3;
    int max_regions = 4;
    int max_localities = 5;
    /// Total enterprises are kept above this so every T3 tier is selectable.
    double min_enterprises = 1.2e6;
};

/// Writes a small valid dataset with feasible national coverage figures.
/// Cost data comes from the bundled defaults.
void write_random_dataset(std::mt19937_64& rng, const fs::path& dir, const RandomDatasetOptions& options = {});

} // namespace gigagap::test
