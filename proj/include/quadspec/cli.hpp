#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "quadspec/io.hpp"

namespace quadspec::cli {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr std::uint64_t kDefaultSeed = 20240901;

/// Exit codes of run().
enum ExitCode : int { kSuccess = 0, kInputFailure = 2, kNumericalFailure = 3 };

/**
 * Entry point of the `quadspec` tool; args excludes the program name.
 * Subcommands: analyze, spectrum, oracle, probe, wick, gallery. Every run
 * writes manifest.json under --out.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct GalleryReport {
    std::string name;
    std::string csv;      ///< written to <name>.csv
    std::string text;     ///< human-readable table
    io::Json summary;
    bool ok = true;
};

/// One of k0-table, kfp, davies, omega-regions. Throws InputError otherwise.
GalleryReport gallery(const std::string& name);

}  // namespace quadspec::cli
