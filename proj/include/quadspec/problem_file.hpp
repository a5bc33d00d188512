#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quadspec/io.hpp"
#include "quadspec/resolvent_probe.hpp"

namespace quadspec {

struct SpectrumSettings {
    double radius = 8.0;
};

struct OracleSettings {
    int N = 32;
    double h = 1.0;
    std::optional<Complex> sigma_min_at;  ///< report sigma_min(A - z) instead of eigenvalues
    bool binary = false;                  ///< also write the matrix container
};

struct ProbeSettings {
    double C = 4.0;
    double C0 = 0.5;
    int N = 32;
    int radii = 8;
    int angles = 16;
    std::vector<double> hs{0.05, 0.02, 0.01};
    bool heatmap = true;
};

/**
 * Parsed run configuration.
 *
 * JSON layout (every key optional except where noted, unknown keys rejected):
 *   format_version  1
 *   symbols         {name: "expr" | {"expr": "...", "n": n} | {"n", "Q_re", "Q_im"}}  (required)
 *   problem         {points: [{X, symbol, p1}], h: number | [numbers], perturbation: "expr"}
 *   spectrum        {radius}
 *   oracle          {N, h, sigma_min: [re, im], binary}
 *   probe           {C, C0, N, radii, angles, h: [...], heatmap}
 *   output          {dir}
 *   seed            unsigned integer
 *
 * A bare matrix symbol {"n", "Q_re", "Q_im"} or a plain-text expression is
 * read as a file with one symbol named "q".
 */
struct ProblemFile {
    int format_version = 1;
    std::vector<std::pair<std::string, PolynomialSymbol>> symbols;
    std::optional<ModelProblem> problem;
    std::vector<double> h_ladder;
    SpectrumSettings spectrum;
    OracleSettings oracle;
    ProbeSettings probe;
    std::optional<std::string> output_dir;
    std::optional<std::uint64_t> seed;
    /// Normalized echo of the configuration, for the manifest.
    io::Json echo;

    const PolynomialSymbol& primary_symbol() const { return symbols.front().second; }
    /// The problem section, or a single well at the origin built from the
    /// first symbol with p1 = 0.
    ModelProblem model_problem() const;
};

/// Throws InputError naming the offending key.
ProblemFile parse_problem_text(const std::string& text);
ProblemFile load_problem_file(const std::filesystem::path& path);

}  // namespace quadspec
