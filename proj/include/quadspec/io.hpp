#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "quadspec/singular_space.hpp"
#include "quadspec/wick.hpp"

namespace quadspec::io {

using Json = nlohmann::ordered_json;

/// Shortest round-trip text for a double ("%.17g").
std::string num(double v);

std::string read_text(const std::filesystem::path& path);
/// Creates parent directories as needed. Throws InputError on failure.
void write_text(const std::filesystem::path& path, const std::string& content);

/// {"n": n, "Q_re": [[...]], "Q_im": [[...]]}
Json to_json(const QuadraticSymbol& q);
/// Inverse of to_json; Q_im may be omitted. Throws InputError on bad shape.
QuadraticSymbol quadratic_from_json(const Json& j);

/// d, k0 (null when not reached), partial_dims, elliptic, margin, basis (row-major).
Json to_json(const SingularSpaceReport& report);

Json to_json(const RealMatrix& m);

/// Minimal CSV builder: one header, rows of pre-formatted fields.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
    void add(std::vector<std::string> row);
    std::size_t rows() const { return rows_.size(); }
    std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Byte value of one heat-map pixel: -log10(sigma) clamped to [0, 8], scaled to 0..255.
unsigned char heat_byte(double sigma);
/// "P5\n<width> <height>\n255\n" followed by row-major bytes.
std::string pgm(const std::vector<double>& sigma, int width, int height);

/// uint64 rows, uint64 cols, then row-major (re, im) pairs; all little-endian.
std::string matrix_binary(const ComplexMatrix& A);
ComplexMatrix matrix_from_binary(const std::string& bytes);
/// row, col, re, im
std::string matrix_csv(const ComplexMatrix& A);

/// x, re_u, im_u; the x column must be a symmetric uniform grid.
wick::GridFunction grid_function_from_csv(const std::string& text);
std::string grid_function_csv(const wick::GridFunction& u);

}  // namespace quadspec::io
