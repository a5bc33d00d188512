#include "quadspec/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace quadspec::io {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw InputError("cannot create directory " + path.parent_path().string());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << content;
}

Json to_json(const RealMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const QuadraticSymbol& q) {
    Json j;
    j["n"] = q.n();
    j["Q_re"] = to_json(q.real_matrix());
    j["Q_im"] = to_json(q.imag_matrix());
    return j;
}

namespace {

RealMatrix matrix_field(const Json& j, const char* key, int dim) {
    const auto& m = j.at(key);
    if (!m.is_array() || static_cast<int>(m.size()) != dim) {
        throw InputError(std::string(key) + " must be a " + std::to_string(dim) + "x" + std::to_string(dim) + " array");
    }
    RealMatrix out(dim, dim);
    for (int r = 0; r < dim; ++r) {
        const auto& row = m[r];
        if (!row.is_array() || static_cast<int>(row.size()) != dim) {
            throw InputError(std::string(key) + " row " + std::to_string(r) + " has the wrong length");
        }
        for (int c = 0; c < dim; ++c) {
            if (!row[c].is_number()) throw InputError(std::string(key) + " entries must be numbers");
            out(r, c) = row[c].get<double>();
        }
    }
    return out;
}

}  // namespace

QuadraticSymbol quadratic_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("Q_re")) {
        throw InputError("matrix symbol needs keys n and Q_re");
    }
    for (const auto& [key, _] : j.items()) {
        if (key != "n" && key != "Q_re" && key != "Q_im") throw InputError("unknown key in matrix symbol: " + key);
    }
    if (!j["n"].is_number_integer() || j["n"].get<int>() < 1) throw InputError("n must be a positive integer");
    const int dim = 2 * j["n"].get<int>();
    const RealMatrix re = matrix_field(j, "Q_re", dim);
    const RealMatrix im = j.contains("Q_im") ? matrix_field(j, "Q_im", dim) : RealMatrix::Zero(dim, dim);
    return QuadraticSymbol(re, im);
}

Json to_json(const SingularSpaceReport& report) {
    Json j;
    j["d"] = report.dim;
    j["k0"] = report.k0 ? Json(*report.k0) : Json(nullptr);
    j["partial_dims"] = report.partial_dims;
    if (report.elliptic) {
        j["elliptic_on_S"] = report.elliptic->elliptic;
        j["ellipticity_margin"] = report.elliptic->margin;
    }
    j["basis"] = to_json(report.basis);
    return j;
}

void CsvTable::add(std::vector<std::string> row) {
    if (row.size() != header_.size()) throw std::logic_error("CSV row width differs from header");
    rows_.push_back(std::move(row));
}

std::string CsvTable::str() const {
    std::string out;
    auto line = [&](const std::vector<std::string>& fields) {
        for (std::size_t k = 0; k < fields.size(); ++k) {
            if (k) out += ',';
            out += fields[k];
        }
        out += '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return out;
}

unsigned char heat_byte(double sigma) {
    double v = sigma > 0.0 ? -std::log10(sigma) : 8.0;
    if (!std::isfinite(v)) v = 8.0;
    v = std::clamp(v, 0.0, 8.0);
    return static_cast<unsigned char>(std::lround(v / 8.0 * 255.0));
}

std::string pgm(const std::vector<double>& sigma, int width, int height) {
    if (width < 1 || height < 1 || sigma.size() != static_cast<std::size_t>(width) * height) {
        throw InputError("heat map size does not match its samples");
    }
    std::string out = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
    for (double s : sigma) out.push_back(static_cast<char>(heat_byte(s)));
    return out;
}

namespace {

template <typename T>
void put_le(std::string& out, T value) {
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
    out.append(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get_le(const std::string& in, std::size_t& pos) {
    if (pos + sizeof(T) > in.size()) throw InputError("binary matrix is truncated");
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, in.data() + pos, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
    pos += sizeof(T);
    T value;
    std::memcpy(&value, bytes, sizeof(T));
    return value;
}

}  // namespace

std::string matrix_binary(const ComplexMatrix& A) {
    std::string out;
    put_le<std::uint64_t>(out, static_cast<std::uint64_t>(A.rows()));
    put_le<std::uint64_t>(out, static_cast<std::uint64_t>(A.cols()));
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        for (Eigen::Index j = 0; j < A.cols(); ++j) {
            put_le<double>(out, A(i, j).real());
            put_le<double>(out, A(i, j).imag());
        }
    }
    return out;
}

ComplexMatrix matrix_from_binary(const std::string& bytes) {
    std::size_t pos = 0;
    const auto rows = get_le<std::uint64_t>(bytes, pos);
    const auto cols = get_le<std::uint64_t>(bytes, pos);
    if (rows * cols * 16 + 16 != bytes.size()) throw InputError("binary matrix size does not match its header");
    ComplexMatrix A(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        for (Eigen::Index j = 0; j < A.cols(); ++j) {
            const double re = get_le<double>(bytes, pos);
            const double im = get_le<double>(bytes, pos);
            A(i, j) = Complex(re, im);
        }
    }
    return A;
}

std::string matrix_csv(const ComplexMatrix& A) {
    CsvTable t({"row", "col", "re", "im"});
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        for (Eigen::Index j = 0; j < A.cols(); ++j) {
            t.add({std::to_string(i), std::to_string(j), num(A(i, j).real()), num(A(i, j).imag())});
        }
    }
    return t.str();
}

wick::GridFunction grid_function_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<double> xs;
    std::vector<Complex> us;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (lineno == 1 && line.find_first_of("xX") != std::string::npos) continue;  // header
        std::istringstream fields(line);
        std::string a, b, c;
        if (!std::getline(fields, a, ',') || !std::getline(fields, b, ',') || !std::getline(fields, c, ',')) {
            throw InputError("grid function line " + std::to_string(lineno) + " needs x, re_u, im_u");
        }
        try {
            xs.push_back(std::stod(a));
            us.emplace_back(std::stod(b), std::stod(c));
        } catch (const std::exception&) {
            throw InputError("grid function line " + std::to_string(lineno) + " is not numeric");
        }
    }
    if (xs.size() < 16) throw InputError("grid function needs at least 16 samples");
    const wick::UniformGrid grid{-xs.front(), static_cast<int>(xs.size())};
    if (!(grid.L > 0.0)) throw InputError("grid function x must start at -L < 0");
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (std::abs(xs[k] - grid.at(static_cast<int>(k))) > 1e-9 * grid.L) {
            throw InputError("grid function x column is not a symmetric uniform grid (line " +
                             std::to_string(k + 2) + ")");
        }
    }
    wick::GridFunction u{grid, std::move(us)};
    u.validate();
    return u;
}

std::string grid_function_csv(const wick::GridFunction& u) {
    CsvTable t({"x", "re_u", "im_u"});
    for (int k = 0; k < u.grid.count; ++k) {
        t.add({num(u.grid.at(k)), num(u.values[k].real()), num(u.values[k].imag())});
    }
    return t.str();
}

}  // namespace quadspec::io
