#include "quadspec/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <omp.h>

#include "quadspec/hermite_galerkin.hpp"
#include "quadspec/models.hpp"
#include "quadspec/problem_file.hpp"
#include "quadspec/wick.hpp"

namespace quadspec::cli {

namespace fs = std::filesystem;
using io::Json;
using io::num;

namespace {

constexpr double kOracleMatchTolerance = 1e-4;

std::vector<double> split_numbers(const std::string& text, const std::string& flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InputError(flag + ": '" + item + "' is not a number");
        }
    }
    if (out.empty()) throw InputError(flag + " needs at least one value");
    return out;
}

std::string label_text(const std::vector<std::vector<int>>& labels) {
    std::string s;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) s += '|';
        for (std::size_t k = 0; k < labels[i].size(); ++k) {
            if (k) s += ':';
            s += std::to_string(labels[i][k]);
        }
    }
    return s;
}

Json generators_json(const SpectralLattice& lattice) {
    Json g = Json::array();
    for (const auto& gen : lattice.generators) g.push_back({{"mu", {gen.mu.real(), gen.mu.imag()}}, {"r", gen.r}});
    return g;
}

std::string fixed(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string complex_text(Complex z) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%+.6f%+.6fi", z.real(), z.imag());
    return buf;
}

// Lattice values against Galerkin cluster centroids at N and 2N.
struct OracleComparison {
    io::CsvTable table{{"re", "im", "multiplicity_label", "N_jk", "oracle_re", "oracle_im", "error", "drift", "spread"}};
    std::string text;
    double max_error = 0.0;
    bool ok = true;
};

OracleComparison compare_with_oracle(const std::vector<SpectrumValue>& values, const PolynomialSymbol& sym, int N) {
    std::vector<std::pair<Complex, int>> targets;
    for (const auto& v : values) targets.emplace_back(v.value, v.multiplicity);
    const auto matches = match_clusters(sym, N, 1.0, targets, kOracleMatchTolerance);
    OracleComparison c;
    std::ostringstream t;
    t << "lattice value                 N_jk  oracle centroid               error     drift\n";
    for (std::size_t k = 0; k < values.size(); ++k) {
        const auto& v = values[k];
        const auto& m = matches[k];
        const bool matched = m.stable && m.error <= kOracleMatchTolerance;
        c.ok = c.ok && matched;
        c.max_error = std::max(c.max_error, m.error);
        c.table.add({num(v.value.real()), num(v.value.imag()), label_text(v.labels), std::to_string(v.multiplicity),
                     num(m.centroid.real()), num(m.centroid.imag()), num(m.error), num(m.drift), num(m.spread)});
        char line[160];
        std::snprintf(line, sizeof line, "%-28s  %4d  %-28s  %.2e  %.2e%s\n", complex_text(v.value).c_str(),
                      v.multiplicity, complex_text(m.centroid).c_str(), m.error, m.drift, matched ? "" : "  UNMATCHED");
        t << line;
    }
    c.text = t.str();
    return c;
}

GalleryReport gallery_k0_table() {
    GalleryReport r{"k0-table", {}, {}, {}, true};
    io::CsvTable table({"family", "n", "p", "expected_k0", "computed_k0", "match", "symbol"});
    std::ostringstream t;
    t << "family  n  p  expected  computed\n";
    int matched = 0;
    const auto cases = models::k0_table_cases();
    for (const auto& c : cases) {
        const auto k0 = k0_index(hamilton_map(parse_quadratic(c.expr, c.n)));
        const bool ok = k0 && *k0 == c.expected_k0;
        matched += ok;
        r.ok = r.ok && ok;
        const std::string computed = k0 ? std::to_string(*k0) : "none";
        table.add({c.family, std::to_string(c.n), std::to_string(c.p), std::to_string(c.expected_k0), computed,
                   ok ? "true" : "false", "\"" + c.expr + "\""});
        char line[96];
        std::snprintf(line, sizeof line, "%-6s  %d  %d  %8d  %8s%s\n", c.family.c_str(), c.n, c.p, c.expected_k0,
                      computed.c_str(), ok ? "" : "  MISMATCH");
        t << line;
    }
    r.csv = table.str();
    r.text = t.str();
    r.summary = {{"cases", cases.size()}, {"matched", matched}};
    return r;
}

GalleryReport gallery_lattice_vs_oracle(const std::string& name, const std::string& expr, int n, double radius,
                                        int N) {
    GalleryReport r{name, {}, {}, {}, true};
    const QuadraticSymbol q = parse_quadratic(expr, n);
    const auto report = analyze(q);
    const auto lattice = quadratic_lattice(q);
    const auto values = spectrum_with_multiplicity(lattice, radius);
    auto cmp = compare_with_oracle(values, PolynomialSymbol::from_quadratic(q), N);
    r.ok = cmp.ok;
    r.csv = cmp.table.str();
    std::ostringstream t;
    t << "symbol: " << expr << "\n"
      << "d = " << report.dim << ", k0 = " << (report.k0 ? std::to_string(*report.k0) : "none")
      << ", elliptic on S = " << (report.elliptic && report.elliptic->elliptic ? "yes" : "no") << "\n"
      << "Galerkin oracle: centroids of N_jk eigenvalues at N = " << N << " and " << 2 * N << " per axis, |z| < " << radius
      << "\n"
      << cmp.text;
    r.text = t.str();
    r.summary = {{"symbol", expr},
                 {"d", report.dim},
                 {"k0", report.k0 ? Json(*report.k0) : Json(nullptr)},
                 {"generators", generators_json(lattice)},
                 {"lattice_values", values.size()},
                 {"oracle_N", N},
                 {"max_error", cmp.max_error},
                 {"all_matched", cmp.ok}};
    return r;
}

GalleryReport gallery_davies() {
    auto r = gallery_lattice_vs_oracle("davies", models::davies(), 1, 8.0, 32);
    // Non-normality: sigma_min far below the spectral distance on the real axis.
    const auto A = assemble(parse_polynomial(models::davies(), 1), 64).A;
    const Complex z = 4.0;
    double dist = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 8; ++k) dist = std::min(dist, std::abs(z - std::polar(2.0 * k + 1.0, std::numbers::pi / 4)));
    const double s = min_singular_value(A, z);
    r.summary["pseudospectrum_probe"] = {{"z", {z.real(), z.imag()}}, {"sigma_min", s}, {"spectral_distance", dist}};
    r.text += "sigma_min(A - 4) = " + fixed(s, 8) + " vs dist(4, spectrum) = " + fixed(dist, 4) + "\n";
    return r;
}

GalleryReport gallery_omega_regions() {
    GalleryReport r{"omega-regions", {}, {}, {}, true};
    io::CsvTable table({"k0", "curve", "index", "re", "im"});
    const double h = 0.01;
    constexpr int kPoints = 200;
    constexpr int kArc = 64;
    Json regions = Json::array();
    for (int k0 = 1; k0 <= 3; ++k0) {
        const OmegaRegion region{k0, 4.0, 0.5, h};
        const double r0 = region.C * region.h;
        // Re z = bound(|z|)/C, |z| in [Ch, C0]: upper and lower branches.
        for (int i = 0; i < kPoints; ++i) {
            const double rad = r0 * std::pow(region.C0 / r0, static_cast<double>(i) / (kPoints - 1));
            const double x = std::max(region.real_part_limit(rad), -rad);
            const double y = std::sqrt(std::max(rad * rad - x * x, 0.0));
            table.add({std::to_string(k0), "upper", std::to_string(i), num(x), num(y)});
            table.add({std::to_string(k0), "lower", std::to_string(i), num(x), num(-y)});
        }
        // Inner and outer circular arcs closing the region on the left.
        for (const auto& [curve, rad] : {std::pair{"inner_arc", r0}, std::pair{"outer_arc", region.C0}}) {
            const double c = std::clamp(region.real_part_limit(rad) / rad, -1.0, 1.0);
            const double t0 = std::acos(c);
            for (int i = 0; i < kArc; ++i) {
                const Complex z = std::polar(rad, t0 + (2.0 * (std::numbers::pi - t0)) * i / (kArc - 1));
                table.add({std::to_string(k0), curve, std::to_string(i), num(z.real()), num(z.imag())});
            }
        }
        regions.push_back({{"k0", k0}, {"real_part_limit_at_C0", region.real_part_limit(region.C0)}});
    }
    r.csv = table.str();
    r.text = "Omega_h boundary polylines for k0 = 1, 2, 3 at h = 0.01, C = 4, C0 = 0.5\n";
    r.summary = {{"h", h}, {"C", 4.0}, {"C0", 0.5}, {"regions", regions}};
    return r;
}

struct RunContext {
    fs::path out_dir;
    std::vector<std::string> artifacts;
    Json summary = Json::object();
    std::ostream* out = nullptr;

    void write(const std::string& name, const std::string& content) {
        io::write_text(out_dir / name, content);
        artifacts.push_back(name);
    }
};

int cmd_analyze(const ProblemFile& pf, RunContext& ctx) {
    Json reports = Json::object();
    auto& out = *ctx.out;
    for (const auto& [name, sym] : pf.symbols) {
        if (sym.degree() != 2 || sym.quadratic_part().norm() == 0.0) {
            out << name << ": not a quadratic form, skipped\n";
            continue;
        }
        QuadraticSymbol q;
        try {
            q = sym.to_quadratic();
        } catch (const InputError&) {
            out << name << ": not homogeneous of degree 2, skipped\n";
            continue;
        }
        const auto report = analyze(q);
        Json j = io::to_json(report);
        out << name << ": n = " << q.n() << ", d = " << report.dim
            << ", k0 = " << (report.k0 ? std::to_string(*report.k0) : "not reached") << ", partial_dims = [";
        for (std::size_t k = 0; k < report.partial_dims.size(); ++k) out << (k ? ", " : "") << report.partial_dims[k];
        out << "], elliptic_on_S = " << (report.elliptic->elliptic ? "true" : "false") << "\n";
        if (report.k0) {
            const RealMatrix G = subelliptic_gram(q, report.k0);
            const double min_eig = Eigen::SelfAdjointEigenSolver<RealMatrix>(G).eigenvalues().minCoeff();
            j["subelliptic_gram_min_eigenvalue"] = min_eig;
        }
        if (report.dim > 0 && report.elliptic->elliptic) {
            try {
                const auto split = symplectic_splitting(q, report);
                j["splitting"] = {{"epsilon0", split.epsilon0 ? Json(*split.epsilon0) : Json(nullptr)},
                                  {"frequencies", split.frequencies}};
            } catch (const NumericalError& e) {
                j["splitting"] = {{"error", e.what()}};
            }
        }
        reports[name] = std::move(j);
    }
    if (reports.empty()) throw InputError("no quadratic symbol to analyze");
    if (pf.problem) {
        std::vector<std::optional<int>> ks;
        for (const auto& p : pf.problem->points) ks.push_back(k0_index(hamilton_map(p.q)));
        const auto k0 = combined_k0(ks);
        out << "problem: " << pf.problem->points.size()
            << " point(s), k0 = " << (k0 ? std::to_string(*k0) : "not reached") << "\n";
        ctx.summary["problem_k0"] = k0 ? Json(*k0) : Json(nullptr);
    }
    ctx.write("analyze.json", reports.dump(2) + "\n");
    ctx.summary["symbols"] = reports.size();
    return kSuccess;
}

int cmd_spectrum(const ProblemFile& pf, double radius, RunContext& ctx) {
    if (!(radius > 0.0)) throw InputError("--radius must be positive");
    const ModelProblem problem = pf.model_problem();
    io::CsvTable table({"re", "im", "multiplicity_label", "N_jk", "point", "collision"});
    auto& out = *ctx.out;
    int collisions = 0;
    Json points = Json::array();
    for (std::size_t j = 0; j < problem.points.size(); ++j) {
        const auto& p = problem.points[j];
        const auto lattice = quadratic_lattice(p.q);
        const auto values = spectrum_with_multiplicity(lattice, radius, -p.p1);
        out << "point " << j << ": " << lattice.generators.size() << " generator(s)";
        for (const auto& g : lattice.generators) out << "  mu = " << complex_text(g.mu) << " (r = " << g.r << ")";
        out << "\n";
        for (const auto& v : values) {
            const Complex z = v.value + p.p1;
            collisions += v.collision();
            table.add({num(z.real()), num(z.imag()), label_text(v.labels), std::to_string(v.multiplicity),
                       std::to_string(j), v.collision() ? "true" : "false"});
            out << "  " << complex_text(z) << "  N = " << v.multiplicity << (v.collision() ? "  (label collision)" : "")
                << "\n";
        }
        points.push_back({{"generators", generators_json(lattice)},
                          {"values", values.size()},
                          {"count_consistent", lattice.count_consistent}});
    }
    ctx.write("spectrum.csv", table.str());
    ctx.summary = {{"radius", radius}, {"points", points}, {"rows", table.rows()}, {"collisions", collisions}};
    return kSuccess;
}

int cmd_oracle(const ProblemFile& pf, const OracleSettings& s, RunContext& ctx) {
    const auto G = assemble(pf.primary_symbol(), s.N, s.h);
    auto& out = *ctx.out;
    out << "Galerkin matrix: n = " << G.n << ", N = " << G.N << ", h = " << G.h << ", dimension " << G.A.rows() << "\n";
    if (s.binary) ctx.write("matrix.bin", io::matrix_binary(G.A));
    if (G.A.rows() <= 64) ctx.write("matrix.csv", io::matrix_csv(G.A));
    ctx.summary = {{"N", s.N}, {"h", s.h}, {"dimension", G.A.rows()}};
    if (s.sigma_min_at) {
        const Complex z = *s.sigma_min_at;
        const double smin = min_singular_value(G.A, z);
        io::CsvTable t({"re", "im", "sigma_min"});
        t.add({num(z.real()), num(z.imag()), num(smin)});
        ctx.write("sigma_min.csv", t.str());
        out << "sigma_min(A - " << complex_text(z) << ") = " << num(smin) << "\n";
        ctx.summary["sigma_min"] = smin;
        return kSuccess;
    }
    const auto eig = eigenvalues(G.A);
    io::CsvTable t({"index", "re", "im"});
    for (std::size_t k = 0; k < eig.size(); ++k) t.add({std::to_string(k), num(eig[k].real()), num(eig[k].imag())});
    ctx.write("eigenvalues.csv", t.str());
    for (std::size_t k = 0; k < std::min<std::size_t>(eig.size(), 8); ++k) out << "  " << complex_text(eig[k]) << "\n";
    ctx.summary["eigenvalues"] = eig.size();
    return kSuccess;
}

int cmd_probe(const ProblemFile& pf, const ProbeSettings& s, RunContext& ctx) {
    const ModelProblem problem = pf.model_problem();
    const int k0 = problem_k0(problem);
    auto& out = *ctx.out;
    io::CsvTable table({"h", "re", "im", "sigma_min", "bound", "ratio", "converged"});
    Json per_h = Json::array();
    double c0 = std::numeric_limits<double>::infinity();
    int status = kSuccess;
    for (std::size_t i = 0; i < s.hs.size(); ++i) {
        const OmegaRegion region{k0, s.C, s.C0, s.hs[i]};
        const auto res = subelliptic_probe(problem, region, ProbeGrid{s.radii, s.angles}, s.N);
        for (const auto& p : res.samples) {
            table.add({num(s.hs[i]), num(p.z.real()), num(p.z.imag()), num(p.sigma_min), num(p.bound), num(p.ratio),
                       p.converged ? "1" : "0"});
        }
        if (s.heatmap) {
            std::vector<double> sig;
            for (const auto& p : res.samples) sig.push_back(p.sigma_min);
            ctx.write("probe_h" + std::to_string(i) + ".pgm", io::pgm(sig, s.angles, s.radii));
        }
        out << "h = " << s.hs[i] << ": k0 = " << k0 << ", min ratio = " << fixed(res.min_ratio) << " over "
            << res.converged_count() << "/" << res.samples.size() << " converged points\n";
        if (res.converged_count() == 0) {
            out << "  no grid point passed the truncation gate; raise --N\n";
            status = kNumericalFailure;
        }
        if (res.witness) {
            out << "  zero ratio at z = " << complex_text(*res.witness) << "\n";
            status = kNumericalFailure;
        }
        c0 = std::min(c0, res.min_ratio);
        per_h.push_back({{"h", s.hs[i]},
                         {"min_ratio", res.min_ratio},
                         {"converged", res.converged_count()},
                         {"samples", res.samples.size()},
                         {"symbol_hash", res.symbol_hash}});
    }
    ctx.write("probe.csv", table.str());
    out << "common lower constant c0 = " << fixed(c0) << "\n";
    ctx.summary = {{"k0", k0}, {"C", s.C}, {"C0", s.C0}, {"N", s.N}, {"per_h", per_h}, {"c0", c0}};
    return status;
}

int cmd_wick(bool demo, const std::string& input, const std::string& symbol, bool example, std::uint64_t seed,
             RunContext& ctx) {
    auto& out = *ctx.out;
    if (!demo && input.empty() && !example) throw InputError("wick needs --demo, --input or --example");
    int status = kSuccess;
    if (example) {
        const auto u = wick::hermite_combination({1.0, Complex(0.0, 0.5)}, wick::UniformGrid{8.0, 512});
        ctx.write("example_u.csv", io::grid_function_csv(u));
    }
    if (demo) {
        const auto rows = wick::run_demo(seed);
        io::CsvTable t({"check", "value", "threshold", "pass"});
        int failures = 0;
        for (const auto& r : rows) {
            char line[128];
            std::snprintf(line, sizeof line, "%-30s %14.6e  (threshold %9.2e)  %s\n", r.name.c_str(), r.value, r.threshold,
                          r.pass ? "PASS" : "FAIL");
            out << line;
            t.add({r.name, num(r.value), num(r.threshold), r.pass ? "true" : "false"});
            failures += !r.pass;
        }
        ctx.write("wick_demo.csv", t.str());
        ctx.summary["demo_checks"] = rows.size();
        ctx.summary["demo_failures"] = failures;
        if (failures) status = kNumericalFailure;
    }
    if (!input.empty()) {
        const auto u = io::grid_function_from_csv(io::read_text(input));
        const wick::UniformGrid phase{8.0, 128};
        const auto W = wick::wave_packet_transform(u, phase);
        io::CsvTable t({"y", "eta", "re_Wu", "im_Wu"});
        for (int p = 0; p < phase.count; ++p) {
            for (int q = 0; q < phase.count; ++q) {
                t.add({num(phase.at(p)), num(phase.at(q)), num(W.at(p, q).real()), num(W.at(p, q).imag())});
            }
        }
        ctx.write("wave_packet.csv", t.str());
        out << "||u||^2 = " << num(u.norm_sq()) << ", ||Wu||^2 = " << num(W.norm_sq()) << "\n";
        ctx.summary["u_norm_sq"] = u.norm_sq();
        ctx.summary["Wu_norm_sq"] = W.norm_sq();
        if (!symbol.empty()) {
            const auto a = parse_polynomial(symbol, 1);
            if (a.n() != 1) throw InputError("--symbol must be a symbol on R^2");
            const auto samples = wick::sample_symbol(
                [&](double y, double eta) {
                    PhasePoint X(2);
                    X << y, eta;
                    return a(X);
                },
                phase);
            const Complex e = wick::wick_expectation(samples, W);
            out << "(a^Wick u, u) = " << complex_text(e) << "\n";
            ctx.summary["wick_expectation"] = {e.real(), e.imag()};
        }
    }
    return status;
}

std::uint64_t env_jobs() {
    if (const char* v = std::getenv("QUADSPEC_JOBS")) {
        try {
            const long j = std::stol(v);
            if (j > 0) return static_cast<std::uint64_t>(j);
        } catch (const std::exception&) {
        }
        throw InputError(std::string("QUADSPEC_JOBS must be a positive integer, got '") + v + "'");
    }
    return 0;
}

}  // namespace

GalleryReport gallery(const std::string& name) {
    if (name == "k0-table") return gallery_k0_table();
    if (name == "kfp") return gallery_lattice_vs_oracle("kfp", models::kfp(2), 2, 8.0, 10);
    if (name == "davies") return gallery_davies();
    if (name == "omega-regions") return gallery_omega_regions();
    throw InputError("unknown gallery '" + name + "' (expected k0-table, kfp, davies or omega-regions)");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spectra and resolvent estimates of non-selfadjoint quadratic operators", "quadspec"};
    // --h is the semiclassical parameter, so help is long-form only.
    app.set_help_flag("--help", "Print this help message and exit");
    app.fallthrough();
    app.require_subcommand(1);
    std::string out_dir;
    int jobs = 0;
    std::uint64_t seed = kDefaultSeed;
    auto* out_opt = app.add_option("--out", out_dir, "Artifact directory (default: quadspec-out)");
    auto* jobs_opt = app.add_option("--jobs", jobs, "Worker threads (default: QUADSPEC_JOBS or all cores)")
                         ->check(CLI::PositiveNumber);
    auto* seed_opt = app.add_option("--seed", seed, "Seed for randomized checks");

    std::string input;
    auto* analyze = app.add_subcommand("analyze", "Singular space, k0 and ellipticity of each symbol");
    analyze->add_option("file", input, "Symbol or problem file")->required();

    double radius = 8.0;
    auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of the quadratic operator(s) in a disc");
    spectrum->add_option("file", input, "Symbol or problem file")->required();
    auto* radius_opt = spectrum->add_option("--radius", radius, "Disc radius C");

    OracleSettings oracle_cli;
    std::string sigma_text;
    auto* oracle = app.add_subcommand("oracle", "Hermite-Galerkin matrix, its eigenvalues or sigma_min");
    oracle->add_option("file", input, "Symbol file")->required();
    auto* n_opt = oracle->add_option("--N", oracle_cli.N, "Basis functions per axis");
    auto* h_opt = oracle->add_option("--h", oracle_cli.h, "Semiclassical parameter");
    auto* eigs_flag = oracle->add_flag("--eigs", "Write eigenvalues (default)");
    auto* sigma_opt = oracle->add_option("--sigma-min", sigma_text, "re,im: report sigma_min(A - z)");
    eigs_flag->excludes(sigma_opt);
    auto* binary_flag = oracle->add_flag("--binary", oracle_cli.binary, "Also write matrix.bin");

    std::string hs_text;
    ProbeSettings probe_cli;
    auto* probe = app.add_subcommand("probe", "Subelliptic resolvent probe over the Omega_h grid");
    probe->add_option("file", input, "Problem file")->required();
    auto* probe_h = probe->add_option("--h", hs_text, "Comma-separated h ladder");
    auto* probe_C = probe->add_option("--C", probe_cli.C, "Region constant C");
    auto* probe_C0 = probe->add_option("--C0", probe_cli.C0, "Outer radius C0");
    auto* probe_N = probe->add_option("--N", probe_cli.N, "Basis functions per axis (also checked at 2N)");
    auto* probe_radii = probe->add_option("--radii", probe_cli.radii, "Radial grid size");
    auto* probe_angles = probe->add_option("--angles", probe_cli.angles, "Angular grid size");
    auto* no_heatmap = probe->add_flag("--no-heatmap", "Skip the PGM heat maps");

    bool demo = false;
    bool example = false;
    std::string wick_input;
    std::string wick_symbol;
    auto* wick_cmd = app.add_subcommand("wick", "Wave-packet transform and Wick calculus checks");
    wick_cmd->add_flag("--demo", demo, "Run the invariant suite");
    wick_cmd->add_option("--input", wick_input, "Grid function CSV (x, re_u, im_u)");
    wick_cmd->add_option("--symbol", wick_symbol, "Symbol a(x, xi) for (a^Wick u, u)");
    wick_cmd->add_flag("--example", example, "Write an example grid function");

    std::string gallery_name;
    auto* gallery_cmd = app.add_subcommand("gallery", "Built-in model reports");
    gallery_cmd->add_option("name", gallery_name, "k0-table, kfp, davies or omega-regions")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kInputFailure;
    }

    const auto start = std::chrono::steady_clock::now();
    RunContext ctx;
    ctx.out = &out;
    std::string command;
    for (auto* sub : app.get_subcommands()) command = sub->get_name();
    Json manifest;
    manifest["tool"] = "quadspec";
    manifest["version"] = kToolVersion;
    manifest["command"] = command;
    manifest["arguments"] = args;

    int status = kSuccess;
    std::string error_text;
    ProblemFile pf;
    try {
        if (*jobs_opt) {
            omp_set_num_threads(jobs);
        } else if (const auto j = env_jobs()) {
            jobs = static_cast<int>(j);
            omp_set_num_threads(jobs);
        }
        if (!input.empty()) {
            const std::string bytes = io::read_text(input);
            manifest["input"] = input;
            manifest["input_hash"] = symbol_hash(bytes);
            pf = parse_problem_text(bytes);
            manifest["config"] = pf.echo;
        }
        if (!*seed_opt && pf.seed) seed = *pf.seed;
        ctx.out_dir = *out_opt ? fs::path(out_dir) : pf.output_dir ? fs::path(*pf.output_dir) : fs::path("quadspec-out");
        manifest["seed"] = seed;
        manifest["jobs"] = jobs > 0 ? jobs : omp_get_max_threads();

        if (command == "analyze") {
            status = cmd_analyze(pf, ctx);
        } else if (command == "spectrum") {
            status = cmd_spectrum(pf, *radius_opt ? radius : pf.spectrum.radius, ctx);
        } else if (command == "oracle") {
            OracleSettings s = pf.oracle;
            if (*n_opt) s.N = oracle_cli.N;
            if (*h_opt) s.h = oracle_cli.h;
            if (*binary_flag) s.binary = true;
            if (*eigs_flag) s.sigma_min_at.reset();
            if (*sigma_opt) {
                const auto v = split_numbers(sigma_text, "--sigma-min");
                if (v.size() != 2) throw InputError("--sigma-min expects re,im");
                s.sigma_min_at = Complex(v[0], v[1]);
            }
            status = cmd_oracle(pf, s, ctx);
        } else if (command == "probe") {
            ProbeSettings s = pf.probe;
            if (*probe_h) s.hs = split_numbers(hs_text, "--h");
            if (*probe_C) s.C = probe_cli.C;
            if (*probe_C0) s.C0 = probe_cli.C0;
            if (*probe_N) s.N = probe_cli.N;
            if (*probe_radii) s.radii = probe_cli.radii;
            if (*probe_angles) s.angles = probe_cli.angles;
            if (*no_heatmap) s.heatmap = false;
            status = cmd_probe(pf, s, ctx);
        } else if (command == "wick") {
            status = cmd_wick(demo, wick_input, wick_symbol, example, seed, ctx);
        } else if (command == "gallery") {
            const auto r = gallery(gallery_name);
            ctx.write(r.name + ".csv", r.csv);
            out << r.text;
            ctx.summary = r.summary;
            ctx.summary["ok"] = r.ok;
            if (!r.ok) status = kNumericalFailure;
        }
    } catch (const AmbiguityError& e) {
        error_text = e.what();
        err << "error: " << e.what() << "\n"
            << "  reading without the boundary eigenvalue: " << e.without_boundary().generators.size()
            << " generator(s); with it: " << e.with_boundary().generators.size() << " generator(s)\n";
        status = kNumericalFailure;
    } catch (const InputError& e) {
        error_text = e.what();
        err << "error: " << e.what() << "\n";
        status = kInputFailure;
    } catch (const NumericalError& e) {
        error_text = e.what();
        err << "error: " << e.what() << "\n";
        status = kNumericalFailure;
    }

    if (ctx.out_dir.empty()) ctx.out_dir = *out_opt ? fs::path(out_dir) : fs::path("quadspec-out");
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    manifest["status"] = status == kSuccess ? "ok" : "failed";
    manifest["exit_code"] = status;
    if (!error_text.empty()) manifest["error"] = error_text;
    manifest["timings_s"] = {{"total", elapsed}};
    manifest["summary"] = ctx.summary;
    manifest["artifacts"] = ctx.artifacts;
    try {
        io::write_text(ctx.out_dir / "manifest.json", manifest.dump(2) + "\n");
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        if (status == kSuccess) status = kInputFailure;
    }
    return status;
}

}  // namespace quadspec::cli
