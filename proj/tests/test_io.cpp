#include <doctest.h>

#include "quadspec/io.hpp"
#include "quadspec/problem_file.hpp"

using namespace quadspec;

TEST_SUITE("io") {

TEST_CASE("heat map bytes") {
    CHECK(io::heat_byte(1.0) == 0);
    CHECK(io::heat_byte(10.0) == 0);
    CHECK(io::heat_byte(1e-8) == 255);
    CHECK(io::heat_byte(1e-12) == 255);
    CHECK(io::heat_byte(0.0) == 255);
    CHECK(io::heat_byte(1e-4) == 128);
    const std::string img = io::pgm({1.0, 1e-8, 1e-4, 0.1}, 2, 2);
    const std::string header = "P5\n2 2\n255\n";
    REQUIRE(img.size() == header.size() + 4);
    CHECK(img.substr(0, header.size()) == header);
    CHECK(static_cast<unsigned char>(img[header.size() + 1]) == 255);
    CHECK_THROWS_AS(io::pgm({1.0}, 2, 2), InputError);
}

TEST_CASE("binary matrix round trip") {
    ComplexMatrix A(2, 3);
    A << Complex(1, 2), Complex(-0.5, 0), Complex(1e-300, 3),
         Complex(0, -1), Complex(7, 7), Complex(0.1, 0.2);
    const auto bytes = io::matrix_binary(A);
    CHECK(bytes.size() == 16 + 6 * 16);
    CHECK(static_cast<unsigned char>(bytes[0]) == 2);
    CHECK(static_cast<unsigned char>(bytes[8]) == 3);
    CHECK(io::matrix_from_binary(bytes) == A);
    CHECK_THROWS_AS(io::matrix_from_binary(bytes.substr(0, 40)), InputError);
}

TEST_CASE("quadratic symbol JSON round trip") {
    const auto q = parse_quadratic("xi2^2 + x2^2 + i*(x2*xi1 - x1*xi2)", 2);
    const auto back = io::quadratic_from_json(io::to_json(q));
    CHECK(back.real_matrix() == q.real_matrix());
    CHECK(back.imag_matrix() == q.imag_matrix());
    auto bad = io::to_json(q);
    bad["extra"] = 1;
    CHECK_THROWS_AS(io::quadratic_from_json(bad), InputError);
    auto wrong = io::to_json(q);
    wrong["n"] = 3;
    CHECK_THROWS_AS(io::quadratic_from_json(wrong), InputError);
}

TEST_CASE("numbers print with full precision") {
    CHECK(std::stod(io::num(0.1)) == 0.1);
    CHECK(std::stod(io::num(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("grid function CSV round trip") {
    wick::GridFunction u{{6.0, 33}, {}};
    for (int k = 0; k < 33; ++k) {
        const double x = u.grid.at(k);
        u.values.emplace_back(std::exp(-x * x), 0.5 * std::exp(-x * x) * x);
    }
    const auto back = io::grid_function_from_csv(io::grid_function_csv(u));
    CHECK(back.grid.count == 33);
    CHECK(back.grid.L == 6.0);
    CHECK(back.values == u.values);
    CHECK_THROWS_AS(io::grid_function_from_csv("x,re_u,im_u\n0,1,0\n"), InputError);
    std::string skewed = "x,re_u,im_u\n";
    for (int k = 0; k < 20; ++k) skewed += io::num(-1.0 + 0.1 * k) + ",0,0\n";
    CHECK_THROWS_AS(io::grid_function_from_csv(skewed), InputError);
}

}

TEST_SUITE("problem_file") {

TEST_CASE("plain expression and bare matrix inputs") {
    const auto pf = parse_problem_text("  xi^2 + i*x^2 \n");
    REQUIRE(pf.symbols.size() == 1);
    CHECK(pf.symbols[0].first == "q");
    CHECK(pf.model_problem().points.size() == 1);

    const auto m = parse_problem_text(R"({"n": 1, "Q_re": [[1, 0], [0, 1]]})");
    CHECK(m.primary_symbol().to_quadratic().real_matrix() == RealMatrix::Identity(2, 2));
}

TEST_CASE("full configuration") {
    const auto pf = parse_problem_text(R"({
      "format_version": 1,
      "symbols": {"b": "x^2 + xi^2", "a": {"expr": "xi^2 + i*x^2", "n": 1}},
      "problem": {"points": [{"X": [0.5, 0], "symbol": "a", "p1": [0.5, 0.25]}],
                  "h": [0.1, 0.05], "perturbation": "0.1*x^4"},
      "spectrum": {"radius": 12},
      "oracle": {"N": 16, "sigma_min": [4, 0], "binary": true},
      "probe": {"h": [0.02], "angles": 4, "heatmap": false},
      "output": {"dir": "out"},
      "seed": 7
    })");
    CHECK(pf.symbols[0].first == "b");
    CHECK(pf.symbols[1].first == "a");
    REQUIRE(pf.problem);
    CHECK(pf.problem->h == 0.1);
    CHECK(pf.h_ladder.size() == 2);
    CHECK(pf.problem->points[0].p1 == Complex(0.5, 0.25));
    CHECK(pf.problem->points[0].X(0) == 0.5);
    CHECK(pf.problem->perturbation.has_value());
    CHECK(pf.spectrum.radius == 12.0);
    CHECK(pf.oracle.N == 16);
    CHECK(*pf.oracle.sigma_min_at == Complex(4.0, 0.0));
    CHECK(pf.oracle.binary);
    CHECK(pf.probe.hs == std::vector<double>{0.02});
    CHECK_FALSE(pf.probe.heatmap);
    CHECK(*pf.output_dir == "out");
    CHECK(*pf.seed == 7);
}

TEST_CASE("strict keys and bad values") {
    CHECK_THROWS_AS(parse_problem_text(R"({"symbols": {"q": "x^2"}, "spectra": {}})"), InputError);
    CHECK_THROWS_AS(parse_problem_text(R"({"symbols": {"q": "x^2"}, "probe": {"Cee": 1}})"), InputError);
    CHECK_THROWS_AS(parse_problem_text(R"({"symbols": {}})"), InputError);
    CHECK_THROWS_AS(parse_problem_text(R"({"format_version": 2, "symbols": {"q": "x^2"}})"), InputError);
    CHECK_THROWS_AS(parse_problem_text(R"({"symbols": {"q": "x^2"}, "problem": {"points": [{"symbol": "r"}]}})"),
                    InputError);
    CHECK_THROWS_AS(parse_problem_text(R"({"symbols": {"q": "x^2 + xi^2"},
        "problem": {"points": [{"symbol": "q", "X": [1]}]}})"), InputError);
    CHECK_THROWS_AS(parse_problem_text(R"({"symbols": {"q": "x^2"}, "seed": -1})"), InputError);
    CHECK_THROWS_AS(parse_problem_text("{ not json"), InputError);
    CHECK_THROWS_AS(parse_problem_text("   "), InputError);
    CHECK_THROWS_AS(parse_problem_text("x^2 +"), InputError);
}

}
