#include "quadspec/models.hpp"

#include "quadspec/types.hpp"

namespace quadspec::models {

namespace {

std::string oscillators(int from, int n) {
    std::string s;
    for (int j = from; j <= n; ++j) {
        const auto k = std::to_string(j);
        s += " + xi" + k + "^2 + x" + k + "^2";
    }
    return s;
}

// xi_1^2 + 2 x_2 xi_1 + xi_2^2 + ... + xi_p^2 + 2 x_{p+1} xi_p + xi_{p+1}^2
std::string chain(int p) {
    std::string s;
    for (int j = 1; j <= p; ++j) {
        const auto a = std::to_string(j);
        const auto b = std::to_string(j + 1);
        s += "xi" + a + "^2 + 2*x" + b + "*xi" + a + " + ";
    }
    return s + "xi" + std::to_string(p + 1) + "^2";
}

void check_family(int n, int p) {
    if (n < 2) throw InputError("family needs n >= 2");
    if (p < 1 || p > n - 1) throw InputError("family parameter p must satisfy 1 <= p <= n-1");
}

}  // namespace

std::string harmonic(int n) {
    if (n < 1) throw InputError("n must be >= 1");
    return oscillators(1, n).substr(3);
}

std::string definite(int n) { return harmonic(n) + " + i*xi1^2"; }

std::string kfp(int n) {
    if (n < 2) throw InputError("the Fokker-Planck model needs n >= 2");
    return "xi2^2 + x2^2 + i*(x2*xi1 - x1*xi2)" + oscillators(3, n);
}

std::string even_family(int n, int p) {
    check_family(n, p);
    return "xi1^2 + x1^2 + i*(" + chain(p) + ")" + oscillators(p + 2, n);
}

std::string odd_family(int n, int p) {
    check_family(n, p);
    return "x1^2 + i*(" + chain(p) + ")" + oscillators(p + 2, n);
}

std::string davies() { return "xi^2 + i*x^2"; }

std::string imaginary_oscillator() { return "i*(x^2 + xi^2)"; }

std::vector<FamilyCase> k0_table_cases() {
    std::vector<FamilyCase> out;
    for (int n = 1; n <= 4; ++n) out.push_back({"definite", n, 0, 0, definite(n)});
    for (int n = 2; n <= 4; ++n) out.push_back({"kfp", n, 0, 1, kfp(n)});
    for (int n = 2; n <= 4; ++n) {
        for (int p = 1; p <= n - 1; ++p) out.push_back({"2p", n, p, 2 * p, even_family(n, p)});
    }
    for (int n = 2; n <= 4; ++n) {
        for (int p = 1; p <= n - 1; ++p) out.push_back({"2p+1", n, p, 2 * p + 1, odd_family(n, p)});
    }
    return out;
}

}  // namespace quadspec::models
