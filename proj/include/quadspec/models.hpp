#pragma once

#include <string>
#include <vector>

namespace quadspec::models {

// Model symbols as expressions in the polynomial grammar.

/// sum_j (xi_j^2 + x_j^2)
std::string harmonic(int n);
/// Harmonic oscillator plus i xi_1^2: Re q > 0, non-normal.
std::string definite(int n);
/// xi_2^2 + x_2^2 + i(x_2 xi_1 - x_1 xi_2) + sum_{j>=3} (xi_j^2 + x_j^2), n >= 2.
std::string kfp(int n);
/// xi_1^2 + x_1^2 + i(chain up to xi_{p+1}) + oscillators, 1 <= p <= n-1.
std::string even_family(int n, int p);
/// x_1^2 + i(chain up to xi_{p+1}) + oscillators, 1 <= p <= n-1.
std::string odd_family(int n, int p);
/// xi^2 + i x^2
std::string davies();
/// i(x^2 + xi^2)
std::string imaginary_oscillator();

struct FamilyCase {
    std::string family;  ///< "definite", "kfp", "2p" or "2p+1"
    int n = 0;
    int p = 0;           ///< 0 where the family has no p
    int expected_k0 = 0;
    std::string expr;
};

/// Every (family, n, p) in the built-in k0 table: definite at n = 1..4, the
/// other families at n = 2..4 with 1 <= p <= n-1.
std::vector<FamilyCase> k0_table_cases();

}  // namespace quadspec::models
