#include "quadspec/polynomial.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace quadspec {

namespace {

int total_degree(const MultiIndex& alpha) { return std::accumulate(alpha.begin(), alpha.end(), 0); }

}  // namespace

PolynomialSymbol::PolynomialSymbol(int n) : n_(n) {
    if (n < 1) throw InputError("polynomial symbol dimension must be >= 1");
}

PolynomialSymbol PolynomialSymbol::constant(int n, Complex c) {
    PolynomialSymbol p(n);
    p.add_term(MultiIndex(2 * n, 0), c);
    return p;
}

PolynomialSymbol PolynomialSymbol::from_quadratic(const QuadraticSymbol& q) {
    const int n = q.n();
    PolynomialSymbol p(n);
    const ComplexMatrix& Q = q.matrix();
    for (int i = 0; i < 2 * n; ++i) {
        for (int j = i; j < 2 * n; ++j) {
            MultiIndex alpha(2 * n, 0);
            ++alpha[i];
            ++alpha[j];
            p.add_term(alpha, i == j ? Q(i, i) : 2.0 * Q(i, j));
        }
    }
    return p;
}

int PolynomialSymbol::degree() const {
    int d = 0;
    for (const auto& [alpha, c] : terms_) d = std::max(d, total_degree(alpha));
    return d;
}

void PolynomialSymbol::add_term(const MultiIndex& alpha, Complex c) {
    if (static_cast<int>(alpha.size()) != 2 * n_) {
        throw InputError("multi-index length does not match 2n");
    }
    for (int e : alpha) {
        if (e < 0) throw InputError("negative exponent in multi-index");
    }
    if (total_degree(alpha) > kMaxDegree) {
        throw InputError("polynomial symbol degree exceeds " + std::to_string(kMaxDegree));
    }
    if (c == Complex{}) return;
    auto [it, inserted] = terms_.try_emplace(alpha, c);
    if (!inserted) {
        it->second += c;
        if (it->second == Complex{}) terms_.erase(it);
    }
}

Complex PolynomialSymbol::coefficient(const MultiIndex& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? Complex{} : it->second;
}

Complex PolynomialSymbol::operator()(const PhasePoint& X) const {
    if (X.size() != 2 * n_) throw InputError("phase point dimension does not match the symbol");
    Complex sum{};
    for (const auto& [alpha, c] : terms_) {
        Complex m = c;
        for (int k = 0; k < 2 * n_; ++k) {
            for (int e = 0; e < alpha[k]; ++e) m *= X(k);
        }
        sum += m;
    }
    return sum;
}

QuadraticSymbol PolynomialSymbol::quadratic_part() const {
    ComplexMatrix Q = ComplexMatrix::Zero(2 * n_, 2 * n_);
    for (const auto& [alpha, c] : terms_) {
        if (total_degree(alpha) != 2) continue;
        int first = -1;
        int second = -1;
        for (int k = 0; k < 2 * n_; ++k) {
            for (int e = 0; e < alpha[k]; ++e) (first < 0 ? first : second) = k;
        }
        if (first == second) {
            Q(first, first) += c;
        } else {
            Q(first, second) += 0.5 * c;
            Q(second, first) += 0.5 * c;
        }
    }
    return QuadraticSymbol(Q);
}

QuadraticSymbol PolynomialSymbol::to_quadratic() const {
    for (const auto& [alpha, c] : terms_) {
        if (total_degree(alpha) != 2) {
            throw InputError("expected a homogeneous quadratic form, found a term of degree " +
                             std::to_string(total_degree(alpha)));
        }
    }
    return quadratic_part();
}

PolynomialSymbol PolynomialSymbol::derivative(int k) const {
    PolynomialSymbol d(n_);
    for (const auto& [alpha, c] : terms_) {
        if (alpha[k] == 0) continue;
        MultiIndex beta = alpha;
        --beta[k];
        d.add_term(beta, c * static_cast<double>(alpha[k]));
    }
    return d;
}

PolynomialSymbol PolynomialSymbol::dilated(double scale) const {
    PolynomialSymbol out(n_);
    for (const auto& [alpha, c] : terms_) {
        out.add_term(alpha, c * std::pow(scale, total_degree(alpha)));
    }
    return out;
}

PolynomialSymbol& PolynomialSymbol::operator+=(const PolynomialSymbol& other) {
    if (n_ == 0) n_ = other.n_;
    if (other.n_ != n_ && !other.terms_.empty()) {
        throw InputError("cannot add polynomial symbols of different dimensions");
    }
    for (const auto& [alpha, c] : other.terms_) add_term(alpha, c);
    return *this;
}

PolynomialSymbol& PolynomialSymbol::operator*=(Complex c) {
    if (c == Complex{}) {
        terms_.clear();
        return *this;
    }
    for (auto& [alpha, coef] : terms_) coef *= c;
    return *this;
}

PolynomialSymbol operator-(PolynomialSymbol a, const PolynomialSymbol& b) {
    return a += b * Complex(-1.0);
}

PolynomialSymbol operator*(const PolynomialSymbol& a, const PolynomialSymbol& b) {
    if (a.n_ != b.n_) throw InputError("cannot multiply polynomial symbols of different dimensions");
    PolynomialSymbol out(a.n_);
    for (const auto& [alpha, ca] : a.terms_) {
        for (const auto& [beta, cb] : b.terms_) {
            MultiIndex gamma(alpha.size());
            for (std::size_t k = 0; k < alpha.size(); ++k) gamma[k] = alpha[k] + beta[k];
            out.add_term(gamma, ca * cb);
        }
    }
    return out;
}

std::string PolynomialSymbol::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [alpha, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        char buf[96];
        std::snprintf(buf, sizeof buf, "(%.17g%+.17g*i)", c.real(), c.imag());
        os << buf;
        for (int k = 0; k < 2 * n_; ++k) {
            if (alpha[k] == 0) continue;
            os << '*' << (k < n_ ? "x" : "xi") << (k % n_) + 1;
            if (alpha[k] > 1) os << '^' << alpha[k];
        }
    }
    return os.str();
}

PolynomialSymbol poisson_bracket(const PolynomialSymbol& a, const PolynomialSymbol& b) {
    const int n = a.n();
    PolynomialSymbol out(n);
    for (int j = 0; j < n; ++j) {
        out += a.derivative(n + j) * b.derivative(j);
        out += a.derivative(j) * b.derivative(n + j) * Complex(-1.0);
    }
    return out;
}

PolynomialSymbol gradient_pairing(const PolynomialSymbol& a, const PolynomialSymbol& b) {
    PolynomialSymbol out(a.n());
    for (int k = 0; k < 2 * a.n(); ++k) out += a.derivative(k) * b.derivative(k);
    return out;
}

// ---------------------------------------------------------------------------
// Expression parser. Intermediate results are kept as sparse term maps with no
// degree cap; the cap applies when the final symbol is built.

namespace {

// Exponents keyed by (momentum, index) pairs; n is unknown until the end.
using Key = std::map<std::pair<bool, int>, int>;
using Poly = std::map<Key, Complex>;

Poly poly_const(Complex c) {
    Poly p;
    if (c != Complex{}) p[Key{}] = c;
    return p;
}

void poly_add(Poly& into, const Poly& other, double sign) {
    for (const auto& [k, c] : other) {
        into[k] += sign * c;
        if (into[k] == Complex{}) into.erase(k);
    }
}

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ka, ca] : a) {
        for (const auto& [kb, cb] : b) {
            Key k = ka;
            for (const auto& [v, e] : kb) k[v] += e;
            out[k] += ca * cb;
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        it = it->second == Complex{} ? out.erase(it) : std::next(it);
    }
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    Poly parse() {
        Poly p = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw InputError("expression parse error at offset " + std::to_string(pos_) + ": " + what +
                         " in \"" + std::string(s_) + "\"");
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Poly expr() {
        Poly acc;
        double sign = 1.0;
        if (eat('-')) sign = -1.0;
        else eat('+');
        poly_add(acc, term(), sign);
        while (true) {
            if (eat('+')) poly_add(acc, term(), 1.0);
            else if (eat('-')) poly_add(acc, term(), -1.0);
            else break;
        }
        return acc;
    }

    Poly term() {
        Poly acc = power();
        while (eat('*')) acc = poly_mul(acc, power());
        return acc;
    }

    Poly power() {
        Poly base = factor();
        if (!eat('^')) return base;
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer exponent");
        const int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
        if (e > 16) fail("exponent too large");
        Poly out = poly_const(1.0);
        for (int k = 0; k < e; ++k) out = poly_mul(out, base);
        return out;
    }

    Poly factor() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Poly inner = expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (c == '-') {
            ++pos_;
            Poly inner = power();
            Poly neg;
            poly_add(neg, inner, -1.0);
            return neg;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        fail(std::string("unexpected character '") + c + "'");
    }

    Poly number() {
        const char* begin = s_.data() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) fail("bad number");
        pos_ += static_cast<std::size_t>(end - begin);
        return poly_const(v);
    }

    Poly identifier() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        const std::string name(s_.substr(start, pos_ - start));
        const std::size_t digits = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        const std::string idx(s_.substr(digits, pos_ - digits));
        if (name == "i" && idx.empty()) return poly_const(Complex(0.0, 1.0));
        if (name != "x" && name != "xi") {
            pos_ = start;
            fail("unknown identifier '" + name + idx + "'");
        }
        const int index = idx.empty() ? 1 : std::stoi(idx);
        if (index < 1) fail("variable index must be >= 1");
        Poly p;
        p[Key{{{name == "xi", index}, 1}}] = 1.0;
        return p;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

PolynomialSymbol parse_polynomial(std::string_view expr, int n) {
    const Poly raw = Parser(expr).parse();
    int inferred = 1;
    for (const auto& [k, c] : raw) {
        for (const auto& [v, e] : k) inferred = std::max(inferred, v.second);
    }
    if (n == 0) n = inferred;
    if (inferred > n) {
        throw InputError("expression uses variable index " + std::to_string(inferred) +
                         " but the dimension is " + std::to_string(n));
    }
    PolynomialSymbol out(n);
    for (const auto& [k, c] : raw) {
        MultiIndex alpha(2 * n, 0);
        for (const auto& [v, e] : k) alpha[(v.first ? n : 0) + v.second - 1] += e;
        out.add_term(alpha, c);
    }
    return out;
}

QuadraticSymbol parse_quadratic(std::string_view expr, int n) {
    return parse_polynomial(expr, n).to_quadratic();
}

}  // namespace quadspec
