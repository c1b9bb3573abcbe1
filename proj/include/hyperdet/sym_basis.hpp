#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "hyperdet/errors.hpp"
#include "hyperdet/matrix.hpp"

namespace hyperdet {

/// Binomial coefficient C(n, r); zero when r > n. Throws on 64-bit overflow.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
    if (r > n) return 0;
    r = std::min(r, n - r);
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        acc = acc * (n - r + i) / i;
        if (acc > UINT64_MAX) throw InputError("binomial coefficient overflows 64 bits");
    }
    return static_cast<std::uint64_t>(acc);
}

/// dim S^m of a k-dimensional space: C(k+m-1, m).
inline std::size_t sym_dimension(std::size_t k, std::size_t m) {
    if (k == 0) return m == 0 ? 1 : 0;
    return binomial(k + m - 1, m);
}

/// Exponent vector of a monomial x_0^e_0 ... x_{k-1}^e_{k-1}.
struct MultiIndex {
    std::vector<unsigned> exponents;

    std::size_t variables() const noexcept { return exponents.size(); }
    std::size_t degree() const noexcept { return std::accumulate(exponents.begin(), exponents.end(), std::size_t{0}); }

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
    friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < exponents.size(); ++i) s += (i ? "," : "") + std::to_string(exponents[i]);
        return s + ")";
    }
};

// Monomials of a fixed degree are listed in decreasing lexicographic order of
// their exponent vectors: (m,0,..,0) first, (0,..,0,m) last. Together with
// the grading by degree this is graded-lex order.

/// All degree-m monomials in k variables, in the order above.
inline std::vector<MultiIndex> enumerate_monomials(std::size_t k, std::size_t m) {
    if (k == 0) throw InputError("symmetric power of a zero-dimensional space");
    std::vector<MultiIndex> out;
    out.reserve(sym_dimension(k, m));
    MultiIndex cur{std::vector<unsigned>(k, 0)};
    // Recursive fill: position i takes every value from the remaining degree down to 0.
    auto fill = [&](auto&& self, std::size_t i, unsigned remaining) -> void {
        if (i + 1 == k) {
            cur.exponents[i] = remaining;
            out.push_back(cur);
            return;
        }
        for (unsigned e = remaining + 1; e-- > 0;) {
            cur.exponents[i] = e;
            self(self, i + 1, remaining - e);
        }
    };
    fill(fill, 0, static_cast<unsigned>(m));
    return out;
}

/// Position of mu in enumerate_monomials(mu.variables(), mu.degree()).
inline std::size_t monomial_rank(const MultiIndex& mu) {
    const std::size_t k = mu.variables();
    if (k == 0) throw InputError("empty multi-index");
    std::size_t remaining = mu.degree();
    std::size_t pos = 0;
    for (std::size_t i = 0; i + 1 < k; ++i) {
        // Monomials sharing the prefix but with a larger exponent at i come first.
        for (std::size_t e = mu.exponents[i] + 1; e <= remaining; ++e) pos += sym_dimension(k - i - 1, remaining - e);
        remaining -= mu.exponents[i];
    }
    return pos;
}

inline MultiIndex monomial_unrank(std::size_t k, std::size_t m, std::size_t position) {
    if (k == 0) throw InputError("symmetric power of a zero-dimensional space");
    if (position >= sym_dimension(k, m))
        throw InputError("monomial position " + std::to_string(position) + " out of range for k=" +
                         std::to_string(k) + ", m=" + std::to_string(m));
    MultiIndex mu{std::vector<unsigned>(k, 0)};
    std::size_t remaining = m;
    for (std::size_t i = 0; i + 1 < k; ++i) {
        std::size_t e = remaining;
        for (;; --e) {
            const std::size_t block = sym_dimension(k - i - 1, remaining - e);
            if (position < block) break;
            position -= block;
        }
        mu.exponents[i] = static_cast<unsigned>(e);
        remaining -= e;
    }
    mu.exponents[k - 1] = static_cast<unsigned>(remaining);
    return mu;
}

/// Multiplication by the variable x_q: x^mu -> x^(mu + e_q), coefficient 1.
inline MultiIndex multiply_index(MultiIndex mu, std::size_t q) {
    if (q >= mu.variables()) throw InputError("variable index out of range");
    ++mu.exponents[q];
    return mu;
}

/// Table of rank(mu + e_q) for every mu of degree m and every variable q,
/// stored as table[rank(mu) * k + q].
inline std::vector<std::size_t> multiplication_table(std::size_t k, std::size_t m) {
    const auto basis = enumerate_monomials(k, m);
    std::vector<std::size_t> table(basis.size() * k);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t q = 0; q < k; ++q) table[i * k + q] = monomial_rank(multiply_index(basis[i], q));
    return table;
}

/// Matrix of Sym^m(g) in the monomial basis, where g sends the basis vector
/// x_j to sum_i g(i, j) x_i. Column rank(mu) holds the expansion of
/// prod_j (g x_j)^mu_j. The assignment is multiplicative:
/// sym_power_matrix(g h, m) = sym_power_matrix(g, m) sym_power_matrix(h, m).
inline MatrixQ sym_power_matrix(const MatrixQ& g, std::size_t m) {
    if (!g.is_square()) throw DimensionError("sym_power_matrix needs a square matrix, got " + g.shape());
    const std::size_t k = g.rows();
    if (k == 0) throw InputError("symmetric power of a zero-dimensional space");
    const auto basis = enumerate_monomials(k, m);
    std::vector<std::vector<std::size_t>> mult(m);
    for (std::size_t d = 0; d < m; ++d) mult[d] = multiplication_table(k, d);

    MatrixQ out(basis.size(), basis.size());
    Rational tmp;
    for (std::size_t col = 0; col < basis.size(); ++col) {
        // Expand the product one linear factor at a time.
        std::vector<Rational> poly{Rational(1)};
        std::size_t d = 0;
        for (std::size_t j = 0; j < k; ++j) {
            for (unsigned rep = 0; rep < basis[col].exponents[j]; ++rep, ++d) {
                std::vector<Rational> next(sym_dimension(k, d + 1), Rational(0));
                for (std::size_t a = 0; a < poly.size(); ++a) {
                    if (poly[a] == 0) continue;
                    for (std::size_t i = 0; i < k; ++i) {
                        if (g(i, j) == 0) continue;
                        tmp = poly[a] * g(i, j);
                        next[mult[d][a * k + i]] += tmp;
                    }
                }
                poly = std::move(next);
            }
        }
        for (std::size_t row = 0; row < basis.size(); ++row) out(row, col) = poly[row];
    }
    return out;
}

}  // namespace hyperdet
