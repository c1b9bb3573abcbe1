#pragma once

#include <concepts>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hyperdet/errors.hpp"
#include "hyperdet/matrix.hpp"
#include "hyperdet/rational.hpp"

namespace hyperdet {

/// Determinant of an integer matrix by Bareiss fraction-free elimination.
/// Pivot is the first nonzero entry at or below the diagonal of the current
/// column; every division is exact.
inline Integer det_bareiss(MatrixZ m) {
    if (!m.is_square()) throw DimensionError("determinant of non-square " + m.shape() + " matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    Integer prev = 1;
    Integer tmp;
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && m(pivot, k) == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != k) {
            m.swap_rows(pivot, k);
            negate = !negate;
        }
        const Integer& akk = m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const Integer& aik = m(i, k);
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer& aij = m(i, j);
                mpz_mul(aij.get_mpz_t(), aij.get_mpz_t(), akk.get_mpz_t());
                mpz_mul(tmp.get_mpz_t(), aik.get_mpz_t(), m(k, j).get_mpz_t());
                mpz_sub(aij.get_mpz_t(), aij.get_mpz_t(), tmp.get_mpz_t());
                mpz_divexact(aij.get_mpz_t(), aij.get_mpz_t(), prev.get_mpz_t());
            }
            m(i, k) = 0;
        }
        prev = akk;
    }
    Integer result = m(n - 1, n - 1);
    return negate ? Integer(-result) : result;
}

namespace detail {

/// Scales each row by the lcm of its denominators. Returns the integer matrix
/// and the product of the scale factors.
inline std::pair<MatrixZ, Integer> clear_row_denominators(const MatrixQ& m) {
    MatrixZ z(m.rows(), m.cols());
    Integer scale = 1;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Integer l = 1;
        for (const auto& x : m.row(i)) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Rational& x = m(i, j);
            Integer& out = z(i, j);
            mpz_divexact(out.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
            out *= x.get_num();
        }
        scale *= l;
    }
    return {std::move(z), std::move(scale)};
}

}  // namespace detail

/// Exact determinant over the rationals.
inline Rational det(const MatrixQ& m) {
    if (!m.is_square()) throw DimensionError("determinant of non-square " + m.shape() + " matrix");
    auto [z, scale] = detail::clear_row_denominators(m);
    Rational result(det_bareiss(std::move(z)), scale);
    result.canonicalize();
    return result;
}

inline Integer det(const MatrixZ& m) { return det_bareiss(m); }

// ---------------------------------------------------------------------------
// Prime-field backend. Moduli are below 2^62 so that a product of two
// residues fits in unsigned __int128 with room to spare.

inline constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 62;

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    base %= p;
    while (e) {
        if (e & 1) r = mul_mod(r, base, p);
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    return r;
}

/// Inverse of a nonzero residue modulo a prime.
inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) { return pow_mod(a, p - 2, p); }

inline void require_prime_modulus(std::uint64_t p) {
    if (p < 2 || p >= kMaxModulus) throw InputError("modulus " + std::to_string(p) + " outside [2, 2^62)");
    Integer z(static_cast<unsigned long>(p));
    if (mpz_probab_prime_p(z.get_mpz_t(), 40) == 0)
        throw InputError("modulus " + std::to_string(p) + " is not prime");
}

inline std::uint64_t reduce_mod(const Integer& x, std::uint64_t p) {
    return mpz_fdiv_ui(x.get_mpz_t(), static_cast<unsigned long>(p));
}

/// Residue of a rational whose denominator is a unit modulo p.
inline std::uint64_t reduce_mod(const Rational& x, std::uint64_t p) {
    std::uint64_t den = reduce_mod(x.get_den(), p);
    if (den == 0)
        throw InputError("denominator " + x.get_den().get_str() + " vanishes modulo " + std::to_string(p));
    return mul_mod(reduce_mod(x.get_num(), p), inv_mod(den, p), p);
}

namespace detail {

inline std::uint64_t det_mod_p_residues(std::vector<std::uint64_t> a, std::size_t n, std::uint64_t p) {
    std::uint64_t result = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && a[pivot * n + k] == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a[pivot * n + j], a[k * n + j]);
            result = (p - result) % p;
        }
        const std::uint64_t akk = a[k * n + k];
        result = mul_mod(result, akk, p);
        const std::uint64_t inv = inv_mod(akk, p);
        for (std::size_t i = k + 1; i < n; ++i) {
            const std::uint64_t f = mul_mod(a[i * n + k], inv, p);
            if (f == 0) continue;
            for (std::size_t j = k; j < n; ++j) {
                const std::uint64_t sub = mul_mod(f, a[k * n + j], p);
                std::uint64_t& x = a[i * n + j];
                x = x >= sub ? x - sub : x + p - sub;
            }
        }
    }
    return result;
}

}  // namespace detail

/// Determinant modulo a prime p < 2^62 by elimination over GF(p).
template <typename Scalar>
    requires std::same_as<Scalar, Integer> || std::same_as<Scalar, Rational>
std::uint64_t det_mod_p(const Matrix<Scalar>& m, std::uint64_t p) {
    require_prime_modulus(p);
    if (!m.is_square()) throw DimensionError("determinant of non-square " + m.shape() + " matrix");
    std::vector<std::uint64_t> a;
    a.reserve(m.rows() * m.cols());
    for (const auto& x : m.entries()) a.push_back(reduce_mod(x, p));
    return detail::det_mod_p_residues(std::move(a), m.rows(), p);
}

// ---------------------------------------------------------------------------
// Rank, kernel and inverse by Gauss-Jordan elimination over Q.

struct RowEchelon {
    MatrixQ reduced;                  ///< reduced row echelon form
    std::vector<std::size_t> pivots;  ///< pivot column of each nonzero row
};

inline RowEchelon rref(MatrixQ m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    Rational tmp;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
        if (pivot == m.rows()) continue;
        m.swap_rows(pivot, row);
        const Rational inv = 1 / m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0) continue;
            const Rational f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) {
                tmp = f * m(row, j);
                m(i, j) -= tmp;
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const MatrixQ& m) { return rref(m).pivots.size(); }

/// Columns form a basis of the right null space {x : m x = 0}.
inline MatrixQ kernel_basis(const MatrixQ& m) {
    auto [r, pivots] = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    MatrixQ basis(m.cols(), free_cols.size());
    for (std::size_t f = 0; f < free_cols.size(); ++f) {
        basis(free_cols[f], f) = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) basis(pivots[i], f) = -r(i, free_cols[f]);
    }
    return basis;
}

inline MatrixQ inverse(const MatrixQ& m) {
    if (!m.is_square()) throw DimensionError("inverse of non-square " + m.shape() + " matrix");
    const std::size_t n = m.rows();
    if (n == 0) return m;
    MatrixQ aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto [r, pivots] = rref(std::move(aug));
    if (pivots.size() < n || pivots[n - 1] != n - 1) throw InputError("matrix is singular");
    MatrixQ inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = r(i, n + j);
    return inv;
}

}  // namespace hyperdet
