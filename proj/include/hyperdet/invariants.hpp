#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "hyperdet/exact_linalg.hpp"
#include "hyperdet/matrix.hpp"
#include "hyperdet/sym_basis.hpp"
#include "hyperdet/tensor.hpp"

namespace hyperdet {

struct DimensionIdentity {
    std::uint64_t lhs;  ///< dim W (x) S^n I = (2n+2k) C(k+n-1, n)
    std::uint64_t rhs;  ///< dim V (x) S^(n+1) I = (2n+2) C(k+n, n+1)
    bool equal() const noexcept { return lhs == rhs; }
};

inline DimensionIdentity dimension_identity(std::uint64_t n, std::uint64_t k) {
    if (k == 0) throw InputError("format requires k >= 1");
    return {(2 * n + 2 * k) * binomial(k + n - 1, n), (2 * n + 2) * binomial(k + n, n + 1)};
}

/// Exponent of det I in the weight of D: 2 C(k+n, n).
inline std::uint64_t weight_alpha(std::uint64_t n, std::uint64_t k) { return 2 * binomial(k + n, n); }
/// Exponent of det V in the weight of D: C(k+n, n+1).
inline std::uint64_t weight_beta(std::uint64_t n, std::uint64_t k) { return binomial(k + n, n + 1); }
/// Degree of D as a polynomial in the entries of A.
inline std::uint64_t invariant_degree(std::uint64_t n, std::uint64_t k) { return dimension_identity(n, k).lhs; }

namespace detail {

// Rows (p, nu) with |nu| = n+1, p-major; columns (r, mu) with |mu| = n, r-major.
// Entry coeff(p, q, r) where nu = mu + e_q.
template <typename Coeff>
MatrixQ delta_pattern(std::size_t n, std::size_t k, std::size_t v_dim, std::size_t w_dim, const Coeff& coeff) {
    const std::size_t dim_n = sym_dimension(k, n);
    const std::size_t dim_n1 = sym_dimension(k, n + 1);
    const auto table = multiplication_table(k, n);
    MatrixQ m(v_dim * dim_n1, w_dim * dim_n);
    for (std::size_t mu = 0; mu < dim_n; ++mu)
        for (std::size_t q = 0; q < k; ++q) {
            const std::size_t nu = table[mu * k + q];
            for (std::size_t p = 0; p < v_dim; ++p)
                for (std::size_t r = 0; r < w_dim; ++r) m(p * dim_n1 + nu, r * dim_n + mu) = coeff(p, q, r);
        }
    return m;
}

}  // namespace detail

/// Matrix of Delta_A = (id_V (x) pi)(A^t (x) id_{S^n I}) : W (x) S^n I -> V (x) S^(n+1) I,
/// with pi the multiplication I (x) S^n I -> S^(n+1) I in the monomial basis.
inline MatrixQ delta_matrix(const Tensor3& a) {
    return detail::delta_pattern(a.n(), a.k(), a.v_dim(), a.w_dim(),
                                 [&](std::size_t p, std::size_t q, std::size_t r) { return a(p, q, r); });
}

/// D(A) = det Delta_A, in the graded-lex monomial bases.
inline Rational invariant_D(const Tensor3& a) { return det(delta_matrix(a)); }

/// R(B) : S^n I (x) W -> S^(n+1) I (x) V, same pattern as delta_matrix read from b[r][p][q].
inline MatrixQ r_matrix(const PairTensor& pt) {
    const auto& b = pt.b();
    return detail::delta_pattern(pt.n(), pt.k(), pt.v_dim(), pt.w_dim(),
                                 [&](std::size_t p, std::size_t q, std::size_t r) { return b(r, p, q); });
}

/// S(A) : S^(n+1) K (x) V* -> S^n K (x) W. Rows (mu, r) with |mu| = n, mu-major;
/// columns (nu, p) with |nu| = n+1, nu-major; entry a[p][q][r] where nu = mu + e_q.
inline MatrixQ s_matrix(const PairTensor& pt) {
    const std::size_t n = pt.n(), k = pt.k();
    const std::size_t v_dim = pt.v_dim(), w_dim = pt.w_dim();
    const std::size_t dim_n = sym_dimension(k, n);
    const auto table = multiplication_table(k, n);
    MatrixQ m(dim_n * w_dim, sym_dimension(k, n + 1) * v_dim);
    for (std::size_t mu = 0; mu < dim_n; ++mu)
        for (std::size_t q = 0; q < k; ++q) {
            const std::size_t nu = table[mu * k + q];
            for (std::size_t r = 0; r < w_dim; ++r)
                for (std::size_t p = 0; p < v_dim; ++p) m(mu * w_dim + r, nu * v_dim + p) = pt.a()(p, q, r);
        }
    return m;
}

/// D~(A, B) = det S(A) * det R(B).
inline Rational invariant_Dtilde(const PairTensor& pt) {
    Rational ds = det(s_matrix(pt));
    if (ds == 0) return ds;
    return ds * det(r_matrix(pt));
}

struct InvariantReport {
    std::size_t n;
    std::size_t k;
    std::uint64_t matrix_dimension;
    Rational value;
    std::uint64_t alpha;
    std::uint64_t beta;
    std::uint64_t degree;
};

inline InvariantReport report_D(const Tensor3& a) {
    return {a.n(), a.k(), dimension_identity(a.n(), a.k()).lhs, invariant_D(a),
            weight_alpha(a.n(), a.k()), weight_beta(a.n(), a.k()), invariant_degree(a.n(), a.k())};
}

inline InvariantReport report_Dtilde(const PairTensor& pt) {
    return {pt.n(), pt.k(), dimension_identity(pt.n(), pt.k()).lhs, invariant_Dtilde(pt),
            weight_alpha(pt.n(), pt.k()), weight_beta(pt.n(), pt.k()), invariant_degree(pt.n(), pt.k())};
}

/// Proof that A is nondegenerate: a degenerate tensor has D = 0, so D != 0 certifies.
struct NondegeneracyCertificate {
    Rational d_value;
};

/// nullopt means inconclusive: D vanishes, which happens on every degenerate
/// tensor but also on some nondegenerate ones once k >= 2.
inline std::optional<NondegeneracyCertificate> certify_nondegenerate(const Tensor3& a) {
    Rational d = invariant_D(a);
    if (d == 0) return std::nullopt;
    return NondegeneracyCertificate{std::move(d)};
}

}  // namespace hyperdet
