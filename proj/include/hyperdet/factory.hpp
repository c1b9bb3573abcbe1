#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

#include "hyperdet/exact_linalg.hpp"
#include "hyperdet/matrix.hpp"
#include "hyperdet/random.hpp"
#include "hyperdet/tensor.hpp"

namespace hyperdet {

/// Default bound on |entry| of random generator factors and random tensors.
inline constexpr long kDefaultHeightBound = 9;

/// Reads HYPERDET_HEIGHT_BOUND, falling back to kDefaultHeightBound.
inline long height_bound_from_env() {
    const char* env = std::getenv("HYPERDET_HEIGHT_BOUND");
    if (env == nullptr || *env == '\0') return kDefaultHeightBound;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) throw InputError(std::string("HYPERDET_HEIGHT_BOUND must be a positive integer, got \"") + env + "\"");
    return v;
}

struct GeneratorSeed {
    std::uint64_t seed = 0;
    unsigned steps = 4;
};

/// Point of Q^0 for every (n, k), with respect to the standard form J.
/// With shifts (S_j)[j'][q] = [j' = q + j] of size (n+k) x k and the flip
/// T[q][q'] = [q = k-1-q'], the slices are A_{x_j} = [S_j; 0] and
/// A_{y_j} = [0; S_j T], where x_j = p in [0, n] and y_j = p in [n+1, 2n+1].
/// S_{j1}^t S_{j2} T is symmetric, which is exactly A^t J A = 0.
inline Tensor3 special_symplectic(std::size_t n, std::size_t k) {
    Tensor3 a(n, k);
    const std::size_t half = n + k;
    for (std::size_t j = 0; j <= n; ++j)
        for (std::size_t q = 0; q < k; ++q) {
            a(j, q, q + j) = 1;
            a(n + 1 + j, q, half + (k - 1 - q) + j) = 1;
        }
    return a;
}

/// Product of elementary row additions row_i += c row_j with 0 < |c| <= height.
/// A step is skipped if it would push an entry above the height bound.
inline MatrixQ random_unimodular(std::size_t dim, unsigned steps, Rng& rng, long height = kDefaultHeightBound) {
    MatrixQ u = MatrixQ::identity(dim);
    if (dim < 2) return u;
    for (unsigned step = 0; step < steps; ++step) {
        for (int attempt = 0; attempt < 8; ++attempt) {
            const std::size_t i = rng.below(dim);
            std::size_t j = rng.below(dim - 1);
            if (j >= i) ++j;
            const long c = rng.nonzero(height);
            bool fits = true;
            for (std::size_t col = 0; col < dim && fits; ++col)
                fits = abs(u(i, col) + c * u(j, col)) <= height;
            if (!fits) continue;
            for (std::size_t col = 0; col < dim; ++col) u(i, col) += c * u(j, col);
            break;
        }
    }
    return u;
}

inline MatrixQ random_unimodular(std::size_t dim, GeneratorSeed seed, long height = kDefaultHeightBound) {
    if (seed.steps == 0) return MatrixQ::identity(dim);
    Rng rng(seed.seed);
    return random_unimodular(dim, seed.steps, rng, height);
}

/// s with s^t J s = J for the standard J, built as a product of
/// [[Id, S], [0, Id]], [[Id, 0], [S, Id]] (S symmetric) and [[U, 0], [0, U^-t]] (U unimodular).
inline MatrixQ random_symplectic(std::size_t dim, unsigned steps, Rng& rng, long height = kDefaultHeightBound) {
    if (dim % 2 != 0) throw InputError("random_symplectic needs an even dimension, got " + std::to_string(dim));
    const std::size_t h = dim / 2;
    MatrixQ s = MatrixQ::identity(dim);
    for (unsigned step = 0; step < steps; ++step) {
        MatrixQ factor = MatrixQ::identity(dim);
        const auto kind = rng.below(3);
        if (kind < 2) {
            const std::size_t row0 = kind == 0 ? 0 : h;
            const std::size_t col0 = kind == 0 ? h : 0;
            for (std::size_t i = 0; i < h; ++i)
                for (std::size_t j = i; j < h; ++j) {
                    const long c = rng.uniform(-height, height);
                    factor(row0 + i, col0 + j) = c;
                    factor(row0 + j, col0 + i) = c;
                }
        } else {
            const MatrixQ u = random_unimodular(h, static_cast<unsigned>(2 * h + 2), rng, height);
            const MatrixQ u_inv_t = inverse(u).transpose();
            for (std::size_t i = 0; i < h; ++i)
                for (std::size_t j = 0; j < h; ++j) {
                    factor(i, j) = u(i, j);
                    factor(h + i, h + j) = u_inv_t(i, j);
                }
        }
        s = factor * s;
    }
    return s;
}

inline MatrixQ random_symplectic(std::size_t dim, GeneratorSeed seed, long height = kDefaultHeightBound) {
    if (dim % 2 != 0) throw InputError("random_symplectic needs an even dimension, got " + std::to_string(dim));
    if (seed.steps == 0) return MatrixQ::identity(dim);
    Rng rng(seed.seed);
    return random_symplectic(dim, seed.steps, rng, height);
}

/// Invertible integer matrix u1 diag(d) u2 with small nonzero d; det is generally not +-1.
inline MatrixQ random_invertible(std::size_t dim, Rng& rng, long height = kDefaultHeightBound) {
    MatrixQ d(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) d(i, i) = rng.nonzero(std::min(height, 3L));
    const auto steps = static_cast<unsigned>(dim * dim);
    MatrixQ u1 = random_unimodular(dim, steps, rng, height);
    MatrixQ u2 = random_unimodular(dim, steps, rng, height);
    return u1 * d * u2;
}

/// Tensor with independent uniform integer entries in [-height, height].
inline Tensor3 random_tensor(std::size_t n, std::size_t k, Rng& rng, long height = kDefaultHeightBound) {
    Tensor3 a(n, k);
    for (auto& x : a.entries().entries()) x = rng.uniform(-height, height);
    return a;
}

/// A translate s A g by unimodular g and symplectic s (standard J).
/// Seed 0 is the identity element: the input comes back unchanged.
inline Tensor3 orbit_sample(const Tensor3& a, GeneratorSeed seed, long height = kDefaultHeightBound) {
    if (seed.seed == 0) return a;
    Rng rng(seed.seed);
    const MatrixQ g = random_unimodular(a.k(), seed.steps * static_cast<unsigned>(a.k()), rng, height);
    const MatrixQ s = random_symplectic(a.w_dim(), seed.steps, rng, height);
    return act(a, g, s);
}

struct PlantedDegenerate {
    Tensor3 tensor;
    DegeneracyWitness witness;
};

/// Random tensor with a[0][0][.] = 0, so (e_0, e_0) is a witness, then moved by
/// random unimodular g on I and h on V. The returned witness is the transported one.
inline PlantedDegenerate planted_degenerate(std::size_t n, std::size_t k, std::uint64_t seed,
                                            long height = kDefaultHeightBound) {
    Rng rng(seed);
    Tensor3 a = random_tensor(n, k, rng, height);
    for (std::size_t r = 0; r < a.w_dim(); ++r) a(0, 0, r) = 0;
    const MatrixQ g = random_unimodular(k, static_cast<unsigned>(2 * k * k), rng, height);
    const MatrixQ h = random_unimodular(a.v_dim(), static_cast<unsigned>(2 * a.v_dim() * a.v_dim()), rng, height);
    VectorQ e_v(a.v_dim(), Rational(0)), e_i(k, Rational(0));
    e_v[0] = 1;
    e_i[0] = 1;
    DegeneracyWitness w{inverse(h).apply(e_v), inverse(g).apply(e_i)};
    return {act(a, g, MatrixQ::identity(a.w_dim()), h), std::move(w)};
}

/// B_p := A_p^t J, so B_p1 A_p2 + B_p2 A_p1 = A_p1^t J A_p2 + A_p2^t J A_p1.
inline PairTensor pair_from_symplectic(const Tensor3& a, const SymplecticForm& j) {
    if (j.dimension() != a.w_dim()) throw DimensionError("symplectic form does not act on W");
    PairTensor pt(a.n(), a.k());
    pt.a() = a.entries();
    const MatrixQ& jm = j.matrix();
    Rational tmp;
    for (std::size_t p = 0; p < a.v_dim(); ++p)
        for (std::size_t q = 0; q < a.k(); ++q)
            for (std::size_t r = 0; r < a.w_dim(); ++r) {
                Rational& out = pt.b()(r, p, q);
                for (std::size_t r2 = 0; r2 < a.w_dim(); ++r2) {
                    if (jm(r2, r) == 0) continue;
                    tmp = a(p, q, r2) * jm(r2, r);
                    out += tmp;
                }
            }
    return pt;
}

inline PairTensor pair_from_symplectic(const Tensor3& a) {
    return pair_from_symplectic(a, SymplecticForm::standard(a.w_dim()));
}

enum class PairSide { A, B };

struct PlantedPair {
    PairTensor pair;
    DegeneracyWitness witness;  ///< (v, i) killing the planted side
};

/// Pair whose chosen side is planted degenerate and whose other side is random.
/// For side B the witness means sum_{p,q} v_p i_q b[r][p][q] = 0 for every r.
inline PlantedPair planted_degenerate_pair(std::size_t n, std::size_t k, std::uint64_t seed, PairSide side,
                                          long height = kDefaultHeightBound) {
    auto planted = planted_degenerate(n, k, seed, height);
    Rng rng(mix_seed(seed, 0x5041));
    const Tensor3 other = random_tensor(n, k, rng, height);
    PairTensor pt(n, k);
    const Tensor3& a_side = side == PairSide::A ? planted.tensor : other;
    const Tensor3& b_side = side == PairSide::A ? other : planted.tensor;
    pt.a() = a_side.entries();
    for (std::size_t p = 0; p < b_side.v_dim(); ++p)
        for (std::size_t q = 0; q < k; ++q)
            for (std::size_t r = 0; r < b_side.w_dim(); ++r) pt.b()(r, p, q) = b_side(p, q, r);
    return {std::move(pt), std::move(planted.witness)};
}

}  // namespace hyperdet
