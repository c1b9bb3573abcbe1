#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hyperdet/errors.hpp"
#include "hyperdet/exact_linalg.hpp"
#include "hyperdet/matrix.hpp"
#include "hyperdet/poly.hpp"
#include "hyperdet/random.hpp"
#include "hyperdet/rational.hpp"

namespace hyperdet {

/// Dense three-way array, last index fastest.
template <typename T>
class Array3 {
public:
    using Shape = std::array<std::size_t, 3>;

    Array3() = default;
    explicit Array3(Shape shape, const T& fill = T(0))
        : shape_(shape), data_(shape[0] * shape[1] * shape[2], fill) {}

    const Shape& shape() const noexcept { return shape_; }
    std::size_t extent(std::size_t axis) const { return shape_.at(axis); }

    T& operator()(std::size_t i, std::size_t j, std::size_t l) { return data_[(i * shape_[1] + j) * shape_[2] + l]; }
    const T& operator()(std::size_t i, std::size_t j, std::size_t l) const {
        return data_[(i * shape_[1] + j) * shape_[2] + l];
    }

    std::span<T> entries() noexcept { return data_; }
    std::span<const T> entries() const noexcept { return data_; }

    friend bool operator==(const Array3&, const Array3&) = default;

private:
    Shape shape_{0, 0, 0};
    std::vector<T> data_;
};

using Array3Q = Array3<Rational>;

/// new[.., i, ..] = sum_j m(i, j) * old[.., j, ..] along the given axis.
inline Array3Q contract_axis(const Array3Q& x, std::size_t axis, const MatrixQ& m) {
    if (axis > 2) throw InputError("axis out of range");
    if (m.cols() != x.extent(axis))
        throw DimensionError("factor " + m.shape() + " does not match axis " + std::to_string(axis) +
                             " of extent " + std::to_string(x.extent(axis)));
    auto shape = x.shape();
    shape[axis] = m.rows();
    Array3Q y(shape);
    Rational tmp;
    for (std::size_t a = 0; a < x.extent(0); ++a)
        for (std::size_t b = 0; b < x.extent(1); ++b)
            for (std::size_t c = 0; c < x.extent(2); ++c) {
                const Rational& v = x(a, b, c);
                if (v == 0) continue;
                const std::size_t src = axis == 0 ? a : axis == 1 ? b : c;
                for (std::size_t i = 0; i < m.rows(); ++i) {
                    if (m(i, src) == 0) continue;
                    tmp = m(i, src) * v;
                    (axis == 0 ? y(i, b, c) : axis == 1 ? y(a, i, c) : y(a, b, i)) += tmp;
                }
            }
    return y;
}

/// Multidimensional matrix A in Hom(V* (x) I*, W) of format (2n+2) x k x (2n+2k),
/// entries a[p][q][r] with p indexing V, q indexing I and r indexing W.
class Tensor3 {
public:
    Tensor3() : Tensor3(0, 1) {}
    Tensor3(std::size_t n, std::size_t k) : n_(n), k_(k), a_(shape_for(n, k)) { require_k(k); }
    Tensor3(std::size_t n, std::size_t k, Array3Q entries) : n_(n), k_(k), a_(std::move(entries)) {
        require_k(k);
        if (a_.shape() != shape_for(n, k))
            throw DimensionError("tensor entries are not of format (2n+2, k, 2n+2k) for n=" + std::to_string(n) +
                                 ", k=" + std::to_string(k));
    }

    static Array3Q::Shape shape_for(std::size_t n, std::size_t k) { return {2 * n + 2, k, 2 * n + 2 * k}; }

    std::size_t n() const noexcept { return n_; }
    std::size_t k() const noexcept { return k_; }
    std::size_t v_dim() const noexcept { return 2 * n_ + 2; }
    std::size_t i_dim() const noexcept { return k_; }
    std::size_t w_dim() const noexcept { return 2 * n_ + 2 * k_; }

    Rational& operator()(std::size_t p, std::size_t q, std::size_t r) { return a_(p, q, r); }
    const Rational& operator()(std::size_t p, std::size_t q, std::size_t r) const { return a_(p, q, r); }

    const Array3Q& entries() const noexcept { return a_; }
    Array3Q& entries() noexcept { return a_; }

    Tensor3& operator*=(const Rational& s) {
        for (auto& x : a_.entries()) x *= s;
        return *this;
    }
    friend Tensor3 operator*(const Rational& s, Tensor3 t) { return t *= s; }

    friend bool operator==(const Tensor3&, const Tensor3&) = default;

private:
    static void require_k(std::size_t k) {
        if (k == 0) throw InputError("format requires k >= 1");
    }

    std::size_t n_;
    std::size_t k_;
    Array3Q a_;
};

/// Pair (A, B) in Hom(K (x) V*, W) x Hom(W, I (x) V): a[p][q][r] with q indexing K,
/// b[r][p][q] with q indexing I.
class PairTensor {
public:
    PairTensor(std::size_t n, std::size_t k)
        : n_(n), k_(k), a_(Tensor3::shape_for(n, k)), b_(b_shape_for(n, k)) {
        if (k == 0) throw InputError("format requires k >= 1");
    }
    PairTensor(std::size_t n, std::size_t k, Array3Q a, Array3Q b) : PairTensor(n, k) {
        if (a.shape() != a_.shape()) throw DimensionError("pair A is not of format (2n+2, k, 2n+2k)");
        if (b.shape() != b_.shape()) throw DimensionError("pair B is not of format (2n+2k, 2n+2, k)");
        a_ = std::move(a);
        b_ = std::move(b);
    }

    static Array3Q::Shape b_shape_for(std::size_t n, std::size_t k) { return {2 * n + 2 * k, 2 * n + 2, k}; }

    std::size_t n() const noexcept { return n_; }
    std::size_t k() const noexcept { return k_; }
    std::size_t v_dim() const noexcept { return 2 * n_ + 2; }
    std::size_t w_dim() const noexcept { return 2 * n_ + 2 * k_; }

    const Array3Q& a() const noexcept { return a_; }
    const Array3Q& b() const noexcept { return b_; }
    Array3Q& a() noexcept { return a_; }
    Array3Q& b() noexcept { return b_; }

    friend bool operator==(const PairTensor&, const PairTensor&) = default;

private:
    std::size_t n_;
    std::size_t k_;
    Array3Q a_;
    Array3Q b_;
};

/// Antisymmetric invertible form J on W.
class SymplecticForm {
public:
    /// J = [[0, Id], [-Id, 0]] with blocks of size dim/2.
    static SymplecticForm standard(std::size_t dim) {
        if (dim % 2 != 0) throw InputError("symplectic space must have even dimension");
        const std::size_t h = dim / 2;
        MatrixQ j(dim, dim);
        for (std::size_t i = 0; i < h; ++i) {
            j(i, h + i) = 1;
            j(h + i, i) = -1;
        }
        return SymplecticForm(std::move(j));
    }

    static SymplecticForm from_matrix(MatrixQ j) {
        if (!j.is_square() || j.rows() % 2 != 0)
            throw InputError("symplectic form must be square of even size, got " + j.shape());
        if (j.transpose() != -j) throw InputError("symplectic form is not antisymmetric");
        if (det(j) == 0) throw InputError("symplectic form is degenerate");
        return SymplecticForm(std::move(j));
    }

    std::size_t dimension() const noexcept { return j_.rows(); }
    const MatrixQ& matrix() const noexcept { return j_; }

    friend bool operator==(const SymplecticForm&, const SymplecticForm&) = default;

private:
    explicit SymplecticForm(MatrixQ j) : j_(std::move(j)) {}
    MatrixQ j_;
};

/// Nonzero v in V*, nonzero i in I* with A(v (x) i) = 0.
struct DegeneracyWitness {
    VectorQ v;
    VectorQ i;

    friend bool operator==(const DegeneracyWitness&, const DegeneracyWitness&) = default;
};

/// The (2n+2k) x k matrix of A(v (x) -): M(v)[r][q] = sum_p v_p a[p][q][r].
inline MatrixQ slice(const Tensor3& a, std::span<const Rational> v) {
    if (v.size() != a.v_dim())
        throw InputError("slice vector has length " + std::to_string(v.size()) + ", expected " +
                         std::to_string(a.v_dim()));
    MatrixQ m(a.w_dim(), a.k());
    Rational tmp;
    for (std::size_t p = 0; p < a.v_dim(); ++p) {
        if (v[p] == 0) continue;
        for (std::size_t q = 0; q < a.k(); ++q)
            for (std::size_t r = 0; r < a.w_dim(); ++r) {
                tmp = v[p] * a(p, q, r);
                m(r, q) += tmp;
            }
    }
    return m;
}

/// Coordinate slice A_p = slice(a, e_p).
inline MatrixQ coordinate_slice(const Tensor3& a, std::size_t p) {
    MatrixQ m(a.w_dim(), a.k());
    for (std::size_t q = 0; q < a.k(); ++q)
        for (std::size_t r = 0; r < a.w_dim(); ++r) m(r, q) = a(p, q, r);
    return m;
}

/// Checks A^t J A = 0 as a quadratic form on V: for every p1 <= p2,
/// A_p1^t J A_p2 + A_p2^t J A_p1 vanishes.
inline bool is_complex_symplectic(const Tensor3& a, const SymplecticForm& j) {
    if (j.dimension() != a.w_dim())
        throw DimensionError("symplectic form of dimension " + std::to_string(j.dimension()) +
                             " on W of dimension " + std::to_string(a.w_dim()));
    std::vector<MatrixQ> slices, twisted;
    for (std::size_t p = 0; p < a.v_dim(); ++p) {
        slices.push_back(coordinate_slice(a, p));
        twisted.push_back(slices.back().transpose() * j.matrix());
    }
    for (std::size_t p1 = 0; p1 < a.v_dim(); ++p1)
        for (std::size_t p2 = p1; p2 < a.v_dim(); ++p2)
            if (!(twisted[p1] * slices[p2] + twisted[p2] * slices[p1]).is_zero()) return false;
    return true;
}

inline bool is_complex_symplectic(const Tensor3& a, const MatrixQ& j) {
    return is_complex_symplectic(a, SymplecticForm::from_matrix(j));
}

inline bool is_complex_symplectic(const Tensor3& a) {
    return is_complex_symplectic(a, SymplecticForm::standard(a.w_dim()));
}

/// Slice of the A side of a pair at V-index p: (2n+2k) x k.
inline MatrixQ pair_a_slice(const PairTensor& pt, std::size_t p) {
    MatrixQ m(pt.w_dim(), pt.k());
    for (std::size_t q = 0; q < pt.k(); ++q)
        for (std::size_t r = 0; r < pt.w_dim(); ++r) m(r, q) = pt.a()(p, q, r);
    return m;
}

/// Slice of the B side of a pair at V-index p: k x (2n+2k), B_p[q][r] = b[r][p][q].
inline MatrixQ pair_b_slice(const PairTensor& pt, std::size_t p) {
    MatrixQ m(pt.k(), pt.w_dim());
    for (std::size_t q = 0; q < pt.k(); ++q)
        for (std::size_t r = 0; r < pt.w_dim(); ++r) m(q, r) = pt.b()(r, p, q);
    return m;
}

/// Checks B . A = 0 as a quadratic form on V: B_p1 A_p2 + B_p2 A_p1 = 0 for p1 <= p2.
inline bool is_complex_pair(const PairTensor& pt) {
    std::vector<MatrixQ> as, bs;
    for (std::size_t p = 0; p < pt.v_dim(); ++p) {
        as.push_back(pair_a_slice(pt, p));
        bs.push_back(pair_b_slice(pt, p));
    }
    for (std::size_t p1 = 0; p1 < pt.v_dim(); ++p1)
        for (std::size_t p2 = p1; p2 < pt.v_dim(); ++p2)
            if (!(bs[p1] * as[p2] + bs[p2] * as[p1]).is_zero()) return false;
    return true;
}

/// True iff A(w.v (x) w.i) = 0.
inline bool check_witness(const Tensor3& a, const DegeneracyWitness& w) {
    if (is_zero(w.v) || is_zero(w.i)) throw InputError("degeneracy witness must have nonzero v and i");
    if (w.i.size() != a.k())
        throw InputError("witness i has length " + std::to_string(w.i.size()) + ", expected " +
                         std::to_string(a.k()));
    return is_zero(slice(a, w.v).apply(w.i));
}

/// Searches for a witness by sampling random nonzero integer v with entries in
/// [-height, height] and testing whether slice(A, v) drops rank.
inline std::optional<DegeneracyWitness> find_witness(const Tensor3& a, std::size_t samples, Rng& rng,
                                                     long height = 9) {
    for (std::size_t s = 0; s < samples; ++s) {
        VectorQ v(a.v_dim());
        do {
            for (auto& x : v) x = rng.uniform(-height, height);
        } while (is_zero(v));
        const MatrixQ m = slice(a, v);
        const MatrixQ ker = kernel_basis(m);
        if (ker.cols() > 0) {
            VectorQ i(a.k());
            for (std::size_t q = 0; q < a.k(); ++q) i[q] = ker(q, 0);
            return DegeneracyWitness{std::move(v), std::move(i)};
        }
    }
    return std::nullopt;
}

namespace detail {

inline void for_each_subset(std::size_t n, std::size_t size, const auto& fn) {
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    if (size > n) return;
    while (true) {
        fn(idx);
        std::size_t i = size;
        while (i > 0 && idx[i - 1] == n - size + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace detail

/// Exact degeneracy decision for dim V = 2 (n = 0). A is degenerate iff some
/// v != 0 makes the 2k x k matrix slice(A, v) rank deficient. On the chart
/// v = (1, t) each k x k minor is a polynomial of degree <= k in t, obtained
/// by exact interpolation; they share a complex root iff their gcd is
/// nonconstant (or all of them vanish). The point v = (0, 1) is tested directly.
inline bool is_degenerate_exact_dimv2(const Tensor3& a) {
    if (a.n() != 0)
        throw UnsupportedFormat("unsupported format: exact degeneracy decision needs n = 0, got n = " +
                                std::to_string(a.n()));
    const std::size_t k = a.k();
    const MatrixQ a0 = coordinate_slice(a, 0);
    const MatrixQ a1 = coordinate_slice(a, 1);
    if (rank(a1) < k) return true;

    std::vector<Rational> nodes(k + 1);
    std::vector<MatrixQ> samples;
    for (std::size_t t = 0; t <= k; ++t) {
        nodes[t] = static_cast<long>(t);
        samples.push_back(a0 + a1 * nodes[t]);
    }
    PolyQ common;
    detail::for_each_subset(a.w_dim(), k, [&](const std::vector<std::size_t>& rows) {
        if (common.degree() == 0) return;  // already coprime
        std::vector<Rational> values(k + 1);
        for (std::size_t t = 0; t <= k; ++t) {
            MatrixQ minor(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) minor(i, j) = samples[t](rows[i], j);
            values[t] = det(minor);
        }
        common = poly_gcd(common, interpolate(nodes, values));
    });
    return common.degree() != 0;
}

/// Group action on tensors:
///   a'[p][q][r] = sum h[p'][p] g[q'][q] s[r][r'] a[p'][q'][r'].
/// Composition: act(act(A, g1, s1, h1), g2, s2, h2) = act(A, g1 g2, s2 s1, h1 h2).
/// A witness (v, i) of A is carried to (h^-1 v, g^-1 i), a witness of the image.
inline Tensor3 act(const Tensor3& a, const MatrixQ& g, const MatrixQ& s,
                   const std::optional<MatrixQ>& h = std::nullopt) {
    if (!g.is_square() || g.rows() != a.k()) throw DimensionError("g must be k x k, got " + g.shape());
    if (!s.is_square() || s.rows() != a.w_dim()) throw DimensionError("s must act on W, got " + s.shape());
    if (h && (!h->is_square() || h->rows() != a.v_dim())) throw DimensionError("h must act on V, got " + h->shape());
    Array3Q x = a.entries();
    if (h) x = contract_axis(x, 0, h->transpose());
    x = contract_axis(x, 1, g.transpose());
    x = contract_axis(x, 2, s);
    return Tensor3(a.n(), a.k(), std::move(x));
}

}  // namespace hyperdet
