#include <gtest/gtest.h>

#include "hyperdet/factory.hpp"
#include "hyperdet/invariants.hpp"
#include "hyperdet/tensor.hpp"
#include "oracles.hpp"

using namespace hyperdet;

namespace {

const std::vector<std::pair<std::size_t, std::size_t>> kSmallFormats{{0, 1}, {0, 2}, {1, 1}, {1, 2},
                                                                     {1, 3}, {2, 2}, {2, 3}};

VectorQ basis_vector(std::size_t len, std::size_t i) {
    VectorQ v(len, Rational(0));
    v[i] = 1;
    return v;
}

}  // namespace

TEST(Slice, ZeroAndBasisVectors) {
    Rng rng(31);
    const Tensor3 a = random_tensor(1, 2, rng);
    EXPECT_TRUE(slice(a, VectorQ(4, Rational(0))).is_zero());
    for (std::size_t p = 0; p < 4; ++p) EXPECT_EQ(slice(a, basis_vector(4, p)), coordinate_slice(a, p));
    EXPECT_THROW(slice(a, VectorQ(3)), InputError);
}

TEST(Slice, Bilinear) {
    Rng rng(32);
    for (int trial = 0; trial < 20; ++trial) {
        const Tensor3 a = random_tensor(1, 3, rng), b = random_tensor(1, 3, rng);
        const auto v = oracle::random_vector(4, rng), w = oracle::random_vector(4, rng);
        VectorQ vw(4);
        for (std::size_t i = 0; i < 4; ++i) vw[i] = v[i] + w[i];
        EXPECT_EQ(slice(a, vw), slice(a, v) + slice(a, w));
        Tensor3 ab(1, 3);
        for (std::size_t i = 0; i < ab.entries().entries().size(); ++i)
            ab.entries().entries()[i] = a.entries().entries()[i] + b.entries().entries()[i];
        EXPECT_EQ(slice(ab, v), slice(a, v) + slice(b, v));
        // Direct summation: slice(A, v) i = A(v (x) i).
        const auto i_vec = oracle::random_vector(3, rng);
        const auto got = slice(a, v).apply(i_vec);
        for (std::size_t r = 0; r < a.w_dim(); ++r) {
            Rational want = 0;
            for (std::size_t p = 0; p < 4; ++p)
                for (std::size_t q = 0; q < 3; ++q) want += v[p] * i_vec[q] * a(p, q, r);
            EXPECT_EQ(got[r], want);
        }
    }
}

TEST(SymplecticForm, Validation) {
    const auto j = SymplecticForm::standard(4);
    EXPECT_EQ(j.matrix().transpose(), -j.matrix());
    EXPECT_NE(det(j.matrix()), 0);
    EXPECT_THROW(SymplecticForm::standard(3), InputError);
    EXPECT_THROW(SymplecticForm::from_matrix(MatrixQ::identity(4)), InputError);
    EXPECT_THROW(SymplecticForm::from_matrix(MatrixQ(4, 4)), InputError);
    Tensor3 a(1, 1);
    EXPECT_THROW(is_complex_symplectic(a, MatrixQ::identity(4)), InputError);
}

TEST(ComplexSymplectic, ZeroTensor) { EXPECT_TRUE(is_complex_symplectic(Tensor3(2, 3))); }

// The construction rests on S_j1^t S_j2 T being symmetric; check that block identity directly.
TEST(ComplexSymplectic, ShiftFlipBlocksAreSymmetric) {
    for (std::size_t n = 0; n <= 2; ++n)
        for (std::size_t k = 1; k <= 3; ++k) {
            auto shift = [&](std::size_t j) {
                MatrixQ s(n + k, k);
                for (std::size_t q = 0; q < k; ++q) s(q + j, q) = 1;
                return s;
            };
            MatrixQ t(k, k);
            for (std::size_t q = 0; q < k; ++q) t(q, k - 1 - q) = 1;
            for (std::size_t j1 = 0; j1 <= n; ++j1)
                for (std::size_t j2 = 0; j2 <= n; ++j2) {
                    const MatrixQ x = shift(j1).transpose() * shift(j2) * t;
                    EXPECT_EQ(x, x.transpose());
                }
        }
}

TEST(ComplexSymplectic, SpecialInstantonsAndPerturbations) {
    for (auto [n, k] : kSmallFormats) {
        const Tensor3 a = special_symplectic(n, k);
        EXPECT_TRUE(is_complex_symplectic(a)) << n << "," << k;
    }
    // Perturb dense orbit translates: on the sparse special tensor some single
    // entries are tangent to the complex variety and the change goes unnoticed.
    Rng rng(33);
    int detected = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        Tensor3 a = orbit_sample(special_symplectic(1, 2), {seed, 4});
        ASSERT_TRUE(is_complex_symplectic(a));
        a(rng.below(4), rng.below(2), rng.below(6)) += rng.nonzero(9);
        detected += !is_complex_symplectic(a);
    }
    EXPECT_EQ(detected, 50);
}

TEST(ComplexPair, ZeroRandomAndDerived) {
    EXPECT_TRUE(is_complex_pair(PairTensor(1, 2)));
    Rng rng(34);
    int rejected = 0;
    for (int seed = 0; seed < 50; ++seed) {
        PairTensor pt(1, 2);
        for (auto& x : pt.a().entries()) x = rng.uniform(-9, 9);
        for (auto& x : pt.b().entries()) x = rng.uniform(-9, 9);
        rejected += !is_complex_pair(pt);
    }
    EXPECT_EQ(rejected, 50);
    for (auto [n, k] : kSmallFormats) EXPECT_TRUE(is_complex_pair(pair_from_symplectic(special_symplectic(n, k))));
}

TEST(Witness, PlantedZeroAndSpecial) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto planted = planted_degenerate(1, 2, seed);
        EXPECT_TRUE(check_witness(planted.tensor, planted.witness));
    }
    Rng rng(35);
    for (int s = 0; s < 20; ++s)
        EXPECT_TRUE(check_witness(Tensor3(1, 2), {oracle::random_vector(4, rng), oracle::random_vector(2, rng)}));
    const Tensor3 special = special_symplectic(2, 3);
    for (int s = 0; s < 200; ++s)
        EXPECT_FALSE(check_witness(special, {oracle::random_vector(6, rng), oracle::random_vector(3, rng)}));
    EXPECT_THROW(check_witness(special, {VectorQ(6, Rational(0)), oracle::random_vector(3, rng)}), InputError);
    EXPECT_THROW(check_witness(special, {oracle::random_vector(6, rng), VectorQ(3, Rational(0))}), InputError);
}

TEST(Witness, SearchFindsKernelOnDegenerateSlices) {
    Rng rng(36);
    // Every v is a witness direction for the zero tensor.
    auto w = find_witness(Tensor3(1, 2), 1, rng);
    ASSERT_TRUE(w.has_value());
    EXPECT_TRUE(check_witness(Tensor3(1, 2), *w));
    EXPECT_FALSE(find_witness(special_symplectic(1, 3), 200, rng).has_value());
}

TEST(DegenerateExact, PlantedTensors) {
    for (std::size_t k = 1; k <= 3; ++k)
        for (std::uint64_t seed = 0; seed < 100; ++seed)
            EXPECT_TRUE(is_degenerate_exact_dimv2(planted_degenerate(0, k, seed).tensor)) << k << " " << seed;
}

TEST(DegenerateExact, NonvanishingDMeansNondegenerate) {
    const Tensor3 special = special_symplectic(0, 2);
    ASSERT_NE(invariant_D(special), 0);
    EXPECT_FALSE(is_degenerate_exact_dimv2(special));
    Rng rng(37);
    for (int trial = 0; trial < 30; ++trial) {
        const Tensor3 a = random_tensor(0, 2, rng);
        if (invariant_D(a) != 0) {
            EXPECT_FALSE(is_degenerate_exact_dimv2(a));
        }
    }
}

TEST(DegenerateExact, HandPlantedRootForKOne) {
    // Slice columns (1 + t a_1-entries) both vanish at t = 1: a[0][0] = (1, -2), a[1][0] = (-1, 2).
    Tensor3 a(0, 1);
    a(0, 0, 0) = 1;
    a(0, 0, 1) = -2;
    a(1, 0, 0) = -1;
    a(1, 0, 1) = 2;
    EXPECT_TRUE(is_degenerate_exact_dimv2(a));
    EXPECT_TRUE(check_witness(a, {{1, 1}, {1}}));
    a(1, 0, 1) = 3;
    EXPECT_FALSE(is_degenerate_exact_dimv2(a));
}

TEST(DegenerateExact, IrrationalCommonRoot) {
    // slice(A, (1, t)) = [[1, t], [t, 2], [0, 0], [0, 0]]: the only nonzero minor is 2 - t^2,
    // so the witness direction (1, sqrt 2) is irrational.
    Tensor3 a(0, 2);
    a(0, 0, 0) = 1;
    a(1, 1, 0) = 1;
    a(1, 0, 1) = 1;
    a(0, 1, 1) = 2;
    EXPECT_TRUE(is_degenerate_exact_dimv2(a));
    EXPECT_EQ(invariant_D(a), 0);
    a(0, 1, 2) = 1;  // adds the minor t, coprime to 2 - t^2
    EXPECT_FALSE(is_degenerate_exact_dimv2(a));
}

TEST(DegenerateExact, PointAtInfinity) {
    // A_1 has rank 1, so v = (0, 1) is a witness direction.
    Tensor3 a(0, 2);
    a(1, 0, 0) = 1;
    a(1, 1, 0) = 2;
    a(0, 0, 1) = 1;
    a(0, 1, 2) = 1;
    EXPECT_TRUE(is_degenerate_exact_dimv2(a));
    EXPECT_TRUE(check_witness(a, {{0, 1}, {2, -1}}));
}

TEST(DegenerateExact, RejectsOtherFormats) {
    EXPECT_THROW(is_degenerate_exact_dimv2(Tensor3(1, 1)), UnsupportedFormat);
}

TEST(Act, IdentityIsNoOp) {
    Rng rng(38);
    const Tensor3 a = random_tensor(1, 2, rng);
    EXPECT_EQ(act(a, MatrixQ::identity(2), MatrixQ::identity(6)), a);
    EXPECT_EQ(act(a, MatrixQ::identity(2), MatrixQ::identity(6), MatrixQ::identity(4)), a);
    EXPECT_THROW(act(a, MatrixQ::identity(3), MatrixQ::identity(6)), DimensionError);
    EXPECT_THROW(act(a, MatrixQ::identity(2), MatrixQ::identity(5)), DimensionError);
    EXPECT_THROW(act(a, MatrixQ::identity(2), MatrixQ::identity(6), MatrixQ::identity(3)), DimensionError);
}

TEST(Act, MatchesCoordinateFormulaAndComposes) {
    Rng rng(39);
    const Tensor3 a = random_tensor(0, 2, rng, 3);
    const MatrixQ g1 = oracle::random_matrix(2, 2, rng, 3), g2 = oracle::random_matrix(2, 2, rng, 3);
    const MatrixQ s1 = oracle::random_matrix(4, 4, rng, 3), s2 = oracle::random_matrix(4, 4, rng, 3);
    const MatrixQ h1 = oracle::random_matrix(2, 2, rng, 3), h2 = oracle::random_matrix(2, 2, rng, 3);
    const Tensor3 b = act(a, g1, s1, h1);
    for (std::size_t p = 0; p < 2; ++p)
        for (std::size_t q = 0; q < 2; ++q)
            for (std::size_t r = 0; r < 4; ++r) {
                Rational want = 0;
                for (std::size_t p2 = 0; p2 < 2; ++p2)
                    for (std::size_t q2 = 0; q2 < 2; ++q2)
                        for (std::size_t r2 = 0; r2 < 4; ++r2) want += h1(p2, p) * g1(q2, q) * s1(r, r2) * a(p2, q2, r2);
                EXPECT_EQ(b(p, q, r), want);
            }
    EXPECT_EQ(act(b, g2, s2, h2), act(a, g1 * g2, s2 * s1, h1 * h2));
}

TEST(Act, PreservesComplexUnderSymplecticS) {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const auto [n, k] = kSmallFormats[seed % kSmallFormats.size()];
        Rng rng(seed);
        const Tensor3 a = special_symplectic(n, k);
        const MatrixQ g = random_invertible(k, rng), h = random_invertible(2 * n + 2, rng);
        const MatrixQ s = random_symplectic(2 * n + 2 * k, 3, rng);
        EXPECT_TRUE(is_complex_symplectic(act(a, g, s, h)));
    }
}

TEST(Act, TransportsWitnesses) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto planted = planted_degenerate(1, 2, seed);
        Rng rng(seed + 100);
        const MatrixQ g = random_invertible(2, rng), h = random_invertible(4, rng), s = random_invertible(6, rng);
        const Tensor3 b = act(planted.tensor, g, s, h);
        const DegeneracyWitness moved{inverse(h).apply(planted.witness.v), inverse(g).apply(planted.witness.i)};
        EXPECT_TRUE(check_witness(b, moved));
    }
}
