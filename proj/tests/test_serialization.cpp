#include <gtest/gtest.h>

#include "hyperdet/factory.hpp"
#include "hyperdet/serialization.hpp"

using namespace hyperdet;

TEST(Json, RoundTripSpecial) {
    const Tensor3 a = special_symplectic(1, 2);
    const auto doc = from_json(to_json(a));
    ASSERT_TRUE(std::holds_alternative<TensorDocument>(doc));
    EXPECT_EQ(std::get<TensorDocument>(doc).tensor, a);
}

TEST(Json, RoundTripRandomDocuments) {
    Rng rng(51);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = rng.below(3), k = 1 + rng.below(3);
        Tensor3 a(n, k);
        for (auto& x : a.entries().entries()) {
            x = make_rational(rng.uniform(-50, 50), rng.uniform(1, 7));
            if (rng.below(10) == 0) x *= Rational(Integer("123456789012345678901234567890"));
        }
        TensorDocument d{a, std::nullopt, std::nullopt};
        if (trial % 3 == 0) d.form = SymplecticForm::standard(a.w_dim()).matrix();
        if (trial % 4 == 0) d.witness = DegeneracyWitness{VectorQ(a.v_dim(), Rational(1)), VectorQ(k, make_rational(-1, 2))};
        EXPECT_EQ(std::get<TensorDocument>(from_json(to_json(d))), d);
    }
    const PairTensor pt = planted_degenerate_pair(1, 2, 3, PairSide::B).pair;
    EXPECT_EQ(std::get<PairTensor>(from_json(to_json(pt))), pt);
}

TEST(Json, RationalStrings) {
    const auto doc = from_json(R"({"kind":"tensor3","n":0,"k":1,"entries":[[["-3/7", 2]],[[0, "5"]]]})");
    const auto& a = std::get<TensorDocument>(doc).tensor;
    EXPECT_EQ(a(0, 0, 0), make_rational(-3, 7));
    EXPECT_EQ(a(0, 0, 1), 2);
    EXPECT_EQ(a(1, 0, 1), 5);
}

TEST(Json, Errors) {
    auto expect_error = [](const std::string& text, const std::string& fragment) {
        try {
            from_json(text);
            ADD_FAILURE() << "no error for " << text;
        } catch (const ParseError& e) {
            EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
        }
    };
    expect_error("{", "malformed JSON");
    expect_error(R"({"kind":"tensor3","n":0,"k":1,"entries":[[[1,2]],[[1]]]})", "axis r (W)");
    expect_error(R"({"kind":"tensor3","n":0,"k":1,"entries":[[[1,2]]]})", "axis p (V)");
    expect_error(R"({"kind":"tensor3","n":0,"k":1,"entries":[[[1,2],[3,4]],[[1,2]]]})", "axis q (I)");
    expect_error(R"({"kind":"tensor3","n":0,"k":1,"entries":[[[1.5,2]],[[1,2]]]})", "$.entries[0][0][0]");
    expect_error(R"({"kind":"tensor3","n":0,"k":1,"entries":[[["2/4",2]],[[1,2]]]})", "lowest terms");
    expect_error(R"({"kind":"tensor3","n":0,"k":1,"entries":[[[true,2]],[[1,2]]]})", "boolean");
    expect_error(R"({"kind":"tensor3","n":0,"k":0,"entries":[]})", "$.k");
    expect_error(R"({"kind":"matrix","n":0,"k":1})", "unknown document kind");
    expect_error(R"({"kind":"pair","n":0,"k":1,"A":[[[1,2]],[[1,2]]]})", "\"B\"");
    expect_error(R"({"kind":"pair","n":0,"k":1,"A":[[[1,2]],[[1,2]]],"B":[[[1],[1],[1]],[[1],[1]]]})", "axis p (V)");
    expect_error(R"({"kind":"tensor3","n":0,"k":1,"entries":[[[1,2]],[[1,2]]],"witness":{"v":[1]}})", "witness");
}
