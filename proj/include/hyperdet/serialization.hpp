#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <nlohmann/json.hpp>

#include "hyperdet/errors.hpp"
#include "hyperdet/matrix.hpp"
#include "hyperdet/rational.hpp"
#include "hyperdet/tensor.hpp"

namespace hyperdet {

using Json = nlohmann::ordered_json;

/// A tensor3 document: the tensor plus the optional symplectic form and witness blocks.
struct TensorDocument {
    Tensor3 tensor;
    std::optional<MatrixQ> form;
    std::optional<DegeneracyWitness> witness;

    friend bool operator==(const TensorDocument&, const TensorDocument&) = default;
};

using Document = std::variant<TensorDocument, PairTensor>;

/// Integers that fit in a signed 64-bit word become JSON numbers, everything else "num/den" strings.
inline Json rational_to_json(const Rational& x) {
    if (is_integer(x) && x.get_num().fits_slong_p()) return Json(x.get_num().get_si());
    return Json(to_string(x));
}

inline Rational rational_from_json(const Json& j, const std::string& where) {
    if (j.is_number_integer()) {
        if (j.is_number_unsigned()) return Rational(Integer(std::to_string(j.get<std::uint64_t>())));
        return Rational(Integer(std::to_string(j.get<std::int64_t>())));
    }
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const ParseError& e) {
            throw ParseError(where + ": " + e.what());
        }
    }
    if (j.is_number_float())
        throw ParseError(where + ": floating-point token not allowed; write integers or \"num/den\" strings");
    throw ParseError(where + ": expected an integer or a \"num/den\" string, got " + std::string(j.type_name()));
}

namespace detail {

inline Json vector_to_json(std::span<const Rational> v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(rational_to_json(x));
    return out;
}

inline Json array3_to_json(const Array3Q& a) {
    Json out = Json::array();
    for (std::size_t i = 0; i < a.extent(0); ++i) {
        Json plane = Json::array();
        for (std::size_t j = 0; j < a.extent(1); ++j) {
            Json line = Json::array();
            for (std::size_t l = 0; l < a.extent(2); ++l) line.push_back(rational_to_json(a(i, j, l)));
            plane.push_back(std::move(line));
        }
        out.push_back(std::move(plane));
    }
    return out;
}

inline Json matrix_to_json(const MatrixQ& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vector_to_json(m.row(i)));
    return out;
}

inline void expect_length(const Json& j, std::size_t expected, const std::string& where, const std::string& axis) {
    if (!j.is_array()) throw ParseError(where + ": expected an array along axis " + axis);
    if (j.size() != expected)
        throw ParseError(where + ": expected " + std::to_string(expected) + " entries along axis " + axis + ", got " +
                         std::to_string(j.size()));
}

inline Array3Q array3_from_json(const Json& j, const Array3Q::Shape& shape, const std::string& where,
                                const std::array<std::string, 3>& axes) {
    Array3Q a(shape);
    expect_length(j, shape[0], where, axes[0]);
    for (std::size_t i = 0; i < shape[0]; ++i) {
        const std::string wi = where + "[" + std::to_string(i) + "]";
        expect_length(j[i], shape[1], wi, axes[1]);
        for (std::size_t l = 0; l < shape[1]; ++l) {
            const std::string wl = wi + "[" + std::to_string(l) + "]";
            expect_length(j[i][l], shape[2], wl, axes[2]);
            for (std::size_t m = 0; m < shape[2]; ++m)
                a(i, l, m) = rational_from_json(j[i][l][m], wl + "[" + std::to_string(m) + "]");
        }
    }
    return a;
}

inline VectorQ vector_from_json(const Json& j, std::size_t expected, const std::string& where) {
    expect_length(j, expected, where, "0");
    VectorQ v;
    for (std::size_t i = 0; i < expected; ++i)
        v.push_back(rational_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

inline std::size_t size_field(const Json& doc, const char* key, std::size_t min) {
    if (!doc.contains(key)) throw ParseError(std::string("$: missing field \"") + key + "\"");
    const Json& v = doc[key];
    if (!v.is_number_integer() || v.get<std::int64_t>() < static_cast<std::int64_t>(min))
        throw ParseError(std::string("$.") + key + ": expected an integer >= " + std::to_string(min));
    return v.get<std::size_t>();
}

}  // namespace detail

inline std::string to_json(const Tensor3& a, const std::optional<MatrixQ>& form = std::nullopt,
                           const std::optional<DegeneracyWitness>& witness = std::nullopt) {
    Json doc;
    doc["kind"] = "tensor3";
    doc["n"] = a.n();
    doc["k"] = a.k();
    doc["entries"] = detail::array3_to_json(a.entries());
    if (form) doc["J"] = detail::matrix_to_json(*form);
    if (witness) doc["witness"] = Json{{"v", detail::vector_to_json(witness->v)}, {"i", detail::vector_to_json(witness->i)}};
    return doc.dump();
}

inline std::string to_json(const TensorDocument& d) { return to_json(d.tensor, d.form, d.witness); }

inline std::string to_json(const PairTensor& pt) {
    Json doc;
    doc["kind"] = "pair";
    doc["n"] = pt.n();
    doc["k"] = pt.k();
    doc["A"] = detail::array3_to_json(pt.a());
    doc["B"] = detail::array3_to_json(pt.b());
    return doc.dump();
}

/// Parses a tensor3 or pair document; every failure is a ParseError naming the location.
inline Document from_json(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("$: expected a JSON object");
    if (!doc.contains("kind") || !doc["kind"].is_string()) throw ParseError("$: missing string field \"kind\"");
    const std::string kind = doc["kind"].get<std::string>();
    const std::size_t n = detail::size_field(doc, "n", 0);
    const std::size_t k = detail::size_field(doc, "k", 1);
    if (n > 64 || k > 64) throw ParseError("$: format (n, k) too large");
    const std::size_t v_dim = 2 * n + 2, w_dim = 2 * n + 2 * k;

    if (kind == "tensor3") {
        if (!doc.contains("entries")) throw ParseError("$: missing field \"entries\"");
        TensorDocument out{Tensor3(n, k, detail::array3_from_json(doc["entries"], Tensor3::shape_for(n, k), "$.entries",
                                                                  {"p (V)", "q (I)", "r (W)"})),
                           std::nullopt, std::nullopt};
        if (doc.contains("J")) {
            const Json& j = doc["J"];
            detail::expect_length(j, w_dim, "$.J", "row (W)");
            MatrixQ m(w_dim, w_dim);
            for (std::size_t i = 0; i < w_dim; ++i) {
                VectorQ row = detail::vector_from_json(j[i], w_dim, "$.J[" + std::to_string(i) + "]");
                for (std::size_t c = 0; c < w_dim; ++c) m(i, c) = row[c];
            }
            out.form = std::move(m);
        }
        if (doc.contains("witness")) {
            const Json& w = doc["witness"];
            if (!w.is_object() || !w.contains("v") || !w.contains("i"))
                throw ParseError("$.witness: expected an object with \"v\" and \"i\"");
            out.witness = DegeneracyWitness{detail::vector_from_json(w["v"], v_dim, "$.witness.v"),
                                            detail::vector_from_json(w["i"], k, "$.witness.i")};
        }
        return out;
    }
    if (kind == "pair") {
        if (!doc.contains("A")) throw ParseError("$: missing field \"A\"");
        if (!doc.contains("B")) throw ParseError("$: missing field \"B\"");
        Array3Q a = detail::array3_from_json(doc["A"], Tensor3::shape_for(n, k), "$.A", {"p (V)", "q (K)", "r (W)"});
        Array3Q b = detail::array3_from_json(doc["B"], PairTensor::b_shape_for(n, k), "$.B", {"r (W)", "p (V)", "q (I)"});
        return PairTensor(n, k, std::move(a), std::move(b));
    }
    throw ParseError("$.kind: unknown document kind \"" + kind + "\"");
}

}  // namespace hyperdet
