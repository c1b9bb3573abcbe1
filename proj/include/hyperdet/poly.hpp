#pragma once

#include <algorithm>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hyperdet/errors.hpp"
#include "hyperdet/rational.hpp"

namespace hyperdet {

/// Univariate polynomial over Q, coefficients stored lowest degree first.
/// The highest stored coefficient is nonzero; the zero polynomial is empty.
class PolyQ {
public:
    PolyQ() = default;
    explicit PolyQ(std::vector<Rational> coefficients) : c_(std::move(coefficients)) { trim(); }
    PolyQ(std::initializer_list<Rational> coefficients) : c_(coefficients) { trim(); }

    /// (x - root)
    static PolyQ linear_root(const Rational& root) { return PolyQ({-root, Rational(1)}); }

    bool is_zero() const noexcept { return c_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
    const std::vector<Rational>& coefficients() const noexcept { return c_; }
    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
    Rational coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

    Rational operator()(const Rational& t) const {
        Rational acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
        return acc;
    }

    PolyQ monic() const {
        if (c_.empty()) return *this;
        PolyQ r = *this;
        const Rational lead = c_.back();
        for (auto& x : r.c_) x /= lead;
        return r;
    }

    friend bool operator==(const PolyQ&, const PolyQ&) = default;

    friend PolyQ operator+(const PolyQ& a, const PolyQ& b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
        return PolyQ(std::move(c));
    }
    friend PolyQ operator-(const PolyQ& a, const PolyQ& b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
        return PolyQ(std::move(c));
    }
    friend PolyQ operator*(const PolyQ& a, const PolyQ& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return PolyQ(std::move(c));
    }
    friend PolyQ operator*(const Rational& s, const PolyQ& a) {
        std::vector<Rational> c = a.c_;
        for (auto& x : c) x *= s;
        return PolyQ(std::move(c));
    }

    /// Euclidean division: returns (quotient, remainder) with deg remainder < deg divisor.
    friend std::pair<PolyQ, PolyQ> divmod(const PolyQ& a, const PolyQ& b) {
        if (b.is_zero()) throw InputError("polynomial division by zero");
        if (a.degree() < b.degree()) return {PolyQ{}, a};
        std::vector<Rational> rem = a.c_;
        std::vector<Rational> quot(a.c_.size() - b.c_.size() + 1, Rational(0));
        const Rational lead = b.c_.back();
        for (std::size_t i = quot.size(); i-- > 0;) {
            const Rational f = rem[i + b.c_.size() - 1] / lead;
            quot[i] = f;
            if (f == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) rem[i + j] -= f * b.c_[j];
        }
        return {PolyQ(std::move(quot)), PolyQ(std::move(rem))};
    }

    std::string to_string() const {
        if (c_.empty()) return "0";
        std::string s;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i] == 0) continue;
            if (!s.empty()) s += " + ";
            s += "(" + c_[i].get_str() + ")";
            if (i > 0) s += i == 1 ? "*t" : "*t^" + std::to_string(i);
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rational> c_;
};

/// Monic greatest common divisor; poly_gcd(0, 0) is 0.
inline PolyQ poly_gcd(PolyQ f, PolyQ g) {
    while (!g.is_zero()) {
        PolyQ r = divmod(f, g).second;
        f = std::move(g);
        g = std::move(r);
    }
    return f.monic();
}

/// Unique polynomial of degree < xs.size() through the points (xs[i], ys[i]).
inline PolyQ interpolate(std::span<const Rational> xs, std::span<const Rational> ys) {
    if (xs.size() != ys.size()) throw DimensionError("interpolation needs as many values as nodes");
    PolyQ result;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (ys[i] == 0) continue;
        PolyQ basis{Rational(1)};
        Rational denom = 1;
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            basis = basis * PolyQ::linear_root(xs[j]);
            denom *= xs[i] - xs[j];
        }
        if (denom == 0) throw InputError("interpolation nodes must be distinct");
        result = result + Rational(ys[i] / denom) * basis;
    }
    return result;
}

}  // namespace hyperdet
