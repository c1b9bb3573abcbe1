#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperdet/exact_linalg.hpp"
#include "hyperdet/factory.hpp"
#include "hyperdet/invariants.hpp"
#include "hyperdet/serialization.hpp"
#include "hyperdet/tensor.hpp"

namespace hyperdet::verify {

using Format = std::pair<std::size_t, std::size_t>;  // (n, k)

/// {0,1,2} x {1,2,3,4}
inline std::vector<Format> default_grid() {
    std::vector<Format> out;
    for (std::size_t n = 0; n <= 2; ++n)
        for (std::size_t k = 1; k <= 4; ++k) out.emplace_back(n, k);
    return out;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"dimension", "lemma",     "theorem",  "degree", "weights",
                                                "reduction", "decision", "pair", "modp"};
    return names;
}

struct Options {
    std::vector<Format> formats = default_grid();
    std::optional<std::size_t> seeds;  ///< cases per format; each suite has its own default
    std::uint64_t base_seed = 1;
    long height = kDefaultHeightBound;
    unsigned steps = 4;
    std::vector<std::uint64_t> primes{10007, 1000003};
    std::size_t witness_samples = 200;
    bool corrupt_weights = false;  ///< negative control: shifts alpha by one
};

struct Failure {
    std::uint64_t seed;
    std::string detail;
};

struct FormatResult {
    std::string suite;
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t cases = 0;
    std::size_t passed = 0;
    std::vector<Failure> failures;

    bool ok() const noexcept { return passed == cases; }
};

struct Report {
    std::vector<FormatResult> results;
    std::optional<int> i_weight_sign;
    std::optional<int> v_weight_sign;

    bool ok() const {
        for (const auto& r : results)
            if (!r.ok()) return false;
        return true;
    }
};

namespace detail {

/// Runs `cases` checks; each returns an empty string on success or a diagnostic.
inline FormatResult run_cases(const std::string& suite, Format f, std::size_t cases, std::uint64_t base_seed,
                              const std::function<std::string(std::uint64_t)>& check) {
    FormatResult out{suite, f.first, f.second, cases, 0, {}};
    for (std::size_t i = 0; i < cases; ++i) {
        const std::uint64_t seed = base_seed + i;
        std::string why;
        try {
            why = check(seed);
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        if (why.empty())
            ++out.passed;
        else
            out.failures.push_back({seed, std::move(why)});
    }
    return out;
}

inline std::uint64_t format_seed(std::uint64_t seed, Format f, std::uint64_t label) {
    return mix_seed(seed, (label << 16) ^ (f.first << 8) ^ f.second);
}

/// Compares `after` with det^(sign * exponent) * before. Fixes the sign the
/// first time it is determined and then requires it everywhere.
inline std::string check_weight(const Rational& before, const Rational& after, const Rational& det_factor,
                                long exponent, std::optional<int>& sign, const char* what) {
    if (before == 0) return after == 0 ? "" : std::string(what) + ": D vanished before but not after";
    const Rational plus = pow(det_factor, exponent) * before;
    const Rational minus = pow(det_factor, -exponent) * before;
    const bool is_plus = after == plus, is_minus = after == minus;
    if (!is_plus && !is_minus)
        return std::string(what) + ": D ratio is not det^(+-" + std::to_string(exponent) + ")";
    if (is_plus && is_minus) return "";  // det = +-1 does not distinguish the sign
    const int measured = is_plus ? 1 : -1;
    if (!sign) sign = measured;
    if (*sign != measured) return std::string(what) + ": weight sign differs from the one measured earlier";
    return "";
}

inline MatrixQ flattening(const Tensor3& a) {
    MatrixQ m(a.v_dim() * a.k(), a.w_dim());
    for (std::size_t p = 0; p < a.v_dim(); ++p)
        for (std::size_t q = 0; q < a.k(); ++q)
            for (std::size_t r = 0; r < a.w_dim(); ++r) m(p * a.k() + q, r) = a(p, q, r);
    return m;
}

}  // namespace detail

inline std::vector<FormatResult> suite_dimension() {
    std::vector<FormatResult> out;
    for (std::size_t n = 0; n <= 5; ++n)
        for (std::size_t k = 1; k <= 6; ++k)
            out.push_back(detail::run_cases("dimension", {n, k}, 1, 0, [&](std::uint64_t) -> std::string {
                const auto d = dimension_identity(n, k);
                if (!d.equal()) return "lhs " + std::to_string(d.lhs) + " != rhs " + std::to_string(d.rhs);
                return "";
            }));
    return out;
}

inline std::vector<FormatResult> suite_lemma(const Options& o) {
    std::vector<FormatResult> out;
    for (const auto f : o.formats)
        out.push_back(detail::run_cases("lemma", f, o.seeds.value_or(100), o.base_seed, [&](std::uint64_t seed) {
            const auto planted = planted_degenerate(f.first, f.second, detail::format_seed(seed, f, 1), o.height);
            if (!check_witness(planted.tensor, planted.witness)) return std::string("planted witness does not hold");
            const Rational d = invariant_D(planted.tensor);
            if (d != 0) return "D = " + to_string(d) + " on a degenerate tensor";
            return std::string();
        }));
    return out;
}

inline std::vector<FormatResult> suite_theorem(const Options& o) {
    std::vector<FormatResult> out;
    for (const auto f : o.formats) {
        const Tensor3 special = special_symplectic(f.first, f.second);
        const Rational d0 = invariant_D(special);
        // Case 0 is the special instanton itself, the others are orbit translates.
        out.push_back(detail::run_cases("theorem", f, o.seeds.value_or(20) + 1, 0, [&](std::uint64_t i) {
            const std::uint64_t seed = detail::format_seed(o.base_seed + i, f, 2);
            const Tensor3 a = i == 0 ? special : orbit_sample(special, {seed, o.steps}, o.height);
            if (!is_complex_symplectic(a)) return std::string("complex condition fails");
            Rng rng(mix_seed(seed, 3));
            if (auto w = find_witness(a, o.witness_samples, rng, o.height)) return std::string("witness found");
            const auto cert = certify_nondegenerate(a);
            if (!cert) return std::string("D = 0 on an instanton");
            if (cert->d_value != d0) return "D changed along the orbit: " + to_string(cert->d_value);
            return std::string();
        }));
    }
    return out;
}

inline std::vector<FormatResult> suite_degree(const Options& o) {
    std::vector<FormatResult> out;
    for (const auto f : o.formats)
        out.push_back(detail::run_cases("degree", f, o.seeds.value_or(20), o.base_seed, [&](std::uint64_t seed) {
            Rng rng(detail::format_seed(seed, f, 4));
            const Tensor3 a = random_tensor(f.first, f.second, rng, o.height);
            const Rational lambda = make_rational(rng.nonzero(o.height), rng.uniform(1, o.height));
            const long degree = static_cast<long>(invariant_degree(f.first, f.second));
            const Rational lhs = invariant_D(lambda * a);
            const Rational rhs = pow(lambda, degree) * invariant_D(a);
            if (lhs != rhs) return "D(lambda A) != lambda^" + std::to_string(degree) + " D(A)";
            return std::string();
        }));
    return out;
}

inline std::vector<FormatResult> suite_weights(const Options& o, Report& report) {
    std::vector<FormatResult> out;
    for (const auto f : o.formats) {
        const auto [n, k] = f;
        const long alpha = static_cast<long>(weight_alpha(n, k)) + (o.corrupt_weights ? 1 : 0);
        const long beta = static_cast<long>(weight_beta(n, k));
        out.push_back(detail::run_cases("weights", f, o.seeds.value_or(50), o.base_seed, [&](std::uint64_t seed) {
            Rng rng(detail::format_seed(seed, f, 5));
            const Tensor3 a = random_tensor(n, k, rng, o.height);
            const Rational d = invariant_D(a);
            const MatrixQ id_i = MatrixQ::identity(k), id_w = MatrixQ::identity(a.w_dim());

            const MatrixQ s = random_symplectic(a.w_dim(), o.steps, rng, o.height);
            if (invariant_D(act(a, id_i, s)) != d) return std::string("Sp(W) translate changed D");

            const MatrixQ g = random_invertible(k, rng, o.height);
            std::string why =
                detail::check_weight(d, invariant_D(act(a, g, id_w)), det(g), alpha, report.i_weight_sign, "GL(I)");
            if (!why.empty()) return why;

            const MatrixQ h = random_invertible(a.v_dim(), rng, o.height);
            return detail::check_weight(d, invariant_D(act(a, id_i, id_w, h)), det(h), beta, report.v_weight_sign,
                                        "GL(V)");
        }));
    }
    return out;
}

inline std::vector<FormatResult> suite_reduction(const Options& o) {
    std::vector<FormatResult> out;
    for (const auto f : o.formats) {
        if (f.first != 0) continue;
        out.push_back(detail::run_cases("reduction", f, o.seeds.value_or(100), o.base_seed, [&](std::uint64_t seed) {
            Rng rng(detail::format_seed(seed, f, 6));
            const Tensor3 a = random_tensor(0, f.second, rng, o.height);
            if (invariant_D(a) != det(detail::flattening(a))) return std::string("D differs from the flattening determinant");
            if (invariant_degree(0, f.second) != 2 * f.second) return std::string("degree is not 2k");
            return std::string();
        }));
    }
    return out;
}

inline std::vector<FormatResult> suite_decision(const Options& o) {
    std::vector<FormatResult> out;
    for (const auto f : o.formats) {
        if (f.first != 0) continue;
        out.push_back(detail::run_cases("decision", f, o.seeds.value_or(100), o.base_seed, [&](std::uint64_t seed) {
            const auto planted = planted_degenerate(0, f.second, detail::format_seed(seed, f, 7), o.height);
            if (!is_degenerate_exact_dimv2(planted.tensor)) return std::string("planted tensor decided nondegenerate");
            Rng rng(detail::format_seed(seed, f, 8));
            const Tensor3 a = random_tensor(0, f.second, rng, o.height);
            if (certify_nondegenerate(a) && is_degenerate_exact_dimv2(a))
                return std::string("decided degenerate although D != 0");
            return std::string();
        }));
    }
    return out;
}

inline std::vector<FormatResult> suite_pair(const Options& o) {
    std::vector<FormatResult> out;
    for (const auto f : o.formats) {
        const Tensor3 special = special_symplectic(f.first, f.second);
        out.push_back(detail::run_cases("pair", f, o.seeds.value_or(50), 0, [&](std::uint64_t i) {
            const std::uint64_t seed = detail::format_seed(o.base_seed + i, f, 9);
            const Tensor3 a = i == 0 ? special : orbit_sample(special, {seed, o.steps}, o.height);
            const PairTensor pt = pair_from_symplectic(a);
            if (!is_complex_pair(pt)) return std::string("pair condition fails");
            if (invariant_Dtilde(pt) == 0) return std::string("D~ = 0 on an instanton pair");
            for (auto side : {PairSide::A, PairSide::B}) {
                const auto planted = planted_degenerate_pair(f.first, f.second, seed, side, o.height);
                if (invariant_Dtilde(planted.pair) != 0)
                    return std::string("D~ != 0 with degenerate ") + (side == PairSide::A ? "A" : "B");
            }
            return std::string();
        }));
    }
    return out;
}

inline std::vector<FormatResult> suite_modp(const Options& o) {
    std::vector<FormatResult> out;
    for (const auto f : o.formats)
        out.push_back(detail::run_cases("modp", f, o.seeds.value_or(50), o.base_seed, [&](std::uint64_t seed) {
            Rng rng(detail::format_seed(seed, f, 10));
            const Tensor3 a = random_tensor(f.first, f.second, rng, o.height);
            const MatrixQ delta = delta_matrix(a);
            const Rational d = det(delta);
            for (auto p : o.primes)
                if (reduce_mod(d, p) != det_mod_p(delta, p)) return "mismatch modulo " + std::to_string(p);
            return std::string();
        }));
    return out;
}

/// Runs one suite by name, or every suite for "all". Unknown names throw InputError.
inline Report run(const std::string& suite, const Options& o) {
    Report report;
    auto append = [&](std::vector<FormatResult> rs) {
        for (auto& r : rs) report.results.push_back(std::move(r));
    };
    bool matched = false;
    auto want = [&](const char* name) {
        const bool hit = suite == "all" || suite == name;
        matched = matched || hit;
        return hit;
    };
    if (want("dimension")) append(suite_dimension());
    if (want("lemma")) append(suite_lemma(o));
    if (want("theorem")) append(suite_theorem(o));
    if (want("degree")) append(suite_degree(o));
    if (want("weights")) append(suite_weights(o, report));
    if (want("reduction")) append(suite_reduction(o));
    if (want("decision")) append(suite_decision(o));
    if (want("pair")) append(suite_pair(o));
    if (want("modp")) append(suite_modp(o));
    if (!matched) throw InputError("unknown suite \"" + suite + "\"");
    return report;
}

inline Json to_json(const Report& report) {
    Json results = Json::array();
    for (const auto& r : report.results) {
        Json failures = Json::array();
        for (const auto& f : r.failures) failures.push_back(Json{{"seed", f.seed}, {"detail", f.detail}});
        results.push_back(Json{{"suite", r.suite},
                               {"n", r.n},
                               {"k", r.k},
                               {"cases", r.cases},
                               {"passed", r.passed},
                               {"pass", r.ok()},
                               {"failures", std::move(failures)}});
    }
    Json out;
    out["results"] = std::move(results);
    Json measured = Json::object();
    if (report.i_weight_sign) measured["i_weight_sign"] = *report.i_weight_sign;
    if (report.v_weight_sign) measured["v_weight_sign"] = *report.v_weight_sign;
    out["measured"] = std::move(measured);
    out["pass"] = report.ok();
    return out;
}

}  // namespace hyperdet::verify
