// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when a criterion
// fails for any reason other than the known-unattainable size bound in criterion 3.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include "hyperdet/verify.hpp"

namespace hv = hyperdet::verify;

namespace {

// Pinned tolerances and sizes.
constexpr double kDimensionBudget = 1.0;
constexpr double kLemmaBudget = 60.0;
constexpr double kTheoremBudget = 120.0;
constexpr std::size_t kLemmaSeeds = 100;
constexpr std::size_t kTheoremTranslates = 20;
constexpr std::size_t kWitnessSamples = 200;
constexpr std::size_t kDegreeSeeds = 20;
constexpr std::size_t kWeightSeeds = 50;
constexpr std::size_t kReductionSeeds = 100;
constexpr std::size_t kDecisionSeeds = 100;
constexpr std::size_t kPairSeeds = 50;
constexpr std::size_t kModpSeeds = 50;
constexpr std::size_t kStatedDeltaBound = 66;

int hard_failures = 0;
int known_failures = 0;

void line(bool ok, int id, const std::string& text, bool known = false) {
    std::cout << (ok ? "PASS" : "FAIL") << "  [" << id << "] " << text << std::endl;
    if (!ok) ++(known ? known_failures : hard_failures);
}

struct Timed {
    hv::Report report;
    double seconds;
};

Timed timed(const std::string& suite, const hv::Options& o) {
    const auto t0 = std::chrono::steady_clock::now();
    auto report = hv::run(suite, o);
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    return {std::move(report), dt.count()};
}

std::string tally(const hv::Report& r) {
    std::size_t cases = 0, passed = 0;
    for (const auto& x : r.results) {
        cases += x.cases;
        passed += x.passed;
    }
    std::ostringstream s;
    s << passed << "/" << cases << " cases";
    for (const auto& x : r.results)
        for (const auto& f : x.failures) {
            s << "; first failure (n=" << x.n << ",k=" << x.k << ",seed=" << f.seed << "): " << f.detail;
            return s.str();
        }
    return s.str();
}

std::string seconds(double t) {
    std::ostringstream s;
    s.precision(2);
    s << std::fixed << t << " s";
    return s.str();
}

hv::Options with_seeds(std::size_t seeds, std::vector<hv::Format> formats = hv::default_grid()) {
    hv::Options o;
    o.formats = std::move(formats);
    o.seeds = seeds;
    o.witness_samples = kWitnessSamples;
    return o;
}

std::pair<int, std::string> capture(const std::string& args) {
    const std::string cmd = std::string(HYPERDET_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

int main() {
    using namespace hyperdet;

    {
        const auto t = timed("dimension", hv::Options{});
        line(t.report.ok() && t.seconds < kDimensionBudget, 1,
             "dimension identity n<=5, k<=6: " + tally(t.report) + ", " + seconds(t.seconds));
    }
    {
        const auto t = timed("lemma", with_seeds(kLemmaSeeds));
        line(t.report.ok() && t.seconds < kLemmaBudget, 2,
             "planted degenerate gives D = 0: " + tally(t.report) + ", " + seconds(t.seconds));
    }
    {
        const auto t = timed("theorem", with_seeds(kTheoremTranslates));
        line(t.report.ok() && t.seconds < kTheoremBudget, 3,
             "instanton translates nondegenerate with D != 0: " + tally(t.report) + ", " + seconds(t.seconds));
        std::size_t largest = 0;
        for (const auto& [n, k] : hv::default_grid())
            largest = std::max(largest, dimension_identity(n, k).lhs);
        line(largest <= kStatedDeltaBound, 3,
             "largest Delta is " + std::to_string(largest) + "x" + std::to_string(largest) + " at n=2,k=4, stated bound " +
                 std::to_string(kStatedDeltaBound) + "x" + std::to_string(kStatedDeltaBound) +
                 (largest <= kStatedDeltaBound ? "" : " (unattainable: 12*C(5,2) = 6*C(6,3) = 120)"),
             true);
    }
    {
        const auto t = timed("degree", with_seeds(kDegreeSeeds));
        line(t.report.ok(), 4, "D(lambda A) = lambda^deg D(A): " + tally(t.report));
    }
    {
        const auto t = timed("weights", with_seeds(kWeightSeeds));
        const bool signs = t.report.i_weight_sign.has_value() && t.report.v_weight_sign.has_value();
        std::string text = "Sp(W) invariance and GL(I), GL(V) weights: " + tally(t.report);
        if (signs)
            text += ", sign I " + std::to_string(*t.report.i_weight_sign) + ", sign V " +
                    std::to_string(*t.report.v_weight_sign);
        line(t.report.ok() && signs, 5, text);
    }
    {
        const auto t = timed("reduction", with_seeds(kReductionSeeds, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}));
        const auto quartic = timed("degree", with_seeds(kDegreeSeeds, {{0, 2}}));
        const bool deg4 = invariant_degree(0, 2) == 4 && quartic.report.ok();
        line(t.report.ok() && deg4, 6,
             "n=0 flattening determinant: " + tally(t.report) + ", 2x2x4 degree " +
                 std::to_string(invariant_degree(0, 2)) + " (" + tally(quartic.report) + ")");
    }
    {
        const auto t = timed("pair", with_seeds(kPairSeeds));
        line(t.report.ok(), 7, "instanton pairs and planted degenerate pairs: " + tally(t.report));
    }
    {
        const auto t = timed("decision", with_seeds(kDecisionSeeds, {{0, 1}, {0, 2}, {0, 3}}));
        line(t.report.ok(), 8, "exact n=0 degeneracy decision: " + tally(t.report));
    }
    {
        auto o = with_seeds(kModpSeeds);
        o.primes = {10007, 1000003};
        const auto t = timed("modp", o);
        line(t.report.ok(), 9, "D mod p = det_mod_p(Delta), p in {10007, 1000003}: " + tally(t.report));
    }
    {
        const std::string args = "verify --suite all --formats 0:1,0:2,1:1,1:2,2:1 --seeds 5 --seed 20261018";
        const auto a = capture(args), b = capture(args);
        const bool ok = a.first == 0 && b.first == 0 && !a.second.empty() && a.second == b.second;
        line(ok, 10,
             "verify output byte-identical across two runs (" + std::to_string(a.second.size()) + " bytes, exit " +
                 std::to_string(a.first) + "/" + std::to_string(b.first) + ")");
    }

    std::cout << "summary: " << hard_failures << " failing, " << known_failures << " known unattainable" << std::endl;
    return hard_failures == 0 ? 0 : 1;
}
