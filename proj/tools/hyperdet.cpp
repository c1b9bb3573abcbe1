// hyperdet: command-line front end for the invariant D of (2n+2) x k x (2n+2k)
// multidimensional matrices.
//
// Exit codes: 0 success, 1 a requested check or property failed, 2 bad input or usage.
// Reports go to stdout as JSON; a short human-readable summary goes to stderr.

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hyperdet/exact_linalg.hpp"
#include "hyperdet/factory.hpp"
#include "hyperdet/invariants.hpp"
#include "hyperdet/serialization.hpp"
#include "hyperdet/verify.hpp"

using namespace hyperdet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out = "sha256:";
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << text;
}

void emit(const Json& report) { std::cout << report.dump(2) << '\n'; }

std::vector<verify::Format> parse_formats(const std::string& text) {
    std::vector<verify::Format> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw InputError("format \"" + item + "\" is not of the form n:k");
        try {
            std::size_t used_n = 0, used_k = 0;
            const auto n_text = item.substr(0, colon), k_text = item.substr(colon + 1);
            const long n = std::stol(n_text, &used_n), k = std::stol(k_text, &used_k);
            if (used_n != n_text.size() || used_k != k_text.size() || n < 0 || k < 1 || n > 16 || k > 16)
                throw std::invalid_argument("range");
            out.emplace_back(n, k);
        } catch (const std::logic_error&) {
            throw InputError("format \"" + item + "\" needs 0 <= n <= 16 and 1 <= k <= 16");
        }
    }
    if (out.empty()) throw InputError("empty format list");
    return out;
}

Json base_report(const std::string& command, const std::vector<std::string>& args) {
    Json r;
    r["command"] = command;
    r["args"] = args;
    return r;
}

Json invariant_json(const InvariantReport& inv, const char* which) {
    Json r;
    r["which"] = which;
    r["n"] = inv.n;
    r["k"] = inv.k;
    r["value"] = to_string(inv.value);
    r["matrix_dimension"] = inv.matrix_dimension;
    r["alpha"] = inv.alpha;
    r["beta"] = inv.beta;
    r["degree"] = inv.degree;
    return r;
}

struct InvariantArgs {
    std::string file;
    std::string which;
    std::uint64_t mod_p = 0;
};

int cmd_invariant(const InvariantArgs& a, const std::vector<std::string>& argv) {
    const std::string text = read_file(a.file);
    const Document doc = from_json(text);
    Json report = base_report("invariant", argv);
    report["input_digest"] = sha256_hex(text);
    if (const auto* td = std::get_if<TensorDocument>(&doc)) {
        if (!a.which.empty() && a.which != "d") throw InputError("--which " + a.which + " needs a pair document");
        const InvariantReport inv = report_D(td->tensor);
        report["result"] = invariant_json(inv, "d");
        if (a.mod_p) {
            const auto residue = det_mod_p(delta_matrix(td->tensor), a.mod_p);
            report["mod_p"] = Json{{"p", a.mod_p}, {"residue", residue}, {"consistent", reduce_mod(inv.value, a.mod_p) == residue}};
        }
        std::cerr << "D = " << to_string(inv.value) << " (" << inv.matrix_dimension << "x" << inv.matrix_dimension << ")\n";
    } else {
        const auto& pt = std::get<PairTensor>(doc);
        if (!a.which.empty() && a.which != "dtilde") throw InputError("--which " + a.which + " needs a tensor3 document");
        const InvariantReport inv = report_Dtilde(pt);
        report["result"] = invariant_json(inv, "dtilde");
        if (a.mod_p) {
            const auto residue =
                mul_mod(det_mod_p(s_matrix(pt), a.mod_p), det_mod_p(r_matrix(pt), a.mod_p), a.mod_p);
            report["mod_p"] = Json{{"p", a.mod_p}, {"residue", residue}, {"consistent", reduce_mod(inv.value, a.mod_p) == residue}};
        }
        std::cerr << "D~ = " << to_string(inv.value) << '\n';
    }
    emit(report);
    return kExitOk;
}

struct CheckArgs {
    std::string file;
    std::vector<std::string> which;
};

int cmd_check(const CheckArgs& a, const std::vector<std::string>& argv) {
    const std::string text = read_file(a.file);
    const Document doc = from_json(text);
    const auto* td = std::get_if<TensorDocument>(&doc);
    std::vector<std::string> which = a.which;
    if (which.empty()) which.push_back(td ? "complex" : "pair");

    Json checks = Json::array();
    bool all = true;
    auto need_tensor = [&](const std::string& name) -> const TensorDocument& {
        if (!td) throw InputError("check " + name + " needs a tensor3 document");
        return *td;
    };
    for (const auto& name : which) {
        Json c;
        c["name"] = name;
        bool pass = false;
        if (name == "complex") {
            const auto& t = need_tensor(name);
            pass = t.form ? is_complex_symplectic(t.tensor, *t.form) : is_complex_symplectic(t.tensor);
        } else if (name == "pair") {
            if (td) throw InputError("check pair needs a pair document");
            pass = is_complex_pair(std::get<PairTensor>(doc));
        } else if (name == "witness") {
            const auto& t = need_tensor(name);
            if (!t.witness) throw InputError("check witness needs a \"witness\" block in the document");
            pass = check_witness(t.tensor, *t.witness);
        } else if (name == "degenerate-exact") {
            const bool degenerate = is_degenerate_exact_dimv2(need_tensor(name).tensor);
            c["degenerate"] = degenerate;
            pass = !degenerate;
        } else if (name == "certify") {
            const auto cert = certify_nondegenerate(need_tensor(name).tensor);
            c["result"] = cert ? "certificate" : "inconclusive";
            if (cert) c["d_value"] = to_string(cert->d_value);
            pass = cert.has_value();
        } else {
            throw InputError("unknown check \"" + name + "\"");
        }
        c["pass"] = pass;
        all = all && pass;
        std::cerr << name << ": " << (pass ? "pass" : "fail") << '\n';
        checks.push_back(std::move(c));
    }
    Json report = base_report("check", argv);
    report["input_digest"] = sha256_hex(text);
    report["checks"] = std::move(checks);
    report["pass"] = all;
    emit(report);
    return all ? kExitOk : kExitFailed;
}

struct GenArgs {
    std::string kind;
    long n = -1;
    long k = -1;
    std::uint64_t seed = 0;
    unsigned steps = 4;
    std::string in;
    std::string out;
};

int cmd_gen(const GenArgs& a, const std::vector<std::string>& argv) {
    const long height = height_bound_from_env();
    std::string doc;
    if (a.kind == "orbit") {
        if (a.in.empty()) throw InputError("gen orbit needs --in FILE");
        const Document input = from_json(read_file(a.in));
        const auto* td = std::get_if<TensorDocument>(&input);
        if (!td) throw InputError("gen orbit needs a tensor3 document");
        if (td->form && *td->form != SymplecticForm::standard(td->tensor.w_dim()).matrix())
            throw InputError("gen orbit supports the standard symplectic form only");
        doc = to_json(orbit_sample(td->tensor, {a.seed, a.steps}, height), td->form);
    } else {
        if (a.n < 0 || a.k < 1 || a.n > 16 || a.k > 16) throw InputError("gen " + a.kind + " needs 0 <= --n <= 16 and 1 <= --k <= 16");
        const auto n = static_cast<std::size_t>(a.n), k = static_cast<std::size_t>(a.k);
        if (a.kind == "special") {
            doc = to_json(special_symplectic(n, k));
        } else if (a.kind == "degenerate") {
            const auto planted = planted_degenerate(n, k, a.seed, height);
            doc = to_json(planted.tensor, std::nullopt, planted.witness);
        } else if (a.kind == "pair") {
            doc = to_json(pair_from_symplectic(orbit_sample(special_symplectic(n, k), {a.seed, a.steps}, height)));
        } else {
            throw InputError("unknown kind \"" + a.kind + "\"");
        }
    }
    const std::string digest = sha256_hex(doc);
    if (a.out.empty()) {
        std::cout << doc << '\n';
        std::cerr << digest << '\n';
        return kExitOk;
    }
    write_file(a.out, doc);
    Json report = base_report("gen", argv);
    report["kind"] = a.kind;
    report["out"] = a.out;
    report["digest"] = digest;
    emit(report);
    std::cerr << "wrote " << a.out << " " << digest << '\n';
    return kExitOk;
}

struct VerifyArgs {
    std::string suite = "all";
    std::string formats;
    std::size_t seeds = 0;
    std::uint64_t seed = 1;
    unsigned steps = 4;
    std::uint64_t mod_p = 0;
    bool corrupt_weights = false;
};

int cmd_verify(const VerifyArgs& a, const std::vector<std::string>& argv) {
    verify::Options o;
    if (!a.formats.empty()) o.formats = parse_formats(a.formats);
    if (a.seeds) o.seeds = a.seeds;
    o.base_seed = a.seed;
    o.steps = a.steps;
    o.height = height_bound_from_env();
    o.corrupt_weights = a.corrupt_weights;
    if (a.mod_p) {
        require_prime_modulus(a.mod_p);
        o.primes = {a.mod_p};
    }
    const auto start = std::chrono::steady_clock::now();
    const verify::Report result = verify::run(a.suite, o);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    Json report = base_report("verify", argv);
    report["suite"] = a.suite;
    Json formats = Json::array();
    for (auto [n, k] : o.formats) formats.push_back(Json::array({n, k}));
    report["formats"] = std::move(formats);
    report["seed"] = o.base_seed;
    report["height_bound"] = o.height;
    Json body = verify::to_json(result);
    for (auto it = body.begin(); it != body.end(); ++it) report[it.key()] = it.value();
    emit(report);

    std::size_t cases = 0, passed = 0;
    for (const auto& r : result.results) {
        cases += r.cases;
        passed += r.passed;
        for (const auto& f : r.failures)
            std::cerr << "FAIL " << r.suite << " n=" << r.n << " k=" << r.k << " seed=" << f.seed << ": " << f.detail
                      << '\n';
    }
    std::fprintf(stderr, "verify %s: %zu/%zu cases passed in %.2f s\n", a.suite.c_str(), passed, cases, seconds);
    return result.ok() ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact invariant D of instanton-format multidimensional matrices"};
    app.require_subcommand(1);
    std::vector<std::string> args(argv + 1, argv + argc);

    InvariantArgs inv;
    auto* sub_inv = app.add_subcommand("invariant", "Compute D (tensor3) or D~ (pair) of a JSON document");
    sub_inv->add_option("file", inv.file, "Input document")->required();
    sub_inv->add_option("--which", inv.which, "d | dtilde")->check(CLI::IsMember({"d", "dtilde"}));
    sub_inv->add_option("--mod-p", inv.mod_p, "Also reduce the determinant(s) modulo this prime");

    CheckArgs chk;
    auto* sub_chk = app.add_subcommand("check", "Run predicate checks on a JSON document");
    sub_chk->add_option("file", chk.file, "Input document")->required();
    sub_chk->add_option("--which", chk.which, "complex | pair | witness | degenerate-exact | certify")
        ->delimiter(',')
        ->check(CLI::IsMember({"complex", "pair", "witness", "degenerate-exact", "certify"}));

    GenArgs gen;
    auto* sub_gen = app.add_subcommand("gen", "Generate a fixture document");
    sub_gen->add_option("kind", gen.kind, "special | degenerate | orbit | pair")
        ->required()
        ->check(CLI::IsMember({"special", "degenerate", "orbit", "pair"}));
    sub_gen->add_option("--n", gen.n, "Format parameter n >= 0");
    sub_gen->add_option("--k", gen.k, "Format parameter k >= 1");
    sub_gen->add_option("--seed", gen.seed, "PRNG seed (mt19937_64); 0 means the identity group element for orbit/pair");
    sub_gen->add_option("--steps", gen.steps, "Number of random generator factors");
    sub_gen->add_option("--in", gen.in, "Input tensor for gen orbit");
    sub_gen->add_option("--out", gen.out, "Output path; the document goes to stdout when omitted");

    VerifyArgs ver;
    auto* sub_ver = app.add_subcommand("verify", "Run property suites");
    std::vector<std::string> suites = verify::suite_names();
    suites.insert(suites.begin(), "all");
    sub_ver->add_option("--suite", ver.suite, "Suite name")->check(CLI::IsMember(suites));
    sub_ver->add_option("--formats", ver.formats, "Comma-separated n:k list (default {0,1,2}x{1,2,3,4})");
    sub_ver->add_option("--seeds", ver.seeds, "Cases per format (default depends on the suite)");
    sub_ver->add_option("--seed", ver.seed, "Base PRNG seed");
    sub_ver->add_option("--steps", ver.steps, "Generator factors per random group element");
    sub_ver->add_option("--mod-p", ver.mod_p, "Prime for the modp suite");
    sub_ver->add_flag("--corrupt-weights", ver.corrupt_weights, "Negative control: shift alpha by one");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*sub_inv) return cmd_invariant(inv, args);
        if (*sub_chk) return cmd_check(chk, args);
        if (*sub_gen) return cmd_gen(gen, args);
        if (*sub_ver) return cmd_verify(ver, args);
    } catch (const Error& e) {
        Json report;
        report["error"] = e.what();
        emit(report);
        std::cerr << "hyperdet: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
