#include "sunflower/sunflower.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace sunflower;

enum Exit : int { kOk = 0, kWitness = 1, kInvalid = 2, kBudget = 3, kInconclusive = 4 };

struct Log {
    bool enabled = false;
    void emit(const json& j) const {
        if (enabled) std::cerr << j.dump() << '\n';
    }
};

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
    if (!out) throw std::runtime_error("failed writing " + path);
}

json read_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParameterError("cannot open " + path);
    return json::parse(in);
}

bool is_prime_power(std::uint64_t q) {
    if (q < 2) return false;
    std::uint64_t p = 2;
    while (p * p <= q && q % p != 0) ++p;
    if (q % p != 0) return true;  // q itself is prime
    while (q % p == 0) q /= p;
    return q == 1;
}

// ---------------------------------------------------------------------------

struct ConstructArgs {
    std::string type;
    std::size_t s = 0;
    std::size_t k = 0;
    unsigned q = 2;
    std::string out;
    std::string tree_out;
    unsigned workers = 1;
    std::uint64_t leaf_budget = kDefaultLeafCap;
    bool dry_run = false;
};

int run_dry_run(const ConstructArgs& a) {
    detail::require(a.type == "a" || a.type == "b", "--dry-run applies to types a and b");
    detail::require(a.s > 0 && a.k > 0, "--s and --k are required");
    const auto params = a.type == "a" ? params_A(a.s, a.k) : params_B(a.s, a.k);
    const auto pred = predicted_sizes(params, a.q);
    std::cout << "construction: " << a.type << "(s=" << a.s << ", k=" << a.k << ") over GF(" << a.q << ") in V("
              << params.ambient << ", " << a.q << ")\n";
    std::cout << "predicted size: " << to_decimal(pred.total) << " (q^" << pred.total_exponent << ")\n";
    std::cout << "lower bound: " << to_decimal(pred.bound) << '\n';
    std::cout << "upper bound: " << to_decimal(upper_bound(a.s, a.k, a.q)) << '\n';
    std::cout << "level exponents:";
    for (auto it = pred.exponents.rbegin(); it != pred.exponents.rend(); ++it) std::cout << ' ' << *it;
    std::cout << '\n';
    return kOk;
}

int run_construct(const ConstructArgs& a, const Log& log) {
    if (a.dry_run) return run_dry_run(a);
    const auto field = Field::of_order(a.q);
    log.emit({{"event", "start"}, {"command", "construct"}, {"type", a.type}, {"q", a.q}});
    FamilyFile file;
    file.field = field;
    file.construction = a.type;
    std::optional<FamilyTree> tree;
    std::string lower;
    std::optional<BigNat> upper;

    if (a.type == "a" || a.type == "b") {
        detail::require(a.s > 0 && a.k > 0, "--s and --k are required");
        BuildOptions opt;
        opt.workers = a.workers;
        opt.leaf_cap = a.leaf_budget;
        tree = a.type == "a" ? construct_A(a.s, a.k, field, opt) : construct_B(a.s, a.k, field, opt);
        file.ambient_n = tree->params.ambient;
        file.k = a.k;
        file.s = a.s;
        for (const auto& l : tree->leaves) file.members.push_back(l.space);
        const auto pred = predicted_sizes(tree->params, a.q);
        lower = to_decimal(pred.bound);
        upper = upper_bound(a.s, a.k, a.q);
        json levels = json::array();
        for (std::size_t i = 0; i < tree->params.levels.size(); ++i) {
            const auto& lv = tree->params.levels[i];
            levels.push_back({{"label", lv.label},
                              {"n", lv.n},
                              {"m", lv.m},
                              {"d", lv.d},
                              {"exponent", lv.exponent()},
                              {"size", tree->level_sizes.at(i)}});
        }
        file.extra["levels"] = std::move(levels);
        file.extra["lower_bound"] = lower;
    } else if (a.type == "g") {
        detail::require(a.s > 0 && a.k > 0, "--s and --k are required");
        file.members = construct_G(a.s, a.k, field, a.leaf_budget);
        file.ambient_n = (a.s + 1) * a.k / 2 - 1;
        file.k = a.k;
        file.s = a.s;
        lower = to_decimal(ipow(BigNat(a.q), static_cast<std::uint64_t>(family_G_bound_exponent(
                                                  static_cast<std::int64_t>(a.s), static_cast<std::int64_t>(a.k)))));
        upper = upper_bound(a.s, a.k, a.q);
        file.extra["lower_bound"] = lower;
    } else if (a.type == "partite") {
        detail::require(a.s > 0 && a.k > 0, "--s and --k are required");
        file.members = construct_partite(a.s, a.k, field, a.leaf_budget);
        file.ambient_n = a.k * (a.s - 1);
        file.k = a.k;
        file.s = a.s;
        upper = upper_bound(a.s, a.k, a.q);
    } else if (a.type == "example1") {
        detail::require(a.s == 0 || a.s == 3, "example1 is a 3-sunflower-free family: --s must be 3");
        detail::require(a.k == 0 || a.k == 2, "example1 consists of 2-spaces: --k must be 2");
        file.members = construct_example1(field);
        file.ambient_n = 5;
        file.k = 2;
        file.s = 3;
        upper = upper_bound(3, 2, a.q);
        const BigNat q = a.q;
        lower = to_decimal(q * q * q * q + q * q + q + 1);
        file.extra["predicted_size"] = lower;
    } else {
        throw ParameterError("unknown construction type '" + a.type + "' (expected a, b, g, partite or example1)");
    }
    if (upper) file.extra["upper_bound"] = to_decimal(*upper);

    if (!a.out.empty()) write_file(a.out, dump_line(family_to_json(file)));
    if (tree && !a.tree_out.empty()) write_file(a.tree_out, dump_line(tree_to_json(*tree)));

    std::cout << "construction: " << a.type;
    if (a.type != "example1") std::cout << "(s=" << file.s << ", k=" << file.k << ")";
    std::cout << " over GF(" << a.q << ") in V(" << file.ambient_n << ", " << a.q << ")\n";
    std::cout << "size: " << file.members.size() << '\n';
    if (!lower.empty()) std::cout << (a.type == "example1" ? "predicted size: " : "lower bound: ") << lower << '\n';
    if (upper) std::cout << "upper bound: " << to_decimal(*upper) << '\n';
    if (tree) {
        std::cout << "level sizes:";
        for (auto sz : tree->level_sizes) std::cout << ' ' << sz;
        std::cout << '\n';
    }
    log.emit({{"event", "done"}, {"command", "construct"}, {"size", file.members.size()}});
    return kOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    std::string in;
    std::size_t s = 0;
    std::string mode = "general";
    std::string strategy = "auto";
    std::uint64_t budget_pairs = SearchBudget{}.pairs;
    std::uint64_t budget_subsets = SearchBudget{}.subsets;
    std::string out;
    unsigned workers = 1;
    bool maximal = false;
};

int run_verify(const VerifyArgs& a, const Log& log) {
    FamilyFile file;
    try {
        file = family_from_json(read_json(a.in));
    } catch (const json::exception& e) {
        throw ParameterError(std::string("malformed family file: ") + e.what());
    }
    const std::size_t s = a.s ? a.s : file.s;
    detail::require(s >= 2, "sunflower size s must be given (--s) and be at least 2");
    SearchOptions opt;
    opt.mode = a.mode == "setlike" ? SunflowerMode::set_like : SunflowerMode::general;
    opt.budget = {a.budget_pairs, a.budget_subsets};
    opt.strategy = a.strategy == "subsets"  ? SearchStrategy::subsets
                   : a.strategy == "cliques" ? SearchStrategy::cliques
                                             : SearchStrategy::automatic;
    opt.workers = a.workers;
    log.emit({{"event", "start"}, {"command", "verify"}, {"size", file.members.size()}, {"s", s}});

    auto cert = find_sunflower(file.members, s, opt);
    json out = certificate_to_json(cert);
    std::optional<Certificate> max_cert;
    if (a.maximal) {
        MaximalityOptions mopt;
        mopt.mode = opt.mode;
        mopt.budget = opt.budget;
        max_cert = is_maximal(file.members, s, file.ambient_n, file.k, file.field, mopt);
        out["maximality"] = certificate_to_json(*max_cert);
    }
    if (!a.out.empty()) write_file(a.out, dump_line(out));

    std::cout << "family: " << cert.family_id << " (" << cert.family_size << " members)\n";
    std::cout << "outcome: " << to_string(cert.outcome) << " (" << to_string(cert.status) << ")\n";
    std::cout << "pairs examined: " << cert.pairs_examined << '\n';
    std::cout << "subsets examined: " << cert.subsets_examined << '\n';
    if (cert.witness) {
        std::cout << "witness members:";
        for (auto i : cert.witness->members) std::cout << ' ' << i;
        std::cout << "\nkernel dimension: " << cert.witness->kernel_dim << '\n';
    }
    if (max_cert)
        std::cout << "maximality: " << to_string(max_cert->outcome) << " (" << to_string(max_cert->status) << ", "
                  << max_cert->checks << " candidates)\n";
    log.emit({{"event", "done"}, {"command", "verify"}, {"outcome", to_string(cert.outcome)}});

    if (cert.outcome == Outcome::witness_found) return kWitness;
    if (cert.status == SearchStatus::budgeted) return kInconclusive;
    return kOk;
}

// ---------------------------------------------------------------------------

std::string rational_string(const Rational& r) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    const BigNat num = numerator(r), den = denominator(r);
    return den == 1 ? to_decimal(num) : to_decimal(num) + "/" + to_decimal(den);
}

int run_bounds(std::size_t s, std::size_t k, std::uint64_t q, bool as_json) {
    detail::require(s >= 3, "bounds require s >= 3");
    detail::require(k >= 2, "bounds require k >= 2");
    detail::require(is_prime_power(q), "q must be a prime power");
    const auto b = bound_sandwich(s, k, q);
    const auto si = static_cast<std::int64_t>(s), ki = static_cast<std::int64_t>(k);
    const std::int64_t lower_exp = lower_bound_exponent(si, ki);
    const std::int64_t main_exp = (si - 1) * binom2(ki) - ki;
    const Rational scale(ipow(BigNat(q), static_cast<std::uint64_t>(main_exp)));
    const Rational cap_factor = rpow(Rational(BigNat(q), BigNat(q - 1)), k);
    json j = {{"s", s},
              {"k", k},
              {"q", q},
              {"lower_exponent", lower_exp},
              {"lower", to_decimal(b.lower)},
              {"product", to_decimal(b.product)},
              {"cap", rational_string(b.cap)},
              {"chain_holds", b.holds}};
    if (s >= k + 1) {
        const Rational lo_ratio = Rational(b.lower) / scale, hi_ratio = Rational(b.product) / scale;
        j["lower_ratio"] = rational_string(lo_ratio);
        j["product_ratio"] = rational_string(hi_ratio);
        j["ratio_cap"] = rational_string(cap_factor);
        j["ratios_hold"] = Rational(1) <= lo_ratio && hi_ratio <= cap_factor;
    }
    if (as_json) {
        std::cout << j.dump() << '\n';
    } else {
        std::cout << "lower: " << j["lower"].get<std::string>() << " (q^" << lower_exp << ")\n";
        std::cout << "product: " << j["product"].get<std::string>() << '\n';
        std::cout << "cap: " << j["cap"].get<std::string>() << '\n';
        std::cout << "chain: " << (b.holds ? "holds" : "fails") << '\n';
        if (j.contains("ratios_hold")) {
            std::cout << "lower / q^" << main_exp << ": " << j["lower_ratio"].get<std::string>() << '\n';
            std::cout << "product / q^" << main_exp << ": " << j["product_ratio"].get<std::string>() << '\n';
            std::cout << "(q/(q-1))^k: " << j["ratio_cap"].get<std::string>() << '\n';
            std::cout << "ratios: " << (j["ratios_hold"].get<bool>() ? "hold" : "fail") << '\n';
        }
    }
    return b.holds ? kOk : 1;
}

// ---------------------------------------------------------------------------

int run_enumerate(std::size_t n, std::size_t m, unsigned q, bool stream, std::uint64_t budget) {
    const auto field = Field::of_order(q);
    detail::require(m <= n, "m must not exceed n");
    SubspaceEnumerator it(field, n, m, budget);
    std::uint64_t count = 0;
    while (auto x = it.next()) {
        ++count;
        if (stream) std::cout << subspace_to_json(*x).dump() << '\n';
    }
    if (!stream) std::cout << count << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sunflower-free subspace families: construction, verification and bounds"};
    app.require_subcommand(1);
    bool json_log = false;
    app.add_flag("--json-log", json_log, "Emit JSON progress lines on stderr");

    ConstructArgs ca;
    auto* construct = app.add_subcommand("construct", "Build a family and write it as JSON");
    construct->add_option("--type", ca.type, "a | b | g | partite | example1")->required();
    construct->add_option("--s", ca.s, "Sunflower size s");
    construct->add_option("--k", ca.k, "Subspace dimension k");
    construct->add_option("--q", ca.q, "Field order (prime power <= 16)")->default_val(2);
    construct->add_option("--out", ca.out, "Family JSON output path");
    construct->add_option("--tree-out", ca.tree_out, "Nesting tree JSON output path (a, b)");
    construct->add_option("--workers", ca.workers, "Worker threads")->check(CLI::Range(1u, 256u))->default_val(1);
    construct->add_option("--budget-leaves", ca.leaf_budget, "Maximum family size")->check(CLI::PositiveNumber);
    construct->add_flag("--dry-run", ca.dry_run, "Print predicted sizes without building (a, b)");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Search a family for an s-sunflower");
    verify->add_option("--in", va.in, "Family JSON input path")->required();
    verify->add_option("--s", va.s, "Sunflower size s (defaults to the file's s)");
    verify->add_option("--mode", va.mode, "general | setlike")
        ->check(CLI::IsMember({"general", "setlike"}))
        ->default_val("general");
    verify->add_option("--strategy", va.strategy, "auto | subsets | cliques")
        ->check(CLI::IsMember({"auto", "subsets", "cliques"}))
        ->default_val("auto");
    verify->add_option("--budget-pairs", va.budget_pairs, "Pairwise meet budget")->check(CLI::PositiveNumber);
    verify->add_option("--budget-subsets", va.budget_subsets, "Subset / clique node budget")
        ->check(CLI::PositiveNumber);
    verify->add_option("--out", va.out, "Certificate JSON output path");
    verify->add_option("--workers", va.workers, "Worker threads")->check(CLI::Range(1u, 256u))->default_val(1);
    verify->add_flag("--maximal", va.maximal, "Also test maximality in the ambient space");

    std::size_t bs = 0, bk = 0;
    std::uint64_t bq = 0;
    bool bjson = false;
    auto* bounds = app.add_subcommand("bounds", "Exact lower and upper size bounds");
    bounds->add_option("--s", bs, "Sunflower size s")->required();
    bounds->add_option("--k", bk, "Subspace dimension k")->required();
    bounds->add_option("--q", bq, "Field order")->required();
    bounds->add_flag("--json", bjson, "Print a JSON object");

    std::size_t en = 0, em = 0;
    unsigned eq = 2;
    bool estream = false;
    std::uint64_t ebudget = kDefaultEnumerationCap;
    auto* enumerate = app.add_subcommand("enumerate", "Count or stream the m-subspaces of V(n, q)");
    enumerate->add_option("--n", en, "Ambient dimension")->required();
    enumerate->add_option("--m", em, "Subspace dimension")->required();
    enumerate->add_option("--q", eq, "Field order (prime power <= 16)")->default_val(2);
    enumerate->add_flag("--stream", estream, "Print every subspace as a JSON line");
    enumerate->add_option("--budget", ebudget, "Enumeration cap")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kInvalid;
    }

    const Log log{json_log};
    try {
        if (*construct) return run_construct(ca, log);
        if (*verify) return run_verify(va, log);
        if (*bounds) return run_bounds(bs, bk, bq, bjson);
        if (*enumerate) return run_enumerate(en, em, eq, estream, ebudget);
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBudget;
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const json::exception& e) {
        std::cerr << "error: malformed JSON: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    }
    return kInvalid;
}
