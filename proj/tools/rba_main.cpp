#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rba/comb.hpp"
#include "rba/egf.hpp"
#include "rba/expr.hpp"
#include "rba/verify.hpp"

namespace {

using namespace rba;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

AlgebraContext make_context(const std::string& lambda, int trunc, const std::string& backend) {
    Backend b = Backend::Recursive;
    if (backend == "stuffle") b = Backend::Stuffle;
    else if (backend != "recursive") throw BadArguments("unknown backend '" + backend + "'");
    return AlgebraContext(rat_from_string(lambda), trunc, b);
}

int run_eval(const std::string& text, const std::string& lambda, int trunc,
             const std::string& backend, const std::string& format) {
    const AlgebraContext ctx = make_context(lambda, trunc, backend);
    const auto ast = parse_expr(text);
    const RBAElement result = eval_expr(*ast, ctx);
    if (format == "json") std::cout << element_to_json(result) << '\n';
    else if (format == "csv") std::cout << element_to_csv(result);
    else if (format == "text") std::cout << element_to_text(result) << '\n';
    else throw BadArguments("unknown format '" + format + "'");
    return kExitOk;
}

// One table row: fixed argument columns plus the value.
struct Row {
    std::vector<std::pair<std::string, std::string>> cols;
};

void emit_rows(const std::string& family, const std::vector<std::string>& arg_names,
               const std::vector<Row>& rows, const std::string& format) {
    if (format == "csv") {
        std::cout << "family";
        for (const auto& a : arg_names) std::cout << ',' << a;
        std::cout << ",value\n";
        for (const Row& r : rows) {
            std::cout << family;
            for (const auto& [_, v] : r.cols) std::cout << ',' << v;
            std::cout << '\n';
        }
    } else if (format == "json") {
        std::cout << '[';
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i) std::cout << ',';
            std::cout << "{\"family\":\"" << family << '"';
            for (const auto& [k, v] : rows[i].cols) {
                std::cout << ",\"" << k << "\":";
                if (k == "value" || k == "type") std::cout << '"' << v << '"';
                else std::cout << v;
            }
            std::cout << '}';
        }
        std::cout << "]\n";
    } else {
        throw BadArguments("unknown format '" + format + "'");
    }
}

int run_table(const std::string& family, int nmax, int n, int k, int l,
              const std::string& type, const std::string& format) {
    std::vector<Row> rows;
    std::vector<std::string> args;
    auto row2 = [](int a, int b, const Int& v) {
        return Row{{{"n", std::to_string(a)}, {"k", std::to_string(b)}, {"value", v.get_str()}}};
    };
    if (family == "stirling" || family == "gen-stirling") {
        if (nmax < 1) throw BadArguments("table: requires --nmax >= 1");
        args = {"n", "k"};
        for (int i = 1; i <= nmax; ++i) {
            for (int j = 1; j <= i; ++j)
                rows.push_back(row2(i, j, family == "stirling" ? stirling2(i, j)
                                                               : gen_stirling_rec(i, j)));
        }
    } else if (family == "bell" || family == "gen-bell") {
        if (nmax < 1) throw BadArguments("table: requires --nmax >= 1");
        args = {"n"};
        for (int i = 1; i <= nmax; ++i) {
            const Int v = family == "bell" ? bell(i) : gen_bell(i);
            rows.push_back(Row{{{"n", std::to_string(i)}, {"value", v.get_str()}}});
        }
    } else if (family == "cover" || family == "cover-distinct-max") {
        if (k < 1 || l < 1) throw BadArguments("table: requires --k >= 1 and --l >= 1");
        args = {"n", "k", "l"};
        const bool distinct = family == "cover-distinct-max";
        const int lo = distinct ? k + l - 1 : l;
        for (int i = lo; i <= k * l; ++i) {
            const Int v = distinct ? cover_count_distinct_max(i, k, l) : cover_count(i, k, l);
            rows.push_back(Row{{{"n", std::to_string(i)},
                                {"k", std::to_string(k)},
                                {"l", std::to_string(l)},
                                {"value", v.get_str()}}});
        }
    } else if (family == "c-of-type") {
        if (n < 1 || k < 1 || type.empty())
            throw BadArguments("table: requires --n, --k and --type");
        std::vector<int> parts;
        std::istringstream is(type);
        std::string piece;
        while (std::getline(is, piece, ',')) parts.push_back(std::stoi(piece));
        const Composition I{parts};
        std::string tname;
        for (size_t i = 0; i < parts.size(); ++i)
            tname += (i ? "+" : "") + std::to_string(parts[i]);
        args = {"n", "k", "type"};
        rows.push_back(Row{{{"n", std::to_string(n)},
                            {"k", std::to_string(k)},
                            {"type", tname},
                            {"value", restricted_type_count(n, k, I).get_str()}}});
    } else if (family == "c-total") {
        if (n < 1 || k < 1) throw BadArguments("table: requires --n and --k");
        args = {"n", "k"};
        rows.push_back(row2(n, k, multiset_partition_total(n, k)));
    } else {
        throw BadArguments("table: unknown family '" + family + "'");
    }
    emit_rows(family, args, rows, format);
    return kExitOk;
}

LambdaEGF egf_from_spec(const std::string& spec, const AlgebraContext& ctx) {
    if (spec == "ones") return LambdaEGF::ones(ctx);
    if (spec == "ones-from-1") return LambdaEGF::ones_from_1(ctx);
    if (spec.rfind("delta:", 0) == 0) return LambdaEGF::delta(ctx, std::stoi(spec.substr(6)));
    if (spec.rfind("list:", 0) == 0) {
        std::vector<Rat> coeffs;
        std::istringstream is(spec.substr(5));
        std::string piece;
        while (std::getline(is, piece, ',')) coeffs.push_back(rat_from_string(piece));
        return LambdaEGF(ctx, std::move(coeffs));
    }
    throw BadArguments("unknown sequence spec '" + spec + "'");
}

void emit_egf(const LambdaEGF& h, const std::string& format) {
    if (format == "json") {
        std::cout << '[';
        for (int i = 0; i <= h.context().trunc; ++i) {
            if (i) std::cout << ',';
            std::cout << '"' << rat_to_string(h.at(i)) << '"';
        }
        std::cout << "]\n";
    } else if (format == "csv") {
        std::cout << "n,coeff\n";
        for (int i = 0; i <= h.context().trunc; ++i)
            std::cout << i << ',' << rat_to_string(h.at(i)) << '\n';
    } else if (format == "text") {
        std::cout << element_to_text(egf_to_element(h)) << '\n';
    } else {
        throw BadArguments("unknown format '" + format + "'");
    }
}

int run_egf(const std::string& mode, const std::vector<std::string>& f_specs,
            const std::string& g_spec, int k, const std::string& lambda, int trunc,
            const std::string& format) {
    const AlgebraContext ctx = make_context(lambda, trunc, "recursive");
    auto need_f = [&]() -> LambdaEGF {
        if (f_specs.empty()) throw BadArguments("egf: requires --f");
        return egf_from_spec(f_specs.front(), ctx);
    };
    LambdaEGF h = LambdaEGF::zero(ctx);
    if (mode == "product") {
        if (g_spec.empty()) throw BadArguments("egf product: requires --g");
        h = egf_product(need_f(), egf_from_spec(g_spec, ctx));
    } else if (mode == "kfold") {
        std::vector<LambdaEGF> fs;
        for (const auto& s : f_specs) fs.push_back(egf_from_spec(s, ctx));
        h = egf_kfold(fs);
    } else if (mode == "divided-power") {
        h = divided_power(need_f(), k);
    } else if (mode == "compose") {
        if (g_spec.empty()) throw BadArguments("egf compose: requires --g");
        h = compose(egf_from_spec(g_spec, ctx), need_f());
    } else {
        throw BadArguments("egf: unknown mode '" + mode + "'");
    }
    emit_egf(h, format);
    return kExitOk;
}

int run_verify(const std::string& ident, int trunc, uint64_t seed, int samples) {
    const IdentityReport report = verify_identity(ident, trunc, seed, samples);
    std::cout << report.to_json() << '\n';
    return report.equal ? kExitOk : kExitVerifyFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Free commutative Rota-Baxter algebra calculator"};
    app.require_subcommand(1);

    std::string lambda = "1";
    int trunc = 10;
    std::string backend = "recursive";

    auto* eval_cmd = app.add_subcommand("eval", "Evaluate an algebra expression");
    std::string expr_text;
    eval_cmd->add_option("expr", expr_text, "expression, e.g. \"one(1)*one(1)\"")->required();
    eval_cmd->add_option("--lambda", lambda, "weight as p/q");
    eval_cmd->add_option("--trunc", trunc, "filtration cap");
    eval_cmd->add_option("--backend", backend, "recursive|stuffle");
    std::string eval_format = "json";
    eval_cmd->add_option("--format", eval_format, "json|csv|text");

    auto* table_cmd = app.add_subcommand("table", "Print a number-family table");
    std::string family, type;
    int nmax = 0, n = 0, k = 0, l = 0;
    table_cmd->add_option("family", family,
                          "stirling|bell|gen-stirling|gen-bell|cover|cover-distinct-max|"
                          "c-of-type|c-total")
        ->required();
    table_cmd->add_option("--nmax", nmax, "largest n");
    table_cmd->add_option("--n", n, "n argument");
    table_cmd->add_option("--k", k, "k argument");
    table_cmd->add_option("--l", l, "l (block size) argument");
    table_cmd->add_option("--type", type, "composition, e.g. 2,1,1");
    std::string table_format = "csv";
    table_cmd->add_option("--format", table_format, "csv|json");

    auto* egf_cmd = app.add_subcommand("egf", "Lambda-EGF calculus");
    std::string egf_mode, g_spec;
    std::vector<std::string> f_specs;
    int dp_k = 0;
    egf_cmd->add_option("mode", egf_mode, "product|kfold|divided-power|compose")->required();
    egf_cmd->add_option("--f", f_specs, "sequence spec (repeatable for kfold)");
    egf_cmd->add_option("--g", g_spec, "sequence spec");
    egf_cmd->add_option("--k", dp_k, "divided-power order");
    egf_cmd->add_option("--lambda", lambda, "weight as p/q");
    egf_cmd->add_option("--trunc", trunc, "filtration cap");
    std::string egf_format = "json";
    egf_cmd->add_option("--format", egf_format, "json|csv|text");

    auto* verify_cmd = app.add_subcommand("verify", "Check a built-in identity");
    std::string ident;
    uint64_t seed = 20120809;
    int samples = 500;
    std::string names;
    for (const auto& s : rba::verify_identity_names()) names += (names.empty() ? "" : "|") + s;
    verify_cmd->add_option("identity", ident, names)->required();
    verify_cmd->add_option("--trunc", trunc, "truncation / size bound");
    verify_cmd->add_option("--seed", seed, "RNG seed for randomized suites");
    verify_cmd->add_option("--samples", samples, "sample count for randomized suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*eval_cmd) return run_eval(expr_text, lambda, trunc, backend, eval_format);
        if (*table_cmd) return run_table(family, nmax, n, k, l, type, table_format);
        if (*egf_cmd) return run_egf(egf_mode, f_specs, g_spec, dp_k, lambda, trunc, egf_format);
        if (*verify_cmd) return run_verify(ident, trunc, seed, samples);
    } catch (const rba::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
