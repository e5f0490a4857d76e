// cotsum: constants, single-angle diagnostics, identity verification,
// stable-law evaluation and Monte Carlo experiments for Diophantine and
// cotangent sums.
//
// Exit codes: 0 success, 1 invalid input (the message names the field),
// 2 runtime failure (e.g. a singular term).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cotsum/cf.hpp"
#include "cotsum/constants.hpp"
#include "cotsum/mc_io.hpp"
#include "cotsum/montecarlo.hpp"
#include "cotsum/stable.hpp"
#include "cotsum/sums.hpp"

using namespace cotsum;

namespace {

struct GlobalOpts {
    std::string output = "csv";   // csv|json
    std::string out_path;
    int verbosity = 0;
};

std::ostream& open_sink(const GlobalOpts& g, std::ofstream& file) {
    if (g.out_path.empty()) return std::cout;
    file.open(g.out_path);
    if (!file) throw std::runtime_error("cannot open output file: " + g.out_path);
    return file;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int cmd_constants(const GlobalOpts& g) {
    std::ofstream file;
    auto& os = open_sink(g, file);
    os << (g.output == "json" ? constants_table_to_json() : constants_table_to_csv());
    if (g.output == "json") os << '\n';
    return 0;
}

int cmd_cf(const GlobalOpts& g, const std::string& alpha_text, std::size_t max_terms) {
    Angle alpha = Angle::parse(alpha_text);
    ContinuedFraction cf = cf_expand(alpha, max_terms);
    std::ofstream file;
    auto& os = open_sink(g, file);
    if (g.output == "json") {
        std::ostringstream body;
        body << "{\n  \"alpha\": \"" << alpha.to_string() << "\",\n  \"exhausted\": "
             << (cf.exhausted ? "true" : "false") << ",\n  \"terms\": [\n";
        for (std::size_t k = 1; k <= cf.terms(); ++k) {
            body << "    {\"k\": " << k << ", \"a\": " << cf.quotient(k)
                 << ", \"p\": " << u128_to_string(cf.p[k]) << ", \"q\": " << u128_to_string(cf.q[k])
                 << ", \"u\": \"" << fmt(u_value_double(cf, alpha, k)) << "\"}"
                 << (k == cf.terms() ? "\n" : ",\n");
        }
        body << "  ]\n}\n";
        os << body.str();
        return 0;
    }
    os << "k,a_k,p_k,q_k,u_k\n";
    for (std::size_t k = 1; k <= cf.terms(); ++k)
        os << k << ',' << cf.quotient(k) << ',' << u128_to_string(cf.p[k]) << ','
           << u128_to_string(cf.q[k]) << ',' << fmt(u_value_double(cf, alpha, k)) << '\n';
    return 0;
}

int cmd_sum(const GlobalOpts& g, const std::string& alpha_text, std::uint64_t N,
            const std::string& kind_name, double p) {
    Angle alpha = Angle::parse(alpha_text);
    SumKind kind;
    kind.kernel = kernel_from_string(kind_name);
    kind.p = p;
    kind.validate();
    std::ofstream file;
    auto& os = open_sink(g, file);
    double value = direct_sum(alpha, N, kind);
    bool algebraic = kind.kernel != Kernel::cot && kind.kernel != Kernel::abs_cot;
    std::string exact;
    if (alpha.is_rational() && algebraic && p == double(unsigned(p))) {
        BigRat r = direct_sum_exact(alpha, N, kind.kernel, unsigned(p));
        std::ostringstream es;
        es << boost::multiprecision::numerator(r) << '/' << boost::multiprecision::denominator(r);
        exact = es.str();
    }
    if (g.output == "json") {
        os << "{\"alpha\": \"" << alpha.to_string() << "\", \"N\": " << N << ", \"kind\": \""
           << kind_name << "\", \"p\": " << p << ", \"value\": \"" << fmt(value) << "\"";
        if (!exact.empty()) os << ", \"exact\": \"" << exact << "\"";
        os << "}\n";
    } else {
        os << "alpha,N,kind,p,value,exact\n";
        os << alpha.to_string() << ',' << N << ',' << kind_name << ',' << p << ',' << fmt(value)
           << ',' << exact << '\n';
    }
    return 0;
}

int cmd_verify(const GlobalOpts& g, const std::string& alpha_text, unsigned p) {
    Angle alpha = Angle::parse(alpha_text);
    if (!alpha.is_rational())
        throw CLI::ValidationError("--alpha", "verify needs a rational angle p/q");
    BlockReport report = verify_block_identity(alpha, p);
    std::ofstream file;
    auto& os = open_sink(g, file);
    if (report.all_exact()) {
        os << "alpha=" << alpha.to_string() << " p=" << p << ": all blocks exact ("
           << report.blocks_checked << " blocks)\n";
        return 0;
    }
    os << "alpha=" << alpha.to_string() << " p=" << p << ": " << report.mismatches.size()
       << " mismatching blocks of " << report.blocks_checked << "\n";
    for (const auto& m : report.mismatches)
        os << "  block " << m.block << " side "
           << (m.side == SingularitySide::positive ? "positive" : "negative") << ": enumerated "
           << m.enumerated << " vs R-form " << m.via_r << "\n";
    throw std::runtime_error("block identity mismatch");
}

int cmd_stable(const GlobalOpts& g, double alpha0, double beta0, const std::string& action,
               const std::string& at, std::uint64_t count, std::uint64_t seed) {
    StableDist dist(StableParams{alpha0, beta0});
    std::ofstream file;
    auto& os = open_sink(g, file);
    auto parse_list = [](const std::string& text) {
        std::vector<double> xs;
        std::istringstream is(text);
        std::string tok;
        while (std::getline(is, tok, ',')) xs.push_back(std::stod(tok));
        return xs;
    };
    if (action == "cdf") {
        os << "x,cdf\n";
        for (double x : parse_list(at)) os << fmt(x) << ',' << fmt(dist.cdf(x)) << '\n';
    } else if (action == "quantile") {
        os << "q,x\n";
        for (double q : parse_list(at)) os << fmt(q) << ',' << fmt(dist.quantile(q)) << '\n';
    } else if (action == "charfn") {
        os << "t,re,im\n";
        for (double t : parse_list(at)) {
            auto c = dist.char_fn(t);
            os << fmt(t) << ',' << fmt(c.real()) << ',' << fmt(c.imag()) << '\n';
        }
    } else if (action == "sample") {
        Rng rng(seed);
        os << "i,sample\n";
        for (std::uint64_t i = 0; i < count; ++i) os << i << ',' << fmt(dist.sample(rng)) << '\n';
    } else {
        throw CLI::ValidationError("--action", "must be cdf|quantile|charfn|sample");
    }
    return 0;
}

int cmd_mc(const GlobalOpts& g, const std::string& config_path, const std::string& replot_from,
           const std::string& json_mirror) {
    std::ofstream file;
    auto& os = open_sink(g, file);
    std::vector<ResultRow> rows;
    if (!replot_from.empty()) {
        std::ifstream in(replot_from);
        if (!in) throw std::runtime_error("cannot open " + replot_from);
        rows = parse_result_csv(in);
    } else {
        std::ifstream in(config_path);
        if (!in) throw std::runtime_error("cannot open " + config_path);
        std::stringstream buf;
        buf << in.rdbuf();
        ExperimentConfig cfg = parse_experiment_config(buf.str());
        if (const char* threads = std::getenv("DLL_THREADS"))
            cfg.worker_count = unsigned(std::strtoul(threads, nullptr, 10));
        bool streamed = g.output != "json";
        if (streamed) {
            os << kResultCsvHeader << '\n';
            os.flush();
        }
        rows = run_experiment(cfg, [&](const ResultRow& row) {
            if (streamed) {
                os << result_row_to_csv(row) << '\n';
                os.flush();   // partial results survive a later failure
            } else {
                std::cerr << "done: " << row.statistic << " N=" << row.N << " ks=" << row.ks
                          << "\n";
            }
        });
        if (g.output == "json") os << result_rows_to_json(rows) << '\n';
        if (!json_mirror.empty()) {
            std::ofstream mirror(json_mirror);
            mirror << result_rows_to_json(rows) << '\n';
        }
        return 0;
    }
    // replot path: re-emit a previously produced table
    if (g.output == "json") os << result_rows_to_json(rows) << '\n';
    else write_result_csv(os, rows);
    if (!json_mirror.empty()) {
        std::ofstream mirror(json_mirror);
        mirror << result_rows_to_json(rows) << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Diophantine and cotangent sum toolkit: exact continued-fraction "
                 "identities, high-precision constants, stable laws and Monte Carlo "
                 "verification of their limit theorems."};
    app.require_subcommand(1);
    app.fallthrough();   // global --output/--out may follow the subcommand

    GlobalOpts g;
    app.add_option("--output", g.output, "output format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--out", g.out_path, "write output to this path instead of stdout");
    app.add_flag("-v,--verbose", g.verbosity, "more logging");

    auto* c_const = app.add_subcommand("constants", "dump the constants table");

    auto* c_cf = app.add_subcommand("cf", "continued fraction expansion of an angle");
    std::string cf_alpha;
    std::size_t cf_terms = 64;
    c_cf->add_option("--alpha", cf_alpha, "angle: p/q or a decimal in [0,1)")->required();
    c_cf->add_option("--max-terms", cf_terms, "maximum partial quotients")->capture_default_str();

    auto* c_sum = app.add_subcommand("sum", "evaluate sum_{n<=N} (kernel(n alpha) + g)/n^p");
    std::string sum_alpha, sum_kind;
    std::uint64_t sum_n = 0;
    double sum_p = 1.0;
    c_sum->add_option("--alpha", sum_alpha, "angle: p/q or decimal")->required();
    c_sum->add_option("--N", sum_n, "number of terms")->required()->check(CLI::PositiveNumber);
    c_sum->add_option("--kind", sum_kind,
                      "kernel: signed_reciprocal|unsigned_reciprocal|positive_part|"
                      "negative_part|cot|abs_cot|signed_power|unsigned_power")
        ->required();
    c_sum->add_option("--p", sum_p, "power for the power kernels")->capture_default_str();

    auto* c_verify = app.add_subcommand(
        "verify", "exact per-block near-singularity identity for a rational angle");
    std::string verify_alpha;
    unsigned verify_p = 1;
    c_verify->add_option("--alpha", verify_alpha, "rational angle p/q")->required();
    c_verify->add_option("--p", verify_p, "integer power >= 1")->check(CLI::Range(1u, 6u))
        ->capture_default_str();

    auto* c_stable = app.add_subcommand("stable", "stable law evaluation");
    double st_a = 1.0, st_b = 0.0;
    std::string st_action = "cdf", st_at;
    std::uint64_t st_count = 10, st_seed = 1;
    c_stable->add_option("--alpha0", st_a, "stability index in (0,2]")->required();
    c_stable->add_option("--beta0", st_b, "skewness in [-1,1]")->required();
    c_stable->add_option("--action", st_action, "cdf|quantile|charfn|sample")
        ->capture_default_str();
    c_stable->add_option("--at", st_at, "comma-separated evaluation points");
    c_stable->add_option("--count", st_count, "sample count")->capture_default_str();
    c_stable->add_option("--seed", st_seed, "sampler seed")->capture_default_str();

    std::string mc_families;
    for (const auto& name : family_names()) {
        if (!mc_families.empty()) mc_families += "|";
        mc_families += name;
    }
    auto* c_mc = app.add_subcommand(
        "mc", "run a Monte Carlo experiment from a JSON config.\nAccepted statistic "
              "families: " + mc_families);
    std::string mc_config, mc_replot, mc_mirror;
    c_mc->add_option("--config", mc_config, "experiment config (JSON)");
    c_mc->add_option("--replot-from", mc_replot, "re-emit a previously written CSV");
    c_mc->add_option("--json-mirror", mc_mirror, "also write a JSON mirror here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_const->parsed()) return cmd_constants(g);
        if (c_cf->parsed()) return cmd_cf(g, cf_alpha, cf_terms);
        if (c_sum->parsed()) return cmd_sum(g, sum_alpha, sum_n, sum_kind, sum_p);
        if (c_verify->parsed()) return cmd_verify(g, verify_alpha, verify_p);
        if (c_stable->parsed()) return cmd_stable(g, st_a, st_b, st_action, st_at, st_count, st_seed);
        if (c_mc->parsed()) {
            if (mc_config.empty() == mc_replot.empty())
                throw CLI::ValidationError("--config", "give exactly one of --config/--replot-from");
            return cmd_mc(g, mc_config, mc_replot, mc_mirror);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
