// Batch front-end: every module behind a subcommand with machine-readable
// JSON/CSV output. Exit codes: 0 ok, 2 precision cap, 3 memory guard,
// 64 usage, 65 precondition violation.

#include "psap/admissibility.hpp"
#include "psap/common.hpp"
#include "psap/expsum_lab.hpp"
#include "psap/harmonic.hpp"
#include "psap/ps_verify.hpp"
#include "psap/rational.hpp"
#include "psap/reference.hpp"
#include "psap/sieve.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace psap;

namespace {

struct Output {
    std::string path;  // empty: stdout
    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text << '\n';
            return;
        }
        std::ofstream os(path, std::ios::binary);
        if (!os) throw std::invalid_argument("cannot open output path: " + path);
        os << text << '\n';
    }
};

int selftest_report(const std::string& name, const std::vector<std::pair<std::string, bool>>& checks) {
    bool all = true;
    for (const auto& [label, ok] : checks) {
        std::cout << (ok ? "PASS" : "FAIL") << "  " << name << ": " << label << '\n';
        all = all && ok;
    }
    return all ? 0 : 1;
}

expsum::BlackBox seeded_phase(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double a1 = uni(rng), a2 = uni(rng);
    return [a1, a2](std::uint64_t n) {
        return expsum::e_of(a1 * static_cast<long double>(n) +
                            a2 * std::sqrt(static_cast<long double>(n)));
    };
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exponent-pair / sieve workbench for [p^c] + [m^c] = N"};
    app.require_subcommand(1);

    std::string format = "json";
    Output out;
    int workers = 1;
    app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", out.path, "write report to file instead of stdout");
    app.add_option("--workers", workers, "worker threads where supported")
        ->check(CLI::Range(1, 256));

    // ---- pairs ----
    auto* sc_pairs = app.add_subcommand("pairs", "enumerate exponent pairs from A/B words");
    int max_len = 6;
    bool pairs_selftest = false;
    sc_pairs->add_option("--max-len", max_len, "maximum word length")->check(CLI::Range(0, 16));
    sc_pairs->add_flag("--selftest", pairs_selftest);

    // ---- admissible ----
    auto* sc_adm = app.add_subcommand("admissible", "constraint system / LP for a pair");
    std::string word_str, kappa_str, lambda_str, gamma_str;
    int search_len = -1;
    bool adm_selftest = false;
    sc_adm->add_option("--word", word_str, "A/B word applied to (1/2,1/2)");
    sc_adm->add_option("--kappa", kappa_str, "exact rational kappa");
    sc_adm->add_option("--lambda", lambda_str, "exact rational lambda");
    sc_adm->add_option("--gamma", gamma_str, "evaluate the LP at this gamma");
    sc_adm->add_option("--search-len", search_len,
                       "search all words up to this length for the best threshold");
    sc_adm->add_flag("--selftest", adm_selftest);

    // ---- bound ----
    auto* sc_bound = app.add_subcommand("bound", "almost-prime bound for an exponent c");
    std::string c_str = "1.02";
    bool bound_selftest = false;
    sc_bound->add_option("--c", c_str, "exponent c as rational or decimal");
    sc_bound->add_flag("--selftest", bound_selftest);

    // ---- vaaler ----
    auto* sc_vaaler = app.add_subcommand("vaaler", "Vaaler approximation of the sawtooth");
    int H = 10, points = 1000;
    bool vaaler_selftest = false;
    sc_vaaler->add_option("--degree", H, "degree H")->check(CLI::Range(1, 100000));
    sc_vaaler->add_option("--points", points, "grid points for csv / margin scan");
    sc_vaaler->add_flag("--selftest", vaaler_selftest);

    // ---- theta ----
    auto* sc_theta = app.add_subcommand("theta", "smoothing family / partition of unity");
    int Z = 16, r = 8;
    int theta_points = 1000;
    bool theta_selftest = false;
    sc_theta->add_option("--z", Z, "family parameter Z")->check(CLI::Range(1, 4096));
    sc_theta->add_option("--r", r, "convolution order r")->check(CLI::Range(1, 48));
    sc_theta->add_option("--points", theta_points, "grid points");
    sc_theta->add_flag("--selftest", theta_selftest);

    // ---- sieve ----
    auto* sc_sieve = app.add_subcommand("sieve", "Rosser weights of level D, cutoff z");
    std::int64_t D = 1000, z = 31;
    bool sieve_selftest = false;
    sc_sieve->add_option("--d", D, "level D")->check(CLI::Range(std::int64_t(5), std::int64_t(1e12)));
    sc_sieve->add_option("--z", z, "cutoff z")->check(CLI::Range(std::int64_t(3), std::int64_t(1e7)));
    sc_sieve->add_flag("--selftest", sieve_selftest);

    // ---- vaughan ----
    auto* sc_vaughan = app.add_subcommand("vaughan", "exact Vaughan dissection check");
    std::uint64_t vaughan_P = 200, vaughan_seed = 1;
    bool vaughan_selftest = false;
    sc_vaughan->add_option("--p", vaughan_P, "dyadic scale (P, 2P]")->check(CLI::Range(8, 2000000));
    sc_vaughan->add_option("--seed", vaughan_seed, "seed for the random phase function");
    sc_vaughan->add_flag("--selftest", vaughan_selftest);

    // ---- expsum ----
    auto* sc_expsum = app.add_subcommand("expsum", "direct evaluation of W / U / Gamma / Sigma");
    std::string kind = "w";
    std::uint64_t es_N = 100000;
    int es_j = 0;
    std::string es_c = "1.02";
    double es_P = 50.0;
    std::int64_t es_d = 3, es_h = 1, es_r = 0;
    double es_T = -1.0;
    std::int64_t es_z = 10, es_D = 100;
    int es_Q = 8;
    std::uint64_t es_len = 64, es_seed = 7;
    bool es_oracle = false, es_selftest = false, es_full_range = false;
    sc_expsum->add_option("--kind", kind, "w|u|gamma|sigma|weyl|probe")
        ->check(CLI::IsMember({"w", "u", "gamma", "sigma", "weyl", "probe"}));
    sc_expsum->add_option("--n", es_N, "N");
    sc_expsum->add_option("--j", es_j)->check(CLI::Range(0, 1));
    sc_expsum->add_option("--c", es_c, "exponent c");
    sc_expsum->add_option("--p-window", es_P, "dyadic prime window (P, 2P]");
    sc_expsum->add_flag("--full-range", es_full_range, "use all p with [p^c] < N");
    sc_expsum->add_option("--d", es_d, "denominator of v = h/d");
    sc_expsum->add_option("--h-freq", es_h, "numerator of v = h/d");
    sc_expsum->add_option("--r-freq", es_r, "frequency r in U");
    sc_expsum->add_option("--t", es_T, "T in [N, N+2] (default N)");
    sc_expsum->add_option("--z-cut", es_z, "sieve cutoff z");
    sc_expsum->add_option("--big-d", es_D, "sieve level D");
    sc_expsum->add_option("--q", es_Q, "Q in the Weyl-van der Corput check");
    sc_expsum->add_option("--len", es_len, "sequence length for weyl");
    sc_expsum->add_option("--seed", es_seed, "seed for weyl random sequence");
    sc_expsum->add_flag("--oracle", es_oracle, "report high-precision oracle delta (w/u)");
    sc_expsum->add_flag("--selftest", es_selftest);

    // ---- scan ----
    auto* sc_scan = app.add_subcommand("scan", "per-N representation records");
    std::string scan_c = "1.02";
    std::uint64_t scan_lo = 1000, scan_hi = 2000;
    bool scan_witness = false, scan_selftest = false;
    sc_scan->add_option("--c", scan_c);
    sc_scan->add_option("--n-lo", scan_lo);
    sc_scan->add_option("--n-hi", scan_hi);
    sc_scan->add_flag("--witnesses", scan_witness, "include witness lists (json only)");
    sc_scan->add_flag("--selftest", scan_selftest);

    // ---- verify ----
    auto* sc_verify = app.add_subcommand("verify", "theorem exception summary over a range");
    std::string ver_c = "1.02";
    std::uint64_t ver_lo = 1000, ver_hi = 100000;
    bool verify_selftest = false;
    sc_verify->add_option("--c", ver_c);
    sc_verify->add_option("--n-lo", ver_lo);
    sc_verify->add_option("--n-hi", ver_hi);
    sc_verify->add_flag("--selftest", verify_selftest);

    // ---- gamma0 ----
    auto* sc_gamma0 = app.add_subcommand("gamma0", "main-term diagnostic");
    std::uint64_t g0_N = 1000000;
    std::string g0_c = "1.02";
    std::int64_t g0_z = 16, g0_D = 1000;
    double g0_P = 0.0;
    bool g0_full = false, g0_selftest = false;
    sc_gamma0->add_option("--n", g0_N);
    sc_gamma0->add_option("--c", g0_c);
    sc_gamma0->add_option("--z", g0_z);
    sc_gamma0->add_option("--big-d", g0_D);
    sc_gamma0->add_option("--p-window", g0_P, "explicit P (default paper normalization)");
    sc_gamma0->add_flag("--full-window", g0_full, "use the top dyadic window (P = p_max/2)");
    sc_gamma0->add_flag("--selftest", g0_selftest);

    // let --format/--out/--workers appear after the subcommand too
    for (auto* sc : app.get_subcommands([](const CLI::App*) { return true; }))
        sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        if (sc_pairs->parsed()) {
            if (pairs_selftest) {
                auto got = pairs::apply_word(pairs::Word("BAABAA"), pairs::trivial_pair());
                auto en = pairs::enumerate_pairs(4);
                bool inv = true;
                for (const auto& wp : en) inv = inv && wp.pair.valid();
                return selftest_report("pairs",
                                       {{"BAABAA lands on (13/40,11/20)",
                                         got.kappa == Rational(13, 40) && got.lambda == Rational(11, 20)},
                                        {"enumerated pairs valid", inv}});
            }
            auto list = pairs::enumerate_pairs(max_len);
            if (format == "csv") {
                std::ostringstream os;
                os << "word,kappa,lambda\n";
                for (const auto& wp : list)
                    os << wp.word.letters << ',' << rat_string(wp.pair.kappa) << ','
                       << rat_string(wp.pair.lambda) << '\n';
                out.write(os.str());
            } else {
                JsonWriter w;
                w.begin_arr();
                for (const auto& wp : list) {
                    w.begin_obj();
                    w.key("word").value(wp.word.letters);
                    w.key("kappa").value(rat_string(wp.pair.kappa));
                    w.key("lambda").value(rat_string(wp.pair.lambda));
                    w.end_obj();
                }
                w.end_arr();
                out.write(w.str());
            }
        } else if (sc_adm->parsed()) {
            if (adm_selftest) {
                auto p = pairs::apply_word(pairs::Word("BAABAA"), pairs::trivial_pair());
                bool th_ok = admissibility::gamma_threshold(p) == Rational(238, 247);
                auto md = admissibility::max_delta(p, Rational(97, 100));
                return selftest_report(
                    "admissible", {{"threshold 238/247", th_ok},
                                   {"delta(97/100) = 53/7500",
                                    md && md->delta_sup == Rational(53, 7500)}});
            }
            if (search_len >= 0) {
                auto best = admissibility::search_best_pair(search_len, workers);
                out.write(admissibility::pair_report_json(best.word, best.pair));
                return 0;
            }
            pairs::ExponentPair p;
            pairs::Word word;
            if (!word_str.empty()) {
                word = pairs::Word(word_str);
                p = pairs::apply_word(word, pairs::trivial_pair());
            } else if (!kappa_str.empty() && !lambda_str.empty()) {
                p = {parse_rational(kappa_str), parse_rational(lambda_str)};
                pairs::require_valid(p);
            } else {
                throw std::invalid_argument("admissible: give --word or --kappa/--lambda");
            }
            if (!gamma_str.empty()) {
                Rational g = parse_rational(gamma_str);
                auto res = admissibility::max_delta(p, g);
                JsonWriter w;
                w.begin_obj();
                w.key("word").value(word.letters);
                w.key("kappa").value(rat_string(p.kappa));
                w.key("lambda").value(rat_string(p.lambda));
                w.key("gamma").value(rat_string(g));
                w.key("feasible").value(res && res->feasible);
                if (res) {
                    w.key("delta_max").value(rat_string(res->delta_sup));
                    w.key("q_opt").value(rat_string(res->q_opt));
                    auto q = admissibility::optimal_q(p, g, res->delta_sup);
                    if (q)
                        w.key("q_balanced").value(rat_string(*q));
                    else
                        w.key("q_balanced").null();
                    w.key("binding").begin_arr();
                    for (const auto& t : res->binding) w.value(t);
                    w.end_arr();
                }
                w.end_obj();
                out.write(w.str());
            } else {
                out.write(admissibility::pair_report_json(word, p));
            }
        } else if (sc_bound->parsed()) {
            if (bound_selftest)
                return selftest_report(
                    "bound", {{"c=1 gives 51",
                               admissibility::prime_factor_bound(Rational(1)) == 51},
                              {"c=101/100 gives 68",
                               admissibility::prime_factor_bound(Rational(101, 100)) == 68}});
            Rational c = parse_rational(c_str);
            JsonWriter w;
            w.begin_obj();
            w.key("c").value(rat_string(c));
            w.key("bound").value(admissibility::prime_factor_bound(c));
            w.end_obj();
            out.write(w.str());
        } else if (sc_vaaler->parsed()) {
            auto v = harmonic::vaaler(H);
            if (vaaler_selftest) {
                double worst = 1e9;
                for (int i = 0; i < 20000; ++i) {
                    double x = i / 20000.0;
                    worst = std::min(worst,
                                     v.majorant(x) - std::fabs(harmonic::psi(x) - v.main_sum(x)));
                }
                return selftest_report("vaaler", {{"majorant dominates on grid", worst >= -1e-10}});
            }
            if (format == "csv") {
                std::ostringstream os;
                harmonic::write_vaaler_csv(os, v, points);
                out.write(os.str());
            } else {
                double worst = 1e9, sum_b = 0;
                for (int i = 0; i < points; ++i) {
                    double x = static_cast<double>(i) / points;
                    worst = std::min(worst,
                                     v.majorant(x) - std::fabs(harmonic::psi(x) - v.main_sum(x)));
                }
                for (int h = -H; h <= H; ++h) sum_b += v.b_at(h);
                JsonWriter w;
                w.begin_obj();
                w.key("H").value(std::int64_t(H));
                w.key("b0").value(v.b_at(0));
                w.key("sum_b").value(sum_b);
                w.key("min_margin_on_grid").value(worst);
                w.key("grid_points").value(std::int64_t(points));
                w.end_obj();
                out.write(w.str());
            }
        } else if (sc_theta->parsed()) {
            auto fam = harmonic::theta_family(Z, r);
            if (theta_selftest) {
                double worst = 0;
                for (int i = 0; i < 5000; ++i)
                    worst = std::max(worst, std::fabs(fam.partition_sum(i / 5000.0) - 1.0));
                return selftest_report("theta", {{"partition of unity on grid", worst <= 1e-9}});
            }
            if (format == "csv") {
                std::ostringstream os;
                harmonic::write_theta_csv(os, fam, theta_points);
                out.write(os.str());
            } else {
                double worst = 0;
                for (int i = 0; i < theta_points; ++i)
                    worst = std::max(worst,
                                     std::fabs(fam.partition_sum(static_cast<double>(i) / theta_points) - 1.0));
                std::complex<double> g0_sum = 0;
                for (int zz = 0; zz < 2 * Z; ++zz) g0_sum += fam.g(zz, 0);
                JsonWriter w;
                w.begin_obj();
                w.key("Z").value(std::int64_t(Z));
                w.key("r").value(std::int64_t(r));
                w.key("partition_max_dev").value(worst);
                w.key("sum_g0").value(g0_sum.real());
                w.end_obj();
                out.write(w.str());
            }
        } else if (sc_sieve->parsed()) {
            auto ctx = sieve::SieveContext::make(D, z);
            auto table = sieve::rosser_weights(ctx);
            if (sieve_selftest) {
                auto sums = sieve::sieve_sums(table);
                bool sandwich_ok = true;
                for (std::uint64_t n = 1; n <= 2000; ++n) {
                    auto s = sieve::sandwich_check(n, table);
                    sandwich_ok = sandwich_ok && s.lo <= s.mid && s.mid <= s.hi;
                }
                return selftest_report("sieve",
                                       {{"N- <= B <= N+", sums.n_minus <= sums.B && sums.B <= sums.n_plus},
                                        {"sandwich holds to 2000", sandwich_ok}});
            }
            if (format == "csv") {
                std::ostringstream os;
                sieve::write_weights_csv(os, table);
                out.write(os.str());
            } else {
                out.write(sieve::sums_json(table));
            }
        } else if (sc_vaughan->parsed()) {
            auto f = seeded_phase(vaughan_seed);
            if (vaughan_selftest) {
                auto pieces = expsum::vaughan_decompose(64, f);
                auto direct = expsum::lambda_weighted_sum(64, f);
                return selftest_report(
                    "vaughan", {{"identity exact at P=64",
                                 std::abs(pieces.total() - direct) <= 1e-9 * (1 + std::abs(direct))}});
            }
            auto pieces = expsum::vaughan_decompose(vaughan_P, f);
            auto direct = expsum::lambda_weighted_sum(vaughan_P, f);
            JsonWriter w;
            w.begin_obj();
            w.key("P").value(vaughan_P);
            w.key("seed").value(vaughan_seed);
            w.key("u").value(pieces.u);
            w.key("S1_re").value(pieces.s1.real());
            w.key("S1_im").value(pieces.s1.imag());
            w.key("S2_re").value(pieces.s2.real());
            w.key("S2_im").value(pieces.s2.imag());
            w.key("S3_re").value(pieces.s3.real());
            w.key("S3_im").value(pieces.s3.imag());
            w.key("direct_re").value(direct.real());
            w.key("direct_im").value(direct.imag());
            w.key("identity_delta").value(std::abs(pieces.total() - direct));
            w.end_obj();
            out.write(w.str());
        } else if (sc_expsum->parsed()) {
            Rational c = parse_rational(es_c);
            if (es_selftest) {
                certified::PowerPair pw(c);
                auto ctx = expsum::ExpSumContext::make(10000, 0, c, 20, 1, 0);
                auto w0 = expsum::eval_W(ctx, pw);
                double theta_sum = 0;
                for (std::uint32_t p : primes_up_to(40))
                    if (p > 20) theta_sum += std::log(static_cast<double>(p));
                std::vector<expsum::Cplx> ones(50, 1.0);
                auto wc = expsum::weyl_vdc_check(ones, 5);
                return selftest_report("expsum",
                                       {{"W(0) is the Chebyshev sum",
                                         std::fabs(w0.real() - theta_sum) <= 1e-9 && std::fabs(w0.imag()) <= 1e-12},
                                        {"weyl inequality on constant sequence", wc.lhs <= wc.rhs + 1e-9}});
            }
            JsonWriter w;
            w.begin_obj();
            w.key("kind").value(kind);
            w.key("c").value(rat_string(c));
            if (kind == "w" || kind == "u") {
                certified::PowerPair pw(c);
                auto ctx = expsum::ExpSumContext::make(es_N, es_j, c, es_P, es_d, es_h);
                ctx.r = es_r;
                ctx.T = es_T < 0 ? static_cast<double>(es_N) : es_T;
                std::complex<double> val =
                    (kind == "w") ? expsum::eval_W(ctx, pw) : expsum::eval_U(ctx);
                w.key("N").value(es_N);
                w.key("j").value(std::int64_t(es_j));
                w.key("P").value(es_P);
                w.key("v").value(ctx.v());
                if (kind == "u") {
                    w.key("r").value(static_cast<std::int64_t>(es_r));
                    w.key("T").value(ctx.T);
                }
                w.key("re").value(val.real());
                w.key("im").value(val.imag());
                w.key("abs").value(std::abs(val));
                if (es_oracle) {
                    reference::HpEvaluator hp(c);
                    auto ref = (kind == "w") ? hp.eval_W(ctx, pw) : hp.eval_U(ctx);
                    w.key("oracle_delta").value(std::abs(val - ref));
                }
            } else if (kind == "gamma") {
                auto g = expsum::eval_Gamma(es_N, c, es_z, es_full_range ? 0.0 : es_P);
                w.key("N").value(es_N);
                w.key("z").value(static_cast<std::int64_t>(es_z));
                w.key("log_sum").value(g.log_sum);
                w.key("solutions").value(g.solutions);
            } else if (kind == "sigma") {
                // default cutoff follows z ~ sqrt(D) when not given explicitly
                if (sc_expsum->count("--z-cut") == 0)
                    es_z = std::max<std::int64_t>(
                        3, static_cast<std::int64_t>(std::llround(std::sqrt(double(es_D)))));
                double s = expsum::eval_Sigma(es_N, c, es_D, es_z, es_j,
                                              es_full_range ? 0.0 : es_P);
                w.key("N").value(es_N);
                w.key("j").value(std::int64_t(es_j));
                w.key("D").value(static_cast<std::int64_t>(es_D));
                w.key("z").value(static_cast<std::int64_t>(es_z));
                w.key("value").value(s);
            } else if (kind == "weyl") {
                std::mt19937_64 rng(es_seed);
                std::uniform_real_distribution<double> uni(-1.0, 1.0);
                std::vector<expsum::Cplx> zs(es_len);
                for (auto& v : zs) v = {uni(rng), uni(rng)};
                auto chk = expsum::weyl_vdc_check(zs, es_Q);
                w.key("len").value(es_len);
                w.key("Q").value(std::int64_t(es_Q));
                w.key("lhs").value(chk.lhs);
                w.key("rhs").value(chk.rhs);
                w.key("holds").value(chk.lhs <= chk.rhs + 1e-9 * (1 + chk.rhs));
            } else {  // probe
                auto p = pairs::apply_word(pairs::Word("BAABAA"), pairs::trivial_pair());
                std::vector<double> l1s{1, 10, 100};
                std::vector<double> sigmas{1.5, 2.0, 2.5};
                auto rows = expsum::exponent_pair_probe(p, es_P, l1s, sigmas);
                if (format == "csv") {
                    std::ostringstream os;
                    os << "sigma,lambda1,a,sum_abs,bound,ratio\n";
                    for (const auto& row : rows)
                        os << format_double(row.sigma) << ',' << format_double(row.lambda1)
                           << ',' << format_double(row.a) << ',' << format_double(row.sum_abs)
                           << ',' << format_double(row.bound) << ',' << format_double(row.ratio)
                           << '\n';
                    out.write(os.str());
                    return 0;
                }
                w.key("a").value(es_P);
                w.key("rows").begin_arr();
                for (const auto& row : rows) {
                    w.begin_obj();
                    w.key("sigma").value(row.sigma);
                    w.key("lambda1").value(row.lambda1);
                    w.key("sum_abs").value(row.sum_abs);
                    w.key("bound").value(row.bound);
                    w.key("ratio").value(row.ratio);
                    w.end_obj();
                }
                w.end_arr();
            }
            w.end_obj();
            out.write(w.str());
        } else if (sc_scan->parsed()) {
            auto cfg = verify::PSConfig::make(parse_rational(scan_c), scan_lo, scan_hi);
            cfg.workers = workers;
            cfg.witnesses = scan_witness;
            if (scan_selftest) {
                auto cfg2 = verify::PSConfig::make(parse_rational("1.02"), 1, 50);
                cfg2.witnesses = true;
                auto recs = verify::scan_collect(cfg2);
                bool n5 = false;
                for (const auto& rec : recs)
                    if (rec.n == 5)
                        for (const auto& wit : rec.witnesses)
                            if (wit.p == 2 && wit.m == 3) n5 = true;
                return selftest_report("scan", {{"N=5 has witness (2,3)", n5}});
            }
            auto recs = verify::scan_collect(cfg);
            if (format == "csv") {
                std::ostringstream os;
                verify::write_records_csv(os, recs);
                out.write(os.str());
            } else {
                JsonWriter w;
                w.begin_arr();
                for (const auto& recv : recs) {
                    w.begin_obj();
                    w.key("N").value(recv.n);
                    w.key("count").value(recv.count);
                    if (recv.min_omega)
                        w.key("min_omega").value(*recv.min_omega);
                    else
                        w.key("min_omega").null();
                    w.key("bound").value(recv.bound);
                    w.key("satisfied").value(recv.satisfied);
                    if (cfg.witnesses) {
                        w.key("witnesses").begin_arr();
                        for (const auto& wit : recv.witnesses) {
                            w.begin_obj();
                            w.key("p").value(wit.p);
                            w.key("m").value(wit.m);
                            w.end_obj();
                        }
                        w.end_arr();
                    }
                    w.end_obj();
                }
                w.end_arr();
                out.write(w.str());
            }
        } else if (sc_verify->parsed()) {
            if (verify_selftest) {
                auto cfg2 = verify::PSConfig::make(parse_rational("1.02"), 1000, 2000);
                auto s = verify::verify_theorem(cfg2);
                return selftest_report("verify", {{"no exceptions in [1000,2000] at c=1.02",
                                                   s.no_representation == 0 && s.exceed_bound == 0}});
            }
            auto cfg = verify::PSConfig::make(parse_rational(ver_c), ver_lo, ver_hi);
            cfg.workers = workers;
            out.write(verify::summary_json(verify::verify_theorem(cfg)));
        } else if (sc_gamma0->parsed()) {
            Rational c = parse_rational(g0_c);
            if (g0_selftest) {
                auto rep = verify::gamma0_diagnostic(100000, c, 3, 100);
                return selftest_report("gamma0",
                                       {{"empty P(z) gives sieve factor 1",
                                         std::fabs(rep.sieve_factor - 1.0) < 1e-15},
                                        {"A(N) positive", rep.a_n > 0}});
            }
            double P = g0_P;
            if (g0_full) {
                certified::PowerPair pw(c);
                P = static_cast<double>(pw.inverse().floor_pow(g0_N)) / 2.0;
            }
            auto rep = verify::gamma0_diagnostic(g0_N, c, g0_z, g0_D, P);
            JsonWriter w;
            w.begin_obj();
            w.key("N").value(g0_N);
            w.key("c").value(rat_string(c));
            w.key("z").value(static_cast<std::int64_t>(g0_z));
            w.key("D").value(static_cast<std::int64_t>(g0_D));
            w.key("p_lo").value(rep.p_lo);
            w.key("p_hi").value(rep.p_hi);
            w.key("A_N").value(rep.a_n);
            w.key("sieve_factor").value(rep.sieve_factor);
            w.key("gamma0").value(rep.gamma0);
            w.key("ratio_to_main_term").value(rep.ratio);
            w.end_obj();
            out.write(w.str());
        }
    } catch (const precision_cap_error& e) {
        std::cerr << "precision cap: " << e.what() << '\n';
        return 2;
    } catch (const resource_guard_error& e) {
        std::cerr << "memory guard: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "precondition: " << e.what() << '\n';
        return 65;
    } catch (const std::domain_error& e) {
        std::cerr << "precondition: " << e.what() << '\n';
        return 65;
    }
    return 0;
}
