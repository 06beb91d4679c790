// Command-line front end: counting runs, torsor conversions, Peyre-constant
// evaluation, equidistribution experiments and the exact-identity verify
// suite. All randomness flows from --seed through a counter-based
// generator, so outputs are byte-identical across runs and thread counts.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "maninlab/arith.hpp"
#include "maninlab/asymptotics.hpp"
#include "maninlab/equidist.hpp"
#include "maninlab/parallel.hpp"
#include "maninlab/peyre.hpp"
#include "maninlab/polytope.hpp"
#include "maninlab/primes.hpp"
#include "maninlab/quadrature.hpp"
#include "maninlab/report.hpp"
#include "maninlab/rng.hpp"
#include "maninlab/surface.hpp"
#include "maninlab/torsor.hpp"

using json = nlohmann::json;
using namespace maninlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitBadConfig = 2;
constexpr int kExitBudget = 3;

std::vector<long long> parse_grid(const std::string& s) {
    std::vector<long long> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoll(tok));
    if (out.empty()) throw CLI::ValidationError("empty grid");
    return out;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    f << text;
    if (!f) throw std::runtime_error("cannot write " + out_path);
}

json interval_json(const Interval& iv) { return json{{"lo", iv.lo}, {"hi", iv.hi}}; }

json rat_json(const Rat& q) {
    return json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

Table manin_table(const std::vector<ManinRow>& rows) {
    Table t;
    t.header = {"B", "count", "ratio", "c_lo", "c_hi"};
    for (const auto& r : rows)
        t.rows.push_back({std::to_string(r.B), std::to_string(r.count),
                          format_double(r.ratio), format_double(r.c_lo),
                          format_double(r.c_hi)});
    return t;
}

Table equidist_table(const std::vector<EquidistRow>& rows) {
    Table t;
    t.header = {"X", "q", "delta", "b", "max_err", "mean_err", "E_bound", "main_shape"};
    for (const auto& r : rows)
        t.rows.push_back({format_double(r.X), std::to_string(r.q), format_double(r.delta),
                          std::to_string(r.b), format_double(r.max_err),
                          format_double(r.mean_err), format_double(r.E),
                          format_double(r.main_shape)});
    return t;
}

// ---------------------------------------------------------------------
// verify: every exact identity the modules promise, one line per check
// ---------------------------------------------------------------------
int run_verify(unsigned threads, std::uint64_t seed) {
    int failures = 0;
    auto check = [&](const char* name, bool ok) {
        std::printf("[%s] %s\n", ok ? "OK" : "FAIL", name);
        if (!ok) ++failures;
    };

    auto dh = direct_height_histogram(60, threads);
    auto th = torsor_height_histogram(60, threads);
    long long d = 0, t = 0;
    bool counts_eq = true, naive_eq = true;
    for (long long B = 1; B <= 60; ++B) {
        d += dh[B];
        t += th[B];
        if (d != t) counts_eq = false;
        if (B <= 40 && B % 10 == 0 && count_naive(B).count != d) naive_eq = false;
    }
    check("torsor count == direct count for B <= 60", counts_eq);
    check("naive oracle agrees for B in {10,20,30,40}", naive_eq);

    bool bij = true;
    auto pts = audit_points(100);
    auto tups = audit_tuples(100);
    if (pts.size() != tups.size()) bij = false;
    std::vector<ProjPoint> mapped;
    for (const auto& tu : tups) mapped.push_back(from_torsor(tu));
    std::sort(mapped.begin(), mapped.end());
    if (mapped != pts) bij = false;
    for (const auto& p : pts)
        if (from_torsor(to_torsor(p)) != p) bij = false;
    check("bijection point<->tuple at B = 100", bij);

    check("polytope volume == 1/2880", polytope_volume(peyre_polytope()) == rat(1, 2880));
    check("alpha_polytope == alpha_weyl == 1/8640",
          alpha_polytope() == alpha_weyl() && alpha_weyl() == rat(1, 8640));

    bool lf = true, s2 = true;
    for (std::uint32_t p : Sieve::instance().primes()) {
        if (p > 100) break;
        if (local_factor(p) != local_factor_rhs(p)) lf = false;
        if (!sum2_check(p)) s2 = false;
    }
    check("local-factor identity for p <= 100", lf);
    check("sum2 per-prime identity for p <= 100", s2);

    SplitRng rng{seed, 0x7eef};
    bool mob = true, part = true;
    std::uint64_t ctr = 0;
    auto rand_int = [&](std::int64_t lo, std::int64_t hi) {
        return lo + (std::int64_t)(rng.uniform(ctr++) * (double)(hi - lo + 1));
    };
    for (int trial = 0; trial < 100; ++trial) {
        std::uint64_t q = (std::uint64_t)rand_int(1, 30);
        std::int64_t a = rand_int(1, (std::int64_t)q);
        while (gcd_u64((std::uint64_t)a % q == 0 ? q : (std::uint64_t)a % q, q) != 1)
            a = rand_int(1, (std::int64_t)q);
        std::uint64_t b = (std::uint64_t)rand_int(1, 12);
        auto riv = [&]() {
            long long lo = rand_int(-50, 48);
            long long hi = lo + rand_int(1, 8);
            if (lo < 0 && hi >= 0) {
                lo -= 9;
                hi = lo + rand_int(1, 8);
            }
            return Interval1{rat(lo), rat(hi), true, false};
        };
        Box3 box{riv(), riv(), riv()};
        if (N_b_count(box, q, a, b) != mobius_expand_Nb(box, q, a, b)) mob = false;
        long long s = 0;
        for (std::uint64_t aa = 1; aa <= q; ++aa)
            if (gcd_u64(aa % q == 0 ? q : aa % q, q) == 1)
                s += N_count(box, q, (std::int64_t)aa);
        if (Rat((long)s) != N_star(box, q) * Rat((long)totient(q))) part = false;
    }
    check("double Mobius expansion == direct on 100 random boxes", mob);
    check("a-partition identity on 100 random boxes", part);

    bool conv = true;
    for (std::uint64_t a : {1, 2, 3, 6})
        for (std::uint64_t b : {1, 2, 3, 6})
            for (std::uint64_t n = 1; n <= 500 && conv; ++n) {
                Rat direct(0);
                for (std::uint64_t dd : divisors(n))
                    direct += Rat(mobius(n / dd)) * psi_prime(a, b, dd);
                if (direct != psi_prime_mobius(a, b, n)) conv = false;
            }
    check("(psi' * mu) closed form == divisor-sum convolution, n <= 500", conv);

    bool meas = true;
    for (int i = 0; i < 1000; ++i) {
        double A = 200.0 * rng.uniform(ctr++) - 100.0;
        double Y = 1.0 + 999999.0 * rng.uniform(ctr++);
        int r = 1 + (int)(4.0 * rng.uniform(ctr++));
        if (elementary_measure(A, Y, r) > 4.0 * std::pow(Y, 1.0 / r) + 1e-9) meas = false;
    }
    check("elementary measure bound meas(R) <= 4 Y^(1/r), 1000 draws", meas);

    std::printf("%s\n", failures == 0 ? "verify: all checks passed" : "verify: FAILURES");
    return failures == 0 ? kExitOk : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"maninlab: point counts, torsor bijection and Peyre constant "
                 "for the 2A2+A1 cubic surface"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    // global options, overridable per config file (flags win)
    std::string config_path, out_path, format = "json";
    unsigned threads = 0;
    std::uint64_t seed = 1;
    app.add_option("--config", config_path, "JSON config file (flags override)");
    app.add_option("--out", out_path, "output path (default stdout)");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", threads, "worker threads (default MANINLAB_THREADS)");
    app.add_option("--seed", seed, "seed for all Monte Carlo paths");

    // count
    long long B = 100;
    std::string method = "both";
    bool audit = false, diagnostics = false;
    double Aexp = 10.0;
    auto* count = app.add_subcommand("count", "count rational points of height <= B");
    count->add_option("--B", B, "height bound");
    count->add_option("--method", method, "direct, torsor, naive or both")
        ->check(CLI::IsMember({"direct", "torsor", "naive", "both"}));
    count->add_flag("--audit", audit, "emit the sorted point list as CSV");
    count->add_flag("--diagnostics", diagnostics,
                    "emit torsor restriction-subset counts (uses --A)");
    count->add_option("--A", Aexp, "log-power threshold for the restriction subsets");

    // torsor-map
    std::string point_arg, tuple_arg;
    auto* tmap = app.add_subcommand("torsor-map", "convert a point or a tuple");
    tmap->add_option("--point", point_arg, "x0,x1,x2,x3");
    tmap->add_option("--tuple", tuple_arg, "eta1,...,eta10");

    // peyre
    std::uint64_t pmax = 100000;
    double tol = 1e-4;
    std::uint64_t samples = 10000000;
    auto* peyre = app.add_subcommand("peyre", "Peyre constant breakdown");
    peyre->add_option("--pmax", pmax, "Euler product truncation");
    peyre->add_option("--tol", tol, "omega_infty quadrature tolerance");
    peyre->add_option("--samples", samples, "jacobian cross-check samples (0 = skip)");

    // equidist
    std::uint64_t xmin = 1000, xmax = 10000, bcop = 1;
    double delta = 0.0;
    std::string qgrid = "3,5,7,11";
    auto* eq = app.add_subcommand("equidist", "divisor equidistribution experiment");
    eq->add_option("--xmin", xmin)->check(CLI::PositiveNumber);
    eq->add_option("--xmax", xmax)->check(CLI::PositiveNumber);
    eq->add_option("--qgrid", qgrid, "comma-separated moduli");
    eq->add_option("--delta", delta, "reported cell parameter (0 = optimal choice)");
    eq->add_option("--b", bcop, "coprimality parameter b");

    // asymptotics
    auto* as = app.add_subcommand("asymptotics", "main-term machinery");
    as->require_subcommand(1);
    std::uint64_t as_pmax = 100;
    auto* lfc = as->add_subcommand("local-factors", "pattern-collapsed local factors");
    lfc->add_option("--pmax", as_pmax);
    std::string bgrid = "100,1000";
    auto* s1 = as->add_subcommand("sum1", "exact V' sum vs alpha log^6 B");
    s1->add_option("--B-grid", bgrid);
    auto* mr = as->add_subcommand("manin-ratio", "N(B)/(B log^6 B) vs c_VH");
    mr->add_option("--B-grid", bgrid);
    mr->add_option("--pmax", pmax);
    mr->add_option("--tol", tol);
    double actol = 1e-10;
    auto* ac = as->add_subcommand("assembly-check", "constant assembly identity");
    ac->add_option("--tol", actol);

    // verify / plot-data
    app.add_subcommand("verify", "run the exact-identity suite");
    std::string kind = "manin-ratio";
    auto* pd = app.add_subcommand("plot-data", "emit CSV for external plotting");
    pd->add_option("--kind", kind, "manin-ratio or equidist")
        ->check(CLI::IsMember({"manin-ratio", "equidist"}));
    pd->add_option("--B-grid", bgrid);
    pd->add_option("--xmin", xmin);
    pd->add_option("--xmax", xmax);
    pd->add_option("--qgrid", qgrid);
    pd->add_option("--b", bcop);
    pd->add_option("--delta", delta);

    // config file defaults: load before parse so explicit flags win
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
    if (!config_path.empty()) {
        std::ifstream f(config_path);
        if (!f) {
            std::fprintf(stderr, "cannot read config %s\n", config_path.c_str());
            return kExitBadConfig;
        }
        try {
            json cfg = json::parse(f);
            if (cfg.contains("B")) B = cfg["B"].get<long long>();
            if (cfg.contains("method")) method = cfg["method"].get<std::string>();
            if (cfg.contains("pmax")) pmax = cfg["pmax"].get<std::uint64_t>();
            if (cfg.contains("tol")) tol = cfg["tol"].get<double>();
            if (cfg.contains("delta")) delta = cfg["delta"].get<double>();
            if (cfg.contains("seed")) seed = cfg["seed"].get<std::uint64_t>();
            if (cfg.contains("threads")) threads = cfg["threads"].get<unsigned>();
            if (cfg.contains("out")) out_path = cfg["out"].get<std::string>();
            if (cfg.contains("format")) format = cfg["format"].get<std::string>();
            if (cfg.contains("B_grid")) bgrid = cfg["B_grid"].get<std::string>();
            if (cfg.contains("qgrid")) qgrid = cfg["qgrid"].get<std::string>();
            if (cfg.contains("b")) bcop = cfg["b"].get<std::uint64_t>();
            if (cfg.contains("samples")) samples = cfg["samples"].get<std::uint64_t>();
            if (cfg.contains("A")) Aexp = cfg["A"].get<double>();
        } catch (const json::exception& ex) {
            std::fprintf(stderr, "config parse error: %s\n", ex.what());
            return kExitBadConfig;
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadConfig;
    }

    try {
        if (count->parsed()) {
            json out;
            out["B"] = B;
            if (diagnostics) {
                TorsorDiagnostics d = diagnostics_subsets(B, Aexp, threads);
                out["A"] = d.A;
                out["total"] = d.total;
                out["n0_equal_abs"] = d.n0;
                out["n_A"] = d.n_A;
                out["total_minus_4nA"] = d.residual_4NA();
                json small = json::array();
                for (long long c : d.small) small.push_back(c);
                out["small_coordinate_counts"] = small;
                write_output(out.dump(2) + "\n", out_path);
                return kExitOk;
            }
            if (audit) {
                Table t;
                if (method == "torsor") {
                    t.header = {"eta1", "eta2", "eta3", "eta4", "eta5", "eta6", "eta7",
                                "eta8", "eta9", "eta10", "x0", "x1", "x2", "x3"};
                    for (const auto& tu : audit_tuples(B)) {
                        ProjPoint p = from_torsor(tu);
                        std::vector<std::string> row;
                        for (long long v : tu.as_array()) row.push_back(std::to_string(v));
                        for (long long v : {p.x0, p.x1, p.x2, p.x3})
                            row.push_back(std::to_string(v));
                        t.rows.push_back(row);
                    }
                } else {
                    t.header = {"x0", "x1", "x2", "x3"};
                    for (const auto& p : audit_points(B))
                        t.rows.push_back({std::to_string(p.x0), std::to_string(p.x1),
                                          std::to_string(p.x2), std::to_string(p.x3)});
                }
                write_output(to_csv(t), out_path);
                return kExitOk;
            }
            if (method == "direct" || method == "both") {
                CountResult r = count_direct(B, threads);
                out["direct"] = r.count;
                out["direct_seconds"] = r.elapsed;
            }
            if (method == "torsor" || method == "both") {
                CountResult r = count_torsor(B, threads);
                out["torsor"] = r.count;
                out["torsor_seconds"] = r.elapsed;
            }
            if (method == "naive") out["naive"] = count_naive(B).count;
            if (method == "both") {
                out["equal"] = out["direct"] == out["torsor"];
                if (!out["equal"].get<bool>()) {
                    write_output(out.dump(2) + "\n", out_path);
                    return kExitInvariant;
                }
            }
            write_output(out.dump(2) + "\n", out_path);
            return kExitOk;
        }

        if (tmap->parsed()) {
            json out;
            if (!point_arg.empty()) {
                auto v = parse_grid(point_arg);
                if (v.size() != 4) throw std::domain_error("--point needs 4 coordinates");
                ProjPoint p{v[0], v[1], v[2], v[3]};
                TorsorTuple t = to_torsor(p);
                out["point"] = {p.x0, p.x1, p.x2, p.x3};
                out["tuple"] = t.as_array();
            } else if (!tuple_arg.empty()) {
                auto v = parse_grid(tuple_arg);
                if (v.size() != 10) throw std::domain_error("--tuple needs 10 entries");
                TorsorTuple t{v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], v[9]};
                ProjPoint p = from_torsor(t);
                out["tuple"] = t.as_array();
                out["point"] = {p.x0, p.x1, p.x2, p.x3};
                out["height"] = height(p);
            } else {
                throw std::domain_error("torsor-map needs --point or --tuple");
            }
            write_output(out.dump(2) + "\n", out_path);
            return kExitOk;
        }

        if (peyre->parsed()) {
            PeyreBreakdown pb = c_vh(tol, pmax);
            json out;
            out["alpha"] = rat_json(pb.alpha);
            out["beta"] = (long)pb.beta.get_num().get_si();
            out["omega_inf"] = interval_json(pb.omega_inf);
            out["euler"] = interval_json(pb.euler);
            out["euler"]["pmax"] = pb.pmax;
            out["c"] = interval_json(pb.c);
            if (samples > 0) {
                JacobianReport jr = jacobian_crosscheck(samples, seed, threads);
                out["jacobian"] = {{"estimate", jr.estimate},
                                   {"std_error", jr.std_error},
                                   {"samples", jr.samples},
                                   {"seed", jr.seed}};
            }
            write_output(out.dump(2) + "\n", out_path);
            return kExitOk;
        }

        if (eq->parsed() || (pd->parsed() && kind == "equidist")) {
            EquidistConfig cfg;
            for (std::uint64_t X = xmin; X <= xmax; X *= 2) cfg.Xs.push_back(X);
            for (long long q : parse_grid(qgrid)) cfg.qs.push_back((std::uint64_t)q);
            cfg.delta = delta;
            cfg.b = bcop;
            Table t = equidist_table(experiment_equidist(cfg));
            if (pd->parsed()) {
                emit_plot_data(t, out_path.empty() ? "equidist.csv" : out_path);
            } else if (format == "csv") {
                write_output(to_csv(t), out_path);
            } else {
                json rows = json::array();
                for (const auto& r : t.rows) rows.push_back(r);
                write_output(json{{"header", t.header}, {"rows", rows}}.dump(2) + "\n",
                             out_path);
            }
            return kExitOk;
        }

        if (pd->parsed() && kind == "manin-ratio") {
            Table t = manin_table(empirical_manin(parse_grid(bgrid), tol, pmax, threads));
            emit_plot_data(t, out_path.empty() ? "manin.csv" : out_path);
            return kExitOk;
        }

        if (lfc->parsed()) {
            Table t;
            t.header = {"p", "local_factor", "rhs", "equal"};
            for (std::uint32_t p : Sieve::instance().primes()) {
                if (p > as_pmax) break;
                Rat l = local_factor(p), r = local_factor_rhs(p);
                t.rows.push_back({std::to_string(p), to_string(l), to_string(r),
                                  l == r ? "1" : "0"});
            }
            write_output(to_csv(t), out_path);
            return kExitOk;
        }

        if (s1->parsed()) {
            Table t;
            t.header = {"B", "lhs", "lhs_per_log6", "alpha_times_euler"};
            for (const auto& row : sum1_experiment(parse_grid(bgrid)))
                t.rows.push_back({std::to_string(row.B), to_string(row.lhs),
                                  format_double(row.per_log6), format_double(row.target)});
            write_output(to_csv(t), out_path);
            return kExitOk;
        }

        if (mr->parsed()) {
            Table t = manin_table(empirical_manin(parse_grid(bgrid), tol, pmax, threads));
            write_output(to_csv(t), out_path);
            return kExitOk;
        }

        if (ac->parsed()) {
            bool ok = constant_assembly_check(actol);
            bool detector = !constant_assembly_check(actol, 1.01);
            json out{{"identity_holds", ok}, {"perturbation_detected", detector}};
            write_output(out.dump(2) + "\n", out_path);
            return ok && detector ? kExitOk : kExitInvariant;
        }

        if (app.get_subcommand("verify")->parsed()) return run_verify(threads, seed);

        std::fprintf(stderr, "no subcommand\n");
        return kExitBadConfig;
    } catch (const BudgetError& e) {
        std::fprintf(stderr, "budget exceeded: %s\n", e.what());
        return kExitBudget;
    } catch (const InvariantError& e) {
        std::fprintf(stderr, "invariant failure: %s\n", e.what());
        return kExitInvariant;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitBadConfig;
    }
}
