// Command-line front end: conjecture scans, analytic-bound verifiers,
// scheme simulations, and conditional output statistics.
//
// Exit codes: 0 all checks pass, 1 violation/failed check, 2 usage error,
// 3 I/O error.

#include <CLI11.hpp>
#include <fstream>
#include <atomic>
#include <future>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "lopt/conjecture.hpp"
#include "lopt/json_io.hpp"
#include "lopt/output_state.hpp"
#include "lopt/srq.hpp"

namespace {

using nlohmann::json;

std::pair<int, int> parse_range(const std::string& text) {
    const auto pos = text.find("..");
    if (pos == std::string::npos) {
        const int v = std::stoi(text);
        return {v, v};
    }
    return {std::stoi(text.substr(0, pos)), std::stoi(text.substr(pos + 2))};
}

std::vector<double> parse_doubles(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

std::vector<int> parse_ints(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
}

struct OutStream {
    std::ofstream file;
    std::ostream* os = &std::cout;

    bool open(const std::string& path) {
        if (path.empty()) return true;
        file.open(path);
        if (!file) return false;
        os = &file;
        return true;
    }
};

int run_scan(const lopt::ScanConfig& cfg, const std::string& out_path, int jobs,
             bool timings) {
    OutStream sink;
    if (!sink.open(out_path)) {
        std::cerr << "error: cannot open output file " << out_path << "\n";
        return 3;
    }

    bool any_sector = false;
    bool any_violation = false;
    std::map<std::pair<int, int>, double> sector_min;

    for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
        for (int d : lopt::scan_sectors(cfg, n)) {
            any_sector = true;
            std::vector<lopt::ConjectureReport> reports(cfg.trials);
            if (jobs <= 1) {
                for (std::uint64_t t = 0; t < cfg.trials; ++t)
                    reports[t] = lopt::scan_trial(n, d, t, cfg.master_seed, cfg.with_null_space,
                                                  cfg.null_tol);
            } else {
                std::atomic<std::uint64_t> next{0};
                std::vector<std::future<void>> workers;
                for (int w = 0; w < jobs; ++w)
                    workers.push_back(std::async(std::launch::async, [&] {
                        for (std::uint64_t t = next++; t < cfg.trials; t = next++)
                            reports[t] = lopt::scan_trial(n, d, t, cfg.master_seed,
                                                          cfg.with_null_space, cfg.null_tol);
                    }));
                for (auto& w : workers) w.get();
            }
            double mn = std::numeric_limits<double>::infinity();
            for (const auto& rep : reports) {
                *sink.os << lopt::report_to_json(rep, timings).dump() << "\n";
                sink.os->flush();
                mn = std::min(mn, rep.min_eig);
                if (rep.violation) {
                    any_violation = true;
                    const lopt::Interferometer itf = lopt::haar_random(rep.n, rep.seed);
                    json detail{{"schema", 1},
                                {"candidate_violation", true},
                                {"seed", rep.seed},
                                {"lambda", lopt::matrix_to_json(itf.lambda())}};
                    Eigen::SelfAdjointEigenSolver<lopt::Matrix> es(
                        lopt::conjecture_matrix(itf, rep.total_detected));
                    json spec = json::array();
                    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
                        spec.push_back(es.eigenvalues()(k));
                    detail["spectrum"] = std::move(spec);
                    *sink.os << detail.dump() << "\n";
                    sink.os->flush();
                }
            }
            sector_min[{n, d}] = mn;
        }
    }

    if (!any_sector) {
        std::cerr << "error: no numeric sectors in range"
                  << " (all D in {0,1,N-1,N} are analytic; use --include-analytic-d)\n";
        return 2;
    }
    for (const auto& [key, mn] : sector_min)
        std::cerr << "summary n=" << key.first << " d=" << key.second << " min_eig=" << mn
                  << "\n";
    return any_violation ? 1 : 0;
}

int run_verify(const std::string& check, int n_min, int n_max, std::uint64_t trials,
               std::uint64_t seed, double pmax) {
    double worst = std::numeric_limits<double>::infinity();  // margin-style: larger is better
    bool ok = true;

    for (int n = n_min; n <= n_max; ++n) {
        for (std::uint64_t t = 0; t < trials; ++t) {
            lopt::Rng rng(lopt::derive_seed(seed, static_cast<std::uint64_t>(n), 101, t));
            const auto itf = lopt::haar_random(n, lopt::derive_seed(seed, n, 202, t));
            if (check == "bound-d-n1m1" || check == "bound-d0") {
                const int d = (check == "bound-d0") ? 0 : n - 1;
                const auto chi = lopt::random_projection_state(n - 1, d, rng);
                const auto rep = lopt::verify_ratio_bound(itf, pmax, chi);
                if (!rep.ratio_defined) continue;
                worst = std::min(worst, rep.margin);
                ok = ok && rep.margin >= -1e-12;
            } else if (check == "recurrence") {
                const int d = static_cast<int>(rng.next_u64() % std::max(n - 1, 1));
                const auto chi = lopt::random_projection_state(n - 1, d, rng);
                const auto patterns = lopt::enumerate_patterns(n, std::min(n, d + 1));
                for (int n1 = 0; n1 <= 3; ++n1) {
                    for (std::size_t k = 0; k < patterns.size(); ++k) {
                        const auto& s = patterns.at(k);
                        lopt::Complex rhs(0, 0);
                        for (int i = 0; i < n; ++i)
                            if (s.bits[i])
                                rhs += itf.lambda()(0, i) *
                                       lopt::amplitude_T(itf, lopt::clear_one(s, i), chi, n1);
                        rhs /= std::sqrt(static_cast<double>(n1 + 1));
                        const auto lhs = lopt::amplitude_T(itf, s, chi, n1 + 1);
                        const double resid = std::abs(lhs - rhs);
                        worst = std::min(worst, 1e-11 - resid);
                        ok = ok && resid <= 1e-11;
                    }
                }
            } else if (check == "convexity") {
                const int d = static_cast<int>(rng.next_u64() % std::max(n - 1, 1));
                const auto chi = lopt::random_projection_state(n - 1, d, rng);
                std::vector<double> p(n);
                for (auto& v : p) v = rng.next_unit();
                const auto rep =
                    lopt::convexity_check(itf, lopt::SourceEfficiencies(std::move(p)), chi);
                worst = std::min(worst, 1e-11 - rep.max_weight_deviation);
                ok = ok && rep.max_weight_deviation <= 1e-11;
            } else {
                std::cerr << "error: unknown check '" << check << "'\n";
                return 2;
            }
        }
    }
    std::cout << (ok ? "PASS" : "FAIL") << " check=" << check << " worst_margin=" << worst
              << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"linear-optical efficiency no-go toolkit"};
    app.require_subcommand(1);

    // ---- scan ----
    auto* scan = app.add_subcommand("scan", "Haar-random conjecture eigenvalue scan");
    std::string scan_n = "4..6", scan_d, scan_out;
    std::uint64_t scan_trials = 100, scan_seed = 0;
    bool include_analytic = false, no_null = false, timings = false;
    double null_tol = lopt::kNullSpaceTol;
    int jobs = 1;
    scan->add_option("--n", scan_n, "mode count or range, e.g. 4..6");
    scan->add_option("--d", scan_d, "detected total or range (default 2..N-2)");
    scan->add_option("--trials", scan_trials, "trials per (N, D) sector");
    scan->add_option("--seed", scan_seed, "master seed");
    scan->add_option("--out", scan_out, "JSONL output path (default stdout)");
    scan->add_option("--null-tol", null_tol, "relative null-space threshold");
    scan->add_option("--jobs", jobs, "worker threads per sector");
    scan->add_flag("--include-analytic-d", include_analytic,
                   "also scan D in {0, 1, N-1, N}");
    scan->add_flag("--no-null-space", no_null, "skip the null-space-restricted test");
    scan->add_flag("--timings", timings, "include per-record wall time (breaks rerun byte-identity)");

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "randomized analytic-property verifiers");
    std::string verify_check = "recurrence", verify_n = "4";
    std::uint64_t verify_trials = 100, verify_seed = 0;
    double verify_pmax = 0.5;
    verify->add_option("--check", verify_check,
                       "bound-d-n1m1 | bound-d0 | recurrence | convexity");
    verify->add_option("--n", verify_n, "mode count or range");
    verify->add_option("--trials", verify_trials, "random instances");
    verify->add_option("--seed", verify_seed, "master seed");
    verify->add_option("--pmax", verify_pmax, "uniform source efficiency for bounds");

    // ---- scheme ----
    auto* scheme = app.add_subcommand("scheme", "single-rail qubit scheme simulation");
    int scheme_id = 1, cutoff = 8;
    double g1 = 1, b1 = 0, e1 = 1, g2 = 1, b2 = 0, e2 = 1;
    double bs_t = 1, bs_r = 0, bs_t2 = 1, bs_r2 = 0, hq = 0, alpha = 0;
    bool auto_condition = false, with_oracle = false;
    std::string sweep, scheme_out;
    scheme->add_option("--id", scheme_id, "scheme 1..4")->required();
    scheme->add_option("--gamma", g1, "input 1 vacuum amplitude");
    scheme->add_option("--beta", b1, "input 1 one-photon amplitude");
    scheme->add_option("--E", e1, "input 1 efficiency");
    scheme->add_option("--gamma2", g2, "input 2 vacuum amplitude");
    scheme->add_option("--beta2", b2, "input 2 one-photon amplitude");
    scheme->add_option("--E2", e2, "input 2 efficiency");
    scheme->add_option("--t", bs_t, "beam splitter transmission");
    scheme->add_option("--r", bs_r, "beam splitter reflectivity");
    scheme->add_option("--tp", bs_t2, "second beam splitter transmission");
    scheme->add_option("--rp", bs_r2, "second beam splitter reflectivity");
    scheme->add_option("--q", hq, "homodyne result (scheme 1)");
    scheme->add_option("--alpha", alpha, "coherent amplitude (scheme 2)");
    scheme->add_option("--cutoff", cutoff, "oracle Fock cutoff");
    scheme->add_option("--sweep", sweep, "sweep spec param:lo:hi:steps (param = r or tp)");
    scheme->add_option("--out", scheme_out, "output path (default stdout)");
    scheme->add_flag("--auto-condition", auto_condition,
                     "solve the beam splitter from the single-photon condition");
    scheme->add_flag("--oracle", with_oracle, "also run the truncated-Fock oracle");

    // ---- output ----
    auto* output = app.add_subcommand("output", "conditional output statistics c_n1");
    std::string lambda_file, p_list = "0.5", chi_pattern, chi_file;
    std::uint64_t haar_seed = 0;
    int out_n = 0;
    output->add_option("--lambda", lambda_file, "interferometer JSON file");
    output->add_option("--haar-seed", haar_seed, "sample lambda Haar-randomly instead");
    output->add_option("--n", out_n, "mode count (with --haar-seed)");
    output->add_option("--p", p_list, "comma-separated source efficiencies");
    output->add_option("--chi", chi_pattern, "detector Fock pattern, e.g. 1,0,0");
    output->add_option("--chi-file", chi_file, "chi amplitude file (JSON)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (scan->parsed()) {
            lopt::ScanConfig cfg;
            std::tie(cfg.n_min, cfg.n_max) = parse_range(scan_n);
            if (!scan_d.empty()) std::tie(cfg.d_min, cfg.d_max) = parse_range(scan_d);
            cfg.trials = scan_trials;
            cfg.master_seed = scan_seed;
            cfg.include_analytic = include_analytic;
            cfg.with_null_space = !no_null;
            cfg.null_tol = null_tol;
            return run_scan(cfg, scan_out, jobs, timings);
        }

        if (verify->parsed()) {
            auto [n_min, n_max] = parse_range(verify_n);
            return run_verify(verify_check, n_min, n_max, verify_trials, verify_seed,
                              verify_pmax);
        }

        if (scheme->parsed()) {
            OutStream sink;
            if (!sink.open(scheme_out)) {
                std::cerr << "error: cannot open output file " << scheme_out << "\n";
                return 3;
            }
            lopt::SingleRailQubit q1(g1, b1, e1);
            lopt::SingleRailQubit q2(g2, b2, e2);
            lopt::SchemeParams p;
            p.id = scheme_id;
            p.t = bs_t;
            p.r = bs_r;
            p.t2 = bs_t2;
            p.r2 = bs_r2;
            p.q = hq;
            p.alpha = alpha;
            auto solve_condition = [&](lopt::SchemeParams& sp) {
                if (sp.id == 2) lopt::scheme2_condition_bs(q1.gamma, q1.beta, sp.alpha, sp.t, sp.r);
                if (sp.id == 3)
                    lopt::scheme3_condition_bs(q1.gamma, q1.beta, q2.gamma, q2.beta, sp.t, sp.r);
                if (sp.id == 4)
                    lopt::scheme4_condition_bs(q1.gamma, q1.beta, q2.gamma, q2.beta, sp.t, sp.r);
            };
            auto emit = [&](const lopt::SchemeParams& sp) {
                const auto res = lopt::scheme_output(sp, q1, q2);
                json j{{"schema", 1},
                       {"scheme", sp.id},
                       {"t", sp.t.real()},
                       {"r", sp.r.real()},
                       {"tp", sp.t2.real()},
                       {"rp", sp.r2.real()},
                       {"q", sp.q},
                       {"alpha", sp.alpha.real()},
                       {"vac_amp", {res.vac_amp.real(), res.vac_amp.imag()}},
                       {"one_amp", {res.one_amp.real(), res.one_amp.imag()}},
                       {"success_prob", res.success_prob},
                       {"output_efficiency", res.output_efficiency},
                       {"condition_met", res.condition_met}};
                if (with_oracle) {
                    const auto orc = lopt::scheme_oracle(sp, q1, q2, cutoff);
                    j["oracle"] = {{"vac_amp", {orc.vac_amp.real(), orc.vac_amp.imag()}},
                                   {"one_amp", {orc.one_amp.real(), orc.one_amp.imag()}},
                                   {"success_prob", orc.success_prob},
                                   {"output_efficiency", orc.output_efficiency}};
                }
                *sink.os << j.dump() << "\n";
            };
            if (!sweep.empty()) {
                std::stringstream ss(sweep);
                std::string name, lo_s, hi_s, steps_s;
                std::getline(ss, name, ':');
                std::getline(ss, lo_s, ':');
                std::getline(ss, hi_s, ':');
                std::getline(ss, steps_s, ':');
                const double lo = std::stod(lo_s), hi = std::stod(hi_s);
                const int steps = std::stoi(steps_s);
                for (int k = 0; k <= steps; ++k) {
                    lopt::SchemeParams sp = p;
                    const double v = lo + (hi - lo) * k / steps;
                    if (name == "r") {
                        sp.r = v;
                        sp.t = std::sqrt(std::max(0.0, 1.0 - v * v));
                    } else if (name == "tp") {
                        sp.t2 = v;
                        sp.r2 = std::sqrt(std::max(0.0, 1.0 - v * v));
                    } else {
                        std::cerr << "error: sweep parameter must be r or tp\n";
                        return 2;
                    }
                    emit(sp);
                }
            } else {
                if (auto_condition) solve_condition(p);
                emit(p);
            }
            return 0;
        }

        if (output->parsed()) {
            lopt::Interferometer itf = [&] {
                if (!lambda_file.empty()) return lopt::interferometer_from_file(lambda_file);
                if (out_n < 2) throw CLI::ValidationError("--n", "need --lambda or --n >= 2");
                return lopt::haar_random(out_n, haar_seed);
            }();
            const int n = itf.dim();
            lopt::SourceEfficiencies eff(parse_doubles(p_list));
            auto chi = [&]() -> lopt::ProjectionState {
                if (!chi_file.empty()) {
                    std::ifstream in(chi_file);
                    if (!in) throw std::runtime_error("cannot open chi file: " + chi_file);
                    json j;
                    in >> j;
                    const int d = j.at("d").get<int>();
                    Eigen::VectorXcd amps(j.at("re").size());
                    for (Eigen::Index k = 0; k < amps.size(); ++k)
                        amps(k) = lopt::Complex(j.at("re")[k].get<double>(),
                                                j.at("im")[k].get<double>());
                    return lopt::ProjectionState(n - 1, d, std::move(amps));
                }
                if (chi_pattern.empty()) return lopt::ProjectionState::vacuum(n - 1);
                return lopt::ProjectionState::fock(
                    lopt::OccupationVector(parse_ints(chi_pattern)));
            }();
            const auto stats = lopt::output_statistics(itf, eff, chi);
            json j{{"schema", 1},
                   {"n", n},
                   {"d", chi.total()},
                   {"p", eff.p},
                   {"p_max", eff.p_max()},
                   {"seed", lambda_file.empty() ? json(haar_seed) : json(nullptr)},
                   {"possible", stats.possible}};
            if (stats.possible) {
                j["c"] = stats.c;
                j["K"] = stats.normalization;
                j["success_prob"] = stats.success_prob;
                j["c1_minus_pmax"] = stats.c[1] - eff.p_max();
            } else {
                j["note"] = "impossible outcome: conditioning probability is zero";
            }
            std::cout << j.dump() << "\n";
            return 0;
        }
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
