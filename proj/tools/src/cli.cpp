#include "lpsld_cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "lpsld/clt.hpp"
#include "lpsld/dual.hpp"
#include "lpsld/errors.hpp"
#include "lpsld/estimators.hpp"
#include "lpsld/parallel.hpp"
#include "lpsld/prefactor.hpp"
#include "lpsld/sampling.hpp"

#ifndef LPSLD_VERSION
#define LPSLD_VERSION "0.0.0"
#endif

namespace lpsld::cli {

namespace {

const std::vector<std::string> kKeyColumns = {"p", "a", "n", "seed", "theta_seed"};

KappaForm kappa_form(const RunConfig& cfg) {
    return cfg.kappa == "printed" ? KappaForm::Printed : KappaForm::Laplace;
}

RunOptions run_options(const RunConfig& cfg) {
    return RunOptions{resolve_threads(cfg.threads)};
}

struct RowBuilder {
    Table& table;
    std::vector<Cell> cells;

    RowBuilder(Table& t, const RunConfig& cfg, double a, std::int64_t n) : table(t) {
        cells.resize(t.columns.size());
        cells[0] = cfg.p;
        cells[1] = a;
        cells[2] = n;
        cells[3] = static_cast<std::int64_t>(cfg.seed);
        cells[4] = static_cast<std::int64_t>(cfg.theta_seed);
    }

    void set(const std::string& col, Cell v) {
        const auto it = std::find(table.columns.begin(), table.columns.end(), col);
        if (it == table.columns.end()) {
            throw std::logic_error("unknown column " + col);
        }
        cells[static_cast<std::size_t>(it - table.columns.begin())] = std::move(v);
    }

    void finish() { table.rows.push_back(std::move(cells)); }
};

Table make_table(const std::vector<std::string>& value_columns) {
    Table t;
    t.columns = kKeyColumns;
    t.columns.insert(t.columns.end(), value_columns.begin(), value_columns.end());
    t.columns.push_back("status");
    t.columns.push_back("detail");
    return t;
}

// Runs body for one row; library failures become a row status.
void guarded(Table& t, RowBuilder& row, const std::function<void()>& body) {
    int code = kOk;
    try {
        body();
        row.set("status", std::string("ok"));
    } catch (const DomainExceeded& e) {
        row.set("status", std::string("domain_exceeded"));
        row.set("detail", std::string(e.what()));
        code = kDomain;
    } catch (const DegenerateCurvature& e) {
        row.set("status", std::string("degenerate_curvature"));
        row.set("detail", std::string(e.what()));
        code = kDomain;
    } catch (const DomainError& e) {
        row.set("status", std::string("domain_error"));
        row.set("detail", std::string(e.what()));
        code = kDomain;
    } catch (const NoConvergence& e) {
        row.set("status", std::string("no_convergence"));
        row.set("detail", std::string(e.what()));
        code = kConvergence;
    } catch (const NonFinite& e) {
        row.set("status", std::string("non_finite"));
        row.set("detail", std::string(e.what()));
        code = kConvergence;
    }
    t.exit_code = std::max(t.exit_code, code);
    row.finish();
}

Direction direction_of(const RunConfig& cfg, int n) {
    if (!cfg.theta.empty()) {
        return make_direction(cfg.theta);
    }
    return direction_for(n, cfg.theta_seed);
}

std::vector<int> dimensions(const RunConfig& cfg) {
    if (!cfg.theta.empty()) {
        return {static_cast<int>(cfg.theta.size())};
    }
    return cfg.n;
}

void put_estimate(RowBuilder& row, const TailEstimate& e) {
    row.set("mean", e.mean);
    row.set("sd", e.sd);
    row.set("ci_low", e.ci_low);
    row.set("ci_high", e.ci_high);
    row.set("ci_low_log", e.ci_low_log);
    row.set("ci_high_log", e.ci_high_log);
    row.set("log_mean", e.log_mean);
    row.set("reps", static_cast<std::int64_t>(e.reps));
    row.set("dropped", static_cast<std::int64_t>(e.dropped));
    row.set("ci_degenerate", static_cast<std::int64_t>(e.degenerate_ci()));
}

const std::vector<std::string> kEstimateColumns = {"mean",        "sd",          "ci_low",
                                                   "ci_high",     "ci_low_log",  "ci_high_log",
                                                   "log_mean",    "reps",        "dropped",
                                                   "ci_degenerate"};

}  // namespace

void validate(const RunConfig& cfg, const std::string& command) {
    if (!(cfg.p > 1.0) || !std::isfinite(cfg.p)) {
        throw DomainError("--p must be a finite number greater than 1");
    }
    if (cfg.a.empty()) {
        throw DomainError("--a needs at least one value");
    }
    for (double a : cfg.a) {
        if (!std::isfinite(a)) {
            throw DomainError("--a values must be finite");
        }
    }
    for (int n : cfg.n) {
        if (n < 1) {
            throw DomainError("--n values must be positive");
        }
    }
    if (cfg.reps < 1) {
        throw DomainError("--reps must be at least 1");
    }
    if (cfg.quad_order < 2 || cfg.quad_order > 400) {
        throw DomainError("--quad-order must be in [2, 400]");
    }
    if (cfg.kappa != "laplace" && cfg.kappa != "printed") {
        throw DomainError("--kappa must be laplace or printed");
    }
    if (cfg.k < 1) {
        throw DomainError("--k must be positive");
    }
    if (command == "oracle") {
        const bool two = cfg.theta.empty() ? (cfg.n.size() == 1 && cfg.n[0] == 2) : cfg.theta.size() == 2;
        if (!two) {
            throw DomainError("oracle is defined for n = 2 only");
        }
        for (double a : cfg.a) {
            if (a < 0.0) {
                throw DomainError("oracle needs a >= 0");
            }
        }
    }
    if (command == "extremize" || command == "clt-sim") {
        for (int n : cfg.n) {
            if (n < 2) {
                throw DomainError(command + " needs n >= 2");
            }
        }
    }
}

Table cmd_rate(const RunConfig& cfg) {
    Table t = make_table({"rate", "lambda1", "lambda2", "xi", "kappa", "L1", "L2", "kappa_sq_laplace",
                          "kappa_sq_printed", "residual", "domain_reached"});
    const PExponent p(cfg.p);
    for (double a : cfg.a) {
        RowBuilder row(t, cfg, a, 0);
        guarded(t, row, [&] {
            try {
                const DualPoint dp = solve_dual(a, p, cfg.quad_order);
                row.set("rate", dp.rate);
                row.set("lambda1", dp.lambda(0));
                row.set("lambda2", dp.lambda(1));
                row.set("residual", dp.residual);
                if (a != 0.0) {
                    const PrefactorBundle b = constants(dp, kappa_form(cfg));
                    row.set("xi", b.xi);
                    row.set("kappa", b.kappa);
                    row.set("L1", b.L1);
                    row.set("L2", b.L2);
                    row.set("kappa_sq_laplace", b.kappa_sq_laplace);
                    row.set("kappa_sq_printed", b.kappa_sq_printed);
                }
            } catch (const DomainExceeded& e) {
                row.set("domain_reached", e.reached());
                throw;
            }
        });
    }
    return t;
}

Table cmd_compare(const RunConfig& cfg) {
    Table t = make_table({"sld", "log_sld", "is_mean", "is_sd", "ci_low", "ci_high", "ci_low_log",
                          "ci_high_log", "rel_dist_pct", "ldp", "baseline", "R", "C", "reps", "dropped",
                          "ci_degenerate"});
    const PExponent p(cfg.p);
    const RunOptions opts = run_options(cfg);
    for (double a : cfg.a) {
        for (int n : cfg.n) {
            RowBuilder row(t, cfg, a, n);
            guarded(t, row, [&] {
                const DualPoint dp = solve_dual(a, p, cfg.quad_order);
                const PrefactorBundle b = constants(dp, kappa_form(cfg));
                const Direction theta = direction_for(n, cfg.theta_seed);
                const DirectionCorrections dc = direction_corrections(dp, theta.theta);
                const SldEstimate sld = sld_estimate(dp, b, dc, n);
                const TailEstimate is = is_tail(dp, theta, cfg.reps, cfg.seed, opts);
                row.set("sld", sld.value);
                row.set("log_sld", sld.log_value);
                row.set("is_mean", is.mean);
                row.set("is_sd", is.sd);
                row.set("ci_low", is.ci_low);
                row.set("ci_high", is.ci_high);
                row.set("ci_low_log", is.ci_low_log);
                row.set("ci_high_log", is.ci_high_log);
                if (const auto rd = relative_distance(sld.value, is.mean)) {
                    row.set("rel_dist_pct", *rd);
                }
                row.set("ldp", std::exp(-n * dp.rate));
                row.set("baseline", b.baseline(n));
                row.set("R", dc.R);
                row.set("C", dc.C);
                row.set("reps", static_cast<std::int64_t>(is.reps));
                row.set("dropped", static_cast<std::int64_t>(is.dropped));
                row.set("ci_degenerate", static_cast<std::int64_t>(is.degenerate_ci()));
            });
        }
    }
    return t;
}

Table cmd_sld(const RunConfig& cfg) {
    Table t = make_table({"sld", "log_sld", "baseline", "log_baseline", "R", "c1", "c2", "C", "log_C", "psi_n"});
    const PExponent p(cfg.p);
    for (double a : cfg.a) {
        for (int n : dimensions(cfg)) {
            RowBuilder row(t, cfg, a, n);
            guarded(t, row, [&] {
                const DualPoint dp = solve_dual(a, p, cfg.quad_order);
                const PrefactorBundle b = constants(dp, kappa_form(cfg));
                const Direction theta = direction_of(cfg, n);
                const DirectionCorrections dc = direction_corrections(dp, theta.theta);
                const SldEstimate sld = sld_estimate(dp, b, dc, n);
                row.set("sld", sld.value);
                row.set("log_sld", sld.log_value);
                row.set("baseline", b.baseline(n));
                row.set("log_baseline", b.log_baseline(n));
                row.set("R", dc.R);
                row.set("c1", dc.c(0));
                row.set("c2", dc.c(1));
                row.set("C", dc.C);
                row.set("log_C", dc.log_C);
                row.set("psi_n", dc.psi_n);
            });
        }
    }
    return t;
}

Table cmd_is(const RunConfig& cfg) {
    Table t = make_table(kEstimateColumns);
    const PExponent p(cfg.p);
    const RunOptions opts = run_options(cfg);
    for (double a : cfg.a) {
        for (int n : dimensions(cfg)) {
            RowBuilder row(t, cfg, a, n);
            guarded(t, row, [&] {
                const DualPoint dp = solve_dual(a, p, cfg.quad_order);
                put_estimate(row, is_tail(dp, direction_of(cfg, n), cfg.reps, cfg.seed, opts));
            });
        }
    }
    return t;
}

Table cmd_mc(const RunConfig& cfg) {
    Table t = make_table(kEstimateColumns);
    const PExponent p(cfg.p);
    const RunOptions opts = run_options(cfg);
    for (double a : cfg.a) {
        for (int n : dimensions(cfg)) {
            RowBuilder row(t, cfg, a, n);
            guarded(t, row, [&] { put_estimate(row, mc_tail(p, a, direction_of(cfg, n), cfg.reps, cfg.seed, opts)); });
        }
    }
    return t;
}

Table cmd_oracle(const RunConfig& cfg) {
    Table t = make_table({"theta1", "theta2", "value"});
    const PExponent p(cfg.p);
    for (double a : cfg.a) {
        RowBuilder row(t, cfg, a, 2);
        guarded(t, row, [&] {
            const Direction d = direction_of(cfg, 2);
            const Eigen::Vector2d theta(d.theta[0], d.theta[1]);
            row.set("theta1", theta(0));
            row.set("theta2", theta(1));
            row.set("value", brute_tail(p, a, theta));
        });
    }
    return t;
}

Table cmd_clt_cov(const RunConfig& cfg) {
    std::vector<std::string> cols;
    for (int i = 1; i <= 4; ++i) {
        for (int j = i; j <= 4; ++j) {
            cols.push_back(fmt::format("sigma{}{}", i, j));
        }
    }
    for (const char* c : {"e_dl_z", "e_d2l_z2", "e_dl1_z", "e_dl2_z", "limit_var_r"}) {
        cols.emplace_back(c);
    }
    Table t = make_table(cols);
    const PExponent p(cfg.p);
    for (double a : cfg.a) {
        RowBuilder row(t, cfg, a, 0);
        guarded(t, row, [&] {
            const DualPoint dp = solve_dual(a, p, cfg.quad_order);
            const CltCovariance cov = sigma_a(dp);
            for (int i = 0; i < 4; ++i) {
                for (int j = i; j < 4; ++j) {
                    row.set(fmt::format("sigma{}{}", i + 1, j + 1), cov.sigma(i, j));
                }
            }
            row.set("e_dl_z", cov.limit.e_dl_z);
            row.set("e_d2l_z2", cov.limit.e_d2l_z2);
            row.set("e_dl1_z", cov.limit.e_dl1_z);
            row.set("e_dl2_z", cov.limit.e_dl2_z);
            row.set("limit_var_r", cov.limit_var_r());
        });
    }
    return t;
}

namespace {

double mean_of(const std::vector<double>& v) {
    return compensated_sum(v) / static_cast<double>(v.size());
}

double var_of(const std::vector<double>& v) {
    if (v.size() < 2) {
        return 0.0;
    }
    const double m = mean_of(v);
    std::vector<double> sq(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        sq[i] = (v[i] - m) * (v[i] - m);
    }
    return compensated_sum(sq) / static_cast<double>(v.size() - 1);
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

Table cmd_clt_sim(const RunConfig& cfg) {
    Table t = make_table({"reps", "r_mean", "r_var", "s_mean", "t1_mean", "t2_mean", "m_mean", "m_median",
                          "limit_var_r", "limit_r_var", "limit_m_median", "ks_m"});
    const PExponent p(cfg.p);
    const RunOptions opts = run_options(cfg);
    for (double a : cfg.a) {
        for (int n : cfg.n) {
            RowBuilder row(t, cfg, a, n);
            guarded(t, row, [&] {
                const DualPoint dp = solve_dual(a, p, cfg.quad_order);
                const CltCovariance cov = sigma_a(dp);
                const LimitSampler limit(cov, dp);
                const auto reps = static_cast<std::size_t>(cfg.reps);
                std::vector<double> r(reps), s(reps), t1(reps), t2(reps), m(reps), lr(reps), lm(reps);
                parallel_for(reps, opts.threads, [&](std::size_t begin, std::size_t end) {
                    for (std::size_t i = begin; i < end; ++i) {
                        CounterRng rng(cfg.seed, stream_id(StreamPurpose::Fluctuation, i));
                        const FluctDraw f = fluct_sample(dp, cov, n, rng);
                        r[i] = f.r;
                        s[i] = f.s;
                        t1[i] = f.t1;
                        t2[i] = f.t2;
                        m[i] = f.m;
                        CounterRng lrng(cfg.seed, stream_id(StreamPurpose::Limit, i));
                        const LimitDraw l = limit.draw(lrng);
                        lr[i] = l.R;
                        lm[i] = l.M;
                    }
                }, 16);
                row.set("reps", static_cast<std::int64_t>(reps));
                row.set("r_mean", mean_of(r));
                row.set("r_var", var_of(r));
                row.set("s_mean", mean_of(s));
                row.set("t1_mean", mean_of(t1));
                row.set("t2_mean", mean_of(t2));
                row.set("m_mean", mean_of(m));
                row.set("m_median", median_of(m));
                row.set("limit_var_r", cov.limit_var_r());
                row.set("limit_r_var", var_of(lr));
                row.set("limit_m_median", median_of(lm));
                row.set("ks_m", ks_two_sample(m, lm));
            });
        }
    }
    return t;
}

Table cmd_figure2(const RunConfig& cfg) {
    std::vector<std::string> cols = {"baseline", "log_baseline"};
    for (int k = 0; k < cfg.k; ++k) {
        cols.push_back(fmt::format("sld_theta_{}", cfg.theta_seed + static_cast<std::uint64_t>(k)));
    }
    Table t = make_table(cols);
    const PExponent p(cfg.p);
    for (double a : cfg.a) {
        for (int n : cfg.n) {
            RowBuilder row(t, cfg, a, n);
            guarded(t, row, [&] {
                const DualPoint dp = solve_dual(a, p, cfg.quad_order);
                const PrefactorBundle b = constants(dp, kappa_form(cfg));
                row.set("baseline", b.baseline(n));
                row.set("log_baseline", b.log_baseline(n));
                for (int k = 0; k < cfg.k; ++k) {
                    const std::uint64_t ts = cfg.theta_seed + static_cast<std::uint64_t>(k);
                    const Direction theta = direction_for(n, ts);
                    const DirectionCorrections dc = direction_corrections(dp, theta.theta);
                    row.set(fmt::format("sld_theta_{}", ts), sld_estimate(dp, b, dc, n).value);
                }
            });
        }
    }
    return t;
}

Table cmd_extremize(const RunConfig& cfg) {
    Table t = make_table({"psi_uniform", "psi_basis", "ordering", "R_uniform", "R_basis"});
    const PExponent p(cfg.p);
    for (double a : cfg.a) {
        for (int n : cfg.n) {
            RowBuilder row(t, cfg, a, n);
            guarded(t, row, [&] {
                const DualPoint dp = solve_dual(a, p, cfg.quad_order);
                const ExtremizerDiagnostic ex = extremizer_diagnostic(dp, n);
                const double psi_val = psi(dp.lambda, dp.p, dp.rule()).value;
                const double sqrt_n = std::sqrt(static_cast<double>(n));
                row.set("psi_uniform", ex.psi_uniform);
                row.set("psi_basis", ex.psi_basis);
                row.set("ordering", std::string(to_string(ex.ordering)));
                row.set("R_uniform", sqrt_n * (ex.psi_uniform - psi_val));
                row.set("R_basis", sqrt_n * (ex.psi_basis - psi_val));
            });
        }
    }
    return t;
}

Table dispatch(const std::string& command, const RunConfig& cfg) {
    static const std::map<std::string, Table (*)(const RunConfig&)> table = {
        {"rate", cmd_rate},         {"compare", cmd_compare}, {"sld", cmd_sld},
        {"is", cmd_is},             {"mc", cmd_mc},           {"oracle", cmd_oracle},
        {"clt-cov", cmd_clt_cov},   {"clt-sim", cmd_clt_sim}, {"figure2", cmd_figure2},
        {"extremize", cmd_extremize},
    };
    const auto it = table.find(command);
    if (it == table.end()) {
        throw DomainError("unknown command " + command);
    }
    validate(cfg, command);
    return it->second(cfg);
}

std::string format_cell(const Cell& c) {
    struct Visitor {
        std::string operator()(std::monostate) const { return {}; }
        std::string operator()(double v) const { return fmt::format("{:.16e}", v); }
        std::string operator()(std::int64_t v) const { return fmt::format("{}", v); }
        std::string operator()(const std::string& v) const {
            if (v.find_first_of(",\"\n") == std::string::npos) {
                return v;
            }
            std::string q = "\"";
            for (char ch : v) {
                if (ch == '"') {
                    q += '"';
                }
                q += ch;
            }
            return q + '"';
        }
    };
    return std::visit(Visitor{}, c);
}

std::string render_csv(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        out += (i ? "," : "") + t.columns[i];
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) {
                out += ',';
            }
            out += format_cell(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string render_json(const std::string& command, const RunConfig& cfg, const Table& t) {
    using nlohmann::ordered_json;
    ordered_json config = {
        {"command", command}, {"p", cfg.p}, {"a", cfg.a}, {"n", cfg.n}, {"reps", cfg.reps},
        {"seed", cfg.seed},   {"theta_seed", cfg.theta_seed}, {"quad_order", cfg.quad_order},
        {"kappa", cfg.kappa}, {"k", cfg.k}, {"theta", cfg.theta},
    };
    ordered_json rows = ordered_json::array();
    for (const auto& row : t.rows) {
        ordered_json obj = ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            const Cell& c = row[i];
            if (const double* d = std::get_if<double>(&c)) {
                obj[t.columns[i]] = std::isfinite(*d) ? ordered_json(*d) : ordered_json(format_cell(c));
            } else if (const auto* v = std::get_if<std::int64_t>(&c)) {
                obj[t.columns[i]] = *v;
            } else if (const auto* s = std::get_if<std::string>(&c)) {
                obj[t.columns[i]] = *s;
            } else {
                obj[t.columns[i]] = nullptr;
            }
        }
        rows.push_back(std::move(obj));
    }
    ordered_json doc = {
        {"config", config},
        {"rows", rows},
        {"provenance", {{"version", LPSLD_VERSION}, {"quad_order", cfg.quad_order}}},
    };
    return doc.dump(2) + "\n";
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tail probabilities of random projections of l_p^n spheres"};
    app.require_subcommand(1);
    RunConfig cfg;
    int threads = 0;

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"rate", "rate function, dual point and prefactor constants"},
        {"compare", "SLD estimate vs importance sampling, one row per n"},
        {"sld", "sharp large deviation estimate for one direction"},
        {"is", "importance sampling estimate"},
        {"mc", "naive Monte Carlo estimate"},
        {"oracle", "n = 2 numerical integration oracle"},
        {"clt-cov", "limiting covariance and limit constants"},
        {"clt-sim", "simulate the fluctuation terms and their limit"},
        {"figure2", "baseline curve plus per-direction SLD values"},
        {"extremize", "Psi^n at the diagonal and basis directions"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--p", cfg.p, "exponent p > 1")->capture_default_str();
        sub->add_option("--a", cfg.a, "threshold(s), comma separated")->delimiter(',');
        sub->add_option("--n", cfg.n, "dimension(s), comma separated")->delimiter(',');
        sub->add_option("--reps", cfg.reps, "replications")->capture_default_str();
        sub->add_option("--seed", cfg.seed, "noise seed")->capture_default_str();
        sub->add_option("--theta-seed", cfg.theta_seed, "direction seed")->capture_default_str();
        sub->add_option("--quad-order", cfg.quad_order, "Gauss-Hermite order")->capture_default_str();
        sub->add_option("--format", cfg.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        sub->add_option("--out", cfg.out, "output file (default stdout)");
        sub->add_option("--threads", threads, "worker threads (overrides LDPROJ_THREADS)");
        sub->add_option("--theta", cfg.theta, "explicit direction, comma separated")->delimiter(',');
        sub->add_option("--k", cfg.k, "figure2: number of direction seeds")->capture_default_str();
        sub->add_option("--kappa", cfg.kappa, "laplace or printed")
            ->check(CLI::IsMember({"laplace", "printed"}))
            ->capture_default_str();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }
    if (threads > 0) {
        cfg.threads = threads;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    Table table;
    try {
        table = dispatch(command, cfg);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kDomain;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kConvergence;
    }

    const std::string text = cfg.format == "json" ? render_json(command, cfg, table) : render_csv(table);
    if (cfg.out.empty()) {
        out << text;
        out.flush();
        if (!out) {
            return kIo;
        }
    } else {
        std::ofstream file(cfg.out, std::ios::binary);
        if (!file) {
            err << "error: cannot open " << cfg.out << '\n';
            return kIo;
        }
        file << text;
        file.close();
        if (!file) {
            err << "error: write failed for " << cfg.out << '\n';
            return kIo;
        }
    }
    return table.exit_code;
}

}  // namespace lpsld::cli
