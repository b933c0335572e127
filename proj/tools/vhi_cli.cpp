// vhi command-line front end: evaluate the special functions, apply the
// Volterra operators to sampled data, run the verification suites, and emit
// deterministic CSV/JSON reports (floats at 17 significant digits).

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vhi/epd.hpp"
#include "vhi/kernel_identity.hpp"
#include "vhi/operators.hpp"
#include "vhi/special_functions.hpp"

using nlohmann::ordered_json;
using namespace vhi;

namespace {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// JSON numbers go through the same %.17g formatting as CSV so both formats
// are byte-stable across runs
ordered_json jnum(double x) {
    return ordered_json::parse(fmt17(x));
}

int thread_budget() {
    if (const char* env = std::getenv("HV_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1)
            return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// deterministic parallel map: each index writes its own slot
template <typename F>
void parallel_for(std::size_t count, F&& fn) {
    std::size_t nt = std::min<std::size_t>(thread_budget(), count);
    if (nt <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t chunk = (count + nt - 1) / nt;
    for (std::size_t w = 0; w < nt; ++w) {
        std::size_t lo = w * chunk, hi = std::min(count, lo + chunk);
        if (lo >= hi)
            break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i)
                fn(i);
        });
    }
    for (auto& t : pool)
        t.join();
}

struct CommonOpts {
    std::optional<double> alpha, beta;
    double lambda = 0.0;
    std::optional<double> m, n, mu;
    int grid = 17;
    int nodes = 64;
    double rel_tol = 1e-12;
    double dstep = 1e-3;
    std::string in_path, out_path;
    std::string format = "json";
    std::string convention = "paper2";

    void add_to(CLI::App* cmd) {
        cmd->add_option("--alpha", alpha, "kernel parameter alpha");
        cmd->add_option("--beta", beta, "kernel parameter beta");
        cmd->add_option("--lambda", lambda, "spectral parameter lambda");
        cmd->add_option("--m", m, "degeneracy exponent m (alternative to alpha/beta)");
        cmd->add_option("--n", n, "degeneracy exponent n");
        cmd->add_option("--mu", mu, "spectral parameter mu (lambda = mu/4)");
        cmd->add_option("--grid", grid, "number of evaluation points");
        cmd->add_option("--nodes", nodes, "Gauss-Jacobi node count");
        cmd->add_option("--rel-tol", rel_tol, "series relative tolerance");
        cmd->add_option("--dstep", dstep, "relative step of the outer derivative");
        cmd->add_option("--in", in_path, "input grid-function CSV (t,value)");
        cmd->add_option("--out", out_path, "output path (default stdout)");
        cmd->add_option("--format", format, "csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--sign-convention", convention,
                        "paper2 (+lambda(x-t)^2) | applications (-lambda(x-t)^2)")
            ->check(CLI::IsMember({"paper2", "applications"}));
    }

    Parameters params() const {
        if (m && n) {
            DegeneracyInput d{*m, *n, mu.value_or(4.0 * lambda)};
            return params_from_degeneracy(d);
        }
        if (!alpha || !beta)
            throw ConfigError("specify --alpha/--beta or --m/--n");
        return Parameters::make(*alpha, *beta, mu ? 0.25 * *mu : lambda);
    }

    SeriesControl ctrl() const {
        SeriesControl c;
        c.rel_tol = rel_tol;
        c.validate();
        return c;
    }

    QuadratureSpec quad() const {
        QuadratureSpec q;
        q.n_nodes = nodes;
        q.validate();
        return q;
    }

    KernelConvention conv() const {
        return convention == "paper2" ? KernelConvention::Paper2
                                      : KernelConvention::Applications;
    }

    ordered_json config_json(const std::string& command) const {
        ordered_json j;
        j["command"] = command;
        if ((alpha && beta) || (m && n)) {
            Parameters p = params();
            j["alpha"] = jnum(p.alpha);
            j["beta"] = jnum(p.beta);
            j["lambda"] = jnum(p.lambda);
            j["regime"] = p.regime == Regime::TheoremRegime ? "theorem" : "general";
        } else {
            j["lambda"] = jnum(lambda);
        }
        if (m && n) {
            j["m"] = jnum(*m);
            j["n"] = jnum(*n);
            j["mu"] = jnum(mu.value_or(4.0 * lambda));
        }
        j["grid"] = grid;
        j["nodes"] = nodes;
        j["rel_tol"] = jnum(rel_tol);
        j["dstep"] = jnum(dstep);
        j["sign_convention"] = convention;
        if (!in_path.empty())
            j["in"] = in_path;
        return j;
    }
};

GridFunction read_grid_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw IoError("cannot open " + path);
    std::string line;
    std::vector<double> ts, vs;
    bool first = true;
    while (std::getline(f, line)) {
        if (line.empty())
            continue;
        if (first) {
            first = false;
            if (line.rfind("t,", 0) == 0)
                continue;  // header
        }
        std::istringstream ss(line);
        std::string a, b;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ','))
            throw IoError("malformed CSV row in " + path);
        ts.push_back(std::stod(a));
        vs.push_back(std::stod(b));
    }
    return GridFunction(ts, vs);
}

void write_output(const CommonOpts& opt, const ordered_json& report,
                  const std::vector<std::string>& csv_header,
                  const std::vector<std::vector<double>>& csv_rows) {
    std::ostringstream out;
    if (opt.format == "json") {
        out << report.dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < csv_header.size(); ++i)
            out << (i ? "," : "") << csv_header[i];
        out << "\n";
        for (const auto& row : csv_rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                out << (i ? "," : "") << fmt17(row[i]);
            out << "\n";
        }
    }
    if (opt.out_path.empty()) {
        std::cout << out.str();
    } else {
        std::ofstream f(opt.out_path, std::ios::binary);
        if (!f)
            throw IoError("cannot write " + opt.out_path);
        f << out.str();
    }
}

std::vector<double> interior_points(int n, double lo = 0.05, double hi = 0.95) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i)
        g[i] = n == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (n - 1.0);
    return g;
}

// ---------------------------------------------------------------- commands

int run_eval_2f1(const CommonOpts& opt, double a, double b, double c,
                 double zmin, double zmax) {
    auto ctrl = opt.ctrl();
    ordered_json rows = ordered_json::array();
    std::vector<std::vector<double>> csv;
    for (int i = 0; i < opt.grid; ++i) {
        double z = opt.grid == 1 ? zmin : zmin + (zmax - zmin) * i / (opt.grid - 1.0);
        auto r = gauss_2f1(a, b, c, z, ctrl);
        rows.push_back({{"z", jnum(z)},
                        {"value", jnum(r.value)},
                        {"est_error", jnum(r.est_error)},
                        {"converged", r.converged},
                        {"terms", r.terms_used}});
        csv.push_back({z, r.value, r.est_error, static_cast<double>(r.converged)});
    }
    ordered_json rep;
    rep["config"] = opt.config_json("eval-2f1");
    rep["config"]["a"] = jnum(a);
    rep["config"]["b"] = jnum(b);
    rep["config"]["c"] = jnum(c);
    rep["rows"] = rows;
    write_output(opt, rep, {"z", "value", "est_error", "converged"}, csv);
    return 0;
}

int run_eval_xi2(const CommonOpts& opt, double a, double b, double d,
                 double umin, double umax, double w) {
    auto ctrl = opt.ctrl();
    ordered_json rows = ordered_json::array();
    std::vector<std::vector<double>> csv;
    for (int i = 0; i < opt.grid; ++i) {
        double u = opt.grid == 1 ? umin : umin + (umax - umin) * i / (opt.grid - 1.0);
        auto r = humbert_xi2(a, b, d, u, w, ctrl);
        rows.push_back({{"u", jnum(u)},
                        {"w", jnum(w)},
                        {"value", jnum(r.value)},
                        {"est_error", jnum(r.est_error)},
                        {"converged", r.converged}});
        csv.push_back({u, w, r.value, r.est_error, static_cast<double>(r.converged)});
    }
    ordered_json rep;
    rep["config"] = opt.config_json("eval-xi2");
    rep["config"]["a"] = jnum(a);
    rep["config"]["b"] = jnum(b);
    rep["config"]["d"] = jnum(d);
    rep["rows"] = rows;
    write_output(opt, rep, {"u", "w", "value", "est_error", "converged"}, csv);
    return 0;
}

int run_eval_f0211(const CommonOpts& opt, std::vector<double> par,
                   double xmin, double xmax, double y) {
    auto ctrl = opt.ctrl();
    ordered_json rows = ordered_json::array();
    std::vector<std::vector<double>> csv;
    for (int i = 0; i < opt.grid; ++i) {
        double x = opt.grid == 1 ? xmin : xmin + (xmax - xmin) * i / (opt.grid - 1.0);
        auto r = f0211(par[0], par[1], par[2], par[3], par[4], x, y, ctrl);
        rows.push_back({{"x", jnum(x)},
                        {"y", jnum(y)},
                        {"value", jnum(r.value)},
                        {"est_error", jnum(r.est_error)},
                        {"converged", r.converged}});
        csv.push_back({x, y, r.value, r.est_error, static_cast<double>(r.converged)});
    }
    ordered_json rep;
    rep["config"] = opt.config_json("eval-f0211");
    rep["config"]["params"] = {jnum(par[0]), jnum(par[1]), jnum(par[2]),
                               jnum(par[3]), jnum(par[4])};
    rep["rows"] = rows;
    write_output(opt, rep, {"x", "y", "value", "est_error", "converged"}, csv);
    return 0;
}

int run_convergence(const CommonOpts& opt, std::vector<int> sig, double x, double y) {
    auto r = convergence_classification(sig[0], sig[1], sig[2], sig[3], sig[4], sig[5],
                                        x, y);
    const char* name = r == ConvergenceRegion::ConvergesAll     ? "ConvergesAll"
                       : r == ConvergenceRegion::ConvergesUnit  ? "ConvergesUnit"
                       : r == ConvergenceRegion::ConvergesMixed ? "ConvergesMixed"
                                                                : "Unknown";
    ordered_json rep;
    rep["config"] = ordered_json{{"command", "convergence"},
                                 {"signature", sig},
                                 {"x", jnum(x)},
                                 {"y", jnum(y)}};
    rep["rows"] = ordered_json::array({ordered_json{{"classification", name}}});
    if (opt.format == "json") {
        write_output(opt, rep, {}, {});
    } else {
        std::ostringstream out;
        out << "classification\n" << name << "\n";
        if (opt.out_path.empty()) {
            std::cout << out.str();
        } else {
            std::ofstream f(opt.out_path, std::ios::binary);
            f << out.str();
        }
    }
    return 0;
}

int run_apply(const CommonOpts& opt, bool inverse) {
    if (opt.in_path.empty())
        throw ConfigError("apply: --in CSV required");
    GridFunction f = read_grid_csv(opt.in_path);
    Parameters p = opt.params();
    auto ctrl = opt.ctrl();
    auto quad = opt.quad();
    std::vector<double> xs = interior_points(opt.grid);
    std::vector<double> vals(xs.size());
    parallel_for(xs.size(), [&](std::size_t i) {
        vals[i] = inverse ? inverse_T(f, xs[i], p, quad, ctrl, opt.dstep, opt.conv())
                          : forward_N(f, xs[i], p, quad, ctrl, opt.conv());
    });
    ordered_json rows = ordered_json::array();
    std::vector<std::vector<double>> csv;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        rows.push_back({{"x", jnum(xs[i])}, {"value", jnum(vals[i])}});
        csv.push_back({xs[i], vals[i]});
    }
    ordered_json rep;
    rep["config"] = opt.config_json(inverse ? "apply-inverse" : "apply-forward");
    rep["rows"] = rows;
    write_output(opt, rep, {"x", "value"}, csv);
    return 0;
}

int run_roundtrip(const CommonOpts& opt, const std::string& direction) {
    Parameters p = opt.params();
    auto ctrl = opt.ctrl();
    auto quad = opt.quad();
    RoundtripDirection dir =
        direction == "TN" ? RoundtripDirection::TN : RoundtripDirection::NT;
    GridFunction seed =
        !opt.in_path.empty() ? read_grid_csv(opt.in_path)
        : dir == RoundtripDirection::TN
            ? GridFunction([](double t) { return 1.0 + t * t; })
            : GridFunction([](double x) { return x * x; },
                           [](double x) { return 2.0 * x; });
    std::vector<double> grid = interior_points(opt.grid, 0.1, 0.9);
    std::vector<double> residuals(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        auto one = roundtrip_check(seed, dir, {grid[i]}, p, quad, ctrl, opt.dstep,
                                   opt.conv());
        residuals[i] = one.residuals[0];
    });
    double sup = 0.0;
    ordered_json rows = ordered_json::array();
    std::vector<std::vector<double>> csv;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        sup = std::max(sup, residuals[i]);
        rows.push_back({{"x", jnum(grid[i])}, {"residual", jnum(residuals[i])}});
        csv.push_back({grid[i], residuals[i]});
    }
    ordered_json out;
    out["config"] = opt.config_json("roundtrip");
    out["config"]["direction"] = direction;
    out["rows"] = rows;
    out["summary"] = {{"sup_residual", jnum(sup)}};
    write_output(opt, out, {"x", "residual"}, csv);
    return sup < 1e-4 ? 0 : 3;
}

int run_verify_lemma(const CommonOpts& opt, int k_max) {
    Parameters p = opt.params();
    auto ctrl = opt.ctrl();
    // deterministic (x,s) grid with z = (x-s)/x kept below the
    // z^2/(4(1-z)) < 1 convergence bound of the Omega series
    std::vector<std::array<double, 3>> samples;
    int per_side = std::max(1, static_cast<int>(std::round(std::sqrt(opt.grid))));
    for (int i = 0; i < per_side; ++i) {
        double x = 0.15 + 0.8 * i / std::max(1, per_side - 1);
        for (int j = 0; j < per_side; ++j) {
            double frac = 0.25 + 0.7 * j / std::max(1, per_side - 1);
            samples.push_back({x, frac * x, p.lambda});
        }
    }
    double tol = p.lambda == 0.0 ? 1e-8 : 1e-6;
    std::vector<KernelSample> rep(samples.size());
    parallel_for(samples.size(), [&](std::size_t i) {
        auto one = verify_lemma(p, {samples[i]}, ctrl, tol, k_max);
        rep[i] = one[0];
    });
    double max_err = 0.0;
    bool all_ok = true;
    ordered_json rows = ordered_json::array();
    std::vector<std::vector<double>> csv;
    for (const auto& s : rep) {
        max_err = std::max(max_err, s.abs_err);
        all_ok = all_ok && s.ok;
        rows.push_back({{"x", jnum(s.x)},
                        {"s", jnum(s.s)},
                        {"lambda", jnum(s.lambda)},
                        {"z", jnum(s.z)},
                        {"w_value", jnum(s.w_value)},
                        {"target", jnum(s.target)},
                        {"abs_err", jnum(s.abs_err)},
                        {"condition", jnum(s.condition)},
                        {"ok", s.ok}});
        csv.push_back({s.x, s.s, s.lambda, s.z, s.w_value, s.target, s.abs_err,
                       s.condition});
    }
    ordered_json out;
    out["config"] = opt.config_json("verify-kernel-lemma");
    out["config"]["k_max"] = k_max;
    out["config"]["tolerance"] = jnum(tol);
    out["rows"] = rows;
    out["summary"] = {{"max_abs_err", jnum(max_err)}, {"all_ok", all_ok}};
    write_output(opt, out,
                 {"x", "s", "lambda", "z", "w_value", "target", "abs_err", "condition"},
                 csv);
    return all_ok ? 0 : 3;
}

int run_tau_prime_check(const CommonOpts& opt) {
    Parameters p = opt.params();
    auto ctrl = opt.ctrl();
    auto quad = opt.quad();
    GridFunction v = !opt.in_path.empty()
                         ? read_grid_csv(opt.in_path)
                         : GridFunction([](double t) { return 1.0 + t * t; });
    std::vector<double> ts = interior_points(opt.grid, 0.15, 0.85);
    std::vector<double> expn(ts.size()), dnum(ts.size());
    parallel_for(ts.size(), [&](std::size_t i) {
        double t = ts[i];
        expn[i] = tau_prime_expansion(v, t, p, quad, ctrl, opt.conv());
        double h = 1e-5 * std::max(t, 0.1);
        dnum[i] = (forward_N(v, t + h, p, quad, ctrl, opt.conv())
                   - forward_N(v, t - h, p, quad, ctrl, opt.conv())) / (2.0 * h);
    });
    double max_dev = 0.0;
    ordered_json rows = ordered_json::array();
    std::vector<std::vector<double>> csv;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        double dev = std::fabs(expn[i] - dnum[i]);
        max_dev = std::max(max_dev, dev);
        rows.push_back({{"t", jnum(ts[i])},
                        {"expansion", jnum(expn[i])},
                        {"derivative", jnum(dnum[i])},
                        {"abs_dev", jnum(dev)}});
        csv.push_back({ts[i], expn[i], dnum[i], dev});
    }
    ordered_json out;
    out["config"] = opt.config_json("tau-prime-check");
    out["rows"] = rows;
    out["summary"] = {{"max_abs_dev", jnum(max_dev)}};
    write_output(opt, out, {"t", "expansion", "derivative", "abs_dev"}, csv);
    return max_dev < 1e-5 ? 0 : 3;
}

CauchyData load_cauchy_data(const CommonOpts& opt, const std::string& t_in,
                            const std::string& nu_in) {
    if (t_in.empty() || nu_in.empty())
        throw ConfigError("need --t-in and --nu-in CSV files");
    GridFunction T = read_grid_csv(t_in);
    GridFunction nu = read_grid_csv(nu_in);
    Parameters p = opt.params();
    GridFunction tau = forward_N_function(T, p, opt.quad(), opt.ctrl(),
                                          KernelConvention::Applications);
    return CauchyData{tau, nu, T};
}

std::vector<CharPoint> triangle_points(int grid) {
    int n = std::max(2, static_cast<int>(std::round(std::sqrt(grid))));
    std::vector<CharPoint> pts;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n + 1; ++j)
            pts.push_back({0.05 + 0.85 * i / n, 0.05 + 0.85 * j / n});
    return pts;
}

int run_solve_cauchy(const CommonOpts& opt, const std::string& t_in,
                     const std::string& nu_in) {
    Parameters p = opt.params();
    auto ctrl = opt.ctrl();
    auto quad = opt.quad();
    CauchyData data = load_cauchy_data(opt, t_in, nu_in);
    std::vector<CharPoint> pts = triangle_points(opt.grid);
    std::vector<double> vals(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        vals[i] = cauchy_solution(pts[i], data, p, quad, ctrl);
    });
    ordered_json rows = ordered_json::array();
    std::vector<std::vector<double>> csv;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        rows.push_back({{"xi", jnum(pts[i].xi)},
                        {"eta", jnum(pts[i].eta)},
                        {"u", jnum(vals[i])}});
        csv.push_back({pts[i].xi, pts[i].eta, vals[i]});
    }
    ordered_json out;
    out["config"] = opt.config_json("solve-cauchy");
    out["rows"] = rows;
    write_output(opt, out, {"xi", "eta", "u"}, csv);
    return 0;
}

int run_solve_goursat(const CommonOpts& opt, const std::string& phi_cap_in,
                      const std::string& nu_in) {
    Parameters p = opt.params();
    auto ctrl = opt.ctrl();
    auto quad = opt.quad();
    if (phi_cap_in.empty() || nu_in.empty())
        throw ConfigError("need --Phi-in and --nu-in CSV files");
    GoursatData data = make_goursat_data(GridFunction::zero(),
                                         read_grid_csv(nu_in),
                                         read_grid_csv(phi_cap_in), p);
    std::vector<CharPoint> pts = triangle_points(opt.grid);
    std::vector<double> vals(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        vals[i] = goursat_solution(pts[i], data, p, quad, ctrl);
    });
    ordered_json rows = ordered_json::array();
    std::vector<std::vector<double>> csv;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        rows.push_back({{"xi", jnum(pts[i].xi)},
                        {"eta", jnum(pts[i].eta)},
                        {"u", jnum(vals[i])}});
        csv.push_back({pts[i].xi, pts[i].eta, vals[i]});
    }
    ordered_json out;
    out["config"] = opt.config_json("solve-goursat");
    out["rows"] = rows;
    write_output(opt, out, {"xi", "eta", "u"}, csv);
    return 0;
}

int run_recover(const CommonOpts& opt, bool nu_mode) {
    if (opt.in_path.empty())
        throw ConfigError("need --in (tau CSV)");
    GridFunction tau = read_grid_csv(opt.in_path);
    Parameters p = opt.params();
    std::vector<double> grid = interior_points(opt.grid, 0.1, 0.9);
    GridFunction out_fn =
        nu_mode ? fundamental_relation(tau, grid, p, opt.quad(), opt.ctrl(), opt.dstep)
                : recover_T_from_tau(tau, grid, p, opt.quad(), opt.ctrl(), opt.dstep);
    ordered_json rows = ordered_json::array();
    std::vector<std::vector<double>> csv;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double v = out_fn.values()[i];
        rows.push_back({{"x", jnum(grid[i])}, {"value", jnum(v)}});
        csv.push_back({grid[i], v});
    }
    ordered_json out;
    out["config"] = opt.config_json(nu_mode ? "fundamental-relation" : "recover-density");
    out["rows"] = rows;
    write_output(opt, out, {"x", "value"}, csv);
    return 0;
}

int run_check_pde(const CommonOpts& opt, const std::string& t_in,
                  const std::string& nu_in, double h) {
    Parameters p = opt.params();
    auto ctrl = opt.ctrl();
    auto quad = opt.quad();
    CauchyData data = load_cauchy_data(opt, t_in, nu_in);
    auto u = [&](CharPoint q) { return cauchy_solution(q, data, p, quad, ctrl); };
    std::vector<CharPoint> pts = {{0.25, 0.6}, {0.35, 0.8}, {0.5, 0.7}};
    ordered_json rows = ordered_json::array();
    std::vector<std::vector<double>> csv;
    double worst_ratio_dev = 0.0;
    for (const auto& q : pts) {
        double r1 = pde9_residual(u, q, p, h);
        double r2 = pde9_residual(u, q, p, 0.5 * h);
        double ratio = r2 != 0.0 ? r1 / r2 : 0.0;
        worst_ratio_dev = std::max(worst_ratio_dev, std::fabs(ratio - 4.0));
        rows.push_back({{"xi", jnum(q.xi)},
                        {"eta", jnum(q.eta)},
                        {"residual_h", jnum(r1)},
                        {"residual_h2", jnum(r2)},
                        {"ratio", jnum(ratio)}});
        csv.push_back({q.xi, q.eta, r1, r2, ratio});
    }
    ordered_json out;
    out["config"] = opt.config_json("check-pde");
    out["config"]["h"] = jnum(h);
    out["rows"] = rows;
    out["summary"] = {{"worst_ratio_dev", jnum(worst_ratio_dev)}};
    write_output(opt, out, {"xi", "eta", "residual_h", "residual_h2", "ratio"}, csv);
    return worst_ratio_dev < 1.0 ? 0 : 3;
}

int run_verify_cauchy(const CommonOpts& opt, const std::string& t_in,
                      const std::string& nu_in) {
    Parameters p = opt.params();
    auto ctrl = opt.ctrl();
    auto quad = opt.quad();
    CauchyData data = load_cauchy_data(opt, t_in, nu_in);
    std::vector<double> probes = interior_points(std::min(opt.grid, 8), 0.3, 0.7);
    std::vector<double> eps = {1e-2, std::pow(10.0, -2.5), 1e-3};
    auto rep = verify_cauchy_data(data, p, probes, quad, ctrl, eps);
    ordered_json rows = ordered_json::array();
    std::vector<std::vector<double>> csv;
    bool all_ok = true;
    for (const auto& s : rep.samples) {
        all_ok = all_ok && s.ok;
        rows.push_back({{"xi", jnum(s.xi)},
                        {"u_limit", jnum(s.u_limit)},
                        {"tau_ref", jnum(s.tau_ref)},
                        {"tau_dev", jnum(s.tau_dev)},
                        {"nu_limit_raw", jnum(s.nu_limit_raw)},
                        {"nu_ref", jnum(s.nu_ref)},
                        {"measured_factor", jnum(s.measured_factor)},
                        {"nu_dev", jnum(s.nu_dev)},
                        {"ok", s.ok}});
        csv.push_back({s.xi, s.u_limit, s.tau_ref, s.tau_dev, s.nu_limit_raw,
                       s.nu_ref, s.measured_factor, s.nu_dev});
    }
    ordered_json out;
    out["config"] = opt.config_json("verify-cauchy-data");
    out["rows"] = rows;
    out["summary"] = {{"factor_reference", jnum(rep.factor_reference)},
                      {"max_tau_dev", jnum(rep.max_tau_dev)},
                      {"max_nu_dev", jnum(rep.max_nu_dev)},
                      {"all_ok", all_ok}};
    write_output(opt, out,
                 {"xi", "u_limit", "tau_ref", "tau_dev", "nu_limit_raw", "nu_ref",
                  "measured_factor", "nu_dev"},
                 csv);
    return all_ok ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Volterra-Humbert inversion toolkit"};
    app.require_subcommand(1);

    CommonOpts opt;
    double a21 = 0.3, b21 = 0.7, c21 = 1.2, zmin = -0.9, zmax = 0.9;
    double axi = 0.25, bxi = 0.75, dxi = 1.3, umin = -0.9, umax = 0.9, wfix = 0.2;
    std::vector<double> fpar = {-0.1, 1.1, 0.45, 0.95, -0.55};
    double xmin = -0.9, xmax = 0.9, yfix = 0.1;
    std::vector<int> sig = {0, 2, 1, 1, 0, 1};
    double sx = 0.5, sy = 10.0;
    std::string direction = "TN";
    int k_max = 12;
    std::string t_in, nu_in, phi_cap_in;
    double hpde = 1e-2;

    auto* c_2f1 = app.add_subcommand("eval-2f1", "Gauss hypergeometric over a z-grid");
    opt.add_to(c_2f1);
    c_2f1->add_option("--a", a21);
    c_2f1->add_option("--b", b21);
    c_2f1->add_option("--c", c21);
    c_2f1->add_option("--zmin", zmin);
    c_2f1->add_option("--zmax", zmax);

    auto* c_xi2 = app.add_subcommand("eval-xi2", "Humbert Xi2 over a u-grid");
    opt.add_to(c_xi2);
    c_xi2->add_option("--a", axi);
    c_xi2->add_option("--b", bxi);
    c_xi2->add_option("--d", dxi);
    c_xi2->add_option("--umin", umin);
    c_xi2->add_option("--umax", umax);
    c_xi2->add_option("--w", wfix);

    auto* c_f = app.add_subcommand("eval-f0211", "F[0;2;1] over an x-grid");
    opt.add_to(c_f);
    c_f->add_option("--params", fpar, "b,c,d,e,g")->expected(5);
    c_f->add_option("--xmin", xmin);
    c_f->add_option("--xmax", xmax);
    c_f->add_option("--y", yfix);

    auto* c_conv = app.add_subcommand("convergence", "region classification");
    opt.add_to(c_conv);
    c_conv->add_option("--sig", sig, "p,q,k,l,m,n")->expected(6);
    c_conv->add_option("--x", sx);
    c_conv->add_option("--y", sy);

    auto* c_fw = app.add_subcommand("apply-forward", "N[v] on a grid");
    opt.add_to(c_fw);
    auto* c_inv = app.add_subcommand("apply-inverse", "T[tau] on a grid");
    opt.add_to(c_inv);

    auto* c_rt = app.add_subcommand("roundtrip", "TN or NT identity check");
    opt.add_to(c_rt);
    c_rt->add_option("--direction", direction)->check(CLI::IsMember({"TN", "NT"}));

    auto* c_lem = app.add_subcommand("verify-kernel-lemma",
                                     "W(x,s;lambda) = (1-z)^alpha");
    opt.add_to(c_lem);
    c_lem->add_option("--k-max", k_max);

    auto* c_tp = app.add_subcommand("tau-prime-check",
                                    "closed-form tau' vs numerical derivative");
    opt.add_to(c_tp);

    auto* c_sc = app.add_subcommand("solve-cauchy", "evaluate (12) on a triangle grid");
    opt.add_to(c_sc);
    c_sc->add_option("--t-in", t_in, "density T CSV");
    c_sc->add_option("--nu-in", nu_in, "nu CSV");

    auto* c_sg = app.add_subcommand("solve-goursat", "evaluate (13) on a triangle grid");
    opt.add_to(c_sg);
    c_sg->add_option("--Phi-in", phi_cap_in, "Phi CSV");
    c_sg->add_option("--nu-in", nu_in, "nu CSV");

    auto* c_rd = app.add_subcommand("recover-density", "T from tau via the theorem");
    opt.add_to(c_rd);
    auto* c_fr = app.add_subcommand("fundamental-relation", "nu from tau (phi = 0)");
    opt.add_to(c_fr);

    auto* c_pde = app.add_subcommand("check-pde", "EPD residual of the (12) evaluator");
    opt.add_to(c_pde);
    c_pde->add_option("--t-in", t_in);
    c_pde->add_option("--nu-in", nu_in);
    c_pde->add_option("--step", hpde, "finite-difference step h");

    auto* c_vc = app.add_subcommand("verify-cauchy-data", "boundary checks (10)/(11)");
    opt.add_to(c_vc);
    c_vc->add_option("--t-in", t_in);
    c_vc->add_option("--nu-in", nu_in);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_2f1->parsed())
            return run_eval_2f1(opt, a21, b21, c21, zmin, zmax);
        if (c_xi2->parsed())
            return run_eval_xi2(opt, axi, bxi, dxi, umin, umax, wfix);
        if (c_f->parsed())
            return run_eval_f0211(opt, fpar, xmin, xmax, yfix);
        if (c_conv->parsed())
            return run_convergence(opt, sig, sx, sy);
        if (c_fw->parsed())
            return run_apply(opt, false);
        if (c_inv->parsed())
            return run_apply(opt, true);
        if (c_rt->parsed())
            return run_roundtrip(opt, direction);
        if (c_lem->parsed())
            return run_verify_lemma(opt, k_max);
        if (c_tp->parsed())
            return run_tau_prime_check(opt);
        if (c_sc->parsed())
            return run_solve_cauchy(opt, t_in, nu_in);
        if (c_sg->parsed())
            return run_solve_goursat(opt, phi_cap_in, nu_in);
        if (c_rd->parsed())
            return run_recover(opt, false);
        if (c_fr->parsed())
            return run_recover(opt, true);
        if (c_pde->parsed())
            return run_check_pde(opt, t_in, nu_in, hpde);
        if (c_vc->parsed())
            return run_verify_cauchy(opt, t_in, nu_in);
    } catch (const Error& e) {
        ordered_json err{{"error", "vhi"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << ordered_json{{"error", "unexpected"}, {"message", e.what()}}.dump()
                  << "\n";
        return 2;
    }
    return 1;
}
