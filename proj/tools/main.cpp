// Command-line front end: tracing, wall sweeps, jump matrices, Borel data,
// the full per-model verification pipeline, and the Hopf identity suite.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "thimble/hopf.hpp"
#include "thimble/report.hpp"

using namespace thimble;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<double> parse_grid(const std::string& csv) {
    std::vector<double> grid;
    std::istringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        grid.push_back(std::stod(item));
    }
    return grid;
}

IndexWindow parse_window(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos)
        throw std::invalid_argument("window must look like A..B");
    return IndexWindow{std::stoi(text.substr(0, dots)),
                       std::stoi(text.substr(dots + 2))};
}

void print_matrix(const std::string& title, const StokesMatrix& m) {
    std::printf("%s (basis", title.c_str());
    for (const auto& b : m.basis) std::printf(" %s", b.c_str());
    std::printf("):\n");
    for (int i = 0; i < m.size(); ++i) {
        std::printf("  %-6s", m.basis[i].c_str());
        for (int j = 0; j < m.size(); ++j)
            std::printf(" %8s", to_string(m.entry(i, j)).c_str());
        std::printf("\n");
    }
}

void print_raw(const std::string& title,
               const std::vector<std::vector<cplx>>& raw) {
    std::printf("%s:\n", title.c_str());
    for (const auto& row : raw) {
        std::printf(" ");
        for (cplx v : row) std::printf(" %+.6f%+.6fi", v.real(), v.imag());
        std::printf("\n");
    }
}

int run_hopf(int w_max, const std::string& out_dir) {
    if (w_max < 1 || w_max > 12)
        throw std::invalid_argument("wmax must be in [1, 12]");

    nlohmann::json checks;
    const HopfElement s = stokes_plus(w_max);

    TensorElement grouplike;
    grouplike.w_max = w_max;
    for (const auto& [u, cu] : s.terms)
        for (const auto& [v, cv] : s.terms)
            if (total_weight(u) + total_weight(v) <= w_max)
                grouplike.terms[{u, v}] += cu * cv;
    checks["stokes_grouplike"] = coproduct(s) == grouplike;

    const HopfElement inv = antipode(s);
    checks["antipode_inverse"] =
        product(inv, s) == hopf_unit(w_max) && product(s, inv) == hopf_unit(w_max);

    const auto ds = log_stokes(w_max);
    bool primitive = true;
    HopfElement sum;
    sum.w_max = w_max;
    for (const auto& d : ds) {
        sum = sum + d;
        TensorElement prim;
        prim.w_max = w_max;
        for (const auto& [u, c] : d.terms) {
            prim.terms[{u, Word{}}] += c;
            prim.terms[{Word{}, u}] += c;
        }
        primitive = primitive && coproduct(d) == prim;
    }
    checks["log_primitive"] = primitive;
    checks["exp_log"] = hopf_exp(sum) == s;

    const IndexWindow w{-w_max - 2, 2};
    bool rep_ok = true;
    for (int k = 1; k <= w_max; ++k) {
        const IndexCoefficients ic = represent_gamma(ds[k - 1], 2, w);
        rep_ok = rep_ok && !ic.truncated && ic.coeff.size() == 1 &&
                 ic.coeff.count(2 - k) == 1 &&
                 ic.coeff.at(2 - k) == GaussRat(Rat(1, k));
    }
    const IndexCoefficients lat = represent_gamma(inv, 2, w);
    rep_ok = rep_ok && !lat.truncated && lat.coeff.size() == 2 &&
             lat.coeff.at(2) == GaussRat(1) && lat.coeff.at(1) == GaussRat(-1);
    checks["tower_representation"] = rep_ok;

    bool all = true;
    for (const auto& [name, ok] : checks.items()) {
        all = all && ok.get<bool>();
        std::printf("%-22s %s\n", name.c_str(), ok.get<bool>() ? "ok" : "FAILED");
    }

    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        nlohmann::json doc;
        doc["w_max"] = w_max;
        doc["checks"] = checks;
        doc["all_pass"] = all;
        std::ofstream out(std::filesystem::path(out_dir) / "hopf.json",
                          std::ios::binary);
        out << doc.dump(2) << "\n";
        if (!out.good()) throw std::runtime_error("cannot write hopf.json");
    }
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wall-crossing toolkit for exponential integrals"};
    app.require_subcommand(0, 1);

    std::string config_path, out_dir, hbar_csv;
    double tol_integrate = 0, tol_g = 0, tol_quad = 0, match_eps = 0;
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--hbar", hbar_csv, "comma-separated hbar grid");
    app.add_option("--tol-integrate", tol_integrate, "integrator tolerance");
    app.add_option("--tol-g", tol_g, "level conservation tolerance");
    app.add_option("--tol-quad", tol_quad, "quadrature tolerance");
    app.add_option("--match-eps", match_eps, "matrix rounding tolerance");

    std::string model_name_arg = "airy", saddle, window_arg;
    double theta = 0;
    int terms = 24, wmax = 6;

    // fallthrough lets the global options above appear after the subcommand
    CLI::App* c_trace = app.add_subcommand("trace", "trace thimble pairs");
    c_trace->fallthrough();
    c_trace->add_option("--model", model_name_arg)->required();
    c_trace->add_option("--theta", theta)->required();
    c_trace->add_option("--saddle", saddle, "only this saddle");

    CLI::App* c_conn = app.add_subcommand("connections", "sweep the wall");
    c_conn->fallthrough();
    c_conn->add_option("--model", model_name_arg)->required();

    CLI::App* c_matrix = app.add_subcommand("matrix", "jump matrices");
    c_matrix->fallthrough();
    c_matrix->add_option("--model", model_name_arg)->required();
    c_matrix->add_option("--window", window_arg, "tower window A..B");

    CLI::App* c_borel = app.add_subcommand("borel", "series and Borel data");
    c_borel->fallthrough();
    c_borel->add_option("--model", model_name_arg)->required();
    c_borel->add_option("--saddle", saddle)->required();
    c_borel->add_option("--terms", terms);

    CLI::App* c_verify = app.add_subcommand("verify", "full pipeline");
    c_verify->fallthrough();
    c_verify->add_option("--model", model_name_arg)->required();

    CLI::App* c_hopf = app.add_subcommand("hopf", "alien algebra identities");
    c_hopf->fallthrough();
    c_hopf->add_option("--wmax", wmax);

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg;
        if (!config_path.empty()) cfg = config_from_json(slurp(config_path));
        if (app.count("--out")) cfg.out_dir = out_dir;
        if (app.count("--hbar")) cfg.hbar_grid = parse_grid(hbar_csv);
        if (app.count("--tol-integrate")) cfg.tol_integrate = tol_integrate;
        if (app.count("--tol-g")) cfg.tol_G = tol_g;
        if (app.count("--tol-quad")) cfg.tol_quad = tol_quad;
        if (app.count("--match-eps")) cfg.match_eps = match_eps;

        if (*c_hopf) return run_hopf(wmax, app.count("--out") ? out_dir : "");

        if (!app.get_subcommands().empty()) cfg.model = model_from_name(model_name_arg);
        if (!window_arg.empty()) cfg.window = parse_window(window_arg);
        validate(cfg);
        const Action a = make_action(cfg.model);

        if (*c_trace) {
            ReportBundle b;
            b.config = cfg;
            b.model_name = model_name(cfg.model);
            std::vector<CriticalPoint> pts;
            if (saddle.empty())
                pts = critical_points(a, cfg.window);
            else
                pts.push_back(critical_point_by_label(a, saddle, cfg.window));
            for (const auto& p : pts) {
                IntegrationOptions opts;
                opts.f_cutoff = 30.0 + std::abs(p.value);
                const ThimblePair pair = trace_thimble(a, theta, p, opts);
                const std::string stem = p.label;
                b.traced.emplace_back(stem + "_stable_a", pair.stable_a);
                b.traced.emplace_back(stem + "_stable_b", pair.stable_b);
                b.traced.emplace_back(stem + "_unstable_c", pair.unstable_c);
                b.traced.emplace_back(stem + "_unstable_d", pair.unstable_d);
            }
            for (const auto& [name, path] : b.traced)
                std::printf("%-24s %5zu nodes, arclength %.6f\n", name.c_str(),
                            path.points.size(), path.arclength());
            emit(b, "csv_paths");
            std::printf("wrote %zu path files to %s\n", b.traced.size(),
                        cfg.out_dir.c_str());
            return 0;
        }

        if (*c_conn) {
            const double theta_star = wall_phase(cfg.model);
            const auto conns = find_connections(a, theta_star, cfg.window);
            std::printf("theta* = %.6f, %zu connection(s)\n", theta_star,
                        conns.size());
            for (const auto& c : conns)
                std::printf("  %-6s -> %-6s sign %+d arclength %.6f\n",
                            c.source.label.c_str(), c.target.label.c_str(),
                            c.sign, c.path.arclength());
            return 0;
        }

        if (*c_matrix) {
            const double theta_star = wall_phase(cfg.model);
            const JumpMatrices geom =
                jump_matrix_geometric(a, theta_star, cfg.window);
            print_matrix("geometric plus", geom.plus);
            print_matrix("geometric minus", geom.minus);
            const NumericFit fit = fit_stokes_matrix_numeric(
                cfg.model, theta_star, cfg.hbar_grid, cfg.window);
            print_raw("numeric fit plus (raw)", fit.raw_plus);
            print_raw("numeric fit minus (raw)", fit.raw_minus);
            std::printf("rounding residual %.3e, rounded %s\n",
                        fit.max_round_residual, fit.rounded_ok ? "ok" : "FAILED");
            if (fit.rounded_ok) {
                const bool match = same_entries(fit.plus, geom.plus) &&
                                   same_entries(fit.minus, geom.minus);
                std::printf("numeric matrices %s the geometric ones\n",
                            match ? "match" : "DO NOT match");
            }
            if (cfg.emit_matrices) {
                ReportBundle b;
                b.config = cfg;
                b.model_name = model_name(cfg.model);
                b.geometric = geom;
                b.resurgent = fit;
                emit(b, "csv_matrices");
                std::printf("wrote matrix files to %s\n", cfg.out_dir.c_str());
            }
            return 0;
        }

        if (*c_borel) {
            if (terms < 1 || terms > kMaxSeriesTerms)
                throw std::invalid_argument("terms out of range");
            const TransMonomial tm = transmonomial(cfg.model, saddle, terms);
            std::printf("series coefficients for %s:\n", saddle.c_str());
            for (int m = 0; m < tm.series.terms(); ++m)
                std::printf("  %2d  %s\n", m, to_string(tm.series.coeff(m)).c_str());
            const BorelGerm germ = model_germ(cfg.model, saddle, terms);
            if (terms >= 8) {
                const SingularityEstimate est =
                    locate_singularities(germ, terms, cfg.pade_order);
                std::printf("located Borel singularities%s:\n",
                            est.inconclusive ? " (inconclusive)" : "");
                for (cplx s : est.locations)
                    std::printf("  %+.6f%+.6fi\n", s.real(), s.imag());
            } else {
                std::printf("skipping singularity location (needs 8+ terms)\n");
            }
            std::printf("catalogued singularities:\n");
            for (const auto& r : singularity_records(cfg.model, saddle))
                std::printf("  omega %+.6f%+.6fi  constant %+.6f%+.6fi  -> %s\n",
                            r.omega.real(), r.omega.imag(), r.stokes.real(),
                            r.stokes.imag(), r.target.c_str());
            return 0;
        }

        if (*c_verify) {
            const ReportBundle b = run_model(cfg);
            for (const auto& c : b.checks)
                std::printf("%-18s %-4s measured %.3e tolerance %.3e\n",
                            c.name.c_str(), c.pass ? "pass" : "FAIL", c.measured,
                            c.tolerance);
            if (cfg.emit_report) emit(b, "json");
            if (cfg.emit_paths) emit(b, "csv_paths");
            if (cfg.emit_matrices) emit(b, "csv_matrices");
            if (cfg.emit_series) emit(b, "csv_series");
            std::printf("report written to %s\n", cfg.out_dir.c_str());
            return b.all_pass() ? 0 : 1;
        }

        std::cout << app.help();
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
