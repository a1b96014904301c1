#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "thimble/report.hpp"
#include "thimble/series.hpp"

namespace thimble {
namespace {

namespace fs = std::filesystem;
using njson = nlohmann::json;

// --- deterministic JSON writer ------------------------------------------

struct Jv {
    enum class Kind { boolean, int_num, real_num, str, arr, obj };
    Kind kind = Kind::obj;
    bool b = false;
    long long i = 0;
    double d = 0;
    std::string s;
    std::vector<Jv> items;
    std::map<std::string, Jv> fields;  // std::map keeps keys sorted

    static Jv of(bool v) {
        Jv j;
        j.kind = Kind::boolean;
        j.b = v;
        return j;
    }
    static Jv of(long long v) {
        Jv j;
        j.kind = Kind::int_num;
        j.i = v;
        return j;
    }
    static Jv of(int v) { return of(static_cast<long long>(v)); }
    static Jv of(double v) {
        Jv j;
        j.kind = Kind::real_num;
        j.d = v;
        return j;
    }
    static Jv of(const std::string& v) {
        Jv j;
        j.kind = Kind::str;
        j.s = v;
        return j;
    }
    static Jv array() {
        Jv j;
        j.kind = Kind::arr;
        return j;
    }
    static Jv object() { return Jv{}; }
};

void json_escape(const std::string& s, std::string& out) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

void write_json(const Jv& j, std::string& out, int indent) {
    const std::string pad(2 * indent, ' ');
    const std::string pad1(2 * (indent + 1), ' ');
    switch (j.kind) {
        case Jv::Kind::boolean:
            out += j.b ? "true" : "false";
            break;
        case Jv::Kind::int_num:
            out += std::to_string(j.i);
            break;
        case Jv::Kind::real_num: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.12e", j.d);
            out += buf;
            break;
        }
        case Jv::Kind::str:
            json_escape(j.s, out);
            break;
        case Jv::Kind::arr:
            if (j.items.empty()) {
                out += "[]";
                break;
            }
            out += "[\n";
            for (std::size_t k = 0; k < j.items.size(); ++k) {
                out += pad1;
                write_json(j.items[k], out, indent + 1);
                if (k + 1 < j.items.size()) out += ',';
                out += '\n';
            }
            out += pad + "]";
            break;
        case Jv::Kind::obj:
            if (j.fields.empty()) {
                out += "{}";
                break;
            }
            out += "{\n";
            {
                std::size_t k = 0;
                for (const auto& [key, val] : j.fields) {
                    out += pad1;
                    json_escape(key, out);
                    out += ": ";
                    write_json(val, out, indent + 1);
                    if (++k < j.fields.size()) out += ',';
                    out += '\n';
                }
            }
            out += pad + "}";
            break;
    }
}

std::string render(const Jv& j) {
    std::string out;
    write_json(j, out, 0);
    out += '\n';
    return out;
}

// --- small converters ----------------------------------------------------

Jv jv_complex(cplx z) {
    Jv j = Jv::object();
    j.fields["im"] = Jv::of(z.imag());
    j.fields["re"] = Jv::of(z.real());
    return j;
}

cplx complex_from(const njson& j) {
    return {j.at("re").get<double>(), j.at("im").get<double>()};
}

GaussRat gaussrat_from_string(const std::string& s) {
    if (s.empty()) return {};
    if (s.back() == 'i') {
        std::size_t p = 0;
        for (std::size_t k = s.size() - 1; k >= 1; --k) {
            if (s[k] == '+' || s[k] == '-') {
                p = k;
                break;
            }
        }
        Rat im{std::string(s.substr(p + 1, s.size() - p - 2))};
        if (s[p] == '-') im = -im;
        return GaussRat(Rat(std::string(s.substr(0, p))), im);
    }
    return GaussRat(Rat(s));
}

Jv jv_stokes(const StokesMatrix& m) {
    Jv j = Jv::object();
    Jv basis = Jv::array();
    for (const auto& b : m.basis) basis.items.push_back(Jv::of(b));
    j.fields["basis"] = basis;
    j.fields["direction"] =
        Jv::of(std::string(m.direction == MatrixDirection::plus ? "plus" : "minus"));
    j.fields["side"] =
        Jv::of(std::string(m.side == MatrixSide::geometric ? "geometric" : "resurgent"));
    Jv rows = Jv::array();
    for (const auto& row : m.entries) {
        Jv r = Jv::array();
        for (const auto& e : row) r.items.push_back(Jv::of(to_string(e)));
        rows.items.push_back(r);
    }
    j.fields["entries"] = rows;
    return j;
}

StokesMatrix stokes_from(const njson& j) {
    StokesMatrix m;
    for (const auto& b : j.at("basis")) m.basis.push_back(b.get<std::string>());
    m.direction = j.at("direction").get<std::string>() == "plus"
                      ? MatrixDirection::plus
                      : MatrixDirection::minus;
    m.side = j.at("side").get<std::string>() == "geometric" ? MatrixSide::geometric
                                                            : MatrixSide::resurgent;
    for (const auto& row : j.at("entries")) {
        std::vector<GaussRat> r;
        for (const auto& e : row) r.push_back(gaussrat_from_string(e.get<std::string>()));
        m.entries.push_back(std::move(r));
    }
    return m;
}

Jv jv_raw_matrix(const std::vector<std::vector<cplx>>& m) {
    Jv rows = Jv::array();
    for (const auto& row : m) {
        Jv r = Jv::array();
        for (cplx e : row) r.items.push_back(jv_complex(e));
        rows.items.push_back(r);
    }
    return rows;
}

std::vector<std::vector<cplx>> raw_matrix_from(const njson& j) {
    std::vector<std::vector<cplx>> m;
    for (const auto& row : j) {
        std::vector<cplx> r;
        for (const auto& e : row) r.push_back(complex_from(e));
        m.push_back(std::move(r));
    }
    return m;
}

Jv jv_config(const RunConfig& cfg) {
    Jv j = Jv::object();
    j.fields["delta"] = Jv::of(cfg.delta);
    j.fields["emit_matrices"] = Jv::of(cfg.emit_matrices);
    j.fields["emit_paths"] = Jv::of(cfg.emit_paths);
    j.fields["emit_report"] = Jv::of(cfg.emit_report);
    j.fields["emit_series"] = Jv::of(cfg.emit_series);
    Jv grid = Jv::array();
    for (double h : cfg.hbar_grid) grid.items.push_back(Jv::of(h));
    j.fields["hbar_grid"] = grid;
    j.fields["match_eps"] = Jv::of(cfg.match_eps);
    j.fields["model"] = Jv::of(model_name(cfg.model));
    j.fields["out_dir"] = Jv::of(cfg.out_dir);
    j.fields["pade_order"] = Jv::of(cfg.pade_order);
    j.fields["series_terms"] = Jv::of(cfg.series_terms);
    j.fields["tol_g"] = Jv::of(cfg.tol_G);
    j.fields["tol_integrate"] = Jv::of(cfg.tol_integrate);
    j.fields["tol_quad"] = Jv::of(cfg.tol_quad);
    j.fields["window_max"] = Jv::of(cfg.window.n_max);
    j.fields["window_min"] = Jv::of(cfg.window.n_min);
    return j;
}

std::string sanitize(const std::string& label) {
    std::string out;
    for (char c : label) {
        if (c == '+')
            out += "plus";
        else if (c == '-')
            out += "minus";
        else
            out += c;
    }
    return out;
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + p.string() + " for writing");
    f << content;
    if (!f) throw std::runtime_error("write failed for " + p.string());
}

}  // namespace

std::string model_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::airy: return "airy";
        case ModelKind::bessel: return "bessel";
        case ModelKind::gamma: return "gamma";
    }
    throw std::logic_error("model_name: unknown kind");
}

ModelKind model_from_name(const std::string& name) {
    if (name == "airy") return ModelKind::airy;
    if (name == "bessel") return ModelKind::bessel;
    if (name == "gamma") return ModelKind::gamma;
    throw std::invalid_argument("unknown model: " + name);
}

double wall_phase(ModelKind kind) {
    return kind == ModelKind::airy ? 0.0 : M_PI / 2.0;
}

void validate(const RunConfig& cfg) {
    if (cfg.series_terms < 1 || cfg.series_terms > 64)
        throw std::invalid_argument("config: series_terms must be in [1, 64]");
    if (cfg.window.n_min > cfg.window.n_max)
        throw std::invalid_argument("config: empty index window");
    if (cfg.window.n_max - cfg.window.n_min + 1 > 64)
        throw std::invalid_argument("config: window size above 64");
    if (cfg.delta <= 0 || cfg.delta >= 0.5)
        throw std::invalid_argument("config: delta must lie in (0, 0.5)");
    if (cfg.tol_integrate <= 0 || cfg.tol_G <= 0 || cfg.tol_quad <= 0 ||
        cfg.match_eps <= 0)
        throw std::invalid_argument("config: tolerances must be positive");
    if (cfg.pade_order < -1)
        throw std::invalid_argument("config: pade_order must be >= -1");
    for (double h : cfg.hbar_grid)
        if (h <= 0) throw std::invalid_argument("config: hbar values must be positive");
}

bool ReportBundle::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

ReportBundle run_model(const RunConfig& cfg) {
    validate(cfg);
    ReportBundle b;
    b.config = cfg;
    b.model_name = model_name(cfg.model);
    b.theta_star = wall_phase(cfg.model);

    const Action a = make_action(cfg.model);
    const IndexWindow w = cfg.window;

    b.geometric = jump_matrix_geometric(a, b.theta_star, w);
    b.saddle_labels = b.geometric.plus.basis;

    const auto conns = find_connections(a, b.theta_star, w);
    for (const auto& c : conns) {
        b.connections.push_back({c.source.label, c.target.label, c.sign,
                                 b.theta_star, c.path.arclength()});
        b.traced.emplace_back("connection_" + sanitize(c.source.label) + "_to_" +
                                  sanitize(c.target.label),
                              c.path);
    }

    for (const std::string& label : b.saddle_labels) {
        const CriticalPoint p = critical_point_by_label(a, label, w);
        IntegrationOptions opts;
        opts.f_cutoff = 30.0 + std::abs(p.value);
        opts.s_max = 1000.0;
        for (double sign : {-1.0, 1.0}) {
            const double theta = b.theta_star + sign * cfg.delta;
            const ThimblePair pair = trace_thimble(a, theta, p, opts);
            const std::string stem =
                sanitize(label) + (sign < 0 ? "_below" : "_above");
            b.traced.emplace_back(stem + "_stable_a", pair.stable_a);
            b.traced.emplace_back(stem + "_stable_b", pair.stable_b);
            b.traced.emplace_back(stem + "_unstable_c", pair.unstable_c);
            b.traced.emplace_back(stem + "_unstable_d", pair.unstable_d);
        }
    }

    for (const std::string& label : b.saddle_labels) {
        const auto recs = singularity_records(cfg.model, label);
        b.singularities.insert(b.singularities.end(), recs.begin(), recs.end());
    }

    b.resurgent = fit_stokes_matrix_numeric(cfg.model, b.theta_star,
                                            cfg.hbar_grid, w);

    std::vector<double> verify_grid =
        cfg.hbar_grid.empty() ? default_hbar_grid() : cfg.hbar_grid;
    std::string rep_label = "p+";
    RaySide rep_side = RaySide::right;
    if (cfg.model == ModelKind::bessel) {
        rep_label = "w+";
        rep_side = RaySide::left;
    } else if (cfg.model == ModelKind::gamma) {
        const int n = std::clamp(0, w.n_min, w.n_max);
        rep_label = "p_" + std::to_string(n);
        rep_side = RaySide::right;
    }
    b.verification =
        verify_thimble_equals_lateral(cfg.model, rep_label, rep_side, verify_grid);

    // Acceptance items for this model.
    const int expected_conns =
        cfg.model == ModelKind::airy ? 1
        : cfg.model == ModelKind::bessel ? 2
                                         : (w.n_max - w.n_min);
    b.checks.push_back({"connection_count",
                        static_cast<int>(conns.size()) == expected_conns,
                        static_cast<double>(conns.size()),
                        static_cast<double>(expected_conns)});

    {
        const StokesMatrix prod = b.geometric.plus * b.geometric.minus;
        const StokesMatrix id = stokes_identity(
            b.geometric.plus.basis, MatrixSide::geometric, MatrixDirection::plus);
        const bool ok = same_entries(prod, id);
        b.checks.push_back({"jump_inverse", ok, ok ? 0.0 : 1.0, 0.0});
    }

    b.checks.push_back({"rounding", b.resurgent.rounded_ok,
                        b.resurgent.max_round_residual, cfg.match_eps});
    b.checks.push_back({"matrix_match_plus",
                        b.resurgent.rounded_ok &&
                            same_entries(b.geometric.plus, b.resurgent.plus),
                        b.resurgent.max_round_residual, cfg.match_eps});
    b.checks.push_back({"matrix_match_minus",
                        b.resurgent.rounded_ok &&
                            same_entries(b.geometric.minus, b.resurgent.minus),
                        b.resurgent.max_round_residual, cfg.match_eps});

    {
        const double tol = cfg.model == ModelKind::gamma ? 1e-5 : 1e-6;
        b.checks.push_back({"verification", b.verification.max_rel_dev <= tol,
                            b.verification.max_rel_dev, tol});
    }

    {
        // Nearest located Borel singularity against the known leading one.
        std::string germ_label = cfg.model == ModelKind::airy ? "p+"
                                 : cfg.model == ModelKind::bessel
                                     ? "w-"
                                     : "p_0";
        const double omega0 = cfg.model == ModelKind::airy ? 4.0 / 3.0
                              : cfg.model == ModelKind::bessel ? 2.0
                                                               : 2.0 * M_PI;
        const int terms = std::max(cfg.series_terms, 24);
        const BorelGerm germ = model_germ(cfg.model, germ_label, terms);
        const SingularityEstimate est =
            locate_singularities(germ, terms, cfg.pade_order);
        double err = 1e9;
        for (cplx s : est.locations)
            err = std::min(err, std::abs(s - cplx(omega0, 0.0)));
        b.checks.push_back({"singularities", !est.inconclusive && err <= 1e-3,
                            err, 1e-3});
    }

    return b;
}

std::string config_to_json(const RunConfig& cfg) { return render(jv_config(cfg)); }

RunConfig config_from_json(const std::string& text) {
    const njson j = njson::parse(text);
    RunConfig cfg;
    if (j.contains("model")) cfg.model = model_from_name(j.at("model").get<std::string>());
    if (j.contains("delta")) cfg.delta = j.at("delta").get<double>();
    if (j.contains("hbar_grid"))
        for (const auto& h : j.at("hbar_grid")) cfg.hbar_grid.push_back(h.get<double>());
    if (j.contains("series_terms")) cfg.series_terms = j.at("series_terms").get<int>();
    if (j.contains("pade_order")) cfg.pade_order = j.at("pade_order").get<int>();
    if (j.contains("window_min")) cfg.window.n_min = j.at("window_min").get<int>();
    if (j.contains("window_max")) cfg.window.n_max = j.at("window_max").get<int>();
    if (j.contains("tol_integrate")) cfg.tol_integrate = j.at("tol_integrate").get<double>();
    if (j.contains("tol_g")) cfg.tol_G = j.at("tol_g").get<double>();
    if (j.contains("tol_quad")) cfg.tol_quad = j.at("tol_quad").get<double>();
    if (j.contains("match_eps")) cfg.match_eps = j.at("match_eps").get<double>();
    if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
    if (j.contains("emit_paths")) cfg.emit_paths = j.at("emit_paths").get<bool>();
    if (j.contains("emit_matrices")) cfg.emit_matrices = j.at("emit_matrices").get<bool>();
    if (j.contains("emit_report")) cfg.emit_report = j.at("emit_report").get<bool>();
    if (j.contains("emit_series")) cfg.emit_series = j.at("emit_series").get<bool>();
    return cfg;
}

std::string bundle_to_json(const ReportBundle& b) {
    Jv root = Jv::object();
    root.fields["schema_version"] = Jv::of(1);
    root.fields["model"] = Jv::of(b.model_name);
    root.fields["config_echo"] = jv_config(b.config);

    Jv geo = Jv::object();
    geo.fields["plus"] = jv_stokes(b.geometric.plus);
    geo.fields["minus"] = jv_stokes(b.geometric.minus);
    Jv elem = Jv::array();
    for (const auto& e : b.geometric.elementary) elem.items.push_back(jv_stokes(e));
    geo.fields["elementary"] = elem;
    geo.fields["theta_star"] = Jv::of(b.theta_star);
    root.fields["geometric"] = geo;

    Jv res = Jv::object();
    Jv basis = Jv::array();
    for (const auto& s : b.resurgent.basis) basis.items.push_back(Jv::of(s));
    res.fields["basis"] = basis;
    res.fields["plus"] = jv_stokes(b.resurgent.plus);
    res.fields["minus"] = jv_stokes(b.resurgent.minus);
    res.fields["raw_plus"] = jv_raw_matrix(b.resurgent.raw_plus);
    res.fields["raw_minus"] = jv_raw_matrix(b.resurgent.raw_minus);
    res.fields["rounded_ok"] = Jv::of(b.resurgent.rounded_ok);
    res.fields["max_round_residual"] = Jv::of(b.resurgent.max_round_residual);
    root.fields["resurgent"] = res;

    Jv conns = Jv::array();
    for (const auto& c : b.connections) {
        Jv j = Jv::object();
        j.fields["arclength"] = Jv::of(c.arclength);
        j.fields["sign"] = Jv::of(c.sign);
        j.fields["source"] = Jv::of(c.source);
        j.fields["target"] = Jv::of(c.target);
        j.fields["theta_star"] = Jv::of(c.theta_star);
        conns.items.push_back(j);
    }
    root.fields["connections"] = conns;

    Jv sings = Jv::array();
    for (const auto& s : b.singularities) {
        Jv j = Jv::object();
        j.fields["omega"] = jv_complex(s.omega);
        j.fields["stokes"] = jv_complex(s.stokes);
        j.fields["target"] = Jv::of(s.target);
        sings.items.push_back(j);
    }
    root.fields["singularities"] = sings;

    Jv ver = Jv::object();
    ver.fields["max_rel_dev"] = Jv::of(b.verification.max_rel_dev);
    ver.fields["model"] = Jv::of(model_name(b.verification.model));
    ver.fields["saddle"] = Jv::of(b.verification.saddle);
    ver.fields["side"] =
        Jv::of(std::string(b.verification.side == RaySide::left ? "left" : "right"));
    Jv rows = Jv::array();
    for (const auto& r : b.verification.rows) {
        Jv j = Jv::object();
        j.fields["hbar"] = Jv::of(r.hbar);
        j.fields["lateral"] = jv_complex(r.lateral);
        j.fields["rel_dev"] = Jv::of(r.rel_dev);
        j.fields["thimble"] = jv_complex(r.thimble);
        rows.items.push_back(j);
    }
    ver.fields["rows"] = rows;
    root.fields["verification"] = ver;

    Jv pass = Jv::object();
    pass.fields["all"] = Jv::of(b.all_pass());
    Jv items = Jv::array();
    for (const auto& c : b.checks) {
        Jv j = Jv::object();
        j.fields["measured"] = Jv::of(c.measured);
        j.fields["name"] = Jv::of(c.name);
        j.fields["pass"] = Jv::of(c.pass);
        j.fields["tolerance"] = Jv::of(c.tolerance);
        items.items.push_back(j);
    }
    pass.fields["items"] = items;
    root.fields["pass"] = pass;

    return render(root);
}

ReportBundle bundle_from_json(const std::string& text) {
    const njson j = njson::parse(text);
    ReportBundle b;
    b.model_name = j.at("model").get<std::string>();
    b.config = config_from_json(j.at("config_echo").dump());

    const njson& geo = j.at("geometric");
    b.theta_star = geo.at("theta_star").get<double>();
    b.geometric.plus = stokes_from(geo.at("plus"));
    b.geometric.minus = stokes_from(geo.at("minus"));
    for (const auto& e : geo.at("elementary"))
        b.geometric.elementary.push_back(stokes_from(e));
    b.saddle_labels = b.geometric.plus.basis;

    const njson& res = j.at("resurgent");
    for (const auto& s : res.at("basis"))
        b.resurgent.basis.push_back(s.get<std::string>());
    b.resurgent.plus = stokes_from(res.at("plus"));
    b.resurgent.minus = stokes_from(res.at("minus"));
    b.resurgent.raw_plus = raw_matrix_from(res.at("raw_plus"));
    b.resurgent.raw_minus = raw_matrix_from(res.at("raw_minus"));
    b.resurgent.rounded_ok = res.at("rounded_ok").get<bool>();
    b.resurgent.max_round_residual = res.at("max_round_residual").get<double>();

    for (const auto& c : j.at("connections"))
        b.connections.push_back({c.at("source").get<std::string>(),
                                 c.at("target").get<std::string>(),
                                 c.at("sign").get<int>(),
                                 c.at("theta_star").get<double>(),
                                 c.at("arclength").get<double>()});

    for (const auto& s : j.at("singularities"))
        b.singularities.push_back({complex_from(s.at("omega")),
                                   complex_from(s.at("stokes")),
                                   s.at("target").get<std::string>()});

    const njson& ver = j.at("verification");
    b.verification.model = model_from_name(ver.at("model").get<std::string>());
    b.verification.saddle = ver.at("saddle").get<std::string>();
    b.verification.side = ver.at("side").get<std::string>() == "left"
                              ? RaySide::left
                              : RaySide::right;
    b.verification.max_rel_dev = ver.at("max_rel_dev").get<double>();
    for (const auto& r : ver.at("rows"))
        b.verification.rows.push_back({r.at("hbar").get<double>(),
                                       complex_from(r.at("thimble")),
                                       complex_from(r.at("lateral")),
                                       r.at("rel_dev").get<double>()});

    for (const auto& c : j.at("pass").at("items"))
        b.checks.push_back({c.at("name").get<std::string>(),
                            c.at("pass").get<bool>(),
                            c.at("measured").get<double>(),
                            c.at("tolerance").get<double>()});
    return b;
}

void emit(const ReportBundle& b, const std::string& format) {
    const fs::path dir(b.config.out_dir);
    fs::create_directories(dir);

    if (format == "json") {
        write_file(dir / "report.json", bundle_to_json(b));
        return;
    }

    if (format == "csv_paths") {
        const Action a = make_action(b.config.model);
        for (const auto& [name, path] : b.traced) {
            std::string csv = "s,re,im,F,G,wrap\n";
            for (const PathNode& n : path.points) {
                const int wrap =
                    a.domain == Domain::cylinder_2pi
                        ? static_cast<int>(std::floor((n.z.imag() + M_PI) /
                                                      (2.0 * M_PI)))
                        : 0;
                char buf[160];
                std::snprintf(buf, sizeof buf, "%.12e,%.12e,%.12e,%.12e,%.12e,%d\n",
                              n.s, n.z.real(), n.z.imag(),
                              F_value(a, path.theta, n.z),
                              G_value(a, path.theta, n.z), wrap);
                csv += buf;
            }
            write_file(dir / (name + ".csv"), csv);
        }
        return;
    }

    if (format == "csv_matrices") {
        auto matrix_csv = [](const StokesMatrix& m) {
            std::string csv = "basis";
            for (const auto& s : m.basis) csv += "," + s;
            csv += '\n';
            for (int i = 0; i < m.size(); ++i) {
                csv += m.basis[i];
                for (int k = 0; k < m.size(); ++k)
                    csv += "," + to_string(m.entries[i][k]);
                csv += '\n';
            }
            return csv;
        };
        write_file(dir / "geometric_plus.csv", matrix_csv(b.geometric.plus));
        write_file(dir / "geometric_minus.csv", matrix_csv(b.geometric.minus));
        if (b.resurgent.rounded_ok) {
            write_file(dir / "resurgent_plus.csv", matrix_csv(b.resurgent.plus));
            write_file(dir / "resurgent_minus.csv", matrix_csv(b.resurgent.minus));
        }
        return;
    }

    if (format == "csv_series") {
        for (const std::string& label : b.saddle_labels) {
            const TransMonomial tm =
                transmonomial(b.config.model, label, b.config.series_terms);
            std::string csv = "m,coefficient\n";
            for (int m = 0; m < tm.series.terms(); ++m)
                csv += std::to_string(m) + "," + to_string(tm.series.coeff(m)) + '\n';
            write_file(dir / ("series_" + sanitize(label) + ".csv"), csv);
        }
        return;
    }

    throw std::invalid_argument("emit: unknown format " + format);
}

}  // namespace thimble
