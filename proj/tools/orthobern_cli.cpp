#include <orthobern/orthobern.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

using json = nlohmann::ordered_json;
using namespace orthobern;

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void deliver(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << content;
    if (!out) throw ConfigError("failed writing output file: " + path);
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

json int_json(const Int& v) {
    static const Int lo = Int(std::numeric_limits<long long>::min());
    static const Int hi = Int(std::numeric_limits<long long>::max());
    if (v >= lo && v <= hi) return json(v.convert_to<long long>());
    return json(v.str()); // too wide for a JSON number, keep every digit
}

std::string poly_string(const RationalPoly& p) {
    if (p.is_zero()) return "0";
    std::string s = "[";
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        if (i) s += ", ";
        s += p.coeffs()[i].str();
    }
    return s + "]";
}

// --- parameter overrides (--param key=value, repeatable) ---

std::map<std::string, std::string> parse_params(const std::vector<std::string>& raw) {
    std::map<std::string, std::string> kv;
    for (const std::string& s : raw) {
        auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError("--param expects key=value, got '" + s + "'");
        kv[s.substr(0, eq)] = s.substr(eq + 1);
    }
    return kv;
}

double param_double(const std::string& key, const std::string& s) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("parameter '" + key + "' expects a number, got '" + s + "'");
    }
}

int param_int(const std::string& key, const std::string& s) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("parameter '" + key + "' expects an integer, got '" + s + "'");
    }
}

std::vector<double> param_list(const std::string& key, const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(param_double(key, cell));
    return out;
}

void apply_params(LissajousParams& p, const std::map<std::string, std::string>& kv) {
    for (const auto& [k, v] : kv) {
        if (k == "A")
            p.A = param_double(k, v);
        else if (k == "B")
            p.B = param_double(k, v);
        else if (k == "a_freq")
            p.a_freq = param_int(k, v);
        else if (k == "b_freq")
            p.b_freq = param_int(k, v);
        else if (k == "delta")
            p.delta = param_double(k, v);
        else
            throw ConfigError("unknown lissajous parameter '" + k +
                              "' (valid: A, B, a_freq, b_freq, delta)");
    }
}

void apply_params(SincParams& p, const std::map<std::string, std::string>& kv) {
    for (const auto& [k, v] : kv) {
        if (k == "s")
            p.s = param_double(k, v);
        else
            throw ConfigError("unknown sinc parameter '" + k + "' (valid: s)");
    }
}

void apply_params(LangermannParams& p, const std::map<std::string, std::string>& kv) {
    for (const auto& [k, v] : kv) {
        if (k == "p")
            p.p = param_int(k, v);
        else if (k == "c")
            p.c = param_list(k, v);
        else if (k == "q")
            p.q = param_list(k, v);
        else if (k == "r")
            p.r = param_list(k, v);
        else
            throw ConfigError("unknown langermann parameter '" + k + "' (valid: p, c, q, r)");
    }
}

const char* kTargets = "lissajous, sinc, langermann";

bool surface_target(const std::string& t) { return t == "sinc" || t == "langermann"; }

void check_target(const std::string& t) {
    if (t != "lissajous" && !surface_target(t))
        throw ConfigError("unknown target '" + t + "' (valid: " + kTargets + ")");
}

// --- CSV input ---

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
}

bool parse_csv_number(const std::string& cell, double& out) {
    const char* begin = cell.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    if (end == begin) return false;
    while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
    return *end == '\0';
}

std::vector<std::vector<double>> read_csv_rows(const std::string& path, std::size_t columns,
                                               const char* shape_msg) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open input file: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        std::vector<std::string> cells = split_csv_line(line);
        double probe;
        if (first && !cells.empty() && !parse_csv_number(cells[0], probe)) {
            first = false; // header line
            continue;
        }
        first = false;
        if (cells.size() != columns) throw ConfigError(std::string(shape_msg) + ": " + line);
        std::vector<double> row(columns);
        for (std::size_t i = 0; i < columns; ++i)
            if (!parse_csv_number(cells[i], row[i]))
                throw ConfigError("unparseable number '" + cells[i] + "' in " + path);
        rows.push_back(std::move(row));
    }
    return rows;
}

struct CurveData {
    std::vector<double> t, x, y;
};

CurveData read_curve_csv(const std::string& path) {
    std::vector<std::vector<double>> rows = read_csv_rows(path, 3, "curve data rows need t,x,y");
    if (rows.size() < 2) throw ConfigError("curve data needs at least 2 rows");
    CurveData d;
    for (const auto& r : rows) {
        if (!std::isfinite(r[0])) throw ConfigError("non-finite abscissa in " + path);
        if (!std::isfinite(r[1]) || !std::isfinite(r[2]))
            throw EvaluationError("non-finite sample in " + path, r[0]);
        if (!d.t.empty() && !(r[0] > d.t.back()))
            throw ConfigError("curve data needs strictly increasing t");
        d.t.push_back(r[0]);
        d.x.push_back(r[1]);
        d.y.push_back(r[2]);
    }
    return d;
}

struct SurfaceData {
    std::vector<double> xs, ys;
    std::vector<double> f; // row-major [ix][iy]
};

SurfaceData read_surface_csv(const std::string& path) {
    std::vector<std::vector<double>> rows = read_csv_rows(path, 3, "surface data rows need x,y,f");
    std::map<double, int> xidx, yidx;
    for (const auto& r : rows) {
        if (!std::isfinite(r[0]) || !std::isfinite(r[1]))
            throw ConfigError("non-finite grid coordinate in " + path);
        xidx.emplace(r[0], 0);
        yidx.emplace(r[1], 0);
    }
    SurfaceData d;
    for (auto& [x, i] : xidx) {
        i = static_cast<int>(d.xs.size());
        d.xs.push_back(x);
    }
    for (auto& [y, i] : yidx) {
        i = static_cast<int>(d.ys.size());
        d.ys.push_back(y);
    }
    if (d.xs.size() < 2 || d.ys.size() < 2)
        throw ConfigError("surface data needs at least a 2x2 grid");
    const std::size_t nx = d.xs.size(), ny = d.ys.size();
    if (rows.size() != nx * ny)
        throw ConfigError("surface data must cover the full tensor grid (" + std::to_string(nx) + "x" +
                          std::to_string(ny) + " points expected, " + std::to_string(rows.size()) + " rows)");
    d.f.assign(nx * ny, std::numeric_limits<double>::quiet_NaN());
    for (const auto& r : rows) {
        if (!std::isfinite(r[2])) throw EvaluationError("non-finite sample in " + path, r[0], r[1]);
        d.f[static_cast<std::size_t>(xidx[r[0]]) * ny + yidx[r[1]]] = r[2];
    }
    for (double v : d.f)
        if (!std::isfinite(v)) throw ConfigError("surface data repeats grid points and leaves gaps");
    return d;
}

std::vector<double> trapezoid_weights(const std::vector<double>& t) {
    const std::size_t n = t.size();
    std::vector<double> w(n);
    w[0] = (t[1] - t[0]) / 2.0;
    w[n - 1] = (t[n - 1] - t[n - 2]) / 2.0;
    for (std::size_t i = 1; i + 1 < n; ++i) w[i] = (t[i + 1] - t[i - 1]) / 2.0;
    return w;
}

// Trapezoidal-weighted projection of sampled data, then the same basis
// conversions the quadrature path uses.
ControlVector data_fit_curve(const BasisSpec& spec, const std::vector<double>& t,
                             const std::vector<double>& f, const std::vector<double>& w, bool ortho) {
    const int n = spec.n;
    std::vector<double> c(n + 1, 0.0);
    for (std::size_t u = 0; u < t.size(); ++u) {
        std::vector<double> phi = onb_eval_all(spec, t[u]);
        const double wf = w[u] * f[u];
        for (int j = 0; j <= n; ++j) c[j] += wf * phi[j];
    }
    if (ortho) {
        const double inv = 1.0 / spec.interval.width();
        for (double& v : c) v *= inv;
        return ControlVector(BasisKind::orthonormal, spec, std::move(c));
    }
    std::vector<double> P(n + 1, 0.0);
    for (int i = n; i >= 0; --i) {
        double acc = c[i];
        for (int j = i + 1; j <= n; ++j) acc -= P[j] * phi_bern_integral(n, i, j, spec.interval).value;
        P[i] = acc / phi_bern_integral(n, i, i, spec.interval).value;
    }
    return ControlVector(BasisKind::classical_bernstein, spec, std::move(P));
}

ControlGrid data_fit_surface(const BasisSpec& xs_spec, const BasisSpec& ys_spec, const SurfaceData& d,
                             bool ortho) {
    const int n = xs_spec.n, m = ys_spec.n;
    const std::size_t nx = d.xs.size(), ny = d.ys.size();
    const std::vector<double> wx = trapezoid_weights(d.xs), wy = trapezoid_weights(d.ys);

    std::vector<std::vector<double>> phi_y(ny);
    for (std::size_t v = 0; v < ny; ++v) phi_y[v] = onb_eval_all(ys_spec, d.ys[v]);

    std::vector<double> D(static_cast<std::size_t>(n + 1) * (m + 1), 0.0);
    std::vector<double> row(m + 1);
    for (std::size_t u = 0; u < nx; ++u) {
        std::vector<double> phi_x = onb_eval_all(xs_spec, d.xs[u]);
        std::fill(row.begin(), row.end(), 0.0);
        for (std::size_t v = 0; v < ny; ++v) {
            const double wf = wy[v] * d.f[u * ny + v];
            for (int j = 0; j <= m; ++j) row[j] += wf * phi_y[v][j];
        }
        for (int i = 0; i <= n; ++i) {
            const double wxp = wx[u] * phi_x[i];
            for (int j = 0; j <= m; ++j) D[static_cast<std::size_t>(i) * (m + 1) + j] += wxp * row[j];
        }
    }

    if (ortho) {
        const double inv = 1.0 / (xs_spec.interval.width() * ys_spec.interval.width());
        for (double& v : D) v *= inv;
        return ControlGrid(BasisKind::orthonormal, xs_spec, ys_spec, std::move(D));
    }
    auto tri = [](int deg, const Interval& iv) {
        std::vector<std::vector<double>> I(deg + 1, std::vector<double>(deg + 1, 0.0));
        for (int i = 0; i <= deg; ++i)
            for (int j = i; j <= deg; ++j) I[i][j] = phi_bern_integral(deg, i, j, iv).value;
        return I;
    };
    const auto Ix = tri(n, xs_spec.interval), Iy = tri(m, ys_spec.interval);
    ControlGrid P(BasisKind::classical_bernstein, xs_spec, ys_spec,
                  std::vector<double>(static_cast<std::size_t>(n + 1) * (m + 1), 0.0));
    for (int i = n; i >= 0; --i)
        for (int j = m; j >= 0; --j) {
            double acc = D[static_cast<std::size_t>(i) * (m + 1) + j];
            for (int k = i; k <= n; ++k)
                for (int l = j; l <= m; ++l) {
                    if (k == i && l == j) continue;
                    acc -= P.at(k, l) * Ix[i][k] * Iy[j][l];
                }
            P.at(i, j) = acc / (Ix[i][i] * Iy[j][j]);
        }
    return P;
}

// --- report assembly ---

json interval_json(const Interval& iv) { return json{{"a", iv.a}, {"b", iv.b}}; }

json curve_report(const std::string& basis_name, const ControlVector& cx, const ControlVector& cy,
                  double error, int grid_n, const json& quadrature) {
    json r;
    r["basis"] = basis_name;
    r["degrees"] = json{{"n", cx.spec.n}};
    r["interval"] = interval_json(cx.spec.interval);
    r["coefficients"] = json{{"x", cx.values}, {"y", cy.values}};
    r["error"] = error;
    r["grid"] = json{{"N", grid_n}};
    r["quadrature"] = quadrature;
    return r;
}

json surface_report(const std::string& basis_name, const ControlGrid& cg, double error, int grid_n,
                    int grid_m, const json& quadrature) {
    json r;
    r["basis"] = basis_name;
    r["degrees"] = json{{"n", cg.x_spec.n}, {"m", cg.y_spec.n}};
    r["interval"] = json{{"x", interval_json(cg.x_spec.interval)}, {"y", interval_json(cg.y_spec.interval)}};
    json rows = json::array();
    for (int i = 0; i <= cg.x_spec.n; ++i) {
        json row = json::array();
        for (int j = 0; j <= cg.y_spec.n; ++j) row.push_back(cg.at(i, j));
        rows.push_back(std::move(row));
    }
    r["coefficients"] = std::move(rows);
    r["error"] = error;
    r["grid"] = json{{"N", grid_n}, {"M", grid_m}};
    r["quadrature"] = quadrature;
    return r;
}

json quadrature_json(const QuadratureRule& rule) {
    return json{{"panels", rule.panels}, {"nodes", rule.nodes_per_panel}};
}

json trapezoid_json() { return json{{"panels", nullptr}, {"nodes", nullptr}}; }

// --- subcommand option bags ---

struct CommonOut {
    std::string output;
    std::string format = "csv";
};

struct BasisEvalOpts {
    int n = 0;
    std::string kind = "bernstein";
    double a = 0.0, b = 1.0;
    bool a_set = false, b_set = false;
    double x = 0.0;
    bool x_set = false;
    int samples = 101;
    CommonOut out;
};

struct BasisCoeffsOpts {
    int n = 0;
    int j = -1;
    bool j_set = false;
    std::string output;
    std::string format = "json";
};

struct VerifyOpts {
    int n = 0;
    std::string output;
};

struct FitCurveOpts {
    std::string target, input;
    int n = 0;
    std::string basis = "ortho";
    double a = 0.0, b = 0.0;
    bool a_set = false, b_set = false;
    int panels = 64, nodes = 16;
    int samples = 1001;
    std::vector<std::string> params;
    std::string output, emit_samples;
    std::string format = "json";
};

struct FitSurfaceOpts {
    std::string target, input;
    int n = 0, m = -1;
    std::string basis = "ortho";
    double a = 0.0, b = 0.0;
    bool a_set = false, b_set = false;
    int panels = 64, nodes = 16;
    int grid = 201;
    std::vector<std::string> params;
    std::string output, emit_samples;
    std::string format = "json";
};

struct SampleOpts {
    std::string target;
    int samples = 1001;
    int grid = 201;
    double a = 0.0, b = 0.0;
    bool a_set = false, b_set = false;
    std::vector<std::string> params;
    std::string output;
};

Interval override_interval(const Interval& fallback, bool a_set, bool b_set, double a, double b,
                           const char* who) {
    if (a_set != b_set) throw ConfigError(std::string(who) + ": give both --a and --b or neither");
    return a_set ? Interval(a, b) : fallback;
}

// --- runners ---

int run_basis_eval(const BasisEvalOpts& o) {
    Interval iv = override_interval(Interval(0.0, 1.0), o.a_set, o.b_set, o.a, o.b, "basis eval");
    BasisSpec spec(o.n, iv);
    const bool ortho = o.kind == "ortho";

    std::vector<double> xs;
    if (o.x_set)
        xs.push_back(o.x);
    else {
        SampleGrid grid(iv, o.samples);
        for (int u = 0; u < grid.N; ++u) xs.push_back(grid.point(u));
    }

    std::vector<std::string> columns = {"x"};
    for (int j = 0; j <= o.n; ++j)
        columns.push_back((ortho ? "phi_" : "b_") + std::to_string(j));

    std::vector<std::vector<double>> rows;
    rows.reserve(xs.size());
    for (double x : xs) {
        std::vector<double> vals = ortho ? onb_eval_all(spec, x) : bernstein_eval_all(spec, x);
        vals.insert(vals.begin(), x);
        rows.push_back(std::move(vals));
    }

    if (o.out.format == "csv") {
        std::string s;
        for (std::size_t i = 0; i < columns.size(); ++i) s += (i ? "," : "") + columns[i];
        s += "\n";
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + fmt17(r[i]);
            s += "\n";
        }
        deliver(o.out.output, s);
    } else {
        json j;
        j["kind"] = o.kind;
        j["n"] = o.n;
        j["interval"] = interval_json(iv);
        j["columns"] = columns;
        j["rows"] = rows;
        deliver(o.out.output, dump_json(j));
    }
    return 0;
}

json coeff_entry_json(const OrthoCoeffs& oc) {
    json e;
    e["j"] = oc.j;
    e["radicand"] = oc.radicand;
    e["scale"] = oc.scale;
    json combo = json::array();
    for (const auto& [k, w] : oc.combo) combo.push_back(json{{"k", k}, {"weight", w.str()}});
    e["combo"] = std::move(combo);
    json power = json::array();
    for (const Int& c : oc.power) power.push_back(int_json(c));
    e["power"] = std::move(power);
    return e;
}

int run_basis_coeffs(const BasisCoeffsOpts& o) {
    if (o.format != "json") throw ConfigError("basis coeffs output is json only");
    json j;
    j["n"] = o.n;
    if (o.j_set) {
        json e = coeff_entry_json(onb_coeffs(o.n, o.j));
        j.update(e); // flatten the single entry into the top level
    } else {
        json entries = json::array();
        for (int jj = 0; jj <= o.n; ++jj) entries.push_back(coeff_entry_json(onb_coeffs(o.n, jj)));
        j["entries"] = std::move(entries);
    }
    deliver(o.output, dump_json(j));
    return 0;
}

void check_verify_degree(int n) {
    if (n < 0) throw IndexError("verify: degree must be nonnegative");
    if (n > kMaxExactDegree)
        throw CapabilityError("verify guards exact arithmetic at n <= " + std::to_string(kMaxExactDegree));
}

int run_verify_ortho(const VerifyOpts& o) {
    check_verify_degree(o.n);
    json results = json::array();
    bool all_pass = true;
    for (int i = 0; i <= o.n; ++i)
        for (int j = 0; j <= o.n; ++j) {
            Rational value = ortho_double_sum(o.n, i, j);
            Rational expected = i == j ? Rational(1, 2 * (o.n - i) + 1) : Rational(0);
            const bool pass = value == expected;
            all_pass = all_pass && pass;
            results.push_back(json{{"i", i},
                                   {"j", j},
                                   {"value", value.str()},
                                   {"expected", expected.str()},
                                   {"pass", pass}});
        }
    json out;
    out["check"] = "ortho";
    out["n"] = o.n;
    out["all_pass"] = all_pass;
    out["results"] = std::move(results);
    deliver(o.output, dump_json(out));
    return all_pass ? 0 : 1;
}

int run_verify_sturm(const VerifyOpts& o) {
    check_verify_degree(o.n);
    json results = json::array();
    bool all_pass = true;
    for (int j = 0; j <= o.n; ++j) {
        SturmLiouvilleData d = sturm_data(o.n, j);
        RationalPoly res = sturm_residual(o.n, j);
        const bool pass = res.is_zero();
        all_pass = all_pass && pass;
        results.push_back(json{{"j", j},
                               {"lambda", d.lambda.str()},
                               {"residual", poly_string(res)},
                               {"pass", pass}});
    }
    json out;
    out["check"] = "sturm";
    out["n"] = o.n;
    out["all_pass"] = all_pass;
    out["results"] = std::move(results);
    deliver(o.output, dump_json(out));
    return all_pass ? 0 : 1;
}

int run_verify_gram(const VerifyOpts& o) {
    check_verify_degree(o.n);
    GramSchmidtResult g = gram_schmidt_oracle(o.n);
    json results = json::array();
    bool all_pass = true;
    for (int j = 0; j <= o.n; ++j) {
        RationalPoly power = onb_power_poly(o.n, j);
        // positive rational factor relating the two constructions
        Rational factor(0);
        for (std::size_t i = 0; i < power.coeffs().size(); ++i)
            if (power.coeffs()[i] != 0) {
                factor = g.entries[j].coeffs().size() > i ? g.entries[j].coeffs()[i] / power.coeffs()[i]
                                                          : Rational(0);
                break;
            }
        const bool pass = factor > 0 && g.entries[j] == power.scaled(factor) &&
                          g.norms_sq[j] == Rational(1, 2 * (o.n - j) + 1);
        all_pass = all_pass && pass;
        results.push_back(json{{"j", j},
                               {"norm_sq", g.norms_sq[j].str()},
                               {"factor", factor.str()},
                               {"pass", pass}});
    }
    json out;
    out["check"] = "gram";
    out["n"] = o.n;
    out["all_pass"] = all_pass;
    out["results"] = std::move(results);
    deliver(o.output, dump_json(out));
    return all_pass ? 0 : 1;
}

int run_fit_curve(const FitCurveOpts& o) {
    if (o.format != "json") throw ConfigError("fit reports are json; use --emit-samples for csv");
    if (o.target.empty() == o.input.empty())
        throw ConfigError("fit curve needs exactly one of --target or --input");
    const bool ortho = o.basis == "ortho";
    const std::string basis_name = o.basis;

    if (!o.target.empty()) {
        check_target(o.target);
        if (surface_target(o.target))
            throw ConfigError("target '" + o.target + "' is a surface; use fit surface");
        LissajousParams p;
        apply_params(p, parse_params(o.params));
        Interval iv = override_interval(p.t_interval, o.a_set, o.b_set, o.a, o.b, "fit curve");
        BasisSpec spec(o.n, iv);
        QuadratureRule rule(o.panels, o.nodes);
        auto fx = [&](double t) { return lissajous(p, t).first; };
        auto fy = [&](double t) { return lissajous(p, t).second; };
        ControlVector cx = ortho ? fit_curve_onb(fx, spec, rule) : bezier_curve_recover(fx, spec, rule);
        ControlVector cy = ortho ? fit_curve_onb(fy, spec, rule) : bezier_curve_recover(fy, spec, rule);
        SampleGrid grid(iv, o.samples);
        const double e = mse_curve(fx, fy, cx, cy, grid);
        deliver(o.output, dump_json(curve_report(basis_name, cx, cy, e, grid.N, quadrature_json(rule))));
        if (!o.emit_samples.empty()) {
            std::string s = "t,x,y,g_x,g_y\n";
            for (int u = 0; u < grid.N; ++u) {
                const double t = grid.point(u);
                s += fmt17(t) + "," + fmt17(fx(t)) + "," + fmt17(fy(t)) + "," +
                     fmt17(reconstruct_curve(cx, t)) + "," + fmt17(reconstruct_curve(cy, t)) + "\n";
            }
            deliver(o.emit_samples, s);
        }
        return 0;
    }

    if (o.a_set || o.b_set) throw ConfigError("fit curve --input takes its interval from the data");
    CurveData d = read_curve_csv(o.input);
    Interval iv(d.t.front(), d.t.back());
    BasisSpec spec(o.n, iv);
    const std::vector<double> w = trapezoid_weights(d.t);
    ControlVector cx = data_fit_curve(spec, d.t, d.x, w, ortho);
    ControlVector cy = data_fit_curve(spec, d.t, d.y, w, ortho);

    double acc = 0.0;
    for (std::size_t u = 0; u < d.t.size(); ++u) {
        const double dx = d.x[u] - reconstruct_curve(cx, d.t[u]);
        const double dy = d.y[u] - reconstruct_curve(cy, d.t[u]);
        acc += dx * dx + dy * dy;
    }
    const double e = acc / static_cast<double>(d.t.size());
    deliver(o.output, dump_json(curve_report(basis_name, cx, cy, e, static_cast<int>(d.t.size()),
                                             trapezoid_json())));
    if (!o.emit_samples.empty()) {
        std::string s = "t,x,y,g_x,g_y\n";
        for (std::size_t u = 0; u < d.t.size(); ++u)
            s += fmt17(d.t[u]) + "," + fmt17(d.x[u]) + "," + fmt17(d.y[u]) + "," +
                 fmt17(reconstruct_curve(cx, d.t[u])) + "," + fmt17(reconstruct_curve(cy, d.t[u])) + "\n";
        deliver(o.emit_samples, s);
    }
    return 0;
}

int run_fit_surface(const FitSurfaceOpts& o) {
    if (o.format != "json") throw ConfigError("fit reports are json; use --emit-samples for csv");
    if (o.target.empty() == o.input.empty())
        throw ConfigError("fit surface needs exactly one of --target or --input");
    const bool ortho = o.basis == "ortho";
    const int m = o.m < 0 ? o.n : o.m;

    if (!o.target.empty()) {
        check_target(o.target);
        if (!surface_target(o.target))
            throw ConfigError("target '" + o.target + "' is a curve; use fit curve");

        std::function<double(double, double)> f;
        Interval domain(0.0, 1.0);
        if (o.target == "sinc") {
            SincParams p;
            apply_params(p, parse_params(o.params));
            domain = p.domain;
            f = [p](double x, double y) { return sinc_surface(p, x, y); };
        } else {
            LangermannParams p;
            apply_params(p, parse_params(o.params));
            domain = p.domain;
            f = [p](double x, double y) { return langermann_surface(p, x, y); };
        }
        Interval iv = override_interval(domain, o.a_set, o.b_set, o.a, o.b, "fit surface");
        BasisSpec xs(o.n, iv), ys(m, iv);
        QuadratureRule rule(o.panels, o.nodes);
        ControlGrid cg = ortho ? fit_surface_onb(f, xs, ys, rule) : bezier_surface_recover(f, xs, ys, rule);
        SampleGrid2D grid(iv, iv, o.grid, o.grid);
        const double e = mse_surface(f, cg, grid);
        deliver(o.output, dump_json(surface_report(o.basis, cg, e, grid.N, grid.M, quadrature_json(rule))));
        if (!o.emit_samples.empty()) {
            std::string s = "x,y,f,g\n";
            for (int u = 0; u < grid.N; ++u)
                for (int v = 0; v < grid.M; ++v) {
                    const double x = grid.point_x(u), y = grid.point_y(v);
                    s += fmt17(x) + "," + fmt17(y) + "," + fmt17(f(x, y)) + "," +
                         fmt17(reconstruct_surface(cg, x, y)) + "\n";
                }
            deliver(o.emit_samples, s);
        }
        return 0;
    }

    if (o.a_set || o.b_set) throw ConfigError("fit surface --input takes its intervals from the data");
    SurfaceData d = read_surface_csv(o.input);
    BasisSpec xs(o.n, Interval(d.xs.front(), d.xs.back()));
    BasisSpec ys(m, Interval(d.ys.front(), d.ys.back()));
    ControlGrid cg = data_fit_surface(xs, ys, d, ortho);

    const std::size_t ny = d.ys.size();
    double acc = 0.0;
    for (std::size_t u = 0; u < d.xs.size(); ++u)
        for (std::size_t v = 0; v < ny; ++v) {
            const double r = d.f[u * ny + v] - reconstruct_surface(cg, d.xs[u], d.ys[v]);
            acc += r * r;
        }
    const double e = acc / static_cast<double>(d.xs.size() * ny);
    deliver(o.output, dump_json(surface_report(o.basis, cg, e, static_cast<int>(d.xs.size()),
                                               static_cast<int>(ny), trapezoid_json())));
    if (!o.emit_samples.empty()) {
        std::string s = "x,y,f,g\n";
        for (std::size_t u = 0; u < d.xs.size(); ++u)
            for (std::size_t v = 0; v < ny; ++v)
                s += fmt17(d.xs[u]) + "," + fmt17(d.ys[v]) + "," + fmt17(d.f[u * ny + v]) + "," +
                     fmt17(reconstruct_surface(cg, d.xs[u], d.ys[v])) + "\n";
        deliver(o.emit_samples, s);
    }
    return 0;
}

int run_sample(const SampleOpts& o) {
    check_target(o.target);
    const auto kv = parse_params(o.params);
    std::string s;
    if (o.target == "lissajous") {
        LissajousParams p;
        apply_params(p, kv);
        Interval iv = override_interval(p.t_interval, o.a_set, o.b_set, o.a, o.b, "sample");
        SampleGrid grid(iv, o.samples);
        s = "t,x,y\n";
        for (int u = 0; u < grid.N; ++u) {
            const double t = grid.point(u);
            auto [x, y] = lissajous(p, t);
            s += fmt17(t) + "," + fmt17(x) + "," + fmt17(y) + "\n";
        }
    } else {
        std::function<double(double, double)> f;
        Interval domain(0.0, 1.0);
        if (o.target == "sinc") {
            SincParams p;
            apply_params(p, kv);
            domain = p.domain;
            f = [p](double x, double y) { return sinc_surface(p, x, y); };
        } else {
            LangermannParams p;
            apply_params(p, kv);
            domain = p.domain;
            f = [p](double x, double y) { return langermann_surface(p, x, y); };
        }
        Interval iv = override_interval(domain, o.a_set, o.b_set, o.a, o.b, "sample");
        SampleGrid2D grid(iv, iv, o.grid, o.grid);
        s = "x,y,f\n";
        for (int u = 0; u < grid.N; ++u)
            for (int v = 0; v < grid.M; ++v) {
                const double x = grid.point_x(u), y = grid.point_y(v);
                s += fmt17(x) + "," + fmt17(y) + "," + fmt17(f(x, y)) + "\n";
            }
    }
    deliver(o.output, s);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"orthonormal Bernstein basis toolkit"};
    app.require_subcommand(1);

    BasisEvalOpts be;
    BasisCoeffsOpts bc;
    VerifyOpts vo, vs, vg;
    FitCurveOpts fc;
    FitSurfaceOpts fs;
    SampleOpts so;

    CLI::App* basis = app.add_subcommand("basis", "evaluate bases and dump coefficient tables");
    basis->require_subcommand(1);
    CLI::App* basis_eval = basis->add_subcommand("eval", "tabulate basis values over an interval");
    basis_eval->add_option("--n", be.n, "basis degree")->required();
    basis_eval->add_option("--kind", be.kind, "basis kind")
        ->check(CLI::IsMember({"bernstein", "ortho"}))
        ->capture_default_str();
    CLI::Option* be_a = basis_eval->add_option("--a", be.a, "interval start (default 0)");
    CLI::Option* be_b = basis_eval->add_option("--b", be.b, "interval end (default 1)");
    CLI::Option* be_x = basis_eval->add_option("--x", be.x, "evaluate at a single point");
    basis_eval->add_option("--samples", be.samples, "uniform sample count")->capture_default_str();
    basis_eval->add_option("--output", be.out.output, "write to a file instead of stdout");
    basis_eval->add_option("--format", be.out.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    CLI::App* basis_coeffs = basis->add_subcommand("coeffs", "exact coefficient data for the orthonormal basis");
    basis_coeffs->add_option("--n", bc.n, "basis degree")->required();
    CLI::Option* bc_j = basis_coeffs->add_option("--j", bc.j, "single index (default: all)");
    basis_coeffs->add_option("--output", bc.output, "write to a file instead of stdout");
    basis_coeffs->add_option("--format", bc.format, "json")->capture_default_str();

    CLI::App* verify = app.add_subcommand("verify", "exact verification oracles");
    verify->require_subcommand(1);
    CLI::App* verify_ortho = verify->add_subcommand("ortho", "pairwise inner products, exact arithmetic");
    verify_ortho->add_option("--n", vo.n, "basis degree")->required();
    verify_ortho->add_option("--output", vo.output, "write to a file instead of stdout");
    CLI::App* verify_sturm = verify->add_subcommand("sturm", "differential-equation residuals");
    verify_sturm->add_option("--n", vs.n, "basis degree")->required();
    verify_sturm->add_option("--output", vs.output, "write to a file instead of stdout");
    CLI::App* verify_gram = verify->add_subcommand("gram", "gram-schmidt cross-check");
    verify_gram->add_option("--n", vg.n, "basis degree")->required();
    verify_gram->add_option("--output", vg.output, "write to a file instead of stdout");

    CLI::App* fit = app.add_subcommand("fit", "least-squares fits");
    fit->require_subcommand(1);
    CLI::App* fit_curve = fit->add_subcommand("curve", "fit a parametric curve");
    fit_curve->add_option("--target", fc.target, "built-in target function");
    fit_curve->add_option("--input", fc.input, "CSV with t,x,y rows");
    fit_curve->add_option("--n", fc.n, "fit degree")->required();
    fit_curve->add_option("--basis", fc.basis, "ortho or bernstein")
        ->check(CLI::IsMember({"ortho", "bernstein"}))
        ->capture_default_str();
    CLI::Option* fc_a = fit_curve->add_option("--a", fc.a, "interval start");
    CLI::Option* fc_b = fit_curve->add_option("--b", fc.b, "interval end");
    fit_curve->add_option("--panels", fc.panels, "quadrature panels")->capture_default_str();
    fit_curve->add_option("--nodes", fc.nodes, "nodes per panel")->capture_default_str();
    fit_curve->add_option("--samples", fc.samples, "error grid size")->capture_default_str();
    fit_curve->add_option("--param", fc.params, "override a target parameter (key=value, repeatable)");
    fit_curve->add_option("--output", fc.output, "write the report to a file");
    fit_curve->add_option("--emit-samples", fc.emit_samples, "also write a CSV of samples and fit values");
    fit_curve->add_option("--format", fc.format, "json")->capture_default_str();

    CLI::App* fit_surface = fit->add_subcommand("surface", "fit a tensor-product surface");
    fit_surface->add_option("--target", fs.target, "built-in target function");
    fit_surface->add_option("--input", fs.input, "CSV with x,y,f rows over a full grid");
    fit_surface->add_option("--n", fs.n, "fit degree along x")->required();
    fit_surface->add_option("--m", fs.m, "fit degree along y (default: same as --n)");
    fit_surface->add_option("--basis", fs.basis, "ortho or bernstein")
        ->check(CLI::IsMember({"ortho", "bernstein"}))
        ->capture_default_str();
    CLI::Option* fs_a = fit_surface->add_option("--a", fs.a, "domain start (both axes)");
    CLI::Option* fs_b = fit_surface->add_option("--b", fs.b, "domain end (both axes)");
    fit_surface->add_option("--panels", fs.panels, "quadrature panels")->capture_default_str();
    fit_surface->add_option("--nodes", fs.nodes, "nodes per panel")->capture_default_str();
    fit_surface->add_option("--grid", fs.grid, "error grid size per axis")->capture_default_str();
    fit_surface->add_option("--param", fs.params, "override a target parameter (key=value, repeatable)");
    fit_surface->add_option("--output", fs.output, "write the report to a file");
    fit_surface->add_option("--emit-samples", fs.emit_samples, "also write a CSV of samples and fit values");
    fit_surface->add_option("--format", fs.format, "json")->capture_default_str();

    CLI::App* sample = app.add_subcommand("sample", "tabulate a built-in target function");
    sample->add_option("--target", so.target, "target function")->required();
    sample->add_option("--samples", so.samples, "sample count for curves")->capture_default_str();
    sample->add_option("--grid", so.grid, "grid size per axis for surfaces")->capture_default_str();
    CLI::Option* so_a = sample->add_option("--a", so.a, "interval start");
    CLI::Option* so_b = sample->add_option("--b", so.b, "interval end");
    sample->add_option("--param", so.params, "override a target parameter (key=value, repeatable)");
    sample->add_option("--output", so.output, "write to a file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    be.a_set = be_a->count() > 0;
    be.b_set = be_b->count() > 0;
    be.x_set = be_x->count() > 0;
    bc.j_set = bc_j->count() > 0;
    fc.a_set = fc_a->count() > 0;
    fc.b_set = fc_b->count() > 0;
    fs.a_set = fs_a->count() > 0;
    fs.b_set = fs_b->count() > 0;
    so.a_set = so_a->count() > 0;
    so.b_set = so_b->count() > 0;

    try {
        if (basis_eval->parsed()) return run_basis_eval(be);
        if (basis_coeffs->parsed()) return run_basis_coeffs(bc);
        if (verify_ortho->parsed()) return run_verify_ortho(vo);
        if (verify_sturm->parsed()) return run_verify_sturm(vs);
        if (verify_gram->parsed()) return run_verify_gram(vg);
        if (fit_curve->parsed()) return run_fit_curve(fc);
        if (fit_surface->parsed()) return run_fit_surface(fs);
        if (sample->parsed()) return run_sample(so);
    } catch (const EvaluationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const SingularityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const IndexError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CapabilityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2; // unreachable with require_subcommand, kept for safety
}
