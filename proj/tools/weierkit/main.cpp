#include <chrono>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "identities.hpp"
#include "parse.hpp"
#include "weierkit/elliptic.hpp"
#include "weierkit/genus0.hpp"
#include "weierkit/genus2.hpp"
#include "weierkit/genusg.hpp"
#include "weierkit/reduction.hpp"

using json = nlohmann::ordered_json;
using namespace weierkit;
using cli::parse_complex;
using cli::parse_complex_list;
using cli::parse_int_list;
using cli::parse_real;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_malformed = 1;
constexpr int exit_domain = 2;
constexpr int exit_convergence = 3;
constexpr int exit_identity = 4;

json cj(Complex z) { return json::array({z.real(), z.imag()}); }

template <class Vec>
json cj_vector(const Vec& v)
{
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out.push_back(cj(v(i)));
    return out;
}

json cj_vector(const std::vector<Complex>& v)
{
    json out = json::array();
    for (Complex z : v)
        out.push_back(cj(z));
    return out;
}

json cj_matrix(const Matrix& m)
{
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        out.push_back(cj_vector(m.row(r)));
    return out;
}

/// Command result: everything but `command` and `elapsed_ms`.
struct Result {
    json params = json::object();
    std::optional<json> value;
    std::optional<json> table;
    double truncation_error = 0.0;
    std::optional<json> residuals;
    json extra = json::object();
    int exit_code = exit_ok;
};

struct Globals {
    std::string format = "json";
    ToleranceConfig cfg;
    bool timing = false;
};

json tolerance_echo(const ToleranceConfig& c)
{
    return {{"abs_tol", c.abs_tol}, {"rel_tol", c.rel_tol}, {"q_order", c.q_order}, {"matrix_size", c.matrix_size}};
}

// ---------------------------------------------------------------- eval / expand

struct EvalArgs {
    std::string fn;
    int k = 1, m = 1, n = 0;
    std::string tau = "i", w = "0.25+0.3i", z = "0.3+0.2i", lambda = "0", theta = "1", gamma = "0,-1,1,0";
};

Result run_eval(const EvalArgs& a, const ToleranceConfig& cfg)
{
    Result r;
    r.params = {{"fn", a.fn}};
    const Complex tau = parse_complex(a.tau);
    Evaluation e;
    auto twist = [&] {
        const double lambda = parse_real(a.lambda);
        TwistData t{parse_complex(a.theta), std::exp(two_pi_i * lambda), lambda};
        t.validate(1e-12);
        return t;
    };
    if (a.fn == "E") {
        r.params.update({{"k", a.k}, {"tau", cj(tau)}});
        e = eisenstein_E(a.k, tau, cfg);
    } else if (a.fn == "E_transform") {
        const auto g = parse_int_list(a.gamma);
        if (g.size() != 4)
            throw cli::MalformedInput("--gamma needs four integers a,b,c,d");
        r.params.update({{"k", a.k}, {"tau", cj(tau)}, {"gamma", g}});
        e = eisenstein_transform(a.k, Modular{g[0], g[1], g[2], g[3]}, tau, cfg);
    } else if (a.fn == "E_lambda") {
        r.params.update({{"k", a.k}, {"lambda", parse_real(a.lambda)}, {"tau", cj(tau)}});
        e = eisenstein_E_lambda(a.k, parse_real(a.lambda), tau, cfg);
    } else if (a.fn == "E_tilde") {
        r.params.update({{"k", a.k}, {"z", cj(parse_complex(a.z))}, {"tau", cj(tau)}});
        e = eisenstein_E_tilde(a.k, parse_complex(a.z), tau, cfg);
    } else if (a.fn == "P" || a.fn == "P_zhu") {
        r.params.update({{"m", a.m}, {"w", cj(parse_complex(a.w))}, {"tau", cj(tau)}});
        e = a.fn == "P" ? weierstrass_P(a.m, parse_complex(a.w), tau, cfg)
                        : weierstrass_P_zhu(a.m, parse_complex(a.w), tau, cfg);
    } else if (a.fn == "P_lambda") {
        r.params.update({{"m", a.m}, {"lambda", parse_real(a.lambda)}, {"w", cj(parse_complex(a.w))}, {"tau", cj(tau)}});
        e = weierstrass_P_lambda(a.m, parse_real(a.lambda), parse_complex(a.w), tau, cfg);
    } else if (a.fn == "P_tilde" || a.fn == "P_tilde_regular") {
        r.params.update(
            {{"m", a.m}, {"w", cj(parse_complex(a.w))}, {"z", cj(parse_complex(a.z))}, {"tau", cj(tau)}});
        e = a.fn == "P_tilde" ? weierstrass_P_tilde(a.m, parse_complex(a.w), parse_complex(a.z), tau, cfg)
                              : weierstrass_P_tilde_regular(a.m, parse_complex(a.w), parse_complex(a.z), tau, cfg);
    } else if (a.fn == "twisted_P") {
        const TwistData t = twist();
        r.params.update(
            {{"k", a.k}, {"theta", cj(t.theta)}, {"lambda", t.lambda}, {"z", cj(parse_complex(a.z))}, {"tau", cj(tau)}});
        e = twisted_P(a.k, t, parse_complex(a.z), tau, cfg);
    } else if (a.fn == "f_rational") {
        r.params.update({{"n", a.n}, {"m", a.m}, {"z", cj(parse_complex(a.z))}, {"w", cj(parse_complex(a.w))}});
        e.value = f_rational({a.n, a.m}, parse_complex(a.z), parse_complex(a.w));
    } else {
        throw cli::MalformedInput("unknown --fn '" + a.fn + "'");
    }
    r.value = cj(e.value);
    r.truncation_error = e.truncation_error;
    return r;
}

struct ExpandArgs {
    std::string fn = "E";
    int k = 2, n = 0, m = 0, order = 10;
};

Result run_expand(const ExpandArgs& a)
{
    Result r;
    r.params = {{"fn", a.fn}, {"order", a.order}};
    json table = json::array();
    if (a.fn == "E") {
        r.params["k"] = a.k;
        const TruncatedSeries s = eisenstein_q_expansion(a.k, a.order);
        for (int e = s.lowest_exponent(); e < s.truncation_order(); ++e)
            table.push_back({{"q_power", e}, {"value", cj(s.coefficient(e))}});
    } else if (a.fn == "f_rational") {
        r.params.update({{"n", a.n}, {"m", a.m}});
        const RationalLaurentSeries s = f_rational_expansion({a.n, a.m}, a.order);
        for (int e = s.lowest; e < s.order; ++e) {
            json terms = json::array();
            for (const auto& [zp, c] : s.coefficient(e))
                terms.push_back({{"z_power", zp}, {"coefficient", to_string(c)}});
            table.push_back({{"w_power", e}, {"terms", terms}});
        }
    } else {
        throw cli::MalformedInput("expand supports --fn E and f_rational");
    }
    r.table = table;
    return r;
}

// ---------------------------------------------------------------- identity-check

struct IdentityArgs {
    std::string suite = "all";
    std::string tau;
    unsigned seed = 20240611;
    unsigned threads = 0;
};

Result run_identity(const IdentityArgs& a, const ToleranceConfig& cfg)
{
    Result r;
    identities::SuiteOptions opts;
    opts.taus = parse_complex_list(a.tau);
    opts.cfg = cfg;
    opts.seed = a.seed;
    opts.threads = a.threads;
    r.params = {{"suite", a.suite}, {"tau", cj_vector(opts.taus)}, {"seed", a.seed}};

    std::vector<std::string> names;
    if (a.suite == "all")
        names = identities::suite_names();
    else
        names.push_back(a.suite);

    json table = json::array();
    json residuals = json::object();
    bool ok = true;
    for (const auto& name : names) {
        const auto res = identities::run_suite(name, opts);
        json checks = json::array();
        for (const auto& c : res.checks)
            checks.push_back({{"name", c.name}, {"passed", c.passed}, {"residual", c.residual}, {"tolerance", c.tolerance}});
        table.push_back({{"suite", name}, {"passed", res.passed()}, {"checks", checks}});
        residuals[name] = res.worst_residual();
        ok = ok && res.passed();
    }
    r.value = ok ? "pass" : "fail";
    r.table = table;
    r.residuals = residuals;
    r.exit_code = ok ? exit_ok : exit_identity;
    return r;
}

// ---------------------------------------------------------------- shared geometry options

struct Genus2Args {
    std::string tau1 = "0.1+i", tau2 = "-0.2+1.3i", epsilon = "0.01";
    int p = 1;
    bool literal_calF = false;
};

SewingData sewing_from(const Genus2Args& a, const ToleranceConfig& cfg)
{
    SewingData s;
    s.tau1 = parse_complex(a.tau1);
    s.tau2 = parse_complex(a.tau2);
    s.epsilon = parse_complex(a.epsilon);
    s.p = a.p;
    s.N = cfg.matrix_size;
    s.literal_calF = a.literal_calF;
    return s;
}

json sewing_echo(const SewingData& s)
{
    return {{"tau1", cj(s.tau1)}, {"tau2", cj(s.tau2)}, {"epsilon", cj(s.epsilon)}, {"p", s.p}, {"N", s.N},
            {"literal_calF", s.literal_calF}};
}

struct GenusgArgs {
    int g = 1;
    std::string w_minus = "-1", w_plus = "1", rho = "0.01", f = "[]";
    int p = 1;
};

std::vector<LaurentPolynomial> parse_f(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw cli::MalformedInput(std::string("--f is not valid JSON: ") + e.what());
    }
    if (!doc.is_array())
        throw cli::MalformedInput("--f must be a JSON array of {exponent: coefficient} objects");
    std::vector<LaurentPolynomial> out;
    for (const auto& poly : doc) {
        if (!poly.is_object())
            throw cli::MalformedInput("--f entries must be objects");
        LaurentPolynomial lp;
        for (const auto& [key, val] : poly.items()) {
            Complex c;
            if (val.is_string())
                c = parse_complex(val.get<std::string>());
            else if (val.is_number())
                c = val.get<double>();
            else if (val.is_array() && val.size() == 2)
                c = {val[0].get<double>(), val[1].get<double>()};
            else
                throw cli::MalformedInput("bad coefficient in --f");
            lp.terms[cli::parse_int(key)] = c;
        }
        out.push_back(std::move(lp));
    }
    return out;
}

SchottkyData schottky_from(const GenusgArgs& a, const ToleranceConfig& cfg)
{
    SchottkyData d;
    d.g = a.g;
    d.w_minus = parse_complex_list(a.w_minus);
    d.w_plus = parse_complex_list(a.w_plus);
    d.rho = parse_complex_list(a.rho);
    d.p = a.p;
    d.N = cfg.matrix_size;
    d.f = parse_f(a.f);
    return d;
}

json schottky_echo(const SchottkyData& d)
{
    json f = json::array();
    for (const auto& lp : d.f) {
        json terms = json::object();
        for (const auto& [e, c] : lp.terms)
            terms[std::to_string(e)] = cj(c);
        f.push_back(terms);
    }
    return {{"g", d.g},         {"w_minus", cj_vector(d.w_minus)}, {"w_plus", cj_vector(d.w_plus)},
            {"rho", cj_vector(d.rho)}, {"p", d.p}, {"N", d.N}, {"f", f}};
}

// ---------------------------------------------------------------- reduce

struct ReduceArgs {
    std::string system, family, points, op = "delta", base;
    std::string tau = "i", theta = "1", lambda = "0", alpha_z = "0.3+0.2i", alpha, branch = "automatic";
    std::optional<int> negative_mode, weight;
    std::string torus, form = "channel";
    Genus2Args g2;
    GenusgArgs gg;
    std::string perturb;
    std::string perturb_delta = "0";
};

std::shared_ptr<const CoefficientSystem> make_system(const ReduceArgs& a, const ToleranceConfig& cfg, json& params)
{
    const Complex tau = parse_complex(a.tau);
    if (a.system == "rational") {
        if (a.weight)
            params["weight"] = *a.weight;
        return std::make_shared<RationalSystem>(cfg, a.weight);
    }
    if (a.system == "elliptic") {
        params["tau"] = cj(tau);
        return std::make_shared<EllipticSystem>(tau, cfg);
    }
    if (a.system == "twisted") {
        const double lambda = parse_real(a.lambda);
        TwistData t{parse_complex(a.theta), std::exp(two_pi_i * lambda), lambda};
        t.validate(1e-12);
        params.update({{"tau", cj(tau)}, {"theta", cj(t.theta)}, {"lambda", lambda}});
        return std::make_shared<TwistedSystem>(tau, t, cfg);
    }
    if (a.system == "jacobi") {
        JacobiSystem::Branch b = JacobiSystem::Branch::automatic;
        if (a.branch == "generic")
            b = JacobiSystem::Branch::generic;
        else if (a.branch == "degenerate")
            b = JacobiSystem::Branch::degenerate;
        else if (a.branch != "automatic")
            throw cli::MalformedInput("--branch must be automatic, generic or degenerate");
        params.update({{"tau", cj(tau)}, {"alpha_z", cj(parse_complex(a.alpha_z))}, {"branch", a.branch}});
        if (a.negative_mode)
            params["negative_mode"] = *a.negative_mode;
        return std::make_shared<JacobiSystem>(tau, parse_complex(a.alpha_z), cfg, b, a.negative_mode);
    }
    if (a.system == "multiparameter") {
        const auto alpha = parse_complex_list(a.alpha);
        params.update({{"tau", cj(tau)}, {"alpha", cj_vector(alpha)}});
        if (a.negative_mode)
            params["negative_mode"] = *a.negative_mode;
        return std::make_shared<MultiparameterSystem>(tau, alpha, cfg, a.negative_mode);
    }
    if (a.system == "genus2") {
        const SewingData s = sewing_from(a.g2, cfg);
        const auto torus = parse_int_list(a.torus);
        params.update({{"sewing", sewing_echo(s)}, {"torus", torus}, {"form", a.form}});
        auto ctx = std::make_shared<Genus2Context>(s, cfg);
        if (a.form != "channel" && a.form != "slot")
            throw cli::MalformedInput("--form must be channel or slot");
        return std::make_shared<Genus2System>(
            ctx, torus, a.form == "slot" ? Genus2System::Form::slot : Genus2System::Form::channel);
    }
    if (a.system == "genusg") {
        const SchottkyData d = schottky_from(a.gg, cfg);
        params.update({{"schottky", schottky_echo(d)}, {"form", a.form}});
        if (a.form != "channel" && a.form != "slot")
            throw cli::MalformedInput("--form must be channel or slot");
        return std::make_shared<GenusgSystem>(std::make_shared<SchottkyContext>(d, cfg),
                                              a.form == "slot" ? GenusgSystem::Form::slot
                                                               : GenusgSystem::Form::channel);
    }
    throw cli::MalformedInput("unknown --system '" + a.system + "'");
}

ModeLabel parse_label(const std::string& text)
{
    const auto flat = parse_int_list(text);
    if (flat.size() % 3 != 0)
        throw cli::MalformedInput("labels are triples k,l,m");
    ModeLabel out;
    for (std::size_t i = 0; i < flat.size(); i += 3)
        out.push_back({flat[i], flat[i + 1], flat[i + 2]});
    return out;
}

json report_residuals(const std::map<std::string, double>& m)
{
    json out = json::object();
    for (const auto& [k, v] : m)
        out[k] = v;
    return out;
}

Result run_reduce(const ReduceArgs& a, const ToleranceConfig& cfg)
{
    Result r;
    r.params = {{"system", a.system}, {"family", a.family}, {"op", a.op}};
    std::shared_ptr<TableFamily> family;
    try {
        family = std::make_shared<TableFamily>(TableFamily::from_file(a.family));
    } catch (const nlohmann::json::exception& e) {
        throw cli::MalformedInput(std::string("family file: ") + e.what());
    }
    std::shared_ptr<const CoefficientSystem> system = make_system(a, cfg, r.params);
    if (!a.perturb.empty()) {
        const ModeLabel target = parse_label(a.perturb);
        if (target.size() != 1)
            throw cli::MalformedInput("--perturb takes one triple k,l,m");
        r.params["perturb"] = {{"target", {target[0].k, target[0].l, target[0].m}},
                               {"delta", cj(parse_complex(a.perturb_delta))}};
        system = std::make_shared<PerturbedSystem>(system, target[0], parse_complex(a.perturb_delta));
    }
    const auto points = parse_complex_list(a.points);
    const ModeLabel base = parse_label(a.base);
    r.params["points"] = cj_vector(points);
    r.params["base"] = to_string(base);
    const int size = static_cast<int>(points.size());

    if (a.op == "delta") {
        const ReductionReport rep = apply_delta(size - 1, *family, *system, points, base);
        r.value = cj(rep.value);
        r.truncation_error = rep.truncation_error_estimate;
        r.extra = {{"terms_used", rep.terms_used}, {"branch", rep.branch}};
        if (!rep.residuals.empty())
            r.residuals = report_residuals(rep.residuals);
    } else if (a.op == "chain") {
        const double res = check_chain_condition(size - 2, *family, *system, points, base);
        r.value = res;
        r.residuals = json{{"chain", res}};
    } else if (a.op == "residual") {
        const FunctionalResidual res = functional_equation_residual(size - 1, *family, *system, points, base);
        r.value = res.residual;
        json rs = {{"functional", res.residual}};
        if (res.continuation_residual)
            rs["continuation"] = *res.continuation_residual;
        r.residuals = rs;
    } else if (a.op == "nullpoint") {
        const NullpointReduction red = reduce_to_nullpoint(*family, *system, points, base);
        r.value = cj(red.report.value);
        r.truncation_error = red.report.truncation_error_estimate;
        r.extra = {{"terms_used", red.report.terms_used}, {"branch", red.report.branch}};
        json trace = json::array();
        for (const auto& [word, c] : red.trace)
            trace.push_back({{"label", to_string(word)}, {"coefficient", cj(c)}});
        r.table = trace;
    } else {
        throw cli::MalformedInput("--op must be delta, chain, residual or nullpoint");
    }
    return r;
}

// ---------------------------------------------------------------- genus2-kernel

struct Genus2KernelArgs {
    Genus2Args g2;
    std::string what = "weierstrass", x = "0.13+0.21i", y = "-0.27+0.4i", branch = "same";
    int a = 1, j = 0, torus_x = 1, torus_y = 1;
};

Result run_genus2_kernel(const Genus2KernelArgs& a, const ToleranceConfig& cfg)
{
    Result r;
    const SewingData s = sewing_from(a.g2, cfg);
    r.params = {{"what", a.what}, {"sewing", sewing_echo(s)}};
    if (a.what == "index") {
        const IndexMatrices im = build_index_matrices(s.p, s.N);
        r.table = json{{"Gamma", cj_matrix(im.Gamma)}, {"Delta", cj_matrix(im.Delta)}, {"Pi", cj_matrix(im.Pi)}};
        return r;
    }
    const Genus2Context ctx(s, cfg);
    const Complex x = parse_complex(a.x), y = parse_complex(a.y);
    if (a.what == "Lambda") {
        r.params["a"] = a.a;
        r.table = cj_matrix(ctx.Lambda(a.a));
        r.extra = {{"spectral_radius", ctx.spectral_radius(a.a)}};
    } else if (a.what == "Q" || a.what == "Q_neumann" || a.what == "R_row") {
        r.params.update({{"a", a.a}, {"x", cj(x)}});
        const RowVector v =
            a.what == "Q" ? ctx.Q_row(a.a, x) : a.what == "Q_neumann" ? ctx.Q_row_neumann(a.a, x) : ctx.R_row(a.a, x);
        r.table = cj_vector(v);
    } else if (a.what == "P_column") {
        r.params.update({{"a", a.a}, {"j", a.j}, {"y", cj(y)}});
        r.table = cj_vector(ctx.P_column(a.j, a.a, y));
    } else if (a.what == "weierstrass") {
        if (a.branch != "same" && a.branch != "cross")
            throw cli::MalformedInput("--branch must be same or cross");
        r.params.update({{"a", a.a}, {"j", a.j}, {"branch", a.branch}, {"x", cj(x)}, {"y", cj(y)}});
        const auto b = a.branch == "same" ? Genus2Branch::same_torus : Genus2Branch::cross_torus;
        r.value = cj(ctx.weierstrass(a.j, b, a.a, x, y));
    } else if (a.what == "f2") {
        r.params.update({{"x", cj(x)}, {"torus", a.torus_x}});
        const F2Coefficients f = ctx.f2({x, a.torus_x});
        r.table = json{{"f1", cj(f.f1)}, {"f2", cj(f.f2)}, {"f3", cj_vector(f.f3)}};
    } else {
        throw cli::MalformedInput("unknown --what '" + a.what + "'");
    }
    return r;
}

// ---------------------------------------------------------------- genusg-kernel

struct GenusgKernelArgs {
    GenusgArgs gg;
    std::string what = "psi", x = "0.3+0.2i", y = "-0.4+0.5i";
    int i = 0, j = 0, m = 0, n = 0;
};

Result run_genusg_kernel(const GenusgKernelArgs& a, const ToleranceConfig& cfg)
{
    Result r;
    const SchottkyData d = schottky_from(a.gg, cfg);
    r.params = {{"what", a.what}, {"schottky", schottky_echo(d)}};
    const Complex x = parse_complex(a.x), y = parse_complex(a.y);
    if (a.what == "psi0") {
        r.params.update({{"i", a.i}, {"j", a.j}, {"x", cj(x)}, {"y", cj(y)}});
        r.value = cj(psi0_derivative(a.i, a.j, d.p, x, y, d.f));
        return r;
    }
    if (a.what == "E_moment") {
        r.params.update({{"m", a.m}, {"n", a.n}, {"y", cj(y)}});
        r.value = cj(E_moment(a.m, a.n, y, d.f, d.p));
        return r;
    }
    const SchottkyContext ctx(d, cfg);
    r.extra = {{"spectral_radius", ctx.spectral_radius()}};
    if (a.what == "psi") {
        r.params.update({{"j", a.j}, {"x", cj(x)}, {"y", cj(y)}});
        if (a.j == 0) {
            const FormValue f = ctx.psi(x, y);
            r.value = cj(f.value);
            json w = json::object();
            for (const auto& [var, k] : f.weights)
                w[var] = k;
            r.extra["weights"] = w;
        } else {
            r.value = cj(ctx.psi_derivative(a.j, x, y));
        }
        r.residuals = json{{"inverse", ctx.inverse_residual()}};
    } else if (a.what == "R") {
        r.table = cj_matrix(ctx.R());
    } else if (a.what == "chi_theta") {
        r.params["x"] = cj(x);
        const ChiTheta ct = ctx.chi_theta(x);
        json chi = json::array(), theta = json::array();
        for (const auto& c : ct.chi)
            chi.push_back(cj_vector(c));
        for (const auto& t : ct.theta)
            theta.push_back(cj_vector(t));
        r.table = json{{"chi", chi}, {"theta", theta}};
    } else if (a.what == "kernel_vectors") {
        r.params.update({{"x", cj(x)}, {"y", cj(y)}});
        const KernelVectors kv = ctx.kernel_vectors(x, y);
        r.table = json{{"p", cj_vector(kv.p_row)}, {"q", cj_vector(kv.q_col)}, {"p_tilde", cj_vector(kv.p_tilde_row)}};
    } else if (a.what == "neumann") {
        const NeumannInverse inv = neumann_inverse(ctx.R_tilde());
        r.value = (inv.solve - inv.series).cwiseAbs().maxCoeff();
        r.residuals = json{{"inverse", inv.residual}};
    } else {
        throw cli::MalformedInput("unknown --what '" + a.what + "'");
    }
    return r;
}

// ---------------------------------------------------------------- output

void flatten_csv(const json& j, const std::string& path, std::ostream& os)
{
    const bool pair = j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number();
    if (pair) {
        os << path << ',' << j[0].dump() << ',' << j[1].dump() << '\n';
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten_csv(j[i], path + "[" + std::to_string(i) + "]", os);
    } else if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            flatten_csv(v, path.empty() ? k : path + "." + k, os);
    } else {
        os << path << ',' << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
    }
}

void emit(const std::string& command, const Result& r, const Globals& g, std::optional<double> elapsed_ms)
{
    json doc;
    doc["command"] = command;
    json params = r.params;
    params["tolerance"] = tolerance_echo(g.cfg);
    doc["params"] = params;
    if (r.value)
        doc["value"] = *r.value;
    if (r.table)
        doc["table"] = *r.table;
    doc["truncation_error_estimate"] = r.truncation_error;
    if (r.residuals)
        doc["residuals"] = *r.residuals;
    for (const auto& [k, v] : r.extra.items())
        doc[k] = v;
    if (elapsed_ms)
        doc["elapsed_ms"] = *elapsed_ms;

    if (g.format == "csv") {
        std::cout << "field,value\n";
        flatten_csv(doc, "", std::cout);
    } else {
        std::cout << doc.dump(2) << '\n';
    }
}

void error_out(const std::string& kind, const std::string& what)
{
    json doc = {{"error", kind}, {"message", what}};
    std::cerr << doc.dump() << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"weierkit: elliptic-type kernels, sewing kernels and Zhu reductions"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "key=value configuration file")->envname("WEIERKIT_CONFIG");

    Globals g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--abs-tol", g.cfg.abs_tol, "Absolute tolerance");
    app.add_option("--rel-tol", g.cfg.rel_tol, "Relative tolerance");
    app.add_option("--q-order", g.cfg.q_order, "Maximal q-order of series");
    app.add_option("--matrix-size", g.cfg.matrix_size, "Sewing matrix truncation N");
    app.add_flag("--timing", g.timing, "Include elapsed_ms in the output");

    EvalArgs ev;
    auto* eval = app.add_subcommand("eval", "Evaluate one kernel");
    eval->add_option("--fn", ev.fn, "E, E_transform, E_lambda, E_tilde, P, P_zhu, P_lambda, P_tilde, "
                                    "P_tilde_regular, twisted_P, f_rational")
        ->required();
    eval->add_option("--k", ev.k);
    eval->add_option("--m", ev.m);
    eval->add_option("--n", ev.n);
    eval->add_option("--tau", ev.tau);
    eval->add_option("--w", ev.w);
    eval->add_option("--z", ev.z);
    eval->add_option("--lambda", ev.lambda);
    eval->add_option("--theta", ev.theta, "Twist theta as a complex number on the unit circle");
    eval->add_option("--gamma", ev.gamma, "a,b,c,d");

    ExpandArgs ex;
    auto* expand = app.add_subcommand("expand", "Series coefficients");
    expand->add_option("--fn", ex.fn, "E or f_rational");
    expand->add_option("--k", ex.k);
    expand->add_option("--n", ex.n);
    expand->add_option("--m", ex.m);
    expand->add_option("--order", ex.order);

    IdentityArgs id;
    auto* ident = app.add_subcommand("identity-check", "Run identity suites");
    ident->add_option("--suite", id.suite, "Suite name or all");
    ident->add_option("--tau", id.tau, "Comma separated list of tau values");
    ident->add_option("--seed", id.seed);
    ident->add_option("--threads", id.threads);

    ReduceArgs rd;
    auto* reduce = app.add_subcommand("reduce", "Zhu reduction on a table family");
    reduce->add_option("--system", rd.system)->required();
    reduce->add_option("--family", rd.family)->required()->check(CLI::ExistingFile);
    reduce->add_option("--points", rd.points)->required();
    reduce->add_option("--op", rd.op, "delta, chain, residual or nullpoint");
    reduce->add_option("--base", rd.base, "Base label k,l,m,...");
    reduce->add_option("--tau", rd.tau);
    reduce->add_option("--theta", rd.theta);
    reduce->add_option("--lambda", rd.lambda);
    reduce->add_option("--alpha-z", rd.alpha_z);
    reduce->add_option("--alpha", rd.alpha);
    reduce->add_option("--branch", rd.branch);
    reduce->add_option("--negative-mode", rd.negative_mode);
    reduce->add_option("--weight", rd.weight);
    reduce->add_option("--tau1", rd.g2.tau1);
    reduce->add_option("--tau2", rd.g2.tau2);
    reduce->add_option("--epsilon", rd.g2.epsilon);
    reduce->add_option("--torus", rd.torus);
    reduce->add_option("--form", rd.form);
    reduce->add_option("--g", rd.gg.g);
    reduce->add_option("--w-minus", rd.gg.w_minus);
    reduce->add_option("--w-plus", rd.gg.w_plus);
    reduce->add_option("--rho", rd.gg.rho);
    reduce->add_option("--f", rd.gg.f, "JSON array of {exponent: coefficient}");
    int reduce_p = 1;
    reduce->add_option("--p", reduce_p);
    reduce->add_option("--perturb", rd.perturb, "Coefficient k,l,m to shift");
    reduce->add_option("--perturb-delta", rd.perturb_delta);

    Genus2KernelArgs g2;
    auto* g2k = app.add_subcommand("genus2-kernel", "Genus two sewing kernels");
    g2k->add_option("--what", g2.what, "Lambda, Q, Q_neumann, R_row, P_column, weierstrass, f2, index");
    g2k->add_option("--tau1", g2.g2.tau1);
    g2k->add_option("--tau2", g2.g2.tau2);
    g2k->add_option("--epsilon", g2.g2.epsilon);
    g2k->add_option("--p", g2.g2.p);
    g2k->add_flag("--literal-calF", g2.g2.literal_calF);
    g2k->add_option("--a", g2.a);
    g2k->add_option("--j", g2.j);
    g2k->add_option("--x", g2.x);
    g2k->add_option("--y", g2.y);
    g2k->add_option("--branch", g2.branch, "same or cross");
    g2k->add_option("--torus", g2.torus_x);

    GenusgKernelArgs gg;
    auto* ggk = app.add_subcommand("genusg-kernel", "Genus g Schottky kernels");
    ggk->add_option("--what", gg.what, "psi0, psi, R, chi_theta, kernel_vectors, E_moment, neumann");
    ggk->add_option("--g", gg.gg.g);
    ggk->add_option("--w-minus", gg.gg.w_minus);
    ggk->add_option("--w-plus", gg.gg.w_plus);
    ggk->add_option("--rho", gg.gg.rho);
    ggk->add_option("--p", gg.gg.p);
    ggk->add_option("--f", gg.gg.f, "JSON array of {exponent: coefficient}");
    ggk->add_option("--x", gg.x);
    ggk->add_option("--y", gg.y);
    ggk->add_option("--i", gg.i);
    ggk->add_option("--j", gg.j);
    ggk->add_option("--m", gg.m);
    ggk->add_option("--n", gg.n);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);
        error_out("malformed_input", e.what());
        return exit_malformed;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        g.cfg.validate();
        Result r;
        std::string command;
        if (eval->parsed()) {
            command = "eval";
            r = run_eval(ev, g.cfg);
        } else if (expand->parsed()) {
            command = "expand";
            r = run_expand(ex);
        } else if (ident->parsed()) {
            command = "identity-check";
            r = run_identity(id, g.cfg);
        } else if (reduce->parsed()) {
            command = "reduce";
            rd.g2.p = reduce_p;
            rd.gg.p = reduce_p;
            r = run_reduce(rd, g.cfg);
        } else if (g2k->parsed()) {
            command = "genus2-kernel";
            r = run_genus2_kernel(g2, g.cfg);
        } else {
            command = "genusg-kernel";
            r = run_genusg_kernel(gg, g.cfg);
        }
        std::optional<double> elapsed;
        if (g.timing)
            elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        emit(command, r, g, elapsed);
        return r.exit_code;
    } catch (const cli::MalformedInput& e) {
        error_out("malformed_input", e.what());
        return exit_malformed;
    } catch (const ConvergenceError& e) {
        error_out("convergence", e.what());
        return exit_convergence;
    } catch (const PoleError& e) {
        error_out("pole", e.what());
        return exit_domain;
    } catch (const UnitCircleError& e) {
        error_out("unit_circle", e.what());
        return exit_domain;
    } catch (const DegenerateError& e) {
        error_out("degenerate", e.what());
        return exit_domain;
    } catch (const OverflowError& e) {
        error_out("overflow", e.what());
        return exit_domain;
    } catch (const Error& e) {
        error_out("domain", e.what());
        return exit_domain;
    }
}
