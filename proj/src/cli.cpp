#include "dirops/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dirops/counting.hpp"
#include "dirops/errors.hpp"
#include "dirops/operator_matrix.hpp"
#include "dirops/special.hpp"
#include "dirops/verification.hpp"

namespace dirops {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> cells) { rows.push_back(std::move(cells)); }
};

bool looks_numeric(const std::string& s, double& value) {
    if (s.empty()) return false;
    std::size_t used = 0;
    try {
        value = std::stod(s, &used);
    } catch (const std::exception&) {
        return false;
    }
    return used == s.size();
}

void emit_table(const Table& t, const std::string& format, std::ostream& os) {
    if (format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& row : t.rows) {
            nlohmann::ordered_json obj;
            for (std::size_t i = 0; i < t.header.size(); ++i) {
                double v = 0.0;
                if (looks_numeric(row[i], v))
                    obj[t.header[i]] = v;
                else
                    obj[t.header[i]] = row[i];
            }
            arr.push_back(std::move(obj));
        }
        os << arr.dump(2) << "\n";
        return;
    }
    for (std::size_t i = 0; i < t.header.size(); ++i)
        os << t.header[i] << (i + 1 < t.header.size() ? "," : "\n");
    for (const auto& row : t.rows)
        for (std::size_t i = 0; i < row.size(); ++i)
            os << row[i] << (i + 1 < row.size() ? "," : "\n");
}

// Named tolerances with per-command defaults; --tol NAME=VALUE overrides.
class TolMap {
public:
    TolMap(std::initializer_list<std::pair<const std::string, double>> defaults)
        : vals_(defaults) {}

    void apply(const std::vector<std::string>& overrides) {
        for (const auto& kv : overrides) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("--tol expects NAME=VALUE, got '" + kv + "'");
            const std::string name = kv.substr(0, eq);
            if (vals_.find(name) == vals_.end())
                throw std::invalid_argument("unknown tolerance name '" + name + "'");
            vals_[name] = std::stod(kv.substr(eq + 1));
        }
    }

    double at(const std::string& name) const { return vals_.at(name); }

private:
    std::map<std::string, double> vals_;
};

struct CheckList {
    bool all_pass = true;
    std::vector<std::string> lines;

    void add(bool pass, const std::string& text) {
        all_pass = all_pass && pass;
        lines.push_back(std::string(pass ? "PASS " : "FAIL ") + text);
    }
};

struct GridRange {
    double re0 = 0.0, re1 = 0.0;
    int re_steps = 1;
    double im0 = 0.0, im1 = 0.0;
    int im_steps = 1;
};

GridRange parse_grid(const std::string& text) {
    // re0:re1:steps,im0:im1:steps
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("--grid expects re0:re1:steps,im0:im1:steps");
    const auto parse_axis = [](const std::string& axis, double& lo, double& hi, int& steps) {
        std::stringstream ss(axis);
        std::string part;
        std::vector<std::string> parts;
        while (std::getline(ss, part, ':')) parts.push_back(part);
        if (parts.size() != 3)
            throw std::invalid_argument("--grid axis expects lo:hi:steps");
        lo = std::stod(parts[0]);
        hi = std::stod(parts[1]);
        steps = std::stoi(parts[2]);
        if (steps < 1) throw std::invalid_argument("--grid steps must be >= 1");
    };
    GridRange g;
    parse_axis(text.substr(0, comma), g.re0, g.re1, g.re_steps);
    parse_axis(text.substr(comma + 1), g.im0, g.im1, g.im_steps);
    return g;
}

cplx parse_point(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("point expects re,im");
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

const AffineSymbol& require_affine(const SymbolVariant& sym) {
    if (const auto* a = std::get_if<AffineSymbol>(&sym)) return *a;
    throw std::invalid_argument("this subcommand requires an affine symbol literal");
}

AffineSymbol require_strict_affine(const SymbolVariant& sym) {
    const AffineSymbol& a = require_affine(sym);
    if (validate_affine(a) != AffineVerdict::StrictInterior)
        throw std::invalid_argument(
            "symbol fails validation: requires Re(c1) > 1/2 + |c2| (strict interior)");
    return a;
}

GeneralSymbol to_general(const SymbolVariant& sym) {
    if (const auto* g = std::get_if<GeneralSymbol>(&sym)) return *g;
    if (const auto* a = std::get_if<AffineSymbol>(&sym)) return GeneralSymbol::from_affine(*a);
    const auto& t = std::get<TranslationSymbol>(sym);
    DirichletPolynomial phi = DirichletPolynomial::zero(1);
    phi.set_coeff(1, t.c1);
    return GeneralSymbol{1, std::move(phi)};
}

// Shared per-subcommand state collected from CLI11.
struct CommandArgs {
    std::string symbol_text;
    std::size_t K = 96, N = 96;
    int n_max = 16;
    std::string grid_text = "0.51:1.49:7,0:0:1";
    double T = 1e5;
    double sigma_cut = 1e-12;
    double delta = 1e-3, epsilon = 0.1;
    int radial = 128, angular = 256;
    std::uint64_t seed = 1;
    int count = 5;
    std::size_t len = 8;
    std::size_t m_max = 64;
    int samples = 256;
    std::string a_text = "1,0";
    std::string out_path;
    std::string format = "csv";
    std::string dump_matrix_path;
    std::vector<std::string> tol_overrides;
};

std::size_t default_embed_rows(std::size_t N) {
    std::size_t k = 1;
    while ((std::size_t{1} << k) <= N) ++k; // 2^{k-1} <= N
    return k;
}

int cmd_bounds(const CommandArgs& args, std::ostream& data, std::ostream& out) {
    TolMap tol{{"lower-slack", 0.98}, {"upper-eps", 1e-9}, {"power-cap", 100000}};
    tol.apply(args.tol_overrides);
    const AffineSymbol sym = require_strict_affine(parse_symbol(args.symbol_text));

    PowerOptions popts;
    popts.max_iters = static_cast<long>(tol.at("power-cap"));
    const OperatorMatrix m = build_affine_matrix(sym, args.K, args.N);
    if (!args.dump_matrix_path.empty()) {
        std::ofstream dump(args.dump_matrix_path);
        if (!dump)
            throw std::invalid_argument("cannot open --dump-matrix path " +
                                        args.dump_matrix_path);
        write_matrix_csv(m, dump);
    }
    const double sigma1 = operator_norm_est(m, popts);
    const double s2 = sigma1 * sigma1;
    const double lower = norm_lower_bound(sym.c1.real());
    const double upper = norm_upper_bound(sym.c1.real());

    Table t;
    t.header = {"c1_re", "c1_im", "c2_re", "c2_im", "K", "N", "lower", "sigma1_sq", "upper"};
    t.add_row({fmt(sym.c1.real()), fmt(sym.c1.imag()), fmt(sym.c2.real()), fmt(sym.c2.imag()),
               std::to_string(args.K), std::to_string(args.N), fmt(lower), fmt(s2), fmt(upper)});
    emit_table(t, args.format, data);

    CheckList checks;
    checks.add(s2 >= tol.at("lower-slack") * lower,
               "lower_bound sigma1_sq=" + fmt6(s2) + " >= " +
                   fmt6(tol.at("lower-slack") * lower));
    checks.add(s2 <= upper + tol.at("upper-eps"),
               "upper_bound sigma1_sq=" + fmt6(s2) + " <= " + fmt6(upper) + " + eps");
    for (const auto& line : checks.lines) out << line << "\n";
    return checks.all_pass ? 0 : 2;
}

int cmd_approx(const CommandArgs& args, std::ostream& data, std::ostream& out) {
    TolMap tol{{"approx-eps", 1e-9}};
    tol.apply(args.tol_overrides);
    const AffineSymbol sym = require_strict_affine(parse_symbol(args.symbol_text));
    const OperatorMatrix m = build_affine_matrix(sym, args.K, args.N);
    const SingularValueReport report = singular_values(m);
    if (report.analytic_bounds.empty())
        throw std::invalid_argument(
            "approx: the analytic bound needs real c1, c2 with c2 >= 0 and 2c1-2c2-1 > 0");
    const int n_max = std::min<int>(args.n_max, static_cast<int>(report.sigmas.size()) - 1);

    Table t;
    t.header = {"index", "sigma", "analytic_bound"};
    CheckList checks;
    for (int n = 0; n <= n_max; ++n) {
        t.add_row({std::to_string(n + 1), fmt(report.sigmas[n]), fmt(report.analytic_bounds[n])});
        checks.add(report.sigmas[n] <= report.analytic_bounds[n] + tol.at("approx-eps"),
                   "a_" + std::to_string(n + 1) + " sigma=" + fmt6(report.sigmas[n]) +
                       " <= bound=" + fmt6(report.analytic_bounds[n]));
    }
    emit_table(t, args.format, data);
    for (const auto& line : checks.lines) out << line << "\n";
    return checks.all_pass ? 0 : 2;
}

int cmd_remainder(const CommandArgs& args, std::ostream& data, std::ostream& out) {
    TolMap tol{{"approx-eps", 1e-9}, {"dominance-eps", 1e-10}, {"power-cap", 100000}};
    tol.apply(args.tol_overrides);
    const AffineSymbol sym = require_strict_affine(parse_symbol(args.symbol_text));
    PowerOptions popts;
    popts.max_iters = static_cast<long>(tol.at("power-cap"));
    const OperatorMatrix m = build_affine_matrix(sym, args.K, args.N);
    const SingularValueReport report = singular_values(m);
    if (report.analytic_bounds.empty())
        throw std::invalid_argument(
            "remainder: the analytic bound needs real c1, c2 with c2 >= 0 and 2c1-2c2-1 > 0");
    const int n_max = std::min<int>(args.n_max, static_cast<int>(report.sigmas.size()) - 1);

    Table t;
    t.header = {"n", "remainder_norm", "analytic_bound", "sigma_next"};
    CheckList checks;
    for (int n = 0; n <= n_max; ++n) {
        const double rn = remainder_norm(m, static_cast<std::size_t>(n), popts);
        const double bound = report.analytic_bounds[n];
        const double sigma_next = report.sigmas[n];
        t.add_row({std::to_string(n), fmt(rn), fmt(bound), fmt(sigma_next)});
        checks.add(rn <= bound + tol.at("approx-eps"),
                   "remainder n=" + std::to_string(n) + " " + fmt6(rn) +
                       " <= bound=" + fmt6(bound));
        checks.add(rn >= sigma_next - tol.at("dominance-eps"),
                   "dominance n=" + std::to_string(n) + " " + fmt6(rn) +
                       " >= sigma_next=" + fmt6(sigma_next));
    }
    emit_table(t, args.format, data);
    for (const auto& line : checks.lines) out << line << "\n";
    return checks.all_pass ? 0 : 2;
}

int cmd_hs(const CommandArgs& args, std::ostream& data, std::ostream& out) {
    TolMap tol{};
    tol.apply(args.tol_overrides);
    const AffineSymbol sym = require_strict_affine(parse_symbol(args.symbol_text));
    const OperatorMatrix m = build_affine_matrix(sym, args.K, args.N);
    const double fro = hs_norm(m);
    const TailBoundedSum closed = hs_closed_form(sym, args.N);
    const double budget = hs_row_tail_budget(sym, args.K, args.N) +
                          2.0 * closed.value * closed.tail_bound;

    Table t;
    t.header = {"symbol", "K", "N", "frobenius_sq", "closed_form_sq", "budget"};
    t.add_row({format_symbol(SymbolVariant{sym}), std::to_string(args.K),
               std::to_string(args.N), fmt(fro * fro), fmt(closed.value * closed.value),
               fmt(budget)});
    emit_table(t, args.format, data);

    CheckList checks;
    checks.add(std::abs(fro * fro - closed.value * closed.value) <= budget,
               "hs_agreement |fro^2 - closed^2|=" +
                   fmt6(std::abs(fro * fro - closed.value * closed.value)) +
                   " <= budget=" + fmt6(budget));
    checks.add(std::isfinite(fro) && std::isfinite(closed.value),
               "hs_finite fro=" + fmt6(fro) + " closed=" + fmt6(closed.value));
    for (const auto& line : checks.lines) out << line << "\n";
    return checks.all_pass ? 0 : 2;
}

int cmd_spectrum(const CommandArgs& args, std::ostream& data, std::ostream& out) {
    TolMap tol{{"mono-eps", 1e-10},
               {"spectrum-factor", 0.1},
               {"control-rel", 0.01},
               {"power-cap", 100000}};
    tol.apply(args.tol_overrides);
    const SymbolVariant sym = parse_symbol(args.symbol_text);

    OperatorMatrix m;
    bool is_translation = false;
    if (const auto* a = std::get_if<AffineSymbol>(&sym)) {
        if (validate_affine(*a) != AffineVerdict::StrictInterior)
            throw std::invalid_argument("spectrum: strict-interior affine symbol required");
        m = build_affine_matrix(*a, default_embed_rows(args.N), args.N);
    } else if (const auto* tr = std::get_if<TranslationSymbol>(&sym)) {
        m = build_translation_matrix(*tr, args.N);
        is_translation = true;
    } else {
        throw std::invalid_argument("spectrum: affine or translation symbol required");
    }

    const auto ests = spectral_radius_est(m, args.m_max);
    Table t;
    t.header = {"m", "estimate"};
    for (const auto& [mm, est] : ests) t.add_row({std::to_string(mm), fmt(est)});
    emit_table(t, args.format, data);

    CheckList checks;
    bool mono = true;
    for (std::size_t i = 1; i < ests.size(); ++i)
        mono = mono && ests[i].second <= ests[i - 1].second + tol.at("mono-eps");
    checks.add(mono, "power_norm_nonincreasing");
    if (is_translation) {
        const auto& tr = std::get<TranslationSymbol>(sym);
        double target = 0.0;
        for (std::size_t n = 2; n <= args.N; ++n)
            target = std::max(target, std::pow(static_cast<double>(n), -tr.c1.real()) *
                                          std::log(static_cast<double>(n)));
        checks.add(std::abs(ests.back().second - target) <= tol.at("control-rel") * target,
                   "translation_control final=" + fmt6(ests.back().second) +
                       " ~= max_n=" + fmt6(target));
    } else {
        checks.add(ests.back().second < tol.at("spectrum-factor") * ests.front().second,
                   "quasinilpotent_estimate final=" + fmt6(ests.back().second) + " < " +
                       fmt6(tol.at("spectrum-factor")) + "*sigma1=" +
                       fmt6(tol.at("spectrum-factor") * ests.front().second));
    }
    for (const auto& line : checks.lines) out << line << "\n";
    return checks.all_pass ? 0 : 2;
}

int cmd_selfadjoint(const CommandArgs& args, std::ostream& data, std::ostream& out) {
    TolMap tol{{"selfadjoint-zero", 1e-14}, {"selfadjoint-min", 1e-6}};
    tol.apply(args.tol_overrides);
    const SymbolVariant sym = parse_symbol(args.symbol_text);

    OperatorMatrix m;
    bool expect_selfadjoint = false;
    std::size_t K = 0;
    if (const auto* a = std::get_if<AffineSymbol>(&sym)) {
        if (validate_affine(*a) != AffineVerdict::StrictInterior)
            throw std::invalid_argument("selfadjoint: strict-interior affine symbol required");
        K = default_embed_rows(args.N);
        m = build_affine_matrix(*a, K, args.N);
    } else if (const auto* tr = std::get_if<TranslationSymbol>(&sym)) {
        K = args.N;
        m = build_translation_matrix(*tr, args.N);
        expect_selfadjoint = tr->c1.imag() == 0.0;
    } else {
        throw std::invalid_argument("selfadjoint: affine or translation symbol required");
    }

    const double residual = hermitian_residual(m);
    Table t;
    t.header = {"symbol", "K", "N", "hermitian_residual", "expected"};
    t.add_row({format_symbol(sym), std::to_string(K), std::to_string(args.N), fmt(residual),
               expect_selfadjoint ? "self-adjoint" : "non-self-adjoint"});
    emit_table(t, args.format, data);

    CheckList checks;
    if (expect_selfadjoint)
        checks.add(residual <= tol.at("selfadjoint-zero"),
                   "selfadjoint residual=" + fmt6(residual) + " <= 1e-14");
    else
        checks.add(residual >= tol.at("selfadjoint-min"),
                   "non_selfadjoint residual=" + fmt6(residual) + " >= 1e-6");
    for (const auto& line : checks.lines) out << line << "\n";
    return checks.all_pass ? 0 : 2;
}

int cmd_kernels(const CommandArgs& args, std::ostream& data, std::ostream& out) {
    TolMap tol{{"repro-tol", 1e-13}, {"adjoint-tol", 1e-9}};
    tol.apply(args.tol_overrides);
    const cplx a = parse_point(args.a_text);
    const HalfPlanePoint pa(a);

    const DirichletPolynomial k = kernel_truncated(pa, args.N);
    const DirichletPolynomial kd = kernel_deriv_truncated(pa, args.N);
    Table t;
    t.header = {"n", "kernel_re", "kernel_im", "kernel_deriv_re", "kernel_deriv_im"};
    for (std::size_t n = 1; n <= args.N; ++n)
        t.add_row({std::to_string(n), fmt(k.coeff(n).real()), fmt(k.coeff(n).imag()),
                   fmt(kd.coeff(n).real()), fmt(kd.coeff(n).imag())});
    emit_table(t, args.format, data);

    CheckList checks;
    double worst_eval = 0.0, worst_deriv = 0.0;
    for (int i = 0; i < 5; ++i) {
        const DirichletPolynomial p = random_polynomial(args.N, args.seed + i);
        const cplx direct = eval_poly(p, pa);
        const cplx reproduced = inner_product(p, k);
        worst_eval = std::max(worst_eval,
                              std::abs(direct - reproduced) / std::max(std::abs(direct), 1e-30));
        const cplx ddirect = eval_poly(derivative(p), pa);
        const cplx dreproduced = inner_product(p, kd);
        worst_deriv = std::max(
            worst_deriv, std::abs(ddirect - dreproduced) / std::max(std::abs(ddirect), 1e-30));
    }
    checks.add(worst_eval <= tol.at("repro-tol"),
               "kernel_reproduction rel_err=" + fmt6(worst_eval) + " <= 1e-13");
    checks.add(worst_deriv <= tol.at("repro-tol"),
               "derivative_reproduction rel_err=" + fmt6(worst_deriv) + " <= 1e-13");
    if (!args.symbol_text.empty()) {
        const AffineSymbol sym = require_strict_affine(parse_symbol(args.symbol_text));
        const double residual = adjoint_kernel_check(sym, pa, args.K, args.N);
        checks.add(residual <= tol.at("adjoint-tol"),
                   "adjoint_kernel residual=" + fmt6(residual) + " <= adjoint-tol");
    }
    for (const auto& line : checks.lines) out << line << "\n";
    return checks.all_pass ? 0 : 2;
}

int cmd_counting(const CommandArgs& args, std::ostream& data, std::ostream& out) {
    TolMap tol{{"domination-eps", 1e-12}};
    tol.apply(args.tol_overrides);
    const AffineSymbol sym = require_strict_affine(parse_symbol(args.symbol_text));
    const GridRange g = parse_grid(args.grid_text);
    const auto samples = counting_grid_scan(sym, g.re0, g.re1, g.re_steps, g.im0, g.im1,
                                            g.im_steps, args.T, args.sigma_cut);

    if (args.format == "json") {
        Table t;
        t.header = {"re_w", "im_w", "m_closed", "m_oracle", "abs_err", "majorant", "ratio"};
        for (const auto& s : samples)
            t.add_row({fmt(s.w.sigma), fmt(s.w.t), fmt(s.m_closed), fmt(s.m_oracle),
                       fmt(s.abs_err), fmt(s.majorant), fmt(s.compactness_ratio)});
        emit_table(t, args.format, data);
    } else {
        write_counting_csv(samples, data);
    }

    CheckList checks;
    bool oracle_ok = true, domination_ok = true, support_ok = true;
    for (const auto& s : samples) {
        if (s.m_closed > 0.0) {
            const double re_s0 = s.m_closed / kLn2;
            oracle_ok = oracle_ok && s.abs_err <= 3.0 * M_PI * re_s0 / args.T;
        } else {
            support_ok = support_ok && s.m_oracle == 0.0;
        }
        if (std::isfinite(s.majorant))
            domination_ok =
                domination_ok && s.m_closed <= s.majorant + tol.at("domination-eps");
    }
    checks.add(oracle_ok, "oracle_error <= 3*pi*Re(s0)/T on all interior points");
    checks.add(domination_ok, "m_closed <= majorant on all comparable points");
    checks.add(support_ok, "zero counting value outside the support disk");
    for (const auto& line : checks.lines) out << line << "\n";
    return checks.all_pass ? 0 : 2;
}

int cmd_cov(const CommandArgs& args, std::ostream& data, std::ostream& out) {
    TolMap tol{{"cov-tol", 1e-4}};
    tol.apply(args.tol_overrides);
    const AffineSymbol sym = require_strict_affine(parse_symbol(args.symbol_text));
    QuadratureSpec quad;
    quad.radial_nodes = args.radial;
    quad.angular_nodes = args.angular;

    CheckList checks;
    if (args.format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (int i = 0; i < args.count; ++i) {
            const DirichletPolynomial p = random_polynomial(args.len, args.seed + i);
            const CovReport r = cov_check(sym, p, args.K, quad);
            nlohmann::ordered_json obj;
            obj["lhs"] = r.lhs;
            obj["rhs"] = r.rhs;
            obj["rel_err"] = r.rel_err;
            obj["K"] = r.K;
            obj["radial_nodes"] = r.radial_nodes;
            obj["angular_nodes"] = r.angular_nodes;
            obj["tail_budget"] = r.tail_budget;
            arr.push_back(std::move(obj));
            checks.add(r.rel_err <= tol.at("cov-tol"),
                       "cov draw=" + std::to_string(i) + " rel_err=" + fmt6(r.rel_err) +
                           " <= cov-tol");
        }
        data << arr.dump(2) << "\n";
    } else {
        Table t;
        t.header = {"draw", "lhs", "rhs", "rel_err", "K", "radial_nodes", "angular_nodes",
                    "tail_budget"};
        for (int i = 0; i < args.count; ++i) {
            const DirichletPolynomial p = random_polynomial(args.len, args.seed + i);
            const CovReport r = cov_check(sym, p, args.K, quad);
            t.add_row({std::to_string(i), fmt(r.lhs), fmt(r.rhs), fmt(r.rel_err),
                       std::to_string(r.K), std::to_string(r.radial_nodes),
                       std::to_string(r.angular_nodes), fmt(r.tail_budget)});
            checks.add(r.rel_err <= tol.at("cov-tol"),
                       "cov draw=" + std::to_string(i) + " rel_err=" + fmt6(r.rel_err) +
                           " <= cov-tol");
        }
        emit_table(t, args.format, data);
    }
    for (const auto& line : checks.lines) out << line << "\n";
    return checks.all_pass ? 0 : 2;
}

int cmd_lp(const CommandArgs& args, std::ostream& data, std::ostream& out) {
    TolMap tol{{"lp-tol", 1e-12}};
    tol.apply(args.tol_overrides);
    Table t;
    t.header = {"draw", "rel_err"};
    CheckList checks;
    bool ok = true;
    double worst = 0.0;
    for (int i = 0; i < args.count; ++i) {
        const DirichletPolynomial p = random_polynomial(args.len, args.seed + i);
        const double err = lp_identity_check(p);
        worst = std::max(worst, err);
        ok = ok && err <= tol.at("lp-tol");
        t.add_row({std::to_string(i), fmt(err)});
    }
    emit_table(t, args.format, data);
    checks.add(ok, "lp_identity worst rel_err=" + fmt6(worst) + " <= lp-tol");
    for (const auto& line : checks.lines) out << line << "\n";
    return checks.all_pass ? 0 : 2;
}

int cmd_classify(const CommandArgs& args, std::ostream& data, std::ostream&) {
    const GeneralSymbol g = to_general(parse_symbol(args.symbol_text));
    const ClassificationEvidence ev = classify_sampled(g, args.samples, args.seed);

    const char* verdict = ev.verdict == SymbolClassVerdict::ZeroCharEvidence
                              ? "zero-char-evidence"
                              : (ev.verdict == SymbolClassVerdict::PositiveCharEvidence
                                     ? "positive-char-evidence"
                                     : "counterexample");
    if (args.format == "json") {
        nlohmann::ordered_json obj;
        obj["class"] = verdict;
        obj["min_re_phi"] = ev.min_re;
        if (ev.witness) {
            obj["witness"] = {{"re", ev.witness->real()}, {"im", ev.witness->imag()}};
            obj["witness_value"] = {{"re", ev.witness_value->real()},
                                    {"im", ev.witness_value->imag()}};
        } else {
            obj["witness"] = nullptr;
        }
        obj["samples"] = ev.samples;
        obj["seed"] = ev.seed;
        data << obj.dump(2) << "\n";
    } else {
        Table t;
        t.header = {"class", "min_re_phi", "witness_re", "witness_im", "samples", "seed"};
        t.add_row({verdict, fmt(ev.min_re), ev.witness ? fmt(ev.witness->real()) : "nan",
                   ev.witness ? fmt(ev.witness->imag()) : "nan", std::to_string(ev.samples),
                   std::to_string(ev.seed)});
        emit_table(t, args.format, data);
    }
    return 0;
}

int cmd_diverge(const CommandArgs& args, std::ostream& data, std::ostream& out) {
    TolMap tol{{"diverge-lo", 1.7}, {"diverge-hi", 2.1}};
    tol.apply(args.tol_overrides);
    if (!(args.delta > 0.0) || !(args.delta < args.epsilon))
        throw std::invalid_argument("diverge: requires 0 < delta < epsilon");

    const double i_full = divergence_demo(args.delta, args.epsilon);
    const double i_half = divergence_demo(args.delta / 2.0, args.epsilon);
    const double ratio = i_half / i_full;

    Table t;
    t.header = {"delta", "integral"};
    t.add_row({fmt(args.delta), fmt(i_full)});
    t.add_row({fmt(args.delta / 2.0), fmt(i_half)});
    emit_table(t, args.format, data);

    CheckList checks;
    checks.add(ratio >= tol.at("diverge-lo") && ratio <= tol.at("diverge-hi"),
               "halving_ratio I(d/2)/I(d)=" + fmt6(ratio) + " in [1.7, 2.1]");
    for (const auto& line : checks.lines) out << line << "\n";
    return checks.all_pass ? 0 : 2;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"numerical checks for composition-differentiation operators on the "
                 "Hardy-Hilbert space of Dirichlet series"};
    app.require_subcommand(1);

    CommandArgs opts;
    int handler = -1;

    const auto add_common = [&](CLI::App* cmd, int id) {
        cmd->add_option("--out", opts.out_path, "write the data table to this path");
        cmd->add_option("--format", opts.format, "csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--tol", opts.tol_overrides, "tolerance override NAME=VALUE");
        cmd->callback([&handler, id] { handler = id; });
        return cmd;
    };

    CLI::App* bounds = add_common(app.add_subcommand("bounds", "operator norm sandwich"), 0);
    bounds->add_option("--symbol", opts.symbol_text)->required();
    bounds->add_option("--K", opts.K);
    bounds->add_option("--N", opts.N);
    bounds->add_option("--dump-matrix", opts.dump_matrix_path,
                       "also write the matrix (CSV: k,n,re,im) to this path");
    bounds->footer("CSV: c1_re,c1_im,c2_re,c2_im,K,N,lower,sigma1_sq,upper");

    CLI::App* approx = add_common(
        app.add_subcommand("approx", "singular values vs the approximation-number bound"), 1);
    approx->add_option("--symbol", opts.symbol_text)->required();
    approx->add_option("--K", opts.K);
    approx->add_option("--N", opts.N);
    approx->add_option("--n-max", opts.n_max);
    approx->footer("CSV: index,sigma,analytic_bound");

    CLI::App* remainder = add_common(
        app.add_subcommand("remainder", "rank-n remainder norms vs the analytic bound"), 2);
    remainder->add_option("--symbol", opts.symbol_text)->required();
    remainder->add_option("--K", opts.K);
    remainder->add_option("--N", opts.N);
    remainder->add_option("--n-max", opts.n_max);
    remainder->footer("CSV: n,remainder_norm,analytic_bound,sigma_next");

    CLI::App* hs = add_common(
        app.add_subcommand("hs", "Hilbert-Schmidt norm vs the closed form"), 3);
    hs->add_option("--symbol", opts.symbol_text)->required();
    hs->add_option("--K", opts.K);
    hs->add_option("--N", opts.N);
    hs->footer("CSV: symbol,K,N,frobenius_sq,closed_form_sq,budget");

    CLI::App* spectrum = add_common(
        app.add_subcommand("spectrum", "power-norm spectral radius estimates"), 4);
    spectrum->add_option("--symbol", opts.symbol_text)->required();
    spectrum->add_option("--N", opts.N);
    spectrum->add_option("--m-max", opts.m_max);
    spectrum->footer("CSV: m,estimate");

    CLI::App* selfadjoint = add_common(
        app.add_subcommand("selfadjoint", "Hermitian residual of the square embedding"), 5);
    selfadjoint->add_option("--symbol", opts.symbol_text)->required();
    selfadjoint->add_option("--N", opts.N);
    selfadjoint->footer("CSV: symbol,K,N,hermitian_residual,expected");

    CLI::App* kernels = add_common(
        app.add_subcommand("kernels", "reproducing kernels and the adjoint identity"), 6);
    kernels->add_option("--a", opts.a_text, "evaluation point re,im");
    kernels->add_option("--N", opts.N);
    kernels->add_option("--K", opts.K);
    kernels->add_option("--symbol", opts.symbol_text);
    kernels->add_option("--seed", opts.seed);
    kernels->footer("CSV: n,kernel_re,kernel_im,kernel_deriv_re,kernel_deriv_im");

    CLI::App* counting = add_common(
        app.add_subcommand("counting", "mean counting function grid scan"), 7);
    counting->add_option("--symbol", opts.symbol_text)->required();
    counting->add_option("--grid", opts.grid_text, "re0:re1:steps,im0:im1:steps");
    counting->add_option("--T", opts.T);
    counting->add_option("--sigma-cut", opts.sigma_cut);
    counting->footer("CSV: re_w,im_w,m_closed,m_oracle,abs_err,majorant,ratio");

    CLI::App* cov = add_common(
        app.add_subcommand("cov", "change-of-variables identity check"), 8);
    cov->add_option("--symbol", opts.symbol_text)->required();
    cov->add_option("--K", opts.K);
    cov->add_option("--seed", opts.seed);
    cov->add_option("--count", opts.count);
    cov->add_option("--len", opts.len);
    cov->add_option("--radial", opts.radial);
    cov->add_option("--angular", opts.angular);
    cov->footer("CSV: draw,lhs,rhs,rel_err,K,radial_nodes,angular_nodes,tail_budget\n"
                "JSON: [{lhs, rhs, rel_err, K, radial_nodes, angular_nodes, tail_budget}]");

    CLI::App* lp = add_common(
        app.add_subcommand("lp", "Littlewood-Paley identity on random polynomials"), 9);
    lp->add_option("--seed", opts.seed);
    lp->add_option("--count", opts.count);
    lp->add_option("--len", opts.len);
    lp->footer("CSV: draw,rel_err");

    CLI::App* classify = add_common(
        app.add_subcommand("classify", "sampled symbol classification evidence"), 10);
    classify->add_option("--symbol", opts.symbol_text)->required();
    classify->add_option("--samples", opts.samples);
    classify->add_option("--seed", opts.seed);
    classify->footer("CSV: class,min_re_phi,witness_re,witness_im,samples,seed");

    CLI::App* diverge = add_common(
        app.add_subcommand("diverge", "divergent-integral demonstration"), 11);
    diverge->add_option("--delta", opts.delta);
    diverge->add_option("--epsilon", opts.epsilon);
    diverge->footer("CSV: delta,integral");

    std::vector<const char*> argv;
    argv.push_back("dirops");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "argument error: " << e.what() << "\n";
        return 1;
    }

    std::ofstream file;
    std::ostream* data = &out;
    if (!opts.out_path.empty()) {
        file.open(opts.out_path);
        if (!file) {
            err << "cannot open output path: " << opts.out_path << "\n";
            return 1;
        }
        data = &file;
    }

    try {
        switch (handler) {
        case 0: return cmd_bounds(opts, *data, out);
        case 1: return cmd_approx(opts, *data, out);
        case 2: return cmd_remainder(opts, *data, out);
        case 3: return cmd_hs(opts, *data, out);
        case 4: return cmd_spectrum(opts, *data, out);
        case 5: return cmd_selfadjoint(opts, *data, out);
        case 6: return cmd_kernels(opts, *data, out);
        case 7: return cmd_counting(opts, *data, out);
        case 8: return cmd_cov(opts, *data, out);
        case 9: return cmd_lp(opts, *data, out);
        case 10: return cmd_classify(opts, *data, out);
        case 11: return cmd_diverge(opts, *data, out);
        default: err << "no subcommand selected\n"; return 1;
        }
    } catch (const NonConvergence& e) {
        err << "non-convergence: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        err << "invalid configuration: " << e.what() << "\n";
        return 1;
    }
}

} // namespace dirops
