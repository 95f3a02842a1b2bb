#include <complex>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cairy/airy.hpp"
#include "cairy/bounds.hpp"
#include "cairy/errors.hpp"
#include "cairy/galerkin.hpp"
#include "cairy/halfline.hpp"
#include "cairy/io.hpp"
#include "cairy/margin.hpp"
#include "cairy/transmission.hpp"

namespace {

using json = nlohmann::ordered_json;
using cairy::io::fmt;

std::ostream* open_out(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return &std::cout;
    file.open(path);
    if (!file) throw cairy::DomainError("cannot open output file " + path);
    return &file;
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

std::pair<double, double> parse_pair(const std::string& s) {
    std::stringstream ss(s);
    double a, b;
    char comma;
    if (!(ss >> a >> comma >> b) || comma != ',')
        throw CLI::ValidationError("expected RE,IM or A,B pair: " + s);
    return {a, b};
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

// Flat JSON config {"subcommand.flag": value}; command-line flags override.
// Options register themselves with a typed setter; after parsing, config
// values fill in whatever the command line left untouched.
struct ConfigBinder {
    std::map<std::string, std::function<void(const json&)>> setters;
    std::map<std::string, CLI::Option*> options;

    template <class T>
    CLI::Option* bind(const std::string& key, CLI::Option* opt, T& var) {
        options[key] = opt;
        setters[key] = [&var](const json& v) { var = v.get<T>(); };
        return opt;
    }

    void apply(const json& cfg) const {
        for (const auto& [key, val] : cfg.items()) {
            auto it = setters.find(key);
            if (it == setters.end())
                throw cairy::DomainError("unknown config key " + key);
            if (options.at(key)->count() == 0) it->second(val);
        }
    }
};

cairy::margin::Bc parse_bc(const std::string& s) {
    if (s == "d") return cairy::margin::Bc::Dirichlet;
    if (s == "n") return cairy::margin::Bc::Neumann;
    if (s == "r") return cairy::margin::Bc::Robin;
    if (s == "t") return cairy::margin::Bc::Transmission;
    throw CLI::ValidationError("--bc must be one of d|n|r|t");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral toolkit for the 1D complex Airy operator and "
                 "semiclassical margins of -h^2 Lap + iV"};
    app.require_subcommand(1);
    std::string config_path, out_path;
    app.add_option("--config", config_path, "JSON file of default flag values (flat keys: sub.flag)");
    app.add_option("--out", out_path, "output file (default: stdout)");

    ConfigBinder binder;
    auto bindO = [&binder](CLI::App* sub, const std::string& path, const char* flag, auto& var,
                           const char* help) {
        return binder.bind(path, sub->add_option(flag, var, help), var);
    };

    // airy eval / zeros
    auto* airy_cmd = app.add_subcommand("airy", "Airy function evaluation");
    auto* airy_eval = airy_cmd->add_subcommand("eval", "evaluate Ai, Ai' at a complex point");
    std::string zs = "0,0";
    bindO(airy_eval, "airy.eval.z", "--z", zs, "complex argument RE,IM");

    auto* zeros_cmd = app.add_subcommand("zeros", "real zeros of Ai or Ai'");
    std::string zero_kind = "ai";
    int zero_count = 5;
    bindO(zeros_cmd, "zeros.kind", "--kind", zero_kind, "ai|aip");
    bindO(zeros_cmd, "zeros.count", "--count", zero_count, "number of zeros");

    // halfline
    auto* hl = app.add_subcommand("halfline", "half-line spectrum");
    auto* hl_eig = hl->add_subcommand("eig", "eigenvalue of -d2/dx2 + i j x");
    std::string hl_bc = "n";
    double hl_j = 1.0, hl_kappa = 0.0;
    int hl_n = 1;
    bindO(hl_eig, "halfline.eig.bc", "--bc", hl_bc, "d|n|r");
    bindO(hl_eig, "halfline.eig.j", "--j", hl_j, "current magnitude");
    bindO(hl_eig, "halfline.eig.kappa", "--kappa", hl_kappa, "Robin coefficient");
    bindO(hl_eig, "halfline.eig.n", "-n,--n", hl_n, "branch index");

    auto* hl_traj = hl->add_subcommand("trajectory", "Robin branch over y (CSV)");
    int traj_n = 1, traj_steps = 500;
    double traj_ymax = 50.0;
    bindO(hl_traj, "halfline.trajectory.n", "--n", traj_n, "branch index");
    bindO(hl_traj, "halfline.trajectory.ymax", "--ymax", traj_ymax, "grid endpoint");
    bindO(hl_traj, "halfline.trajectory.steps", "--steps", traj_steps, "grid intervals");

    // transmission
    auto* tr = app.add_subcommand("transmission", "transmission spectrum");
    auto* tr_traj = tr->add_subcommand("trajectory", "first pair over y (CSV)");
    double tr_ymax = 100.0;
    int tr_steps = 500, tr_n = 1;
    bindO(tr_traj, "transmission.trajectory.ymax", "--ymax", tr_ymax, "grid endpoint");
    bindO(tr_traj, "transmission.trajectory.steps", "--steps", tr_steps, "grid intervals");
    bindO(tr_traj, "transmission.trajectory.n", "--n", tr_n, "pair index");

    auto* tr_count = tr->add_subcommand("count", "argument-principle zero count");
    double tr_y = 0.0;
    std::string tr_rect = "0,2,-5,5";
    bindO(tr_count, "transmission.count.y", "--y", tr_y, "reduced parameter");
    bindO(tr_count, "transmission.count.rect", "--rect", tr_rect, "re_min,re_max,im_min,im_max");

    // galerkin
    auto* ga = app.add_subcommand("galerkin", "interval Galerkin oracle");
    auto* ga_left = ga->add_subcommand("leftmost", "leftmost eigenvalue");
    double ga_L = 10.0, ga_j = 1.0, ga_kappa = 0.0;
    int ga_N = 200;
    bindO(ga_left, "galerkin.leftmost.L", "--L", ga_L, "interval length");
    bindO(ga_left, "galerkin.leftmost.N", "--N", ga_N, "basis size");
    bindO(ga_left, "galerkin.leftmost.j", "--j", ga_j, "current magnitude");
    bindO(ga_left, "galerkin.leftmost.kappa", "--kappa", ga_kappa, "left Robin coefficient");

    auto* ga_res = ga->add_subcommand("resolvent", "resolvent norm line scan");
    double ga_gamma = -1.0;
    std::string ga_nu = "-5,5";
    int ga_samples = 512;
    bindO(ga_res, "galerkin.resolvent.gamma", "--gamma", ga_gamma, "real part of the scan line");
    bindO(ga_res, "galerkin.resolvent.nu-range", "--nu-range", ga_nu, "A,B imaginary range");
    bindO(ga_res, "galerkin.resolvent.samples", "--samples", ga_samples, "uniform samples");
    bindO(ga_res, "galerkin.resolvent.L", "--L", ga_L, "interval length");
    bindO(ga_res, "galerkin.resolvent.N", "--N", ga_N, "basis size");
    bindO(ga_res, "galerkin.resolvent.j", "--j", ga_j, "current magnitude");
    bindO(ga_res, "galerkin.resolvent.kappa", "--kappa", ga_kappa, "left Robin coefficient");

    auto* ga_spec = ga->add_subcommand("spectrum", "full spectrum export (CSV; --json)");
    bool ga_json = false, ga_matrix = false;
    ga_spec->add_flag("--json", ga_json, "emit {eigenvalues, residuals} JSON");
    ga_spec->add_flag("--matrix", ga_matrix, "emit the assembled matrix instead (CSV)");
    bindO(ga_spec, "galerkin.spectrum.L", "--L", ga_L, "interval length");
    bindO(ga_spec, "galerkin.spectrum.N", "--N", ga_N, "basis size");
    bindO(ga_spec, "galerkin.spectrum.j", "--j", ga_j, "current magnitude");
    bindO(ga_spec, "galerkin.spectrum.kappa", "--kappa", ga_kappa, "left Robin coefficient");

    auto* ga_semi = ga->add_subcommand("semigroup", "semigroup norm decay (CSV)");
    double ga_tmax = 3.0;
    int ga_tsteps = 30;
    bindO(ga_semi, "galerkin.semigroup.t-max", "--t-max", ga_tmax, "time endpoint");
    bindO(ga_semi, "galerkin.semigroup.steps", "--steps", ga_tsteps, "time intervals");
    bindO(ga_semi, "galerkin.semigroup.L", "--L", ga_L, "interval length");
    bindO(ga_semi, "galerkin.semigroup.N", "--N", ga_N, "basis size");
    bindO(ga_semi, "galerkin.semigroup.j", "--j", ga_j, "current magnitude");
    bindO(ga_semi, "galerkin.semigroup.kappa", "--kappa", ga_kappa, "left Robin coefficient");

    // margin
    auto* mg = app.add_subcommand("margin", "semiclassical spectral margin");
    std::string mg_domain = "disk", mg_pot = "x1", mg_bc = "d";
    double mg_kappa = 0.0;
    bindO(mg, "margin.domain", "--domain", mg_domain, "disk|annulus");
    bindO(mg, "margin.potential", "--potential", mg_pot, "x1");
    bindO(mg, "margin.bc", "--bc", mg_bc,
          "d|n|r|t (t: transmission interface with a Neumann outer boundary)");
    bindO(mg, "margin.kappa", "--kappa", mg_kappa, "coupling");

    // quasimode residual
    auto* qm = app.add_subcommand("quasimode", "quasimode diagnostics");
    auto* qm_res = qm->add_subcommand("residual", "residual scaling over h (CSV)");
    std::string qm_hlist = "0.04,0.03,0.02,0.015,0.01", qm_domain = "disk", qm_bc = "r";
    double qm_kappa = 1.0, qm_gamma = 0.4;
    bindO(qm_res, "quasimode.residual.h-list", "--h-list", qm_hlist, "decreasing h values");
    bindO(qm_res, "quasimode.residual.domain", "--domain", qm_domain, "disk|annulus");
    bindO(qm_res, "quasimode.residual.bc", "--bc", qm_bc, "d|n|r|t");
    bindO(qm_res, "quasimode.residual.kappa", "--kappa", qm_kappa, "coupling");
    bindO(qm_res, "quasimode.residual.gamma", "--gamma", qm_gamma, "cutoff exponent in (0, 1/2)");

    // bounds
    auto* bd = app.add_subcommand("bounds", "cubic-exponential integral bounds");
    auto* bd_laplace = bd->add_subcommand("laplace", "integral vs closed-form bound");
    bool bd_grid = false;
    double bd_alpha = 1.0, bd_beta = 1.0;
    bd_laplace->add_flag("--grid", bd_grid, "emit the full 20x20 grid as CSV");
    bindO(bd_laplace, "bounds.laplace.alpha", "--alpha", bd_alpha, "cubic coefficient");
    bindO(bd_laplace, "bounds.laplace.beta", "--beta", bd_beta, "linear coefficient");

    // allow the global --out/--config after the subcommand, as in
    // `cairy halfline trajectory --out file.csv`
    std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
        a->fallthrough();
        for (CLI::App* sub : a->get_subcommands({})) enable_fallthrough(sub);
    };
    enable_fallthrough(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cerr << "argument error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) throw cairy::DomainError("cannot read config " + config_path);
            binder.apply(json::parse(f));
        }

        std::ofstream file;
        std::ostream& os = *open_out(out_path, file);

        if (airy_eval->parsed()) {
            auto [re, im] = parse_pair(zs);
            const auto p = cairy::airy::eval_pair({re, im});
            json out{{"z", json::array({re, im})},
                     {"ai", complex_json(p.ai)},
                     {"ai_prime", complex_json(p.ai_prime)},
                     {"method", p.method == cairy::airy::Method::Series          ? "series"
                                : p.method == cairy::airy::Method::Asymptotic    ? "asymptotic"
                                                                                 : "connection-rotated"},
                     {"est_rel_error", p.est_rel_error}};
            os << out.dump(2) << "\n";
        } else if (zeros_cmd->parsed()) {
            const auto kind = zero_kind == "ai" ? cairy::airy::ZeroKind::OfAi
                              : zero_kind == "aip"
                                  ? cairy::airy::ZeroKind::OfAiPrime
                                  : throw cairy::DomainError("--kind must be ai or aip");
            cairy::io::CsvWriter csv(os, {"n", "value"});
            for (int n = 1; n <= zero_count; ++n)
                csv.row({static_cast<double>(n), cairy::airy::real_zero(kind, n).value});
        } else if (hl_eig->parsed()) {
            cairy::halfline::HalfLineProblem prob;
            prob.j = hl_j;
            prob.kappa = hl_kappa;
            prob.bc = hl_bc == "d"   ? cairy::halfline::BcKind::Dirichlet
                      : hl_bc == "n" ? cairy::halfline::BcKind::Neumann
                      : hl_bc == "r" ? cairy::halfline::BcKind::Robin
                                     : throw cairy::DomainError("--bc must be d|n|r");
            const auto lam = cairy::halfline::eigenvalue(prob, hl_n);
            json out{{"bc", hl_bc}, {"j", hl_j},       {"kappa", hl_kappa},
                     {"n", hl_n},   {"re", lam.real()}, {"im", lam.imag()}};
            os << out.dump(2) << "\n";
        } else if (hl_traj->parsed()) {
            cairy::halfline::trajectory(traj_n, traj_ymax, traj_steps).write_csv(os);
        } else if (tr_traj->parsed()) {
            cairy::transmission::pair_unit(tr_n, tr_ymax, tr_steps).write_csv(os);
        } else if (tr_count->parsed()) {
            const auto v = parse_list(tr_rect);
            if (v.size() != 4) throw cairy::DomainError("--rect needs 4 comma-separated values");
            const auto rep = cairy::transmission::count_zeros(tr_y, {v[0], v[1], v[2], v[3]});
            json out{{"y", rep.y},
                     {"rect", json::array({rep.rect.re_min, rep.rect.re_max, rep.rect.im_min,
                                           rep.rect.im_max})},
                     {"count", rep.count},
                     {"winding_residual", rep.winding_residual}};
            os << out.dump(2) << "\n";
        } else if (ga_left->parsed()) {
            cairy::galerkin::GalerkinConfig cfg{ga_L, ga_N, ga_j,
                                                ga_kappa == 0.0 ? cairy::galerkin::LeftBc::Neumann
                                                                : cairy::galerkin::LeftBc::Robin,
                                                ga_kappa};
            const auto lam = cairy::galerkin::leftmost(cfg);
            json out{{"L", ga_L},   {"N", ga_N},        {"j", ga_j},
                     {"kappa", ga_kappa}, {"re", lam.real()}, {"im", lam.imag()}};
            os << out.dump(2) << "\n";
        } else if (ga_res->parsed()) {
            cairy::galerkin::GalerkinConfig cfg{ga_L, ga_N, ga_j,
                                                cairy::galerkin::LeftBc::Robin, ga_kappa};
            const auto m = cairy::galerkin::assemble(cfg);
            auto [a, b] = parse_pair(ga_nu);
            const auto scan = cairy::galerkin::resolvent_scan(m, ga_gamma, {a, b}, ga_samples);
            json out{{"gamma", ga_gamma},
                     {"nu_range", json::array({a, b})},
                     {"sup_norm", scan.sup_norm},
                     {"argmax_nu", scan.argmax_nu}};
            os << out.dump(2) << "\n";
        } else if (ga_spec->parsed()) {
            cairy::galerkin::GalerkinConfig cfg{ga_L, ga_N, ga_j,
                                                cairy::galerkin::LeftBc::Robin, ga_kappa};
            const auto m = cairy::galerkin::assemble(cfg);
            if (ga_matrix) {
                cairy::galerkin::write_matrix_csv(os, m);
            } else {
                const auto spec = cairy::galerkin::eigensolve(m);
                if (ga_json)
                    cairy::galerkin::write_spectrum_json(os, spec);
                else
                    cairy::galerkin::write_spectrum_csv(os, spec);
            }
        } else if (ga_semi->parsed()) {
            cairy::galerkin::GalerkinConfig cfg{ga_L, ga_N, ga_j,
                                                cairy::galerkin::LeftBc::Robin, ga_kappa};
            const auto m = cairy::galerkin::assemble(cfg);
            const auto norms = cairy::galerkin::semigroup_sweep(m, ga_tmax, ga_tsteps);
            cairy::io::CsvWriter csv(os, {"t", "norm"});
            for (int k = 0; k < static_cast<int>(norms.size()); ++k)
                csv.row({ga_tmax * k / ga_tsteps, norms[k]});
        } else if (mg->parsed()) {
            if (mg_pot != "x1") throw cairy::DomainError("--potential supports x1");
            const auto dom = mg_domain == "disk"      ? cairy::margin::Domain::disk()
                             : mg_domain == "annulus" ? cairy::margin::Domain::annulus()
                                                      : throw cairy::DomainError(
                                                            "--domain must be disk or annulus");
            const auto pot = cairy::geometry::PotentialModel::linear({1.0, 0.0});
            const auto rep = cairy::margin::margin(dom, pot, parse_bc(mg_bc), mg_kappa);
            json pts = json::array();
            for (std::size_t i = 0; i < rep.points.size(); ++i) {
                const auto& p = rep.points[i];
                pts.push_back({{"x", p.location.x},
                               {"y", p.location.y},
                               {"s", p.s},
                               {"component", p.component},
                               {"j0", p.j0},
                               {"normal_sign", p.normal_sign},
                               {"alpha", p.alpha},
                               {"nondegenerate", p.nondegenerate},
                               {"mu1", complex_json(p.mu1)},
                               {"re_lambda", rep.point_values[i]}});
            }
            json out{{"bc", mg_bc},
                     {"kappa", mg_kappa},
                     {"Lambda_m", rep.lambda_m},
                     {"minimizers", rep.minimizers},
                     {"points", pts}};
            os << out.dump(2) << "\n";
        } else if (qm_res->parsed()) {
            const bool annulus = qm_domain == "annulus";
            const auto dom = annulus ? cairy::margin::Domain::annulus()
                                     : cairy::margin::Domain::disk();
            const auto pot = cairy::geometry::PotentialModel::linear({1.0, 0.0});
            const auto bc = parse_bc(qm_bc);
            // residual point: the interface for transmission, else the outer
            // boundary point with inward-increasing potential
            const int comp = bc == cairy::margin::Bc::Transmission && annulus ? 1 : 0;
            auto pts = cairy::margin::find_perp_points(dom.components[comp], pot, comp);
            std::size_t pick = 0;
            for (std::size_t i = 0; i < pts.size(); ++i)
                if (-pts[i].normal_sign > 0) pick = i;
            cairy::margin::GridSpec grid;
            grid.gamma = qm_gamma;
            const auto rep = cairy::margin::residual_scaling(dom, pot, pts[pick], bc, qm_kappa,
                                                             parse_list(qm_hlist), grid);
            cairy::io::CsvWriter csv(os, {"h", "residual", "running_slope"});
            for (std::size_t i = 0; i < rep.h_list.size(); ++i)
                csv.row({rep.h_list[i], rep.residuals[i], rep.running_slope[i]});
        } else if (bd_laplace->parsed()) {
            if (bd_grid) {
                const auto rows = cairy::bounds::laplace_grid(20, 20, cairy::Exec::Parallel);
                cairy::io::CsvWriter csv(os, {"alpha", "beta", "integral", "bound", "margin"});
                for (const auto& r : rows)
                    csv.row({r.alpha, r.beta, r.integral, r.bound, r.margin});
            } else {
                const auto p = cairy::bounds::laplace_pair(bd_alpha, bd_beta);
                json out{{"alpha", bd_alpha},
                         {"beta", bd_beta},
                         {"integral", p.integral},
                         {"bound", p.bound}};
                os << out.dump(2) << "\n";
            }
        }
    } catch (const cairy::Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
