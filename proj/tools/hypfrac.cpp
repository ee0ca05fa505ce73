// Command-line runner: evaluation, simulation and validation experiments.
//
// Exit codes: 0 success, 1 acceptance failure, 2 invalid configuration,
// 3 numerical failure.

#include "hypfrac/acceptance.hpp"
#include "hypfrac/errors.hpp"
#include "hypfrac/fraccalc.hpp"
#include "hypfrac/hypgeo.hpp"
#include "hypfrac/nonlinear.hpp"
#include "hypfrac/solution.hpp"
#include "hypfrac/specialfn.hpp"
#include "hypfrac/stats.hpp"
#include "hypfrac/stochastic.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <boost/version.hpp>
#include <Eigen/Core>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <variant>

#ifndef HYPFRAC_VERSION
#define HYPFRAC_VERSION "dev"
#endif

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace hypfrac;

namespace {

constexpr int kExitAcceptance = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Common {
    std::string out_dir;
    bool serial = false;
};

Execution execution(const Common& c) { return c.serial ? Execution::serial : Execution::parallel; }

std::string default_out_dir() {
    const char* env = std::getenv("HYPFRAC_OUT_DIR");
    return env != nullptr && *env != '\0' ? env : "hypfrac-out";
}

// Writes `<command>_<name>` inside the output directory and records it.
class Run {
public:
    Run(std::string command, const Common& common, const CLI::App& sub)
        : command_(std::move(command)), dir_(common.out_dir), start_(std::chrono::steady_clock::now()) {
        fs::create_directories(dir_);
        manifest_["command"] = command_;
        manifest_["version"] = HYPFRAC_VERSION;
        manifest_["libraries"] = {{"boost", BOOST_LIB_VERSION},
                                  {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                                std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                                std::to_string(EIGEN_MINOR_VERSION)}};
        manifest_["execution"] = common.serial ? "serial" : "parallel";
        manifest_["workers"] = worker_count();
        json params = json::object();
        for (const CLI::Option* opt : sub.get_options()) {
            if (opt->get_name() == "--help" || opt->get_lnames().empty()) {
                continue;
            }
            const auto& res = opt->results();
            const std::string key = opt->get_lnames().front();
            if (res.empty()) {
                const std::string def = opt->get_default_str();
                params[key] = def;
            } else if (res.size() == 1) {
                params[key] = res.front();
            } else {
                params[key] = res;
            }
        }
        manifest_["parameters"] = params;
    }

    std::ofstream open(const std::string& name) {
        const fs::path p = dir_ / (command_ + "_" + name);
        std::ofstream out(p);
        if (!out) {
            throw std::runtime_error("cannot write " + p.string());
        }
        manifest_["outputs"].push_back(p.filename().string());
        return out;
    }

    json& results() { return manifest_["results"]; }
    json& manifest() { return manifest_; }

    void finish() {
        manifest_["wall_time_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        std::ofstream out(dir_ / (command_ + "_manifest.json"));
        out << std::setw(2) << manifest_ << '\n';
        std::cout << "wrote " << (dir_ / (command_ + "_manifest.json")).string() << '\n';
    }

private:
    std::string command_;
    fs::path dir_;
    std::chrono::steady_clock::time_point start_;
    json manifest_;
};

std::vector<double> grid_or_list(const std::string& grid, const std::vector<double>& list, const char* name) {
    if (!grid.empty()) {
        return parse_grid(grid);
    }
    if (list.empty()) {
        detail::domain_fail(name, "give either a list or a start:stop:count grid");
    }
    return list;
}

HyperbolicPoint parse_point(const std::string& s) {
    std::istringstream in(s);
    HyperbolicPoint p;
    char comma = 0;
    if (!(in >> p.x >> comma >> p.y) || comma != ',' || !in.eof()) {
        detail::domain_fail("point", "expected x,y but got '" + s + "'");
    }
    validate(p);
    return p;
}

void add_common(CLI::App& sub, Common& c) {
    sub.add_option("--out-dir", c.out_dir, "Output directory (default: $HYPFRAC_OUT_DIR or ./hypfrac-out)");
    sub.add_flag("--serial", c.serial, "Use the serial reference kernels");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Time-fractional diffusion on the hyperbolic half-plane"};
    app.set_config("--config", "", "Key-value config file ([subcommand] sections or subcommand.key = value)");
    app.require_subcommand(1);
    app.set_version_flag("--version", HYPFRAC_VERSION);

    Common common;
    common.out_dir = default_out_dir();

    // ml-eval
    auto* ml = app.add_subcommand("ml-eval", "Evaluate E_beta(z) and M_beta(x)");
    double ml_beta = 0.5;
    std::string ml_grid;
    std::vector<double> ml_z;
    ml->add_option("--beta", ml_beta, "Order in (0, 1]")->capture_default_str();
    ml->add_option("--z", ml_z, "Arguments (list)");
    ml->add_option("--z-grid", ml_grid, "Arguments as start:stop:count");
    add_common(*ml, common);

    // fracderiv-check
    auto* fd = app.add_subcommand("fracderiv-check", "Fractional derivative of f^(b-1) against the power law");
    double fd_bpow = 2.0;
    double fd_nu = 0.5;
    std::string fd_f = "identity";
    std::vector<double> fd_t{0.5, 1.0, 2.0};
    fd->add_option("--beta-pow", fd_bpow, "Exponent b of g = f^(b-1), b > 1")->capture_default_str();
    fd->add_option("--nu", fd_nu, "Order in (0, 1)")->capture_default_str();
    fd->add_option("--f", fd_f, "Clock: identity | power:<g> | log1p | expm1")->capture_default_str();
    fd->add_option("--t", fd_t, "Times")->capture_default_str();
    add_common(*fd, common);

    // geodesics
    auto* geo = app.add_subcommand("geodesics", "Distance, polar coordinates and geodesic through two points");
    std::vector<std::string> geo_p;
    std::vector<std::string> geo_q;
    geo->add_option("--p", geo_p, "First point(s) x,y")->required();
    geo->add_option("--q", geo_q, "Second point(s) x,y")->required();
    add_common(*geo, common);

    // solve / telegraph share the field options
    struct FieldOpts {
        double beta = 0.5;
        double lambda = 0.5;
        std::string f = "identity";
        std::vector<double> t{1.0};
        std::string eta_grid = "0.01:6:600";
        std::string route = "spectral";
        double x_max = 80.0;
        int n_x = 3200;
    };
    FieldOpts so;
    auto* solve = app.add_subcommand("solve", "Fundamental solution u(eta, t) on a radial grid");
    solve->add_option("--beta", so.beta, "Order in (0, 1]")->capture_default_str();
    solve->add_option("--f", so.f, "Clock: identity | power:<g> | log1p | expm1")->capture_default_str();
    solve->add_option("--t", so.t, "Times")->capture_default_str();
    solve->add_option("--eta-grid", so.eta_grid, "Radial grid start:stop:count")->capture_default_str();
    solve->add_option("--route", so.route, "spectral | subordination | classical")
        ->check(CLI::IsMember({"spectral", "subordination", "classical"}))
        ->capture_default_str();
    solve->add_option("--x-max", so.x_max, "Spectral truncation")->capture_default_str();
    solve->add_option("--n-x", so.n_x, "Spectral trapezoid nodes")->capture_default_str();
    add_common(*solve, common);

    FieldOpts to;
    to.beta = 0.25;
    auto* tel = app.add_subcommand("telegraph", "Telegraph-type solution on a radial grid");
    tel->add_option("--beta", to.beta, "Order in (0, 1/2)")->capture_default_str();
    tel->add_option("--lambda", to.lambda, "Damping lambda > 0")->capture_default_str();
    tel->add_option("--f", to.f, "Clock")->capture_default_str();
    tel->add_option("--t", to.t, "Times")->capture_default_str();
    tel->add_option("--eta-grid", to.eta_grid, "Radial grid start:stop:count")->capture_default_str();
    tel->add_option("--x-max", to.x_max, "Spectral truncation")->capture_default_str();
    tel->add_option("--n-x", to.n_x, "Spectral trapezoid nodes")->capture_default_str();
    add_common(*tel, common);

    // simulate
    SampleRequest sim;
    std::string sim_process = "time-changed";
    std::string sim_f = "identity";
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo samples");
    simulate->add_option("--process", sim_process,
                         "stable | inverse-stable | hyperbolic-bm | time-changed | telegraph-time | telegraph")
        ->capture_default_str();
    simulate->add_option("--beta", sim.beta, "Order")->capture_default_str();
    simulate->add_option("--lambda", sim.lambda, "Telegraph damping")->capture_default_str();
    simulate->add_option("--f", sim_f, "Clock")->capture_default_str();
    simulate->add_option("--t", sim.t, "Time")->capture_default_str();
    simulate->add_option("--n", sim.n, "Sample count")->capture_default_str();
    simulate->add_option("--seed", sim.seed, "Seed")->capture_default_str();
    simulate->add_option("--stream", sim.stream, "Stream id")->capture_default_str();
    simulate->add_option("--n-steps", sim.path.n_steps, "BM steps per unit time")->capture_default_str();
    simulate->add_option("--grid-step", sim.telegraph.grid_step, "Telegraph clock grid step")->capture_default_str();
    add_common(*simulate, common);

    // compare
    SampleRequest cmp;
    std::string cmp_f = "identity";
    auto* compare = app.add_subcommand("compare", "Radial CDF of the PDE against simulated radii (KS test)");
    compare->add_option("--beta", cmp.beta, "Order")->capture_default_str();
    compare->add_option("--lambda", cmp.lambda, "Telegraph damping; 0 compares the single-term equation")
        ->capture_default_str();
    compare->add_option("--f", cmp_f, "Clock")->capture_default_str();
    compare->add_option("--t", cmp.t, "Time")->capture_default_str();
    compare->add_option("--n", cmp.n, "Sample count")->capture_default_str();
    compare->add_option("--seed", cmp.seed, "Seed")->capture_default_str();
    compare->add_option("--n-steps", cmp.path.n_steps, "BM steps per unit time")->capture_default_str();
    add_common(*compare, common);

    // nonlinear-residual
    std::vector<double> nl_n{0.5, 1.0, 2.0, 3.0};
    double nl_c = 1.0;
    std::vector<double> nl_beta{0.4, 0.7};
    std::vector<std::string> nl_f{"identity", "log1p"};
    std::vector<double> nl_t{1e-3, 0.5, 1.0, 2.0};
    std::string nl_eta = "1:6:11";
    auto* nl = app.add_subcommand("nonlinear-residual", "Residual of the separable nonlinear solution");
    nl->add_option("--n", nl_n, "Exponents n > 0")->capture_default_str();
    nl->add_option("--C", nl_c, "Integration constant C > 0")->capture_default_str();
    nl->add_option("--beta", nl_beta, "Orders")->capture_default_str();
    nl->add_option("--f", nl_f, "Clocks")->capture_default_str();
    nl->add_option("--t", nl_t, "Times")->capture_default_str();
    nl->add_option("--eta-grid", nl_eta, "Radial grid start:stop:count (points inside eta* are skipped)")
        ->capture_default_str();
    add_common(*nl, common);

    // acceptance
    std::vector<int> acc_only;
    auto* acc = app.add_subcommand("acceptance", "Run the acceptance criteria");
    acc->add_option("--only", acc_only, "Criterion ids to run (default all)");
    add_common(*acc, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        const Execution exec = execution(common);
        if (*ml) {
            Run run("ml-eval", common, *ml);
            const auto zs = grid_or_list(ml_grid, ml_z, "ml-eval");
            auto out = run.open("values.csv");
            out << "beta,z,mittag_leffler,m_wright\n" << std::setprecision(17);
            for (double z : zs) {
                out << ml_beta << ',' << z << ',' << mittag_leffler(ml_beta, z) << ',';
                if (ml_beta < 1.0 && z >= 0.0) {
                    out << m_wright(ml_beta, z);
                }
                out << '\n';
            }
            run.finish();
        } else if (*fd) {
            Run run("fracderiv-check", common, *fd);
            const auto f = TimeChange::parse(fd_f);
            auto out = run.open("values.csv");
            out << "t,numeric,exact,rel_err\n" << std::setprecision(17);
            double worst = 0.0;
            for (double t : fd_t) {
                TimeFunction g;
                g.value = [&](double tau) { return std::pow(f(tau), fd_bpow - 1.0); };
                g.derivative = [&](double tau) {
                    return (fd_bpow - 1.0) * std::pow(f(tau), fd_bpow - 2.0) * f.derivative(tau);
                };
                const double num = frac_derivative(g, f, fd_nu, t);
                const double exact = std::tgamma(fd_bpow) / std::tgamma(fd_bpow - fd_nu) *
                                     std::pow(f(t), fd_bpow - fd_nu - 1.0);
                const double rel = std::abs(num - exact) / std::abs(exact);
                worst = std::max(worst, rel);
                out << t << ',' << num << ',' << exact << ',' << rel << '\n';
            }
            run.results()["max_rel_err"] = worst;
            std::cout << "max relative error " << worst << '\n';
            run.finish();
        } else if (*geo) {
            if (geo_p.size() != geo_q.size()) {
                detail::domain_fail("geodesics", "--p and --q must be given the same number of times");
            }
            Run run("geodesics", common, *geo);
            auto out = run.open("values.csv");
            out << "px,py,qx,qy,distance,p_eta,p_alpha,kind,center_or_x0,radius\n" << std::setprecision(17);
            for (std::size_t i = 0; i < geo_p.size(); ++i) {
                const auto p = parse_point(geo_p[i]);
                const auto q = parse_point(geo_q[i]);
                const auto polar = from_cartesian(p);
                out << p.x << ',' << p.y << ',' << q.x << ',' << q.y << ',' << distance(p, q) << ',' << polar.eta << ','
                    << polar.alpha << ',';
                const auto g = geodesic_through(p, q);
                if (const auto* s = std::get_if<SemicircleGeodesic>(&g)) {
                    out << "semicircle," << s->center << ',' << s->radius << '\n';
                } else {
                    out << "vertical," << std::get<VerticalGeodesic>(g).x0 << ",\n";
                }
            }
            run.finish();
        } else if (*solve || *tel) {
            const bool telegraph = static_cast<bool>(*tel);
            const FieldOpts& o = telegraph ? to : so;
            Run run(telegraph ? "telegraph" : "solve", common, telegraph ? *tel : *solve);
            const auto f = TimeChange::parse(o.f);
            const auto grid = parse_grid(o.eta_grid);
            SpectralConfig cfg;
            cfg.x_max = o.x_max;
            cfg.n_x = o.n_x;
            cfg.eta_min = std::min(cfg.eta_min, grid.front());
            cfg.eta_max = std::max(cfg.eta_max, grid.back());
            auto out = run.open("field.csv");
            bool header = true;
            for (double t : o.t) {
                std::function<double(double)> u;
                std::shared_ptr<SpectralKernel> kernel;
                if (telegraph) {
                    kernel = std::make_shared<SpectralKernel>(telegraph_kernel(o.beta, o.lambda, f, t, cfg, exec));
                } else if (o.route == "spectral") {
                    kernel = std::make_shared<SpectralKernel>(diffusion_kernel(o.beta, f, t, cfg, exec));
                } else if (o.route == "classical") {
                    if (o.beta != 1.0) {
                        detail::domain_fail("solve", "route classical requires beta = 1");
                    }
                    u = [&f, t](double e) { return classical_kernel(f(t), e); };
                } else {
                    u = [&o, &f, t](double e) { return fundamental_solution_subordination({o.beta, f, t, e}); };
                }
                if (kernel) {
                    u = [kernel](double e) { return (*kernel)(e); };
                }
                SolutionField field = evaluate_field(u, grid, exec);
                field.t = t;
                field.beta = o.beta;
                field.lambda = telegraph ? o.lambda : 0.0;
                field.f_kind = f.name();
                field.route = telegraph ? "spectral" : o.route;
                const double mass = kernel_mass(u, std::max(30.0, grid.back()), cfg.eta_min);
                std::ostringstream csv;
                write_csv(field, csv);
                std::string text = csv.str();
                if (!header) {
                    text.erase(0, text.find('\n') + 1);
                }
                header = false;
                out << text;
                run.results()["fields"].push_back(
                    {{"t", t}, {"mass", mass}, {"grid_mass", field.mass}, {"route", field.route}});
                std::cout << "t=" << t << "  mass " << std::setprecision(10) << mass << '\n';
            }
            run.finish();
        } else if (*simulate) {
            Run run("simulate", common, *simulate);
            sim.kind = parse_process(sim_process);
            sim.f = TimeChange::parse(sim_f);
            const auto batch = sample_batch(sim, exec);
            auto out = run.open("samples.csv");
            write_csv(batch, out);
            const auto m = mean_estimate(batch.values);
            run.results() = {{"mean", m.mean}, {"std_error", m.std_error}, {"n", batch.values.size()}};
            run.manifest()["seeds"] = {{"seed", sim.seed}, {"stream", sim.stream}, {"shard_size", kShardSize}};
            std::cout << "mean " << m.mean << " +- " << m.std_error << '\n';
            run.finish();
        } else if (*compare) {
            Run run("compare", common, *compare);
            cmp.f = TimeChange::parse(cmp_f);
            const bool telegraph = cmp.lambda > 0.0;
            cmp.kind = telegraph ? ProcessKind::telegraph : ProcessKind::time_changed;
            const SpectralKernel kernel = telegraph ? telegraph_kernel(cmp.beta, cmp.lambda, cmp.f, cmp.t, {}, exec)
                                                    : diffusion_kernel(cmp.beta, cmp.f, cmp.t, {}, exec);
            const SolutionField field = evaluate_field([&](double e) { return kernel(e); }, radial_grid(30.0), exec);
            auto cdf = [&](double e) { return radial_cdf(field, std::min(e, field.eta.back())); };
            auto batch = sample_batch(cmp, exec);
            const auto ks = ks_one_sample(batch.values, cdf);
            std::sort(batch.values.begin(), batch.values.end());
            auto out = run.open("cdf.csv");
            out << "eta,pde_cdf,empirical_cdf\n" << std::setprecision(17);
            const double n = static_cast<double>(batch.values.size());
            for (double e : parse_grid("0.01:8:400")) {
                const auto below = std::upper_bound(batch.values.begin(), batch.values.end(), e) - batch.values.begin();
                out << e << ',' << cdf(e) << ',' << static_cast<double>(below) / n << '\n';
            }
            run.results() = {{"ks_statistic", ks.statistic}, {"p_value", ks.p_value}, {"n", ks.n},
                             {"pde_mass", field.mass}};
            run.manifest()["seeds"] = {{"seed", cmp.seed}, {"stream", cmp.stream}, {"shard_size", kShardSize}};
            std::cout << "KS D=" << ks.statistic << "  p=" << ks.p_value << '\n';
            run.finish();
        } else if (*nl) {
            Run run("nonlinear-residual", common, *nl);
            std::vector<ResidualRow> rows;
            double worst = 0.0;
            for (double n : nl_n) {
                const auto prof = make_profile(n, nl_c);
                for (double beta : nl_beta) {
                    for (const auto& fs : nl_f) {
                        const auto f = TimeChange::parse(fs);
                        for (double eta : parse_grid(nl_eta)) {
                            if (eta <= prof.eta_star + 0.1) {
                                continue;
                            }
                            for (double t : nl_t) {
                                const double r = nonlinear_residual(prof, beta, f, eta, t);
                                const double u = separable_solution(prof, beta, f, eta, t);
                                worst = std::max(worst, std::abs(r) / (1.0 + std::abs(u)));
                                rows.push_back({n, nl_c, beta, f.name(), eta, t, r});
                            }
                        }
                    }
                }
            }
            auto out = run.open("residuals.csv");
            write_csv(rows, out);
            run.results() = {{"rows", rows.size()}, {"max_scaled_residual", worst}};
            std::cout << rows.size() << " points, max |R|/(1+|u|) " << worst << '\n';
            run.finish();
        } else if (*acc) {
            Run run("acceptance", common, *acc);
            AcceptanceOptions opts;
            opts.only = acc_only;
            opts.exec = exec;
            const auto results = run_acceptance(opts, std::cout);
            auto out = run.open("results.csv");
            out << "id,name,passed,seconds,budget_seconds,summary\n";
            for (const auto& r : results) {
                out << r.id << ",\"" << r.name << "\"," << (r.passed ? 1 : 0) << ',' << r.seconds << ','
                    << r.budget_seconds << ",\"" << r.summary << "\"\n";
                run.results().push_back({{"id", r.id}, {"passed", r.passed}, {"seconds", r.seconds}});
            }
            run.finish();
            if (!all_passed(results)) {
                std::cerr << "\nfailed criteria:\n";
                for (const auto& r : results) {
                    if (!r.passed) {
                        std::cerr << "  " << std::setw(2) << r.id << "  " << r.name << "  " << r.summary << '\n';
                    }
                }
                return kExitAcceptance;
            }
        }
    } catch (const DomainError& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return kExitConfig;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return 0;
}
