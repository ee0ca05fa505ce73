#include "hypfrac/solution.hpp"

#include "hypfrac/errors.hpp"
#include "hypfrac/fraccalc.hpp"
#include "hypfrac/quadrature.hpp"
#include "hypfrac/specialfn.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

namespace hypfrac {
namespace {

constexpr double kPi = std::numbers::pi;

// 1/sqrt(2 cosh(eta + v^2) - 2 cosh(eta)) * dphi/dv with phi = eta + v^2:
//   2v / sqrt(4 sinh(eta + v^2/2) sinh(v^2/2)).
double singular_weight(double eta, double v) {
    const double half_v2 = 0.5 * v * v;
    double ratio;  // v / sqrt(sinh(v^2/2))
    if (half_v2 < 1e-8) {
        ratio = std::sqrt(2.0) * (1.0 - half_v2 * half_v2 / 12.0);
    } else {
        ratio = v / std::sqrt(std::sinh(half_v2));
    }
    return ratio / std::sqrt(std::sinh(eta + half_v2));
}

// int_0^inf x sin(x phi) / (x^2 + a^2)^n dx for n = 1, 2, 3 at a = 1/2.
std::array<double, 3> rational_sine_transforms(double phi) {
    const double a = 0.5;
    const double e = std::exp(-a * phi);
    return {0.5 * kPi * e, kPi * phi * e / (4.0 * a), kPi * phi * (1.0 + a * phi) * e / (16.0 * a * a * a)};
}

double tail_value(const std::array<double, 3>& tail, double omega) {
    const double inv = 1.0 / omega;
    return inv * (tail[0] + inv * (tail[1] + inv * tail[2]));
}

void check_config(const SpectralConfig& cfg) {
    if (!(cfg.x_max > 0.0) || cfg.n_x < 16 || cfg.n_phi < 16) {
        detail::domain_fail("SpectralConfig", "need x_max > 0 and node counts >= 16");
    }
    if (!(cfg.phi_panel > 0.0) || !(cfg.eta_max > cfg.eta_min) || !(cfg.eta_min > 0.0)) {
        detail::domain_fail("SpectralConfig", "need phi_panel > 0 and 0 < eta_min < eta_max");
    }
}

std::string describe(const TemporalFactor& f) { return f.label; }

}  // namespace

TemporalFactor mittag_leffler_factor(double beta, double clock) {
    if (!(beta > 0.0 && beta <= 1.0)) {
        detail::domain_fail("mittag_leffler_factor", "order must lie in (0, 1]");
    }
    if (!(clock > 0.0)) {
        detail::domain_fail("mittag_leffler_factor", "clock f(t) must be positive");
    }
    TemporalFactor out;
    const double scale = std::pow(clock, beta);
    out.value = [beta, scale](double omega) { return mittag_leffler(beta, -omega * scale); };
    if (beta < 1.0) {
        // E_beta(-z) ~ sum_k (-1)^{k+1} z^{-k} / Gamma(1 - beta k)
        for (int k = 1; k <= 3; ++k) {
            const double sign = (k % 2 == 1) ? 1.0 : -1.0;
            out.tail[k - 1] = sign * rgamma(1.0 - beta * k) / std::pow(scale, k);
        }
    }
    std::ostringstream label;
    label << "mittag-leffler(beta=" << beta << ", clock=" << clock << ")";
    out.label = label.str();
    return out;
}

TemporalFactor two_term_factor(double beta, double lambda, double clock) {
    if (!(beta > 0.0 && beta < 0.5) || !(lambda > 0.0)) {
        detail::domain_fail("two_term_factor", "need beta in (0, 1/2) and lambda > 0");
    }
    if (!(clock > 0.0)) {
        detail::domain_fail("two_term_factor", "clock f(t) must be positive");
    }
    TemporalFactor out;
    out.value = [beta, lambda, clock](double omega) { return relaxation_two_term(beta, lambda, omega, clock); };
    // T~(p) = sum_k (-1)^{k+1} psi(p)^k / (p omega^k), psi = p^{2b} + 2 lambda p^b;
    // binomial expansion and p^{g-1} <-> s^{-g} / Gamma(1 - g).
    for (int k = 1; k <= 3; ++k) {
        double c = 0.0;
        double binom = 1.0;
        for (int j = 0; j <= k; ++j) {
            if (j > 0) {
                binom = binom * (k - j + 1) / j;
            }
            const double g = beta * (k + j);
            c += binom * std::pow(2.0 * lambda, k - j) * std::pow(clock, -g) * rgamma(1.0 - g);
        }
        out.tail[k - 1] = ((k % 2 == 1) ? 1.0 : -1.0) * c;
    }
    std::ostringstream label;
    label << "two-term(beta=" << beta << ", lambda=" << lambda << ", clock=" << clock << ")";
    out.label = label.str();
    return out;
}

SpectralKernel::SpectralKernel(TemporalFactor factor, SpectralConfig cfg, Execution exec)
    : factor_(std::move(factor)), cfg_(cfg) {
    check_config(cfg_);
    if (!cfg_.swap_order) {
        return;
    }
    // phi beyond eta_max + 50 carries weight below e^{-25} relative to u(eta_max).
    phi_max_ = cfg_.eta_max + 50.0;
    x_step_ = cfg_.x_max / (cfg_.n_x - 1);
    remainder_.assign(static_cast<std::size_t>(cfg_.n_x), 0.0);
    const int nx = cfg_.n_x;
    const auto fill_remainder = [&](int j) {
        const double x = j * x_step_;
        const double omega = 0.25 + x * x;
        remainder_[static_cast<std::size_t>(j)] = x * (factor_.value(omega) - tail_value(factor_.tail, omega));
    };
    for_each_index(nx, exec, [&](long j) { fill_remainder(static_cast<int>(j)); });
    for (double r : remainder_) {
        if (!std::isfinite(r)) {
            detail::numerical_fail("SpectralKernel", "temporal factor not finite for " + describe(factor_));
        }
    }

    // Node budget check: halving the trapezoid density must not move S,
    // measured against the largest |S| seen at the probes.
    const std::array probes{0.5, 2.0, 8.0};
    std::array<double, 3> fine{};
    std::array<double, 3> coarse{};
    double magnitude = std::abs(factor_.tail[0]);
    for (std::size_t i = 0; i < probes.size(); ++i) {
        fine[i] = direct_sine_transform(probes[i], 1);
        coarse[i] = direct_sine_transform(probes[i], 2);
        magnitude = std::max(magnitude, std::abs(fine[i]));
    }
    for (std::size_t i = 0; i < probes.size(); ++i) {
        if (std::abs(fine[i] - coarse[i]) > cfg_.stabilization_tol * magnitude) {
            std::ostringstream msg;
            msg << "sine transform not converged for " << describe(factor_) << " at phi=" << probes[i]
                << ": |S_h - S_2h| = " << std::abs(fine[i] - coarse[i]) << " against |S| ~ " << magnitude
                << " (x_max=" << cfg_.x_max << ", n_x=" << cfg_.n_x << ")";
            detail::numerical_fail("SpectralKernel", msg.str());
        }
    }

    const int panels = static_cast<int>(std::ceil(phi_max_ / cfg_.phi_panel));
    const int n = cfg_.n_phi;
    cheb_coeffs_.assign(static_cast<std::size_t>(panels) * n, 0.0);
    const auto fill_panel = [&](int p) {
        const double a = p * cfg_.phi_panel;
        const double b = a + cfg_.phi_panel;
        std::vector<double> samples(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            const double node = std::cos(kPi * (k + 0.5) / n);
            samples[static_cast<std::size_t>(k)] = direct_sine_transform(0.5 * (a + b) + 0.5 * (b - a) * node, 1);
        }
        for (int j = 0; j < n; ++j) {
            double c = 0.0;
            for (int k = 0; k < n; ++k) {
                c += samples[static_cast<std::size_t>(k)] * std::cos(kPi * j * (k + 0.5) / n);
            }
            cheb_coeffs_[static_cast<std::size_t>(p) * n + j] = 2.0 * c / n;
        }
    };
    for_each_index(panels, exec, [&](long p) { fill_panel(static_cast<int>(p)); });
}

double SpectralKernel::direct_sine_transform(double phi, int stride) const {
    const double h = x_step_ * stride;
    const std::size_t last = remainder_.size() - 1;
    quad::CompensatedSum sum;
    for (std::size_t j = 0; j <= last; j += static_cast<std::size_t>(stride)) {
        const double w = (j == 0 || j == last) ? 0.5 : 1.0;
        sum.add(w * remainder_[j] * std::sin(static_cast<double>(j) * x_step_ * phi));
    }
    const auto rational = rational_sine_transforms(phi);
    return h * sum.value() + factor_.tail[0] * rational[0] + factor_.tail[1] * rational[1] +
           factor_.tail[2] * rational[2];
}

double SpectralKernel::sine_transform(double phi) const {
    if (!cfg_.swap_order) {
        detail::domain_fail("SpectralKernel::sine_transform", "only tabulated in swap_order mode");
    }
    if (!(phi > 0.0) || phi >= phi_max_) {
        return 0.0;
    }
    const int n = cfg_.n_phi;
    const auto p = static_cast<std::size_t>(phi / cfg_.phi_panel);
    const double a = static_cast<double>(p) * cfg_.phi_panel;
    const double y = 2.0 * (phi - a) / cfg_.phi_panel - 1.0;
    const double* c = cheb_coeffs_.data() + p * static_cast<std::size_t>(n);
    double b1 = 0.0;
    double b2 = 0.0;
    for (int j = n - 1; j >= 1; --j) {
        const double b0 = 2.0 * y * b1 - b2 + c[j];
        b2 = b1;
        b1 = b0;
    }
    return y * b1 - b2 + 0.5 * c[0];
}

double SpectralKernel::operator()(double eta) const {
    if (!(eta >= cfg_.eta_min) || !(eta <= cfg_.eta_max)) {
        std::ostringstream msg;
        msg << "eta=" << eta << " outside [" << cfg_.eta_min << ", " << cfg_.eta_max << "]";
        detail::domain_fail("SpectralKernel", msg.str());
    }
    return cfg_.swap_order ? evaluate_swapped(eta) : evaluate_phi_inner(eta);
}

double SpectralKernel::evaluate_swapped(double eta) const {
    const double v_max = std::sqrt(phi_max_ - eta);
    auto integrand = [&](double v) { return singular_weight(eta, v) * sine_transform(eta + v * v); };
    const double inner = quad::tanh_sinh().integrate(integrand, 0.0, v_max, 1e-12);
    return 2.0 / kPi * inner;
}

double SpectralKernel::evaluate_phi_inner(double eta) const {
    // Inner: J(x) = int_eta^inf sin(x phi) / sqrt(2 cosh phi - 2 cosh eta) dphi, phi = eta + v^2.
    const double v_max = std::sqrt(60.0);
    auto inner = [&](double x) {
        auto f = [&](double v) { return singular_weight(eta, v) * std::sin(x * (eta + v * v)); };
        return quad::tanh_sinh().integrate(f, 0.0, v_max, 1e-12);
    };
    auto envelope = [&](double x) { return std::abs(x * factor_.value(0.25 + x * x)); };

    // Outer truncation where x |T| drops below 1e-12 of its running peak.
    double peak = 0.0;
    double x_cut = 0.0;
    for (double x = 0.05; x <= cfg_.x_max; x += 0.05) {
        const double e = envelope(x);
        peak = std::max(peak, e);
        if (e < 1e-12 * peak) {
            x_cut = x;
            break;
        }
    }
    if (x_cut == 0.0) {
        std::ostringstream msg;
        msg << "phi-inner order x-integral: envelope x|T| = " << envelope(cfg_.x_max) << " at x_max=" << cfg_.x_max
            << " still above 1e-12 of peak " << peak << " for " << describe(factor_)
            << "; use swap_order";
        detail::numerical_fail("SpectralKernel", msg.str());
    }

    auto outer = [&](int panels) {
        const auto gl = quad::gauss_legendre(16);
        quad::CompensatedSum sum;
        const double w = x_cut / panels;
        for (int p = 0; p < panels; ++p) {
            sum.add(quad::legendre_integral([&](double x) { return x * factor_.value(0.25 + x * x) * inner(x); },
                                            p * w, (p + 1) * w, *gl));
        }
        return sum.value();
    };
    int panels = std::max(1, cfg_.n_x / 16 / 50);
    double coarse = outer(panels);
    for (int d = 0; d < cfg_.max_doublings; ++d) {
        panels *= 2;
        const double fine = outer(panels);
        if (std::abs(fine - coarse) <= cfg_.stabilization_tol * std::abs(fine)) {
            return 2.0 / kPi * fine;
        }
        coarse = fine;
    }
    std::ostringstream msg;
    msg << "phi-inner order outer quadrature did not stabilize at eta=" << eta << " (last change "
        << std::abs(coarse) << ", panels=" << panels << ")";
    detail::numerical_fail("SpectralKernel", msg.str());
}

SpectralKernel diffusion_kernel(double beta, const TimeChange& f, double t, const SpectralConfig& cfg, Execution exec) {
    if (!(t > 0.0)) {
        detail::domain_fail("diffusion_kernel", "time must be positive");
    }
    return SpectralKernel(mittag_leffler_factor(beta, f(t)), cfg, exec);
}

SpectralKernel telegraph_kernel(double beta, double lambda, const TimeChange& f, double t, const SpectralConfig& cfg,
                                Execution exec) {
    if (!(t > 0.0)) {
        detail::domain_fail("telegraph_kernel", "time must be positive");
    }
    return SpectralKernel(two_term_factor(beta, lambda, f(t)), cfg, exec);
}

double fundamental_solution_spectral(const SolutionQuery& q, const SpectralConfig& cfg) {
    SpectralConfig local = cfg;
    local.eta_max = std::max(cfg.eta_max, q.eta);
    return diffusion_kernel(q.beta, q.f, q.t, local)(q.eta);
}

double telegraph_solution_spectral(double beta, double lambda, const TimeChange& f, double t, double eta,
                                   const SpectralConfig& cfg) {
    SpectralConfig local = cfg;
    local.eta_max = std::max(cfg.eta_max, eta);
    return telegraph_kernel(beta, lambda, f, t, local)(eta);
}

double classical_kernel(double t, double eta) {
    if (!(t > 0.0) || !(eta >= 0.0) || !std::isfinite(eta)) {
        detail::domain_fail("classical_kernel", "need t > 0 and eta >= 0");
    }
    // phi = eta + v^2; the Gaussian factor is negligible once phi^2 - eta^2 > 4 t * 745.
    const double v2_max = std::sqrt(eta * eta + 4.0 * t * 745.0) - eta;
    const double v_max = std::sqrt(v2_max);
    // Prefactor folded into the exponent so tiny t does not produce 0 * inf.
    const double log_pre = -0.25 * t - 1.5 * std::log(t);
    auto integrand = [&](double v) {
        const double phi = eta + v * v;
        return singular_weight(eta, v) * phi * std::exp(log_pre - phi * phi / (4.0 * t));
    };
    const double integral = quad::tanh_sinh().integrate(integrand, 0.0, v_max, 1e-12);
    return integral / (2.0 * std::sqrt(kPi));
}

double fundamental_solution_subordination(const SolutionQuery& q) {
    if (!(q.beta > 0.0 && q.beta <= 1.0)) {
        detail::domain_fail("fundamental_solution_subordination", "order must lie in (0, 1]");
    }
    if (!(q.t > 0.0) || !(q.eta > 0.0)) {
        detail::domain_fail("fundamental_solution_subordination", "need t > 0 and eta > 0");
    }
    const double clock = q.f(q.t);
    if (q.beta == 1.0) {
        return classical_kernel(clock, q.eta);
    }
    const double scale = std::pow(clock, q.beta);
    // M_beta decays like exp(-c r^{1/(1-beta)}); find where it is negligible.
    double r_max = 1.0;
    while (m_wright(q.beta, r_max) > 1e-18 && r_max < 1e4) {
        r_max *= 1.5;
    }
    auto integrand = [&](double r) {
        if (r <= 0.0) {
            return 0.0;
        }
        return classical_kernel(scale * r, q.eta) * m_wright(q.beta, r);
    };
    double err = 0.0;
    const double value = quad::tanh_sinh().integrate(integrand, 0.0, r_max, 1e-10, &err);
    if (!std::isfinite(value)) {
        detail::numerical_fail("fundamental_solution_subordination", "quadrature produced a non-finite value");
    }
    return value;
}

std::vector<double> radial_grid(double eta_max, double step, double eta_min) {
    if (!(eta_min > 0.0) || !(eta_max > 0.05) || !(step > 0.0)) {
        detail::domain_fail("radial_grid", "need 0 < eta_min, eta_max > 0.05, step > 0");
    }
    std::vector<double> grid;
    const double knee = std::min(0.05, step * 5.0);
    const int geometric = 40;
    const double ratio = std::pow(knee / eta_min, 1.0 / geometric);
    double e = eta_min;
    for (int i = 0; i < geometric; ++i) {
        grid.push_back(e);
        e *= ratio;
    }
    const int uniform = static_cast<int>(std::ceil((eta_max - knee) / step));
    for (int i = 0; i <= uniform; ++i) {
        grid.push_back(std::min(eta_max, knee + i * step));
    }
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

std::vector<double> parse_grid(const std::string& spec) {
    std::istringstream in(spec);
    double start = 0.0;
    double stop = 0.0;
    long count = 0;
    char c1 = 0;
    char c2 = 0;
    if (!(in >> start >> c1 >> stop >> c2 >> count) || c1 != ':' || c2 != ':' || !in.eof() || count < 2 ||
        !(stop > start)) {
        detail::domain_fail("parse_grid", "expected start:stop:count with stop > start and count >= 2, got '" +
                                              spec + "'");
    }
    std::vector<double> out(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
        out[static_cast<std::size_t>(i)] = start + (stop - start) * static_cast<double>(i) / (count - 1);
    }
    return out;
}

SolutionField evaluate_field(const std::function<double(double)>& u, std::vector<double> grid, Execution exec) {
    if (grid.empty()) {
        detail::domain_fail("evaluate_field", "empty grid");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
            detail::domain_fail("evaluate_field", "grid must be positive and strictly increasing");
        }
    }
    SolutionField field;
    field.eta = std::move(grid);
    field.u.assign(field.eta.size(), 0.0);
    const long n = static_cast<long>(field.eta.size());
    for_each_index(n, exec, [&](long i) {
        field.u[static_cast<std::size_t>(i)] = u(field.eta[static_cast<std::size_t>(i)]);
    });
    finalize_field(field);
    return field;
}

void finalize_field(SolutionField& field) {
    const std::size_t n = field.eta.size();
    field.cdf.assign(n, 0.0);
    // sinh(eta) u -> 0 at eta = 0 (u has at most a log singularity there).
    double acc = 0.5 * field.eta[0] * std::sinh(field.eta[0]) * field.u[0];
    field.cdf[0] = acc;
    for (std::size_t i = 1; i < n; ++i) {
        const double a = std::sinh(field.eta[i - 1]) * field.u[i - 1];
        const double b = std::sinh(field.eta[i]) * field.u[i];
        acc += 0.5 * (field.eta[i] - field.eta[i - 1]) * (a + b);
        field.cdf[i] = acc;
    }
    field.mass = acc;
}

double radial_cdf(const SolutionField& field, double eta) {
    if (field.cdf.size() != field.eta.size() || field.eta.empty()) {
        detail::domain_fail("radial_cdf", "field is not finalized");
    }
    if (!(eta >= 0.0) || eta > field.eta.back()) {
        detail::domain_fail("radial_cdf", "eta outside the field grid");
    }
    if (eta <= field.eta.front()) {
        return field.cdf.front() * (eta / field.eta.front()) * (eta / field.eta.front());
    }
    const auto it = std::upper_bound(field.eta.begin(), field.eta.end(), eta);
    const std::size_t hi = std::min<std::size_t>(static_cast<std::size_t>(it - field.eta.begin()), field.eta.size() - 1);
    const std::size_t lo = hi - 1;
    const double w = (eta - field.eta[lo]) / (field.eta[hi] - field.eta[lo]);
    return (1.0 - w) * field.cdf[lo] + w * field.cdf[hi];
}

double kernel_mass(const std::function<double(double)>& u, double eta_max, double eta_min) {
    if (!(eta_min > 0.0) || !(eta_max > 1.0)) {
        detail::domain_fail("kernel_mass", "need eta_min > 0 and eta_max > 1");
    }
    const auto gl = quad::gauss_legendre(20);
    auto weighted = [&](double e) { return std::sinh(e) * u(e); };
    quad::CompensatedSum sum;
    double lo = eta_min;
    for (double hi = std::min(1.0, 16.0 * eta_min); lo < 1.0; hi = std::min(1.0, hi * 4.0)) {
        sum.add(quad::legendre_integral(weighted, lo, hi, *gl));
        lo = hi;
    }
    const int panels = static_cast<int>(std::ceil(2.0 * (eta_max - 1.0)));
    const double w = (eta_max - 1.0) / panels;
    for (int p = 0; p < panels; ++p) {
        sum.add(quad::legendre_integral(weighted, 1.0 + p * w, 1.0 + (p + 1) * w, *gl));
    }
    return sum.value();
}

void write_csv(const SolutionField& field, std::ostream& out) {
    out << "eta,u,t,beta,f_kind\n";
    out << std::setprecision(17);
    for (std::size_t i = 0; i < field.eta.size(); ++i) {
        out << field.eta[i] << ',' << field.u[i] << ',' << field.t << ',' << field.beta << ',' << field.f_kind << '\n';
    }
}

}  // namespace hypfrac
