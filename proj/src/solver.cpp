#include "phasevar/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "phasevar/errors.hpp"

namespace phasevar {

PhaseEnergy::PhaseEnergy(const FringeSet& fringes, const VectorField& target_gradient, double lambda)
    : grid_(fringes.grid()), fringes_(&fringes), target_(&target_gradient), lambda_(lambda) {
    fringes.validate();
    require_same_grid(grid_, target_gradient.u.grid(), "energy target gradient (u)");
    require_same_grid(grid_, target_gradient.v.grid(), "energy target gradient (v)");
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidInput("lambda must be >= 0");
}

PhaseEnergy::PhaseEnergy(const VectorField& target_gradient, double lambda)
    : grid_(target_gradient.grid()), fringes_(nullptr), target_(&target_gradient), lambda_(lambda) {
    require_same_grid(grid_, target_gradient.v.grid(), "energy target gradient (v)");
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidInput("lambda must be >= 0");
}

double PhaseEnergy::evaluate(std::span<const double> phi, std::span<double> grad) const {
    const std::size_t m = grid_.m;
    const std::size_t n = grid_.n;
    const double inv_hx = 1.0 / grid_.hx();
    const double inv_hy = 1.0 / grid_.hy();
    const double stiff = 1.0 + lambda_;
    const double* pu = target_->u.values().data();
    const double* pv = target_->v.values().data();

    double data_sum = 0.0;
    if (fringes_ == nullptr) {
        std::fill(grad.begin(), grad.end(), 0.0);
    } else {
        const double* ic = fringes_->ic.values().data();
        const double* is = fringes_->is.values().data();
        const double* b = fringes_->b.values().data();
        for (std::size_t k = 0; k < m * n; ++k) {
            const double c = std::cos(phi[k]);
            const double s = std::sin(phi[k]);
            const double rc = b[k] * c - ic[k];
            const double rs = b[k] * s - is[k];
            data_sum += rc * rc + rs * rs;
            grad[k] = b[k] * (ic[k] * s - is[k] * c);
        }
    }

    double face_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t row = j * m;
        for (std::size_t i = 0; i + 1 < m; ++i) {
            const std::size_t k = row + i;
            const double d = (phi[k + 1] - phi[k]) * inv_hx;
            const double r = d - pu[k];
            face_sum += r * r + lambda_ * d * d;
            const double flux = (stiff * d - pu[k]) * inv_hx;
            grad[k] -= flux;
            grad[k + 1] += flux;
        }
    }
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const std::size_t row = j * m;
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t k = row + i;
            const double d = (phi[k + m] - phi[k]) * inv_hy;
            const double r = d - pv[k];
            face_sum += r * r + lambda_ * d * d;
            const double flux = (stiff * d - pv[k]) * inv_hy;
            grad[k] -= flux;
            grad[k + m] += flux;
        }
    }
    return 0.5 * grid_.cell_area() * (face_sum + data_sum);
}

double PhaseEnergy::lipschitz_bound() const {
    const double hx = grid_.hx(), hy = grid_.hy();
    const double laplace = 4.0 / (hx * hx) + 4.0 / (hy * hy);
    double curvature = 0.0;
    if (fringes_ == nullptr) return (1.0 + lambda_) * laplace;
    auto ic = fringes_->ic.values();
    auto is = fringes_->is.values();
    auto b = fringes_->b.values();
    for (std::size_t k = 0; k < b.size(); ++k) {
        curvature = std::max(curvature, std::abs(b[k]) * std::hypot(ic[k], is[k]));
    }
    return (1.0 + lambda_) * laplace + curvature;
}

double energy(const ScalarField& phi, const FringeSet& fringes, const VectorField& target_gradient,
              double lambda) {
    require_same_grid(phi.grid(), fringes.grid(), "energy phase");
    PhaseEnergy e(fringes, target_gradient, lambda);
    std::vector<double> scratch(phi.size());
    return e.evaluate(phi.values(), scratch);
}

ScalarField energy_gradient(const ScalarField& phi, const FringeSet& fringes,
                            const VectorField& target_gradient, double lambda) {
    require_same_grid(phi.grid(), fringes.grid(), "energy_gradient phase");
    PhaseEnergy e(fringes, target_gradient, lambda);
    ScalarField g(phi.grid());
    e.evaluate(phi.values(), g.values());
    return g;
}

double estimate_step(const FringeSet& fringes, double lambda, const GridSpec& grid) {
    require_same_grid(fringes.grid(), grid, "estimate_step");
    const VectorField zero(grid);
    return kStepSafety / PhaseEnergy(fringes, zero, lambda).lipschitz_bound();
}

const char* to_string(StopReason reason) noexcept {
    switch (reason) {
        case StopReason::Tolerance: return "tolerance";
        case StopReason::KMax: return "k_max";
        case StopReason::Stagnation: return "stagnation";
    }
    return "unknown";
}

const char* to_string(Method method) noexcept {
    return method == Method::Nesterov ? "nesterov" : "gradient_descent";
}

ScalarField Initializer::make(const GridSpec& grid) const {
    switch (kind) {
        case Kind::Zeros: return ScalarField(grid);
        case Kind::Field:
            if (!field) throw InvalidInput("initializer: field missing");
            require_same_grid(field->grid(), grid, "initial phase");
            return *field;
        case Kind::Random: break;
    }
    ScalarField out(grid);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-std::numbers::pi, std::numbers::pi);
    for (double& x : out.values()) x = dist(rng);
    return out;
}

void SolverConfig::validate() const {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidInput("lambda must be >= 0");
    if (step && !(*step > 0.0 && std::isfinite(*step))) throw InvalidInput("step must be > 0");
    if (!(delta1 > 0.0 && delta2 > 0.0 && delta3 > 0.0)) throw InvalidInput("tolerances must be > 0");
    if (k_max < 1) throw InvalidInput("k_max must be >= 1");
    if (monitor_stride < 1) throw InvalidInput("monitor_stride must be >= 1");
}

std::string SolverReport::trace_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "iteration,energy,max_gradient\n";
    for (const auto& p : energy_trace) os << p.iteration << ',' << p.energy << ',' << p.max_gradient << '\n';
    return os.str();
}

double momentum_sequence(std::size_t k) {
    double t = 1.0;
    for (std::size_t i = 0; i < k; ++i) t = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    return t;
}

namespace {

double max_abs(std::span<const double> xs) {
    double best = 0.0;
    for (double x : xs) best = std::max(best, std::abs(x));
    return best;
}

struct Attempt {
    bool diverged = false;
    SolverReport report;
};

Attempt descend(const Objective& objective, std::vector<double>& x, double tau, const SolverConfig& cfg) {
    const std::size_t size = x.size();
    std::vector<double> grad(size), grad_next(size), beta(x), beta_next(size), x_next(size);

    Attempt out;
    SolverReport& rep = out.report;
    rep.method = cfg.method;
    rep.step_size_used = tau;

    double e = objective.evaluate(x, grad);
    const double e0 = e;
    rep.initial_energy = e0;
    rep.energy_trace.push_back({0, e, max_abs(grad)});
    const double blowup = 10.0 * std::abs(e0);

    double t = 1.0;
    for (std::size_t k = 0; k < cfg.k_max; ++k) {
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        const double w_prev = (t - 1.0) / t_next;
        const double w_grad = t / t_next;
        double dx = 0.0, x_scale = 0.0;
        for (std::size_t s = 0; s < size; ++s) {
            const double bn = x[s] - tau * grad[s];
            beta_next[s] = bn;
            const double xn = cfg.method == Method::Nesterov
                                  ? bn + w_prev * (bn - beta[s]) + w_grad * (bn - x[s])
                                  : bn;
            x_next[s] = xn;
            dx = std::max(dx, std::abs(xn - x[s]));
            x_scale = std::max(x_scale, std::abs(xn));
        }
        const double e_next = objective.evaluate(x_next, grad_next);
        const std::size_t iter = k + 1;
        if (!std::isfinite(e_next) || (e_next > blowup && e_next > e0)) {
            out.diverged = true;
            rep.iterations = iter;
            rep.final_energy = e_next;
            return out;
        }
        const double gmax = max_abs(grad_next);
        if (iter % cfg.monitor_stride == 0) rep.energy_trace.push_back({iter, e_next, gmax});

        const bool converged = std::abs(e_next - e) <= cfg.delta1 * (1.0 + std::abs(e_next)) &&
                               dx <= cfg.delta2 * (1.0 + x_scale) &&
                               gmax <= cfg.delta3 * (1.0 + std::abs(e_next));
        const bool stalled = !converged && dx == 0.0;

        if (cfg.restart && cfg.method == Method::Nesterov && e_next > e) {
            t = 1.0;
            std::copy(beta_next.begin(), beta_next.end(), beta.begin());
        } else {
            t = t_next;
            beta.swap(beta_next);
        }
        x.swap(x_next);
        grad.swap(grad_next);
        e = e_next;

        if (converged || stalled || iter == cfg.k_max) {
            rep.iterations = iter;
            rep.stop_reason = converged ? StopReason::Tolerance
                                        : (stalled ? StopReason::Stagnation : StopReason::KMax);
            rep.final_energy = e;
            if (rep.energy_trace.back().iteration != iter) rep.energy_trace.push_back({iter, e, gmax});
            return out;
        }
    }
    return out;  // unreachable: k_max >= 1
}

}  // namespace

SolverResult run_descent(const Objective& objective, const ScalarField& x0, const SolverConfig& config) {
    config.validate();
    if (!x0.all_finite()) throw InvalidInput("initial phase has non-finite samples");
    const auto start = std::chrono::steady_clock::now();

    double tau = config.step ? *config.step : kStepSafety / objective.lipschitz_bound();
    for (std::size_t attempt = 0;; ++attempt) {
        std::vector<double> x(x0.values().begin(), x0.values().end());
        Attempt run = descend(objective, x, tau, config);
        if (!run.diverged) {
            run.report.backoffs = attempt;
            run.report.wall_time =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            return {ScalarField(x0.grid(), std::move(x)), std::move(run.report)};
        }
        if (attempt >= config.max_backoffs) {
            std::ostringstream msg;
            msg << "energy diverged (E=" << run.report.final_energy << " vs initial "
                << run.report.initial_energy << " after " << run.report.iterations
                << " iterations, step " << tau << "); try a smaller step size";
            throw SolverDiverged(msg.str());
        }
        tau *= 0.5;
    }
}

SolverResult minimize(const FringeSet& fringes, const VectorField& target_gradient,
                      const SolverConfig& config) {
    config.validate();
    PhaseEnergy objective(fringes, target_gradient, config.lambda);
    return run_descent(objective, config.init.make(fringes.grid()), config);
}

}  // namespace phasevar
