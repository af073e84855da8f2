#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "phasevar/field.hpp"
#include "phasevar/fringe_set.hpp"

namespace phasevar {

/**
 * Smooth objective over a flat sample vector. evaluate() returns the energy
 * and writes the per-sample (L2) gradient into `grad`, i.e. the derivative of
 * the energy divided by the quadrature weight of one node.
 */
class Objective {
public:
    virtual ~Objective() = default;
    virtual double evaluate(std::span<const double> x, std::span<double> grad) const = 0;
    /// Upper bound on the Lipschitz constant of the L2 gradient.
    virtual double lipschitz_bound() const = 0;
};

/**
 * Discrete phase-recovery energy
 *
 *   E = 1/2 sum_faces |grad phi - Phi|^2 + lambda/2 sum_faces |grad phi|^2
 *     + 1/2 sum_nodes (b cos phi - I^c)^2 + (b sin phi - I^s)^2
 *
 * times h_x h_y. Face sums skip the outer boundary faces, where the zero-flux
 * conditions make both integrands vanish. Phi is read in grad_half storage:
 * slot (i,j) of u is the face between nodes i and i+1.
 */
class PhaseEnergy final : public Objective {
public:
    PhaseEnergy(const FringeSet& fringes, const VectorField& target_gradient, double lambda);
    /// Gradient terms only (no fringe data): least-squares integration of the target.
    PhaseEnergy(const VectorField& target_gradient, double lambda);

    double evaluate(std::span<const double> phi, std::span<double> grad) const override;
    double lipschitz_bound() const override;

    const GridSpec& grid() const noexcept { return grid_; }
    double lambda() const noexcept { return lambda_; }

private:
    GridSpec grid_;
    const FringeSet* fringes_;  ///< null: no data term
    const VectorField* target_;
    double lambda_;
};

double energy(const ScalarField& phi, const FringeSet& fringes, const VectorField& target_gradient,
              double lambda);

/// -(1+lambda) lap(phi) + div(Phi) + I^c b sin(phi) - I^s b cos(phi).
ScalarField energy_gradient(const ScalarField& phi, const FringeSet& fringes,
                            const VectorField& target_gradient, double lambda);

/// Safety factor applied to 1/L in estimate_step.
inline constexpr double kStepSafety = 0.9;

/**
 * tau = 0.9 / L with L = (1+lambda)(4/h_x^2 + 4/h_y^2) + max(b |I|), where
 * |I| = sqrt(I^c^2 + I^s^2). For a consistent FringeSet max(b |I|) = max(b^2).
 */
double estimate_step(const FringeSet& fringes, double lambda, const GridSpec& grid);

enum class StopReason { Tolerance, KMax, Stagnation };
enum class Method { Nesterov, GradientDescent };

const char* to_string(StopReason reason) noexcept;
const char* to_string(Method method) noexcept;

struct Initializer {
    enum class Kind { Random, Zeros, Field };
    Kind kind = Kind::Random;
    std::uint64_t seed = 12345;  ///< for Kind::Random: uniform samples in [-pi, pi]
    std::optional<ScalarField> field;

    static Initializer random(std::uint64_t seed) { return {Kind::Random, seed, std::nullopt}; }
    static Initializer zeros() { return {Kind::Zeros, 0, std::nullopt}; }
    static Initializer from(ScalarField f) { return {Kind::Field, 0, std::move(f)}; }

    ScalarField make(const GridSpec& grid) const;
};

struct SolverConfig {
    double lambda = 1.0;
    std::optional<double> step;  ///< nullopt: estimate_step / lipschitz_bound
    double delta1 = 1e-7;        ///< energy change
    double delta2 = 1e-7;        ///< iterate change
    double delta3 = 1e-7;        ///< gradient magnitude
    std::size_t k_max = 15000;
    Initializer init;
    std::size_t monitor_stride = 50;
    Method method = Method::Nesterov;
    bool restart = false;          ///< reset momentum when the energy rises
    std::size_t max_backoffs = 4;  ///< step halvings allowed on divergence

    /// Throws InvalidInput on out-of-range values.
    void validate() const;
};

struct TracePoint {
    std::size_t iteration;
    double energy;
    double max_gradient;
};

struct SolverReport {
    std::size_t iterations = 0;
    StopReason stop_reason = StopReason::KMax;
    std::vector<TracePoint> energy_trace;
    double initial_energy = 0.0;
    double final_energy = 0.0;
    double wall_time = 0.0;  ///< seconds
    double step_size_used = 0.0;
    std::size_t backoffs = 0;
    Method method = Method::Nesterov;

    /// "iteration,energy,max_gradient" rows with a header line.
    std::string trace_csv() const;
};

struct SolverResult {
    ScalarField phase;
    SolverReport report;
};

/**
 * Accelerated first-order minimization of `objective` from `x0`:
 *
 *   beta_{k+1} = x_k - tau g(x_k)
 *   t_{k+1}    = (1 + sqrt(1 + 4 t_k^2)) / 2
 *   x_{k+1}    = beta_{k+1} + (t_k - 1)/t_{k+1} (beta_{k+1} - beta_k)
 *                           + t_k/t_{k+1} (beta_{k+1} - x_k)
 *
 * with beta_0 = x_0, t_0 = 1. Method::GradientDescent uses x_{k+1} = beta_{k+1}.
 * Stops when the energy change, iterate change and gradient magnitude are all
 * below their relative tolerances, or at k_max. If the energy exceeds ten
 * times its initial value the step is halved and the run restarted, up to
 * max_backoffs times, after which SolverDiverged is thrown.
 */
SolverResult run_descent(const Objective& objective, const ScalarField& x0, const SolverConfig& config);

/// Recover the phase from a fringe set and its estimated gradient field.
SolverResult minimize(const FringeSet& fringes, const VectorField& target_gradient,
                      const SolverConfig& config);

/// Nesterov t-sequence value after `k` updates from t_0 = 1.
double momentum_sequence(std::size_t k);

}  // namespace phasevar
