#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace fledbat {

/// Parameters of the deterministic rate/queue model for N homogeneous flows
/// running the constant-increase, delay-driven-decrease window rule on one
/// bottleneck. Rates in packets/second, times in seconds.
struct FluidParams {
    int n_flows = 1;
    double capacity = 0.0; // C, packets/second
    double rtt = 0.0;      // R, propagation round-trip time
    double target = 0.0;   // tau, queuing-delay target
    double alpha = 1.0;    // additive-increase gain, packets per RTT
    double zeta = 0.1;     // multiplicative-decrease factor
    std::vector<double> start_times; // optional per-flow activation times; default all 0

    double start_time(int i) const {
        return start_times.empty() ? 0.0 : start_times.at(static_cast<std::size_t>(i));
    }
    void validate() const; // throws std::invalid_argument on nonpositive parameters
};

/// Instantaneous model state: per-flow rates and queue occupancy.
struct FluidState {
    Eigen::VectorXd rates;  // X_i, packets/second
    double queue = 0.0;     // Q, packets
    double time = 0.0;

    static FluidState zero(int n_flows, double t0 = 0.0) {
        return FluidState{Eigen::VectorXd::Zero(n_flows), 0.0, t0};
    }
};

/// Stationary point and convergence descriptors:
///   X_i* = C/N, Q* = C tau + N alpha tau / (zeta R),
///   zeta* = alpha^2 tau / (4 N C R^3),
///   Theta = alpha/(C R^2) * (1 + [zeta <= zeta*] sqrt(1 - zeta/zeta*)) / 2.
struct Equilibrium {
    Eigen::VectorXd rates;
    double queue = 0.0;
    double zeta_critical = 0.0;
    double theta = 0.0; // trajectories approach the fixed point like exp(-Theta t)
};

/// Right-hand side of the rate/queue ODE system. Layout: derivatives of
/// (X_1..X_N, Q). Flows not yet started contribute zero rate and zero
/// derivative. The queue derivative is clamped nonnegative at Q = 0.
/// Throws std::invalid_argument on non-finite state.
Eigen::VectorXd fluid_rhs(const FluidState& state, const FluidParams& params);

struct IntegrateOptions {
    double dt = 1e-3;              // internal step and output sampling period
    double boundary_resolution = 1e-6; // step-halving floor at indicator crossings
    double sample_every = -1.0;    // output grid; defaults to dt
};

/// Fixed-step RK4 trajectory with step-halving refinement where an indicator
/// surface is crossed (Q through C*tau or 0, a flow turning on). Output is
/// sampled on a uniform grid. Throws std::runtime_error if the state leaves
/// the finite range -- valid parameters never do.
std::vector<FluidState> integrate(const FluidParams& params, FluidState x0, double t_end,
                                  const IntegrateOptions& opts = {});

Equilibrium equilibrium(const FluidParams& params);

struct LyapunovValue {
    double value;      // V(X, Q), zero exactly at the fixed point
    double derivative; // dV/dt along trajectories, nonpositive outside region A
};

/// Lyapunov certificate in aggregate coordinates X = sum_i X_i, valid in the
/// region Q >= C*tau:
///   V = (X - X*) - X* log(X/X*) + zeta (Q - Q*)^2 / (2 R C tau)
///   dV/dt = -N alpha (X - X*)^2 / (X C R^2)
/// Throws std::invalid_argument when the aggregate rate is not positive.
LyapunovValue lyapunov(const FluidState& state, const FluidParams& params);

/// Eigenvalues of the system linearized at the fixed point, from the
/// closed-form factorization of the characteristic polynomial
///   (lambda + a)^(N-1) (lambda^2 + a lambda + b),
/// a = alpha/(C R^2), b = N zeta/(C tau R). N-1 repeated real roots plus the
/// quadratic pair; no generic eigensolve involved.
std::vector<std::complex<double>> jacobian_eigenvalues(const FluidParams& params);

/// Exponential decay rate of ||X(t) - X*|| fitted on the trajectory tail
/// (t >= tail_start). Uses the envelope through local maxima when the
/// approach oscillates, a two-point log slope otherwise.
double fitted_decay_rate(const std::vector<FluidState>& series, const Equilibrium& eq,
                         double tail_start);

} // namespace fledbat
