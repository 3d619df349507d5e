#include "fledbat/fluid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fledbat {

namespace {

bool finite(const FluidState& s) {
    return s.rates.allFinite() && std::isfinite(s.queue) && std::isfinite(s.time);
}

// Derivative with the started-flow set fixed by the caller (RK4 stage
// evaluations must not re-decide activation mid-step).
Eigen::VectorXd rhs_with_active(const FluidState& s, const FluidParams& p,
                                const std::vector<bool>& active) {
    const int n = p.n_flows;
    Eigen::VectorXd deriv(n + 1);
    const double c_tau = p.capacity * p.target;
    const bool decrease_on = s.queue >= c_tau;
    double rate_sum = 0.0;
    for (int i = 0; i < n; ++i) {
        if (!active[static_cast<std::size_t>(i)]) {
            deriv[i] = 0.0;
            continue;
        }
        const double x = s.rates[i];
        rate_sum += x;
        double d = p.alpha / (p.rtt * p.rtt);
        if (decrease_on && x >= 0.0)
            d -= (p.zeta / (p.rtt * p.target)) * (s.queue / p.capacity - p.target) * x;
        deriv[i] = d;
    }
    double q_dot = rate_sum - p.capacity;
    if (s.queue <= 0.0 && q_dot < 0.0)
        q_dot = 0.0; // empty queue cannot drain further
    deriv[n] = q_dot;
    return deriv;
}

std::vector<bool> active_set(const FluidParams& p, double t) {
    std::vector<bool> active(static_cast<std::size_t>(p.n_flows));
    for (int i = 0; i < p.n_flows; ++i)
        active[static_cast<std::size_t>(i)] = t >= p.start_time(i);
    return active;
}

FluidState rk4_step(const FluidState& s, const FluidParams& p, const std::vector<bool>& active,
                    double h) {
    const int n = p.n_flows;
    auto eval = [&](const Eigen::VectorXd& rates, double queue) {
        FluidState tmp{rates, queue, s.time};
        return rhs_with_active(tmp, p, active);
    };
    const Eigen::VectorXd k1 = eval(s.rates, s.queue);
    const Eigen::VectorXd k2 =
        eval(s.rates + 0.5 * h * k1.head(n), s.queue + 0.5 * h * k1[n]);
    const Eigen::VectorXd k3 =
        eval(s.rates + 0.5 * h * k2.head(n), s.queue + 0.5 * h * k2[n]);
    const Eigen::VectorXd k4 = eval(s.rates + h * k3.head(n), s.queue + h * k3[n]);
    FluidState out;
    const Eigen::VectorXd incr = (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    out.rates = s.rates + incr.head(n);
    out.queue = s.queue + incr[n];
    out.time = s.time + h;
    if (out.queue < 0.0)
        out.queue = 0.0; // floating-point undershoot at the empty boundary
    return out;
}

// Signature of the indicator terms; a step that flips any bit straddles a
// switching surface and gets refined.
std::uint64_t indicator_signature(const FluidState& s, const FluidParams& p) {
    std::uint64_t sig = s.queue >= p.capacity * p.target ? 1u : 0u;
    sig |= (s.queue > 0.0 ? 2u : 0u);
    for (int i = 0; i < p.n_flows && i < 61; ++i)
        sig |= (s.rates[i] >= 0.0 ? (std::uint64_t{4} << i) : 0u);
    return sig;
}

// Advance to exactly `t_to`, refining across indicator crossings.
void advance(FluidState& s, const FluidParams& p, double t_to, double dt,
             double boundary_res) {
    const std::vector<bool> active = active_set(p, s.time);
    while (s.time < t_to - 1e-15) {
        double h = std::min(dt, t_to - s.time);
        FluidState trial = rk4_step(s, p, active, h);
        while (h > boundary_res &&
               indicator_signature(trial, p) != indicator_signature(s, p)) {
            h *= 0.5;
            trial = rk4_step(s, p, active, h);
        }
        if (!finite(trial))
            throw std::runtime_error("integrate: state diverged (non-finite)");
        s = trial;
    }
    s.time = t_to;
}

} // namespace

void FluidParams::validate() const {
    if (n_flows < 1)
        throw std::invalid_argument("FluidParams: n_flows must be >= 1");
    if (capacity <= 0.0 || rtt <= 0.0 || target <= 0.0 || alpha <= 0.0 || zeta <= 0.0)
        throw std::invalid_argument("FluidParams: capacity, rtt, target, alpha, zeta must be positive");
    if (!start_times.empty()) {
        if (static_cast<int>(start_times.size()) != n_flows)
            throw std::invalid_argument("FluidParams: start_times size mismatch");
        for (double t : start_times)
            if (t < 0.0)
                throw std::invalid_argument("FluidParams: negative start time");
    }
}

Eigen::VectorXd fluid_rhs(const FluidState& state, const FluidParams& params) {
    params.validate();
    if (!finite(state))
        throw std::invalid_argument("fluid_rhs: non-finite state");
    if (state.rates.size() != params.n_flows)
        throw std::invalid_argument("fluid_rhs: state dimension mismatch");
    return rhs_with_active(state, params, active_set(params, state.time));
}

std::vector<FluidState> integrate(const FluidParams& params, FluidState x0, double t_end,
                                  const IntegrateOptions& opts) {
    params.validate();
    if (!finite(x0))
        throw std::invalid_argument("integrate: non-finite initial state");
    if (opts.dt <= 0.0)
        throw std::invalid_argument("integrate: dt must be positive");
    if (t_end <= x0.time)
        throw std::invalid_argument("integrate: t_end must exceed the initial time");

    const double sample_every = opts.sample_every > 0.0 ? opts.sample_every : opts.dt;

    // Breakpoints the integrator must land on exactly: flow activations.
    std::vector<double> starts;
    for (int i = 0; i < params.n_flows; ++i) {
        const double st = params.start_time(i);
        if (st > x0.time && st < t_end)
            starts.push_back(st);
    }
    std::sort(starts.begin(), starts.end());

    std::vector<FluidState> out;
    out.reserve(static_cast<std::size_t>((t_end - x0.time) / sample_every) + 2);
    out.push_back(x0);

    FluidState s = std::move(x0);
    const double t0 = s.time;
    long step = 1;
    auto next_breakpoint = [&](double t) {
        for (double b : starts)
            if (b > t + 1e-15)
                return b;
        return t_end;
    };
    while (s.time < t_end - 1e-12) {
        double t_next = t0 + static_cast<double>(step) * sample_every;
        if (t_next > t_end)
            t_next = t_end;
        // Honor activation breakpoints inside the sampling interval.
        double b;
        while ((b = next_breakpoint(s.time)) < t_next - 1e-15)
            advance(s, params, b, opts.dt, opts.boundary_resolution);
        advance(s, params, t_next, opts.dt, opts.boundary_resolution);
        out.push_back(s);
        ++step;
    }
    return out;
}

Equilibrium equilibrium(const FluidParams& params) {
    params.validate();
    const double n = static_cast<double>(params.n_flows);
    Equilibrium eq;
    eq.rates = Eigen::VectorXd::Constant(params.n_flows, params.capacity / n);
    eq.queue = params.capacity * params.target +
               n * params.alpha * params.target / (params.zeta * params.rtt);
    eq.zeta_critical = params.alpha * params.alpha * params.target /
                       (4.0 * n * params.capacity * params.rtt * params.rtt * params.rtt);
    const double a = params.alpha / (params.capacity * params.rtt * params.rtt);
    const double under = params.zeta <= eq.zeta_critical
                             ? std::sqrt(1.0 - params.zeta / eq.zeta_critical)
                             : 0.0;
    eq.theta = a * (1.0 + under) / 2.0;
    return eq;
}

LyapunovValue lyapunov(const FluidState& state, const FluidParams& params) {
    params.validate();
    const double x = state.rates.sum();
    if (!(x > 0.0))
        throw std::invalid_argument("lyapunov: aggregate rate must be positive");
    const double x_star = params.capacity;
    const Equilibrium eq = equilibrium(params);
    const double q_term = params.zeta * (state.queue - eq.queue) * (state.queue - eq.queue) /
                          (2.0 * params.rtt * params.capacity * params.target);
    LyapunovValue v;
    // The log term carries an X* factor so the function is nonnegative with
    // its minimum (zero) exactly at the fixed point.
    v.value = (x - x_star) - x_star * std::log(x / x_star) + q_term;
    const double n = static_cast<double>(params.n_flows);
    v.derivative = -n * params.alpha * (x - x_star) * (x - x_star) /
                   (x * params.capacity * params.rtt * params.rtt);
    return v;
}

std::vector<std::complex<double>> jacobian_eigenvalues(const FluidParams& params) {
    params.validate();
    const double n = static_cast<double>(params.n_flows);
    const double a = params.alpha / (params.capacity * params.rtt * params.rtt);
    const double b = n * params.zeta / (params.capacity * params.target * params.rtt);
    std::vector<std::complex<double>> roots;
    roots.reserve(static_cast<std::size_t>(params.n_flows) + 1);
    for (int i = 0; i < params.n_flows - 1; ++i)
        roots.emplace_back(-a, 0.0); // repeated real root of the (lambda + a) factor
    const double disc = a * a - 4.0 * b;
    if (disc >= 0.0) {
        const double root = std::sqrt(disc);
        roots.emplace_back((-a + root) / 2.0, 0.0);
        roots.emplace_back((-a - root) / 2.0, 0.0);
    } else {
        const double imag = std::sqrt(-disc) / 2.0;
        roots.emplace_back(-a / 2.0, imag);
        roots.emplace_back(-a / 2.0, -imag);
    }
    return roots;
}

double fitted_decay_rate(const std::vector<FluidState>& series, const Equilibrium& eq,
                         double tail_start) {
    std::vector<double> t, err;
    for (const FluidState& s : series) {
        if (s.time < tail_start)
            continue;
        t.push_back(s.time);
        err.push_back((s.rates - eq.rates).norm());
    }
    if (t.size() < 3)
        throw std::invalid_argument("fitted_decay_rate: tail too short");

    // Ignore the stretch where the error has decayed into numerical noise.
    const double floor = 1e-9 * std::max(1.0, eq.rates.norm());

    // Envelope through interior local maxima; an oscillatory approach crosses
    // zero repeatedly and a direct log fit would be dominated by the dips.
    std::vector<double> pt, pe;
    for (std::size_t i = 1; i + 1 < err.size(); ++i) {
        if (err[i] >= err[i - 1] && err[i] > err[i + 1] && err[i] > floor) {
            pt.push_back(t[i]);
            pe.push_back(err[i]);
        }
    }
    if (pt.size() >= 3) {
        // Least-squares slope of log(peak) against time.
        double st = 0, se = 0, stt = 0, ste = 0;
        const double n = static_cast<double>(pt.size());
        for (std::size_t i = 0; i < pt.size(); ++i) {
            const double le = std::log(pe[i]);
            st += pt[i];
            se += le;
            stt += pt[i] * pt[i];
            ste += pt[i] * le;
        }
        const double slope = (n * ste - st * se) / (n * stt - st * st);
        return -slope;
    }

    // Monotone (overdamped) approach: two-point log slope across the span
    // still above the noise floor.
    std::size_t last = err.size() - 1;
    while (last > 0 && err[last] <= floor)
        --last;
    if (last == 0 || err.front() <= floor || err[last] >= err.front())
        throw std::invalid_argument("fitted_decay_rate: tail is not decaying");
    return std::log(err.front() / err[last]) / (t[last] - t.front());
}

} // namespace fledbat
