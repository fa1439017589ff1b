#include "gbq/dynamics.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "gbq/kernels.hpp"
#include "gbq/spectral.hpp"

namespace gbq::dyn {

Spectrum nonlinearity(const Spectrum& u_hat, int k, int max_padded) {
    return spectral::dealias_power(u_hat, 2 * k + 1, max_padded);
}

Stepper::Stepper(const FourierGrid& g, int k, const StepperConfig& cfg)
    : grid_(g), k_(k), cfg_(cfg) {
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("Stepper: dt must be > 0");
    tables_for(cfg.dt);
}

const Stepper::Tables& Stepper::tables_for(double dt) const {
    const std::uint64_t key = std::bit_cast<std::uint64_t>(dt);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Tables T{prop::PropagatorCache::make(grid_, dt),
             prop::PropagatorCache::make(grid_, dt / 2.0)};
    return cache_.emplace(key, std::move(T)).first->second;
}

// ut-slot forcing of the first-order system: -xi^2 (u^{2k+1})^ for the
// defocusing sign as written in the equation; flipped when focusing.
void Stepper::forcing(const Spectrum& u, bool focusing,
                      std::vector<cplx>& out) const {
    out.assign(grid_.M, cplx{});
    if (!cfg_.nonlinearity) return;
    const Spectrum nl = nonlinearity(u, k_, cfg_.max_padded);
    const double sign = focusing ? 1.0 : -1.0;
    for (int j = 0; j < grid_.M; ++j) {
        const double xi = grid_.xi[j];
        out[j] = sign * xi * xi * nl.c[j];
    }
}

void Stepper::step_by(SimState& st, double dt) const {
    if (!(dt > 0.0)) return;
    const Tables& T = tables_for(dt);
    if (cfg_.scheme == Scheme::ExpRk4)
        rk4_step(st, dt, T);
    else
        strang_step(st, dt, T);
    st.t += dt;
}

// Interaction-picture (Lawson) RK4: the linear flow is advanced exactly via
// trig tables, classical RK4 handles the transformed forcing. With the
// forcing feeding only the ut slot the stages reduce to
//   g1 = G(u_n)
//   g2 = G(u_half + (dt/2) sinc_half g1)
//   g3 = G(u_half)
//   g4 = G(u_full + dt sinc_half g3)
//   u'  = u_full  + dt/6 (sinc_full g1 + 2 sinc_half (g2+g3))
//   ut' = ut_full + dt/6 ( cos_full g1 + 2  cos_half (g2+g3) + g4).
void Stepper::rk4_step(SimState& st, double dt, const Tables& T) const {
    const int M = grid_.M;

    Spectrum u_half(grid_), ut_half(grid_), u_full(grid_), ut_full(grid_);
    prop::advance(T.half, st.u_hat.c, st.ut_hat.c, u_half.c, ut_half.c);
    prop::advance(T.full, st.u_hat.c, st.ut_hat.c, u_full.c, ut_full.c);

    std::vector<cplx> g1, g2, g3, g4;
    Spectrum stage(grid_);

    forcing(st.u_hat, st.focusing, g1);
    for (int j = 0; j < M; ++j)
        stage.c[j] = u_half.c[j] + (dt / 2.0) * T.half.sinc_t[j] * g1[j];
    forcing(stage, st.focusing, g2);
    forcing(u_half, st.focusing, g3);
    for (int j = 0; j < M; ++j)
        stage.c[j] = u_full.c[j] + dt * T.half.sinc_t[j] * g3[j];
    forcing(stage, st.focusing, g4);

    for (int j = 0; j < M; ++j) {
        const cplx sum23 = g2[j] + g3[j];
        st.u_hat.c[j] =
            u_full.c[j] + (dt / 6.0) * (T.full.sinc_t[j] * g1[j] +
                                        2.0 * T.half.sinc_t[j] * sum23);
        st.ut_hat.c[j] =
            ut_full.c[j] + (dt / 6.0) * (T.full.cos_t[j] * g1[j] +
                                         2.0 * T.half.cos_t[j] * sum23 + g4[j]);
    }
}

// Strang order-2 cross-check: half linear flow, exact nonlinear kick
// (u is frozen during the kick), half linear flow.
void Stepper::strang_step(SimState& st, double dt, const Tables& T) const {
    const int M = grid_.M;
    Spectrum u1(grid_), ut1(grid_);
    prop::advance(T.half, st.u_hat.c, st.ut_hat.c, u1.c, ut1.c);
    std::vector<cplx> g;
    forcing(u1, st.focusing, g);
    for (int j = 0; j < M; ++j) ut1.c[j] += dt * g[j];
    prop::advance(T.half, u1.c, ut1.c, st.u_hat.c, st.ut_hat.c);
}

namespace {

void check_state(const SimState& st, double mean_ref) {
    const double e2 = kern::abs2_sum(st.u_hat.c) + kern::abs2_sum(st.ut_hat.c);
    if (!std::isfinite(e2)) throw BlowupError(st.t);
    const int z = st.u_hat.grid.zero_index();
    const double L = st.u_hat.grid.L;
    const double mean_now = st.u_hat.c[z].real() / L;
    if (std::abs(mean_now - mean_ref) > 1e-10 * std::max(1.0, std::abs(mean_ref)))
        throw std::runtime_error("mean of u drifted beyond tolerance");
    if (std::abs(st.ut_hat.c[z]) > 1e-12 * std::max(1.0, std::sqrt(e2)))
        throw std::runtime_error("mean of u_t is nonzero");
}

} // namespace

Trajectory evolve_state(SimState st, double T, const StepperConfig& cfg,
                        std::vector<Observer> observers,
                        const EvolveOptions& opt) {
    if (!(T >= 0.0)) throw std::invalid_argument("evolve: T must be >= 0");
    Stepper stepper(st.u_hat.grid, st.k, cfg);

    Trajectory traj;
    const double mean0 =
        st.u_hat.c[st.u_hat.grid.zero_index()].real() / st.u_hat.grid.L;

    double last_emit_t = -1.0;
    auto emit = [&](const SimState& s) {
        for (const Observer& ob : observers)
            traj.series[ob.name].emplace_back(s.t, ob.eval(s));
        last_emit_t = s.t;
    };

    check_state(st, mean0);
    emit(st);
    traj.samples.push_back(st);

    const double dt = cfg.dt;
    const long nfull = static_cast<long>(std::floor(T / dt + 1e-9));
    for (long i = 1; i <= nfull; ++i) {
        stepper.step(st);
        st.t = i * dt; // keep sample times on the lattice exactly
        const bool at_observer =
            opt.observer_stride > 0 && i % opt.observer_stride == 0;
        const bool at_store = opt.store_stride > 0 && i % opt.store_stride == 0;
        if (at_observer || at_store || i == nfull) check_state(st, mean0);
        if (at_observer) emit(st);
        if (at_store) traj.samples.push_back(st);
    }
    const double rem = T - nfull * dt;
    if (rem > 1e-12 * std::max(dt, 1.0)) {
        stepper.step_by(st, rem);
        st.t = T;
        check_state(st, mean0);
    }
    if (!observers.empty() && last_emit_t != st.t) emit(st);
    if (traj.samples.back().t != st.t) traj.samples.push_back(st);
    traj.final_state = std::move(st);
    return traj;
}

Trajectory evolve(const Field& phi, const Field& psi, double T,
                  const StepperConfig& cfg, std::vector<Observer> observers,
                  const EvolveOptions& opt) {
    require_same_grid(phi.grid, psi.grid, "evolve");
    const Spectrum phi_hat = spectral::forward(phi);
    const Spectrum psi_hat = spectral::forward(psi);
    const int z = phi.grid.zero_index();
    const double psi_mean = std::abs(psi_hat.c[z]) / phi.grid.L;
    if (psi_mean > 1e-10 * std::max(1.0, spectral::lp_norm(psi, INFINITY)))
        throw std::invalid_argument(
            "evolve: psi has nonzero mean (" + std::to_string(psi_mean) +
            "); it enters only through psi_x, so its mean must vanish");

    SimState st;
    st.t = 0.0;
    st.u_hat = phi_hat;
    st.ut_hat = Spectrum(phi.grid);
    for (int j = 0; j < phi.grid.M; ++j)
        st.ut_hat.c[j] = cplx(0.0, phi.grid.xi[j]) * psi_hat.c[j];
    st.k = cfg.k;
    st.focusing = cfg.focusing;
    return evolve_state(std::move(st), T, cfg, std::move(observers), opt);
}

const std::vector<std::pair<double, double>>& Trajectory::series_of(
    const std::string& key) const {
    auto it = series.find(key);
    if (it == series.end())
        throw std::runtime_error("trajectory: observer series '" + key +
                                 "' missing");
    return it->second;
}

double duhamel_residual(const Trajectory& traj, const StepperConfig& cfg) {
    const auto& S = traj.samples;
    if (S.size() < 3 || S.size() % 2 == 0)
        throw std::invalid_argument(
            "duhamel_residual: need an odd number (>= 3) of uniform samples");
    const FourierGrid& g = S[0].u_hat.grid;
    const double T = S.back().t - S.front().t;
    const double h = T / static_cast<double>(S.size() - 1);
    const int k = S[0].k;
    const double sign = S[0].focusing ? 1.0 : -1.0;

    // composite Simpson for the Duhamel term int V_s(T-t') (u^{2k+1})_xx dt'
    std::vector<cplx> acc(g.M, cplx{});
    if (cfg.nonlinearity) {
        for (std::size_t q = 0; q < S.size(); ++q) {
            const double w =
                (q == 0 || q + 1 == S.size()) ? 1.0 : (q % 2 == 1 ? 4.0 : 2.0);
            const Spectrum nl = nonlinearity(S[q].u_hat, k, cfg.max_padded);
            const double tau = S.back().t - S[q].t;
            for (int j = 0; j < g.M; ++j) {
                const double xi = g.xi[j];
                const double vs = prop::sinc_gamma(tau, prop::gamma_of(xi));
                acc[j] += (w * vs * sign) * (xi * xi) * nl.c[j];
            }
        }
        for (auto& z : acc) z *= h / 3.0;
    }

    const prop::PropagatorCache P = prop::PropagatorCache::make(g, T);
    Spectrum res(g);
    for (int j = 0; j < g.M; ++j) {
        const cplx hom = P.cos_t[j] * S.front().u_hat.c[j] +
                         P.sinc_t[j] * S.front().ut_hat.c[j];
        res.c[j] = traj.final_state.u_hat.c[j] - hom - acc[j];
    }
    const double denom = spectral::sobolev_norm(traj.final_state.u_hat, 1.0);
    return spectral::sobolev_norm(res, 1.0) / std::max(denom, 1e-300);
}

} // namespace gbq::dyn
