#ifndef GBQ_DYNAMICS_HPP
#define GBQ_DYNAMICS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gbq/propagators.hpp"
#include "gbq/types.hpp"

namespace gbq::dyn {

// Evolving pair (u_hat, ut_hat) of the defocusing system
//   u_tt - u_xx + u_xxxx - (u^{2k+1})_xx = 0
// i.e. u_tt = -gamma^2 u - xi^2 (u^{2k+1})^ in Fourier variables.
struct SimState {
    double t = 0.0;
    Spectrum u_hat;
    Spectrum ut_hat;
    int k = 1;
    bool focusing = false; // exploratory only, no accuracy contract
};

enum class Scheme { ExpRk4, Strang2 };

struct StepperConfig {
    double dt = 1e-3;
    Scheme scheme = Scheme::ExpRk4;
    bool nonlinearity = true;
    int k = 1;              // seeds SimState.k in the Field-level evolve()
    bool focusing = false;  // likewise
    int max_padded = 1 << 22;
};

// Spectrum of u^{2k+1} (dealiased); the caller applies the -xi^2 symbol.
Spectrum nonlinearity(const Spectrum& u_hat, int k, int max_padded = 1 << 22);

// One trajectory's integrator: owns the propagator tables for its step
// sizes (rebuilt only when the step changes, keyed by the exact bit
// pattern of dt).
class Stepper {
  public:
    Stepper(const FourierGrid& g, int k, const StepperConfig& cfg);

    void step(SimState& st) const { step_by(st, cfg_.dt); }
    void step_by(SimState& st, double dt) const;

    const StepperConfig& config() const { return cfg_; }

  private:
    struct Tables {
        prop::PropagatorCache full;
        prop::PropagatorCache half;
    };
    const Tables& tables_for(double dt) const;

    void rk4_step(SimState& st, double dt, const Tables& T) const;
    void strang_step(SimState& st, double dt, const Tables& T) const;
    void forcing(const Spectrum& u, bool focusing, std::vector<cplx>& out) const;

    FourierGrid grid_;
    int k_;
    StepperConfig cfg_;
    mutable std::map<std::uint64_t, Tables> cache_;
};

// Blow-up (non-finite state) diagnostic carrying the last good state.
struct BlowupError : std::runtime_error {
    double t_last;
    explicit BlowupError(double t)
        : std::runtime_error("non-finite state at t = " + std::to_string(t)),
          t_last(t) {}
};

// Named scalar observable sampled at the observer cadence; its series is
// retained on the trajectory under `name`.
struct Observer {
    std::string name;
    std::function<double(const SimState&)> eval;
};

struct Trajectory {
    std::vector<SimState> samples;      // stride-spaced states (incl. t=0, T)
    SimState final_state;
    std::map<std::string, std::vector<std::pair<double, double>>> series;

    // Throws when no observer of that name was attached.
    const std::vector<std::pair<double, double>>& series_of(
        const std::string& key) const;
};

struct EvolveOptions {
    int observer_stride = 1;  // observer/series cadence, in steps
    int store_stride = 0;     // state retention cadence; 0 keeps ends only
};

// Integrate from (phi, psi) to time T; psi must have zero mean (it enters
// only through psi_x). The final partial step shrinks to hit T exactly.
Trajectory evolve(const Field& phi, const Field& psi, double T,
                  const StepperConfig& cfg, std::vector<Observer> observers = {},
                  const EvolveOptions& opt = {});

// Same, starting from spectra (k, focusing from the state).
Trajectory evolve_state(SimState initial, double T, const StepperConfig& cfg,
                        std::vector<Observer> observers = {},
                        const EvolveOptions& opt = {});

// Relative H^1 residual of the Duhamel integral equation at the final time,
// using composite Simpson quadrature along the stored samples.
double duhamel_residual(const Trajectory& traj, const StepperConfig& cfg);

} // namespace gbq::dyn

#endif
