#pragma once

// Numeric side: solved systems flattened to postfix programs and integrated
// with RK4 or an adaptive Dormand-Prince pair.
//
// State layouts, 4 reals per coordinate pair i (offset 4(i-1)):
//   Direct:  z_re, z_im, zb_re, zb_im          (arithmetic in A = R[j])
//   Channel: z+,   z-,   zb+,   zb-            (two real systems)
// In both, the value of basis id a occupies slots 2a, 2a+1.

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "paramech/dsl.hpp"
#include "paramech/mech.hpp"

namespace paramech {

using State = Eigen::VectorXd;

enum class Layout { Direct, Channel };

/// Flattened expression over values of type V (double or FloatPara).
/// Variable slots are basis ids; parameters are bound at compile time.
template <typename V>
class Program {
 public:
  enum class Op : unsigned char { Const, Var, Time, Add, Mul, Pow, Div, Call };
  struct Instr {
    Op op;
    int arg;
  };

  Program() = default;
  /// `channel` selects which tagged symbols are accepted (None for direct mode).
  Program(const Expr& e, const ParamValues& params, Channel channel);

  V operator()(double t, const V* vars) const;
  std::size_t size() const { return code_.size(); }

 private:
  void emit(const Expr& e, const ParamValues& params, Channel channel);

  std::vector<Instr> code_;
  std::vector<V> constants_;
  std::size_t max_stack_ = 0;
};

/// Right-hand side and energy of a solved system in one of the two layouts.
class CompiledSystem {
 public:
  /// Parameters default to those of the derivation; `overrides` replace them by name.
  CompiledSystem(const DerivedSystem& d, Layout layout, const ParamValues& overrides = {});

  int dim() const { return dim_; }
  Layout layout() const { return layout_; }
  Eigen::Index size() const { return 4 * dim_; }

  State rhs(double t, const State& x) const;
  FloatPara energy(double t, const State& x) const;

  /// Packs initial quadruples (z_re, z_im, zb_re, zb_im) into this layout.
  State initial_state(const std::vector<InitialPair>& init) const;
  /// Value of basis id a in state x, as a para-complex number.
  FloatPara coordinate(const State& x, BasisId a) const;

 private:
  int dim_;
  Layout layout_;
  std::vector<Program<FloatPara>> direct_;  // per basis id
  std::vector<Program<double>> plus_, minus_;
  Program<FloatPara> direct_energy_;
  Program<double> plus_energy_, minus_energy_;
};

/// One decoupled channel on its own: 2n reals (z_i, zb_i in basis-id order).
class CompiledChannel {
 public:
  CompiledChannel(const ChannelSystem& sys, const ParamValues& params);

  Channel channel() const { return channel_; }
  Eigen::Index size() const { return 2 * dim_; }
  State rhs(double t, const State& x) const;
  double energy(double t, const State& x) const;

 private:
  Channel channel_;
  int dim_;
  std::vector<Program<double>> rhs_;
  Program<double> energy_;
};

/// (re, im) pairs <-> (plus, minus) pairs, slot by slot.
State to_channel_layout(const State& direct);
State to_direct_layout(const State& channel);

/// Channel-layout state restricted to one channel (2n reals), and back.
State channel_part(const State& channel_layout, Channel ch);
State join_channels(const State& plus, const State& minus);

// ---- integration ---------------------------------------------------------------

enum class Method { RK4, RK45 };

Method method_from_name(const std::string& name);
const char* method_name(Method m);

struct IntegratorOptions {
  Method method = Method::RK4;
  double rtol = 1e-9;   // rk45 only
  double atol = 1e-12;  // rk45 only
  long max_steps = 50'000'000;
};

using RhsFunction = std::function<State(double, const State&)>;

struct Samples {
  std::vector<double> times;
  std::vector<State> states;
};

/// Integrates x' = f(t, x) from t0 to t1 (t1 >= t0). RK4 takes fixed steps of
/// dt with the last one shortened to land on t1; RK45 starts from dt and adapts.
/// A non-finite state raises DivergenceError with the last good time.
Samples integrate(const RhsFunction& f, const State& x0, double t0, double t1, double dt,
                  const IntegratorOptions& opt = {});

struct Trajectory {
  int dim = 1;
  Layout layout = Layout::Direct;
  std::vector<double> times;
  std::vector<State> states;
  std::vector<FloatPara> energy;

  /// Para-complex value of basis id a at sample k.
  FloatPara coordinate(std::size_t k, BasisId a) const;
  /// The sample converted to the direct layout.
  State direct_state(std::size_t k) const;
};

Trajectory integrate(const CompiledSystem& c, const State& x0, double t0, double t1, double dt,
                     const IntegratorOptions& opt = {});

struct ConservationReport {
  double max_drift_plus = 0;
  double max_drift_minus = 0;
  double rms_drift_plus = 0;
  double rms_drift_minus = 0;
  double tolerance = 1e-5;
  bool passed = true;

  double max_drift() const { return std::max(max_drift_plus, max_drift_minus); }
};

/// Drift of each energy channel from its initial value.
ConservationReport conservation_report(const Trajectory& tr, double tolerance = 1e-5);

}  // namespace paramech
