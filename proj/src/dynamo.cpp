#include "paramech/dynamo.hpp"

#include <algorithm>
#include <cmath>

namespace paramech {

namespace {

double call(Builtin f, double x) {
  switch (f) {
    case Builtin::Sin: return std::sin(x);
    case Builtin::Cos: return std::cos(x);
    case Builtin::Exp: return std::exp(x);
    case Builtin::Cosh: return std::cosh(x);
    case Builtin::Sinh: return std::sinh(x);
  }
  return 0;
}

FloatPara call(Builtin f, const FloatPara& x) {
  if (f == Builtin::Exp) return exp(x);
  return map_channels(x, [f](double v) { return call(f, v); });
}

double power(double x, int k) { return std::pow(x, k); }
FloatPara power(const FloatPara& x, int k) { return pow(x, k); }

double divide(double a, double b) { return a / b; }
FloatPara divide(const FloatPara& a, const FloatPara& b) { return a * invert(b); }

double from_time(double t, double*) { return t; }
FloatPara from_time(double t, FloatPara*) { return FloatPara(t, 0.0); }

double constant_value(const ExactPara& c, double*) {
  if (c.im() != 0) throw UsageError("channel program with a j-valued constant");
  return c.re().get_d();
}
FloatPara constant_value(const ExactPara& c, FloatPara*) { return to_float(c); }

/// Value of a parameter symbol: the whole number in direct mode, one channel otherwise.
ExactPara parameter_value(const Symbol& s, const ParamValues& params) {
  auto it = params.find(s.name);
  if (it == params.end()) throw UsageError("unbound parameter '" + s.name + "'");
  if (s.channel == Channel::None) return it->second;
  auto c = split(it->second);
  return ExactPara(s.channel == Channel::Plus ? c.plus : c.minus);
}

}  // namespace

template <typename V>
Program<V>::Program(const Expr& e, const ParamValues& params, Channel channel) {
  emit(e, params, channel);
  // Stack depth by simulation keeps evaluation allocation-free of guesses.
  std::size_t depth = 0;
  for (const Instr& in : code_) {
    switch (in.op) {
      case Op::Const:
      case Op::Var:
      case Op::Time: ++depth; break;
      case Op::Add:
      case Op::Mul: depth -= in.arg - 1; break;
      case Op::Div: --depth; break;
      case Op::Pow:
      case Op::Call: break;
    }
    max_stack_ = std::max(max_stack_, depth);
  }
}

template <typename V>
void Program<V>::emit(const Expr& e, const ParamValues& params, Channel channel) {
  switch (e.kind()) {
    case Expr::Kind::Const:
      constants_.push_back(constant_value(e.value(), static_cast<V*>(nullptr)));
      code_.push_back({Op::Const, static_cast<int>(constants_.size() - 1)});
      return;
    case Expr::Kind::Var: {
      const Symbol& s = e.symbol();
      switch (s.kind) {
        case Symbol::Kind::Time: code_.push_back({Op::Time, 0}); return;
        case Symbol::Kind::Parameter:
          if (s.channel != channel) throw UsageError("parameter '" + to_string(s) + "' in the wrong channel");
          constants_.push_back(constant_value(parameter_value(s, params), static_cast<V*>(nullptr)));
          code_.push_back({Op::Const, static_cast<int>(constants_.size() - 1)});
          return;
        case Symbol::Kind::Coordinate:
        case Symbol::Kind::Conjugate:
          if (s.channel != channel) throw UsageError("coordinate '" + to_string(s) + "' in the wrong channel");
          code_.push_back({Op::Var, s.kind == Symbol::Kind::Coordinate ? basis::z(s.index) : basis::zb(s.index)});
          return;
        default: throw UsageError("cannot compile symbol '" + to_string(s) + "'");
      }
    }
    case Expr::Kind::Sum:
    case Expr::Kind::Product:
      for (const Expr& a : e.args()) emit(a, params, channel);
      code_.push_back({e.kind() == Expr::Kind::Sum ? Op::Add : Op::Mul, static_cast<int>(e.args().size())});
      return;
    case Expr::Kind::Power:
      emit(e.args()[0], params, channel);
      code_.push_back({Op::Pow, e.exponent()});
      return;
    case Expr::Kind::Quotient:
      emit(e.args()[0], params, channel);
      emit(e.args()[1], params, channel);
      code_.push_back({Op::Div, 0});
      return;
    case Expr::Kind::Apply:
      emit(e.args()[0], params, channel);
      code_.push_back({Op::Call, static_cast<int>(e.builtin())});
      return;
  }
}

template <typename V>
V Program<V>::operator()(double t, const V* vars) const {
  if (code_.empty()) return V(0);
  std::vector<V> stack;
  stack.reserve(max_stack_);
  for (const Instr& in : code_) {
    switch (in.op) {
      case Op::Const: stack.push_back(constants_[in.arg]); break;
      case Op::Var: stack.push_back(vars[in.arg]); break;
      case Op::Time: stack.push_back(from_time(t, static_cast<V*>(nullptr))); break;
      case Op::Add:
      case Op::Mul: {
        auto first = stack.end() - in.arg;
        V acc = *first;
        for (auto it = first + 1; it != stack.end(); ++it) acc = in.op == Op::Add ? acc + *it : acc * *it;
        stack.erase(first, stack.end());
        stack.push_back(acc);
        break;
      }
      case Op::Pow: stack.back() = power(stack.back(), in.arg); break;
      case Op::Div: {
        V b = stack.back();
        stack.pop_back();
        stack.back() = divide(stack.back(), b);
        break;
      }
      case Op::Call: stack.back() = call(static_cast<Builtin>(in.arg), stack.back()); break;
    }
  }
  return stack.back();
}

template class Program<double>;
template class Program<FloatPara>;

// ---- layouts ---------------------------------------------------------------------------

State to_channel_layout(const State& direct) {
  State out(direct.size());
  for (Eigen::Index k = 0; k + 1 < direct.size(); k += 2) {
    out[k] = direct[k] + direct[k + 1];
    out[k + 1] = direct[k] - direct[k + 1];
  }
  return out;
}

State to_direct_layout(const State& channel) {
  State out(channel.size());
  for (Eigen::Index k = 0; k + 1 < channel.size(); k += 2) {
    out[k] = 0.5 * (channel[k] + channel[k + 1]);
    out[k + 1] = 0.5 * (channel[k] - channel[k + 1]);
  }
  return out;
}

State channel_part(const State& channel_layout, Channel ch) {
  State out(channel_layout.size() / 2);
  const Eigen::Index offset = ch == Channel::Plus ? 0 : 1;
  for (Eigen::Index a = 0; a < out.size(); ++a) out[a] = channel_layout[2 * a + offset];
  return out;
}

State join_channels(const State& plus, const State& minus) {
  if (plus.size() != minus.size()) throw UsageError("channel states of different size");
  State out(2 * plus.size());
  for (Eigen::Index a = 0; a < plus.size(); ++a) {
    out[2 * a] = plus[a];
    out[2 * a + 1] = minus[a];
  }
  return out;
}

// ---- compiled systems ----------------------------------------------------------------

CompiledSystem::CompiledSystem(const DerivedSystem& d, Layout layout, const ParamValues& overrides)
    : dim_(d.dim), layout_(layout) {
  ParamValues params = d.params;
  for (const auto& [name, v] : overrides) params[name] = v;
  if (layout == Layout::Direct) {
    for (BasisId a = 0; a < basis::count(dim_); ++a)
      direct_.emplace_back(d.dynamics[a], params, Channel::None);
    direct_energy_ = Program<FloatPara>(d.energy_on_shell, params, Channel::None);
  } else {
    auto [plus, minus] = channel_split(d);
    for (BasisId a = 0; a < basis::count(dim_); ++a) {
      plus_.emplace_back(plus.rhs[a], params, Channel::Plus);
      minus_.emplace_back(minus.rhs[a], params, Channel::Minus);
    }
    plus_energy_ = Program<double>(plus.energy, params, Channel::Plus);
    minus_energy_ = Program<double>(minus.energy, params, Channel::Minus);
  }
}

State CompiledSystem::rhs(double t, const State& x) const {
  const int n = basis::count(dim_);
  State out(size());
  if (layout_ == Layout::Direct) {
    std::vector<FloatPara> vars(n);
    for (int a = 0; a < n; ++a) vars[a] = FloatPara(x[2 * a], x[2 * a + 1]);
    for (int a = 0; a < n; ++a) {
      FloatPara v = direct_[a](t, vars.data());
      out[2 * a] = v.re();
      out[2 * a + 1] = v.im();
    }
    return out;
  }
  State p = channel_part(x, Channel::Plus), m = channel_part(x, Channel::Minus);
  for (int a = 0; a < n; ++a) {
    out[2 * a] = plus_[a](t, p.data());
    out[2 * a + 1] = minus_[a](t, m.data());
  }
  return out;
}

FloatPara CompiledSystem::energy(double t, const State& x) const {
  if (layout_ == Layout::Direct) {
    std::vector<FloatPara> vars(basis::count(dim_));
    for (std::size_t a = 0; a < vars.size(); ++a) vars[a] = FloatPara(x[2 * a], x[2 * a + 1]);
    return direct_energy_(t, vars.data());
  }
  State p = channel_part(x, Channel::Plus), m = channel_part(x, Channel::Minus);
  return from_channels(plus_energy_(t, p.data()), minus_energy_(t, m.data()));
}

State CompiledSystem::initial_state(const std::vector<InitialPair>& init) const {
  if (static_cast<int>(init.size()) != dim_)
    throw UsageError("expected " + std::to_string(dim_) + " initial pairs, got " + std::to_string(init.size()));
  State x(size());
  for (int i = 0; i < dim_; ++i)
    for (int k = 0; k < 4; ++k) x[4 * i + k] = init[i][k];
  return layout_ == Layout::Direct ? x : to_channel_layout(x);
}

FloatPara CompiledSystem::coordinate(const State& x, BasisId a) const {
  if (layout_ == Layout::Direct) return FloatPara(x[2 * a], x[2 * a + 1]);
  return from_channels(x[2 * a], x[2 * a + 1]);
}

CompiledChannel::CompiledChannel(const ChannelSystem& sys, const ParamValues& params)
    : channel_(sys.channel), dim_(sys.dim) {
  for (const Expr& e : sys.rhs) rhs_.emplace_back(e, params, channel_);
  energy_ = Program<double>(sys.energy, params, channel_);
}

State CompiledChannel::rhs(double t, const State& x) const {
  State out(size());
  for (Eigen::Index a = 0; a < size(); ++a) out[a] = rhs_[a](t, x.data());
  return out;
}

double CompiledChannel::energy(double t, const State& x) const { return energy_(t, x.data()); }

// ---- integrators ---------------------------------------------------------------------

Method method_from_name(const std::string& name) {
  if (name == "rk4") return Method::RK4;
  if (name == "rk45") return Method::RK45;
  throw UsageError("unknown integrator '" + name + "'");
}

const char* method_name(Method m) { return m == Method::RK4 ? "rk4" : "rk45"; }

namespace {

State guarded_rhs(const RhsFunction& f, double t, const State& x, double last_good) {
  try {
    return f(t, x);
  } catch (const ZeroDivisorError&) {
    throw DivergenceError(last_good);
  } catch (const NumericRangeError&) {
    throw DivergenceError(last_good);
  }
}

State rk4_step(const RhsFunction& f, double t, const State& x, double h, double last_good) {
  State k1 = guarded_rhs(f, t, x, last_good);
  State k2 = guarded_rhs(f, t + 0.5 * h, x + 0.5 * h * k1, last_good);
  State k3 = guarded_rhs(f, t + 0.5 * h, x + 0.5 * h * k2, last_good);
  State k4 = guarded_rhs(f, t + h, x + h * k3, last_good);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

void integrate_rk4(const RhsFunction& f, double t0, double t1, double dt, const IntegratorOptions& opt, Samples& s) {
  const double span = t1 - t0;
  if (span == 0) return;
  // Whole steps when span/dt is an integer up to rounding, else one more (shortened) step.
  double ratio = span / dt;
  long n = std::lround(ratio);
  if (std::abs(ratio - static_cast<double>(n)) > 1e-9 * std::max(1.0, ratio)) n = static_cast<long>(std::floor(ratio)) + 1;
  if (n > opt.max_steps) throw UsageError("rk4 would need " + std::to_string(n) + " steps");
  s.times.reserve(n + 1);
  s.states.reserve(n + 1);
  for (long k = 1; k <= n; ++k) {
    double t = s.times.back();
    double next = k == n ? t1 : t0 + static_cast<double>(k) * dt;
    State x = rk4_step(f, t, s.states.back(), next - t, t);
    if (!x.allFinite()) throw DivergenceError(t);
    s.times.push_back(next);
    s.states.push_back(std::move(x));
  }
}

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;

void integrate_rk45(const RhsFunction& f, double t0, double t1, double dt, const IntegratorOptions& opt,
                    Samples& s) {
  double t = t0;
  double h = std::min(dt, t1 - t0);
  State x = s.states.back();
  State k1 = guarded_rhs(f, t, x, t);
  long steps = 0;
  while (t < t1) {
    if (++steps > opt.max_steps) throw DivergenceError(t);
    bool last = t + h >= t1;
    if (last) h = t1 - t;
    State k2 = guarded_rhs(f, t + c2 * h, x + h * (a21 * k1), t);
    State k3 = guarded_rhs(f, t + c3 * h, x + h * (a31 * k1 + a32 * k2), t);
    State k4 = guarded_rhs(f, t + c4 * h, x + h * (a41 * k1 + a42 * k2 + a43 * k3), t);
    State k5 = guarded_rhs(f, t + c5 * h, x + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), t);
    State k6 = guarded_rhs(f, t + h, x + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), t);
    State next = x + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    State k7 = next.allFinite() ? guarded_rhs(f, t + h, next, t) : next;
    State err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    if (!next.allFinite() || !k7.allFinite()) {
      h *= 0.2;
      if (h < 1e-14 * std::max(1.0, std::abs(t))) throw DivergenceError(t);
      continue;
    }
    State scale = (opt.atol + opt.rtol * x.cwiseAbs().cwiseMax(next.cwiseAbs()).array()).matrix();
    double norm = std::sqrt((err.array() / scale.array()).square().mean());
    if (norm <= 1.0) {
      t = last ? t1 : t + h;
      x = std::move(next);
      k1 = std::move(k7);
      s.times.push_back(t);
      s.states.push_back(x);
    }
    double factor = norm == 0 ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
    h *= factor;
    if (t < t1 && h < 1e-14 * std::max(1.0, std::abs(t))) throw DivergenceError(t);
  }
}

}  // namespace

Samples integrate(const RhsFunction& f, const State& x0, double t0, double t1, double dt,
                  const IntegratorOptions& opt) {
  if (!(dt > 0)) throw UsageError("step size must be positive");
  if (!(t1 >= t0)) throw UsageError("final time precedes initial time");
  if (!x0.allFinite()) throw DivergenceError(t0);
  Samples s;
  s.times.push_back(t0);
  s.states.push_back(x0);
  if (opt.method == Method::RK4)
    integrate_rk4(f, t0, t1, dt, opt, s);
  else
    integrate_rk45(f, t0, t1, dt, opt, s);
  return s;
}

FloatPara Trajectory::coordinate(std::size_t k, BasisId a) const {
  const State& x = states[k];
  if (layout == Layout::Direct) return FloatPara(x[2 * a], x[2 * a + 1]);
  return from_channels(x[2 * a], x[2 * a + 1]);
}

State Trajectory::direct_state(std::size_t k) const {
  return layout == Layout::Direct ? states[k] : to_direct_layout(states[k]);
}

Trajectory integrate(const CompiledSystem& c, const State& x0, double t0, double t1, double dt,
                     const IntegratorOptions& opt) {
  if (x0.size() != c.size()) throw UsageError("initial state has the wrong size");
  Samples s = integrate([&c](double t, const State& x) { return c.rhs(t, x); }, x0, t0, t1, dt, opt);
  Trajectory tr;
  tr.dim = c.dim();
  tr.layout = c.layout();
  tr.energy.reserve(s.times.size());
  for (std::size_t k = 0; k < s.times.size(); ++k) {
    try {
      tr.energy.push_back(c.energy(s.times[k], s.states[k]));
    } catch (const Error&) {
      throw DivergenceError(k ? s.times[k - 1] : t0);
    }
  }
  tr.times = std::move(s.times);
  tr.states = std::move(s.states);
  return tr;
}

ConservationReport conservation_report(const Trajectory& tr, double tolerance) {
  ConservationReport r;
  r.tolerance = tolerance;
  if (tr.energy.empty()) return r;
  auto e0 = split(tr.energy.front());
  double sum_p = 0, sum_m = 0;
  for (const FloatPara& e : tr.energy) {
    auto c = split(e);
    double dp = std::abs(c.plus - e0.plus), dm = std::abs(c.minus - e0.minus);
    r.max_drift_plus = std::max(r.max_drift_plus, dp);
    r.max_drift_minus = std::max(r.max_drift_minus, dm);
    sum_p += dp * dp;
    sum_m += dm * dm;
  }
  const double n = static_cast<double>(tr.energy.size());
  r.rms_drift_plus = std::sqrt(sum_p / n);
  r.rms_drift_minus = std::sqrt(sum_m / n);
  r.passed = std::isfinite(r.max_drift()) && r.max_drift() <= tolerance;
  return r;
}

}  // namespace paramech
