#include "coboson/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "coboson/errors.hpp"
#include "coboson/ext_real.hpp"

namespace coboson {
namespace {

constexpr double kFlatWindow = 1e-9;
constexpr int kMinTable = 8;

std::string format(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -std::numeric_limits<double>::infinity()) return a;
  return a + std::log1p(std::exp(b - a));
}

// Trailing-quarter estimate on a fixed table.
RadiusEstimate estimate_window(const LadderTable& ladder) {
  const int top = ladder.max_n();
  if (ladder.exhausted_at()) return {RadiusStatus::Exhausted, 0.0, true, top};

  const int len = std::max(2, top / 4);
  const int begin = top - len + 1;
  const auto window = ladder.f().segment(begin, len);
  const double fmin = window.minCoeff();
  const double fmax = window.maxCoeff();
  if (fmax - fmin <= kFlatWindow * fmax) return {RadiusStatus::Finite, fmin, true, top};

  const auto& fsq = ladder.f_squared();
  const Eigen::VectorXd inc = fsq.segment(begin + 1, len - 1) - fsq.segment(begin, len - 1);
  if (inc.minCoeff() > 0.0) {
    const Eigen::Index mid = inc.size() / 2;
    const double first = mid > 0 ? inc.head(mid).minCoeff() : inc.minCoeff();
    const double second = inc.tail(inc.size() - mid).minCoeff();
    // Increments of f^2 that do not decay mean f^2 grows at least linearly.
    if (second >= 0.5 * first)
      return {RadiusStatus::Unbounded, std::numeric_limits<double>::infinity(), true, top};
  }
  return {RadiusStatus::Finite, fmin, false, top};
}

struct Certified {
  LadderTable ladder;
  RadiusEstimate radius;
};

Certified certify(const LadderTable& ladder, int table_cap) {
  if (ladder.max_n() < kMinTable)
    throw std::invalid_argument("convergence radius: ladder needs max_n >= 8");
  LadderTable current = ladder;
  for (;;) {
    RadiusEstimate est = estimate_window(current);
    if (est.certified || !current.extendable() || current.max_n() >= table_cap)
      return {std::move(current), est};
    current = current.extended(std::min(table_cap, 2 * current.max_n()));
  }
}

// suffix[i]: f is non-decreasing on [i, max_n].
std::vector<char> monotone_suffix(const LadderTable& ladder) {
  const int top = ladder.max_n();
  std::vector<char> suffix(static_cast<std::size_t>(top) + 1, 1);
  for (int i = top - 1; i >= 0; --i)
    suffix[static_cast<std::size_t>(i)] =
        suffix[static_cast<std::size_t>(i) + 1] && ladder.f(i) <= ladder.f(i + 1);
  return suffix;
}

// ln Σ exp(2 log_abs_psi), smallest terms first.
double log_norm_smallest_first(const Eigen::VectorXd& log_abs_psi) {
  const double peak = log_abs_psi.maxCoeff();
  std::vector<double> terms(static_cast<std::size_t>(log_abs_psi.size()));
  for (Eigen::Index n = 0; n < log_abs_psi.size(); ++n)
    terms[static_cast<std::size_t>(n)] = std::exp(2.0 * (log_abs_psi[n] - peak));
  std::sort(terms.begin(), terms.end());
  return 2.0 * peak + std::log(stable_sum(terms));
}

}  // namespace

std::string_view to_string(RadiusStatus status) {
  switch (status) {
    case RadiusStatus::Finite: return "FINITE";
    case RadiusStatus::Unbounded: return "UNBOUNDED";
    case RadiusStatus::Exhausted: return "EXHAUSTED";
  }
  return "UNKNOWN";
}

RadiusEstimate convergence_radius(const LadderTable& ladder, int table_cap) {
  return certify(ladder, table_cap).radius;
}

MonEstimate mon_lower_bound(const LadderTable& ladder, int table_cap) {
  const RadiusEstimate radius = convergence_radius(ladder, table_cap);
  switch (radius.status) {
    case RadiusStatus::Unbounded:
      return {RadiusStatus::Unbounded, std::numeric_limits<double>::infinity()};
    case RadiusStatus::Finite:
      return {RadiusStatus::Finite, radius.value * radius.value};
    case RadiusStatus::Exhausted: break;
  }
  const int last = *ladder.exhausted_at() - 1;
  const LadderTable full = ladder.max_n() >= last ? ladder : ladder.extended(last);
  return {RadiusStatus::Exhausted, full.f_squared().segment(1, last).maxCoeff()};
}

Eigen::VectorXd CobosonCoherentState::weights() const {
  return (2.0 * log_abs_psi_.array() - log_norm_).exp().matrix();
}

Eigen::VectorXcd CobosonCoherentState::amplitudes() const {
  const double phase = std::arg(gamma_);
  Eigen::VectorXcd out(log_abs_psi_.size());
  for (Eigen::Index n = 0; n < log_abs_psi_.size(); ++n)
    out[n] = std::polar(std::exp(log_abs_psi_[n] - 0.5 * log_norm_), phase * static_cast<double>(n));
  return out;
}

CobosonCoherentState build(Complex gamma, const LadderTable& ladder, double tail_tol,
                           int table_cap) {
  if (!(tail_tol > 0.0)) throw std::invalid_argument("build: tail_tol must be positive");
  if (!std::isfinite(gamma.real()) || !std::isfinite(gamma.imag()))
    throw std::invalid_argument("build: gamma must be finite");

  CobosonCoherentState state;
  state.gamma_ = gamma;
  const double abs_gamma = std::abs(gamma);

  if (abs_gamma == 0.0) {
    state.log_abs_psi_ = Eigen::VectorXd::Zero(1);
    state.exhausted_ = ladder.exhausted_at().has_value();
    state.ladder_ = std::make_shared<const LadderTable>(ladder);
    return state;
  }

  auto [table, radius] = certify(ladder, table_cap);
  const double log_gamma = std::log(abs_gamma);

  if (radius.status == RadiusStatus::Exhausted) {
    // The number basis ends at the rank; the state spans all of it.
    const int top = *table.exhausted_at() - 1;
    if (table.max_n() < top + 1) table = table.extended(top + 1);
    Eigen::VectorXd log_psi(top + 1);
    log_psi[0] = 0.0;
    for (int n = 1; n <= top; ++n) log_psi[n] = log_psi[n - 1] + log_gamma - std::log(table.f(n));
    const double log_norm = log_norm_smallest_first(log_psi);
    const double residual = abs_gamma * std::exp(log_psi[top] - 0.5 * log_norm);
    if (residual > tail_tol)
      throw ExhaustedLadder("build: ladder terminates at n=" + std::to_string(top + 1) +
                            "; |gamma|=" + format(abs_gamma) + " leaves eigen-residual " +
                            format(residual) + " > tail_tol " + format(tail_tol));
    state.log_abs_psi_ = std::move(log_psi);
    state.log_norm_ = log_norm;
    state.tail_bound_ = residual;
    state.exhausted_ = true;
    state.ladder_ = std::make_shared<const LadderTable>(std::move(table));
    return state;
  }

  if (!radius.certified)
    throw TailNotBounded("build: ladder limit not certified within a table of " +
                         std::to_string(radius.table_max_n));
  if (radius.status == RadiusStatus::Finite && abs_gamma >= radius.value)
    throw DivergentEigenvalue("build: |gamma|=" + format(abs_gamma) +
                              " is not below the convergence radius " + format(radius.value));

  std::vector<char> suffix = monotone_suffix(table);
  std::vector<double> log_psi{0.0};
  double log_sum = 0.0;
  double bound = std::numeric_limits<double>::infinity();
  for (int n = 0;; ++n) {
    if (table.max_n() < n + 1) {
      if (table.max_n() >= table_cap || !table.extendable())
        throw TailNotBounded("build: no certified cutoff below n=" + std::to_string(table_cap));
      table = table.extended(std::min(table_cap, 2 * table.max_n()));
      suffix = monotone_suffix(table);
    }
    const double next_f = table.f(n + 1);
    if (n > 0 && next_f > abs_gamma && suffix[static_cast<std::size_t>(n) + 1]) {
      const double rho2 = (abs_gamma / next_f) * (abs_gamma / next_f);
      const double log_w = 2.0 * log_psi.back() - log_sum;
      const double tail = std::exp(log_w) * rho2 / (1.0 - rho2);
      const double residual = abs_gamma * std::exp(0.5 * log_w);
      bound = std::max(tail, residual);
      if (bound <= tail_tol) break;
    }
    if (next_f == 0.0) throw ExhaustedLadder("build: ladder terminates unexpectedly");
    log_psi.push_back(log_psi.back() + log_gamma - std::log(next_f));
    log_sum = log_add(log_sum, 2.0 * log_psi.back());
  }

  state.log_abs_psi_ = Eigen::Map<const Eigen::VectorXd>(log_psi.data(),
                                                         static_cast<Eigen::Index>(log_psi.size()));
  state.log_norm_ = log_norm_smallest_first(state.log_abs_psi_);
  state.tail_bound_ = bound;
  state.ladder_ = std::make_shared<const LadderTable>(std::move(table));
  return state;
}

double expect_commutator(const CobosonCoherentState& state) {
  const auto& fsq = state.ladder().f_squared();
  const double g2 = state.abs_gamma() * state.abs_gamma();
  // term_n = |γ|^{2n} / Π_{i<=n} f_i^2, carried with its own exponent.
  ExtReal term(1.0);
  ExtReal norm(1.0);
  ExtReal bracket(fsq[1]);
  for (int n = 1; n <= state.cutoff(); ++n) {
    term *= g2 / fsq[n];
    norm += term;
    bracket -= term * (fsq[n] - fsq[n + 1]);
  }
  return ratio(bracket, norm);
}

double expect_commutator_diagonal(const CobosonCoherentState& state) {
  const Eigen::VectorXd diag = commutator_diagonal(state.ladder(), state.cutoff());
  const Eigen::VectorXd weighted = state.weights().cwiseProduct(diag);
  return stable_sum(weighted);
}

QuadratureVariances quadrature_variances(const CobosonCoherentState& state) {
  const double quarter = expect_commutator(state) / 4.0;
  return {quarter, quarter};
}

QuadratureVariances quadrature_variances_direct(const CobosonCoherentState& state) {
  const Eigen::VectorXcd a = state.amplitudes();
  const Eigen::Index top = state.cutoff();
  const Eigen::VectorXd& f = state.ladder().f();
  const Eigen::VectorXd& fsq = state.ladder().f_squared();
  const Eigen::ArrayXd prob = a.cwiseAbs2().array();

  // <c> = Σ conj(a_{n-1}) f_n a_n,  <c^2> = Σ conj(a_{n-2}) f_{n-1} f_n a_n.
  Complex c1 = 0.0;
  Complex c2 = 0.0;
  if (top >= 1)
    c1 = (a.head(top).conjugate().array() * f.segment(1, top).array() * a.tail(top).array()).sum();
  if (top >= 2)
    c2 = (a.head(top - 1).conjugate().array() * f.segment(1, top - 1).array() *
          f.segment(2, top - 1).array() * a.tail(top - 1).array())
             .sum();
  const double cdag_c = top >= 1 ? (prob.tail(top) * fsq.segment(1, top).array()).sum() : 0.0;
  const double c_cdag = (prob * fsq.segment(1, top + 1).array()).sum();

  const double x2 = (2.0 * c2.real() + c_cdag + cdag_c) / 4.0;
  const double p2 = (-2.0 * c2.real() + c_cdag + cdag_c) / 4.0;
  return {x2 - c1.real() * c1.real(), p2 - c1.imag() * c1.imag()};
}

double mandel_q_eff(const CobosonCoherentState& state) {
  if (state.abs_gamma() == 0.0)
    throw UndefinedStatistic("mandel_q_eff: undefined for gamma = 0 (<c†c> = 0)");
  return expect_commutator(state) - 1.0;
}

double mandel_q_direct(const CobosonCoherentState& state) {
  const Eigen::Index top = state.cutoff();
  if (top == 0) throw UndefinedStatistic("mandel_q_direct: <c†c> = 0");
  const Eigen::ArrayXd w = state.weights().tail(top).array();
  const Eigen::ArrayXd fsq = state.ladder().f_squared().segment(1, top).array();
  const double mean = (w * fsq).sum();
  const double second = (w * fsq.square()).sum();
  if (mean == 0.0) throw UndefinedStatistic("mandel_q_direct: <c†c> = 0");
  return (second - mean * mean) / mean - 1.0;
}

double mean_number(const CobosonCoherentState& state) {
  const Eigen::Index top = state.cutoff();
  if (top == 0) return 0.0;
  const Eigen::VectorXd weighted =
      state.weights().tail(top).cwiseProduct(state.ladder().f_squared().segment(1, top));
  return stable_sum(weighted);
}

double eigen_residual(const CobosonCoherentState& state) {
  const Eigen::VectorXcd a = state.amplitudes();
  const Eigen::Index top = state.cutoff();
  Eigen::VectorXcd lowered = Eigen::VectorXcd::Zero(top + 1);
  if (top >= 1)
    lowered.head(top) = a.tail(top).cwiseProduct(state.ladder().f().segment(1, top).cast<Complex>());
  return (lowered - state.gamma() * a).norm();
}

ObservablesReport observe(const CobosonCoherentState& state, std::string spectrum_descriptor) {
  ObservablesReport r;
  r.gamma = state.gamma();
  r.spectrum_descriptor = std::move(spectrum_descriptor);
  r.kind = state.ladder().kind();
  r.commutator_expectation = expect_commutator(state);
  const auto var = quadrature_variances(state);
  r.var_x = var.var_x;
  r.var_p = var.var_p;
  if (state.abs_gamma() > 0.0) r.mandel_q_eff = mandel_q_eff(state);
  r.mean_n = mean_number(state);
  r.mon = mon_lower_bound(state.ladder());
  r.cutoff = state.cutoff();
  r.tail_mass_bound = state.tail_mass_bound();
  r.norm_constant = state.norm_constant();
  return r;
}

}  // namespace coboson
