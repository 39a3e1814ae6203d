#pragma once

#include <Eigen/Dense>

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "coboson/ladder.hpp"

namespace coboson {

using Complex = std::complex<double>;

enum class RadiusStatus { Finite, Unbounded, Exhausted };

std::string_view to_string(RadiusStatus status);

// Estimate of lim_{n->inf} f_n from a finite ladder window.
struct RadiusEstimate {
  RadiusStatus status = RadiusStatus::Finite;
  // Finite: min of f over the trailing quarter. Exhausted: 0.
  // Unbounded: +inf.
  double value = 0.0;
  // False when the window never settled before the table cap.
  bool certified = true;
  // Table length the estimate was taken on.
  int table_max_n = 0;
};

inline constexpr int kDefaultTableCap = 100000;

RadiusEstimate convergence_radius(const LadderTable& ladder, int table_cap = kDefaultTableCap);

// Maximum-occupancy-number estimate lim |f_n|^2. On terminating ladders the
// value is max_n f_n^2, the top of the effective c†c spectrum.
struct MonEstimate {
  RadiusStatus status = RadiusStatus::Finite;
  double value = 0.0;
};

MonEstimate mon_lower_bound(const LadderTable& ladder, int table_cap = kDefaultTableCap);

// Truncated eigenstate of the effective annihilation operator,
// ψ_n = γ^n / Π_{i=1..n} f_i, kept as ln|ψ_n| plus the phase n·arg γ.
class CobosonCoherentState {
 public:
  Complex gamma() const { return gamma_; }
  double abs_gamma() const { return std::abs(gamma_); }
  int cutoff() const { return static_cast<int>(log_abs_psi_.size()) - 1; }
  const Eigen::VectorXd& log_abs_psi() const { return log_abs_psi_; }
  // ln 𝒩 with 𝒩 = Σ_{n<=cutoff} |ψ_n|^2.
  double log_norm_constant() const { return log_norm_; }
  double norm_constant() const { return std::exp(log_norm_); }
  // Bounds both the probability mass beyond the cutoff and ‖(c-γ)ψ‖.
  double tail_mass_bound() const { return tail_bound_; }
  // True when built on a terminating (fermion-exhausted) ladder.
  bool on_exhausted_ladder() const { return exhausted_; }
  const LadderTable& ladder() const { return *ladder_; }

  // |ψ_n|^2 / 𝒩.
  Eigen::VectorXd weights() const;
  // Normalized complex amplitudes in the number basis.
  Eigen::VectorXcd amplitudes() const;

 private:
  friend CobosonCoherentState build(Complex, const LadderTable&, double, int);

  Complex gamma_;
  Eigen::VectorXd log_abs_psi_;
  double log_norm_ = 0.0;
  double tail_bound_ = 0.0;
  bool exhausted_ = false;
  std::shared_ptr<const LadderTable> ladder_;
};

// Builds the coherent state with eigenvalue gamma. Throws
//   DivergentEigenvalue  |γ| >= finite convergence radius
//   ExhaustedLadder      terminating ladder whose finite state misses the
//                        eigen-equation by more than tail_tol
//   TailNotBounded       no cutoff certified within table_cap
CobosonCoherentState build(Complex gamma, const LadderTable& ladder, double tail_tol = 1e-12,
                           int table_cap = kDefaultTableCap);

// <[c,c†]> via the closed series (1/𝒩)[f_1^2 - Σ |γ|^{2n}/Π f_i^2 (f_n^2 - f_{n+1}^2)].
double expect_commutator(const CobosonCoherentState& state);
// Same expectation as the commutator diagonal weighted by |ψ_n|^2/𝒩.
double expect_commutator_diagonal(const CobosonCoherentState& state);

struct QuadratureVariances {
  double var_x = 0.0;
  double var_p = 0.0;
};

// Both equal <[c,c†]>/4.
QuadratureVariances quadrature_variances(const CobosonCoherentState& state);
// From <c^2 + c†^2 + c c† + c† c>/4 - <c + c†>^2/4 and its P counterpart,
// using explicit matrix elements of the truncated ladder.
QuadratureVariances quadrature_variances_direct(const CobosonCoherentState& state);

// <[c,c†]> - 1. Throws UndefinedStatistic for γ = 0.
double mandel_q_eff(const CobosonCoherentState& state);
// (<n^2> - <n>^2)/<n> - 1 with n = c†c evaluated on the truncated state.
double mandel_q_direct(const CobosonCoherentState& state);

// Σ f_n^2 |ψ_n|^2/𝒩; equals |γ|^2 up to truncation.
double mean_number(const CobosonCoherentState& state);

// ‖(c - γ)|ψ>‖ with c the truncated ladder matrix.
double eigen_residual(const CobosonCoherentState& state);

struct ObservablesReport {
  Complex gamma;
  std::string spectrum_descriptor;
  ConstituentKind kind = ConstituentKind::Classical;
  double commutator_expectation = 0.0;
  double var_x = 0.0;
  double var_p = 0.0;
  // Empty for γ = 0.
  std::optional<double> mandel_q_eff;
  double mean_n = 0.0;
  MonEstimate mon;
  int cutoff = 0;
  double tail_mass_bound = 0.0;
  double norm_constant = 1.0;
};

ObservablesReport observe(const CobosonCoherentState& state, std::string spectrum_descriptor);

}  // namespace coboson
