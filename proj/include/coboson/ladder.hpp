#pragma once

#include <Eigen/Dense>

#include <memory>
#include <optional>

#include "coboson/kind.hpp"
#include "coboson/symfunc.hpp"

namespace coboson {

// Effective ladder c = Σ_n f_{n+1} |n><n+1| in the coboson number basis,
// with f_{n+1} = sqrt((n+1) χ_{n+1}/χ_n) and f_0 = 1.
class LadderTable {
 public:
  ConstituentKind kind() const { return kind_; }
  // Largest n with f_n stored.
  int max_n() const { return static_cast<int>(f_.size()) - 1; }

  const Eigen::VectorXd& f() const { return f_; }
  double f(int n) const { return f_[n]; }
  // f_n^2, computed from the log ratios directly rather than by squaring f.
  const Eigen::VectorXd& f_squared() const { return f_sq_; }
  double f_squared(int n) const { return f_sq_[n]; }

  // <ε_n|ε_n> for n = 0..max_n-1 (ε_0 = 0).
  const Eigen::VectorXd& eps_norm() const { return eps_norm_; }

  // Smallest n >= 1 with f_n = 0, if the ladder terminates.
  std::optional<int> exhausted_at() const { return exhausted_at_; }

  // True when extended() can produce a longer table.
  bool extendable() const;
  // Recomputes the table with at least max_n entries.
  LadderTable extended(int max_n) const;

 private:
  friend LadderTable ladder_table(const ChiRatioTable&, ConstituentKind, int);
  friend LadderTable classical_ladder(int);
  friend LadderTable ideal_ladder(int);

  LadderTable() = default;

  ConstituentKind kind_ = ConstituentKind::Classical;
  Eigen::VectorXd f_;
  Eigen::VectorXd f_sq_;
  Eigen::VectorXd eps_norm_;
  std::optional<int> exhausted_at_;
  std::shared_ptr<const SchmidtSpectrum> source_;
};

// Requires chi.max_n() >= max_n unless kind is Classical (f = 1) or Ideal
// (f = sqrt(n)), which ignore chi.
LadderTable ladder_table(const ChiRatioTable& chi, ConstituentKind kind, int max_n);

// Convenience: chi_ratio_table + ladder_table for the spectrum's own kind.
LadderTable ladder_table(const SchmidtSpectrum& s, int max_n);

LadderTable classical_ladder(int max_n);
LadderTable ideal_ladder(int max_n);

// 1 - n χ_n/χ_{n-1} + (n-1) χ_{n+1}/χ_n for n >= 1. Negative rounding noise
// up to 1e-12 times the size of the largest term is clamped to 0.
// Zero for n >= exhaustion (the number state does not exist). Throws
// InconsistentTable on a larger negative value or when χ_n = 0 but
// χ_{n+1} != 0.
double epsilon_norm(const ChiRatioTable& chi, int n);

// Diagonal of [c, c†] for n = 0..max_n: entry 0 is f_1^2, entry n is
// f_{n+1}^2 - f_n^2. Needs ladder.max_n() > max_n.
Eigen::VectorXd commutator_diagonal(const LadderTable& ladder, int max_n);

}  // namespace coboson
