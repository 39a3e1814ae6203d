#pragma once

#include <Eigen/Dense>

#include <memory>
#include <optional>

#include "coboson/kind.hpp"
#include "coboson/schmidt.hpp"

namespace coboson {

// ln(χ_{n+1}/χ_n) for n = 0..max_n-1, where χ_n is the norm constant of the
// n-coboson number state:
//   fermion pairs: χ_n = n! e_n(λ)   (elementary symmetric polynomial)
//   boson pairs:   χ_n = n! h_n(λ)   (complete homogeneous polynomial)
// Past fermionic exhaustion the ratio is exactly 0 (log -inf).
class ChiRatioTable {
 public:
  // Raw table, mostly for tests and synthetic ladders. exhausted_at is derived
  // from the first -inf entry.
  ChiRatioTable(ConstituentKind kind, Eigen::VectorXd log_ratio,
                std::shared_ptr<const SchmidtSpectrum> source = nullptr);

  ConstituentKind kind() const { return kind_; }
  int max_n() const { return static_cast<int>(log_ratio_.size()); }

  const Eigen::VectorXd& log_ratio() const { return log_ratio_; }
  double log_ratio(int n) const { return log_ratio_[n]; }
  // χ_{n+1}/χ_n.
  double ratio(int n) const;

  // Smallest n with χ_n = 0, if any. For fermion pairs this is rank + 1 even
  // when it lies beyond the table.
  std::optional<int> exhausted_at() const { return exhausted_at_; }

  const std::shared_ptr<const SchmidtSpectrum>& source() const { return source_; }

 private:
  friend ChiRatioTable chi_ratio_table(const SchmidtSpectrum&, int);
  friend ChiRatioTable newton_chi_ratio_table(const SchmidtSpectrum&, int);

  ConstituentKind kind_;
  Eigen::VectorXd log_ratio_;
  std::optional<int> exhausted_at_;
  std::shared_ptr<const SchmidtSpectrum> source_;
};

// Ratios from the mode-by-mode recurrences
//   e_k <- e_k + λ_p e_{k-1},   h_k <- h_k + λ_p h_{k-1},
// which add positive terms only; values are carried in ExtReal so neither
// long spectra nor large n under/overflow. Classical and Ideal kinds give the
// all-ones table (their ladders never read it).
ChiRatioTable chi_ratio_table(const SchmidtSpectrum& s, int max_n);

// Same ratios from Newton's identities
//   n e_n = Σ_{k=1..n} (-1)^{k-1} e_{n-k} p_k,   n h_n = Σ_{k=1..n} h_{n-k} p_k
// with the running row rescaled at every step. Stable for boson pairs; the
// alternating fermionic sum loses digits near exhaustion and throws
// NumericInstability when a computed e_n is no longer positive.
ChiRatioTable newton_chi_ratio_table(const SchmidtSpectrum& s, int max_n);

// All ratios equal to one (elementary bosons).
ChiRatioTable ideal_chi_ratio_table(int max_n);

// Uniform spectrum of rank d: (d-n)/d for fermions (1 <= n <= d),
// (d+n)/d for bosons (n >= 1).
double chi_ratio_uniform_closed_form(int d, ConstituentKind kind, int n);

}  // namespace coboson
