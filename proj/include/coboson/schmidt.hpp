#pragma once

#include <Eigen/Dense>

#include <span>
#include <string>
#include <vector>

#include "coboson/kind.hpp"

namespace coboson {

// Normalized, descending Schmidt coefficients {λ_p} of a two-constituent
// wavefunction together with the constituent statistics.
//
// Immutable once built. Entries are strictly positive, sorted non-increasing
// and sum to 1 within 1e-12; values below 1e-15 * max are dropped.
class SchmidtSpectrum {
 public:
  const Eigen::VectorXd& lambdas() const { return lambdas_; }
  double operator[](Eigen::Index p) const { return lambdas_[p]; }
  int rank() const { return static_cast<int>(lambdas_.size()); }
  ConstituentKind kind() const { return kind_; }

  // Short human label such as "uniform(4)" or "geometric(0.5;tol=1e-12)".
  const std::string& descriptor() const { return descriptor_; }

  SchmidtSpectrum with_kind(ConstituentKind kind) const;
  SchmidtSpectrum with_descriptor(std::string descriptor) const;

  friend bool operator==(const SchmidtSpectrum& a, const SchmidtSpectrum& b) {
    return a.kind_ == b.kind_ && a.lambdas_.size() == b.lambdas_.size() &&
           a.lambdas_ == b.lambdas_;
  }

 private:
  friend SchmidtSpectrum make_uniform(int d, ConstituentKind kind);
  friend SchmidtSpectrum from_values(std::span<const double> values, ConstituentKind kind);

  SchmidtSpectrum(Eigen::VectorXd lambdas, ConstituentKind kind, std::string descriptor)
      : lambdas_(std::move(lambdas)), kind_(kind), descriptor_(std::move(descriptor)) {}

  Eigen::VectorXd lambdas_;
  ConstituentKind kind_;
  std::string descriptor_;
};

// d equal coefficients, each exactly 1/d.
SchmidtSpectrum make_uniform(int d, ConstituentKind kind = ConstituentKind::FermionPair);

// (1-q) q^p for p < P with P the smallest count such that q^P < tail_tol,
// renormalized.
SchmidtSpectrum make_geometric(double q, double tail_tol,
                               ConstituentKind kind = ConstituentKind::FermionPair);

// Geometric family cut at an explicit rank, renormalized.
SchmidtSpectrum make_geometric_rank(double q, int rank,
                                    ConstituentKind kind = ConstituentKind::FermionPair);

// Drops zeros, sorts descending, normalizes. Throws std::invalid_argument on
// negative, non-finite, empty or all-zero input.
SchmidtSpectrum from_values(std::span<const double> values,
                            ConstituentKind kind = ConstituentKind::FermionPair);

// Σ λ_p^2, in [1/rank, 1].
double purity(const SchmidtSpectrum& s);

// p_k = Σ λ_p^k for k = 1..max_power.
std::vector<double> power_sums(const SchmidtSpectrum& s, int max_power);

// Compensated (Neumaier) sum.
double stable_sum(std::span<const double> values);
double stable_sum(const Eigen::Ref<const Eigen::VectorXd>& values);

}  // namespace coboson
