#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "coboson/schmidt.hpp"

namespace coboson::oracle {

using Complex = std::complex<double>;

// Occupations laid out as [a_0..a_{S-1}, b_0..b_{S-1}] whatever the operator
// ordering used for fermionic signs.
using Occupation = std::vector<std::uint8_t>;

// Global ordering of the 2S constituent modes for fermionic sign counting.
enum class ModeOrdering { ABlocked, Interleaved };

struct FockOptions {
  ModeOrdering ordering = ModeOrdering::ABlocked;
  // Bosonic occupation cap per constituent mode.
  int boson_cap = 8;
  // Resource cap on the number of basis states in any intermediate vector.
  std::size_t max_basis_states = 200000;
};

// Sparse vector over occupation-number states, iterated in lexicographic
// occupation order.
class FockState {
 public:
  explicit FockState(int modes) : modes_(modes) {}

  static FockState vacuum(int modes);

  int modes() const { return modes_; }
  const std::map<Occupation, Complex>& amplitudes() const { return amps_; }
  std::size_t size() const { return amps_.size(); }

  void add(const Occupation& occ, Complex amp);
  Complex amplitude(const Occupation& occ) const;

  FockState& operator+=(const FockState& o);
  FockState& operator-=(const FockState& o);
  FockState& operator*=(Complex s);
  friend FockState operator+(FockState a, const FockState& b) { return a += b; }
  friend FockState operator-(FockState a, const FockState& b) { return a -= b; }
  friend FockState operator*(Complex s, FockState a) { return a *= s; }

  // a and b occupations equal in every stored configuration.
  bool is_pair_symmetric() const;

 private:
  int modes_;
  std::map<Occupation, Complex> amps_;
};

Complex inner(const FockState& u, const FockState& v);
double norm(const FockState& v);

// ĉ† = Σ_p sqrt(λ_p) a†_p b†_p, built from elementary constituent operators.
// Throws TruncationError past the boson cap and InstanceTooLarge past the
// basis-size cap. Only FermionPair and BosonPair spectra are accepted.
FockState apply_pair_creation(const FockState& state, const SchmidtSpectrum& s,
                              const FockOptions& opts = {});
// ĉ = Σ_p sqrt(λ_p) b_p a_p, the adjoint of apply_pair_creation.
FockState apply_pair_annihilation(const FockState& state, const SchmidtSpectrum& s,
                                  const FockOptions& opts = {});
// Δ = Σ_p λ_p (a†_p a_p + b†_p b_p).
FockState apply_delta(const FockState& state, const SchmidtSpectrum& s);

// <0| ĉ^n ĉ†^n |0> / n!.
double chi_exact(const SchmidtSpectrum& s, int n, const FockOptions& opts = {});

// Normalized |n> = ĉ†^n |0> / sqrt(n! χ_n).
FockState number_state(const SchmidtSpectrum& s, int n, const FockOptions& opts = {});

// Residual norm^2 of ĉ|n> after projecting out |n-1>.
double eps_exact(const SchmidtSpectrum& s, int n, const FockOptions& opts = {});

// Random normalized state on the pair sector with at most max_pairs_per_mode
// pairs in each mode (fermions: at most one).
FockState random_pair_probe(const SchmidtSpectrum& s, std::mt19937_64& rng,
                            int max_pairs_per_mode = 2);

struct OracleReport {
  std::vector<double> chi_exact;  // χ_0..χ_max_n
  std::vector<double> eps_exact;  // ε_0..ε_max_n (0 where |n> does not exist)
  // ‖([ĉ,ĉ†] - 1 - sΔ)|probe>‖ per probe.
  std::vector<double> commutator_residuals;
};

std::vector<double> verify_commutator_identity(const SchmidtSpectrum& s,
                                               const std::vector<FockState>& probes,
                                               const FockOptions& opts = {});

OracleReport oracle_report(const SchmidtSpectrum& s, int max_n,
                           const std::vector<FockState>& probes, const FockOptions& opts = {});

}  // namespace coboson::oracle
