#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coboson/schmidt.hpp"

namespace coboson {

// One oracle-vs-analytic comparison.
struct VerifyRow {
  std::string check;  // chi_ratio, eps_norm, commutator_identity
  std::string spectrum;
  ConstituentKind kind;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed() const { return max_error <= tolerance; }
};

// Small-instance grid: uniform d = 2..5, geometric q in {0.3, 0.6} cut at
// rank 5, and one random rank-4 spectrum, each as fermion and boson pairs.
std::vector<SchmidtSpectrum> oracle_grid(std::uint64_t seed = 20140101);

// Compares chi_ratio_table against chi_exact (relative), epsilon_norm against
// eps_exact (absolute) for n <= max_n, and checks [c,c†] = 1 + sΔ on the
// vacuum, |1>, |2> and random_probes random pair-sector states.
std::vector<VerifyRow> verify_spectrum(const SchmidtSpectrum& s, int max_n = 5,
                                       int random_probes = 20, std::uint64_t seed = 7);

std::string verify_table(const std::vector<VerifyRow>& rows);

}  // namespace coboson
