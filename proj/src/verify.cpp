#include "coboson/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "coboson/io.hpp"
#include "coboson/ladder.hpp"
#include "coboson/oracle.hpp"
#include "coboson/symfunc.hpp"

namespace coboson {

std::vector<SchmidtSpectrum> oracle_grid(std::uint64_t seed) {
  std::vector<SchmidtSpectrum> base;
  for (int d = 2; d <= 5; ++d) base.push_back(make_uniform(d));
  base.push_back(make_geometric_rank(0.3, 5));
  base.push_back(make_geometric_rank(0.6, 5));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.05, 1.0);
  std::vector<double> values(4);
  for (auto& v : values) v = uniform(rng);
  base.push_back(from_values(values).with_descriptor("random(rank=4;seed=" + std::to_string(seed) + ")"));

  std::vector<SchmidtSpectrum> grid;
  for (auto kind : {ConstituentKind::FermionPair, ConstituentKind::BosonPair})
    for (const auto& s : base) grid.push_back(s.with_kind(kind));
  return grid;
}

std::vector<VerifyRow> verify_spectrum(const SchmidtSpectrum& s, int max_n, int random_probes,
                                       std::uint64_t seed) {
  const ChiRatioTable chi = chi_ratio_table(s, max_n + 1);
  std::vector<double> exact;
  for (int n = 0; n <= max_n + 1; ++n) exact.push_back(oracle::chi_exact(s, n));

  VerifyRow chi_row{"chi_ratio", s.descriptor(), s.kind(), 0.0, 1e-10};
  for (int n = 0; n < max_n; ++n) {
    const double analytic = chi.ratio(n);
    const double oracle_ratio = exact[static_cast<std::size_t>(n)] == 0.0
                                    ? 0.0
                                    : exact[static_cast<std::size_t>(n) + 1] /
                                          exact[static_cast<std::size_t>(n)];
    const double err = std::abs(analytic - oracle_ratio) / std::max(std::abs(oracle_ratio), 1e-300);
    chi_row.max_error = std::max(chi_row.max_error, oracle_ratio == 0.0 ? std::abs(analytic) : err);
  }

  VerifyRow eps_row{"eps_norm", s.descriptor(), s.kind(), 0.0, 1e-10};
  for (int n = 1; n <= max_n; ++n)
    eps_row.max_error =
        std::max(eps_row.max_error, std::abs(epsilon_norm(chi, n) - oracle::eps_exact(s, n)));

  std::vector<oracle::FockState> probes{oracle::FockState::vacuum(s.rank())};
  for (int n = 1; n <= 2; ++n)
    if (s.kind() == ConstituentKind::BosonPair || n <= s.rank())
      probes.push_back(oracle::number_state(s, n));
  std::mt19937_64 rng(seed);
  for (int i = 0; i < random_probes; ++i) probes.push_back(oracle::random_pair_probe(s, rng));
  VerifyRow comm_row{"commutator_identity", s.descriptor(), s.kind(), 0.0, 1e-10};
  for (double r : oracle::verify_commutator_identity(s, probes))
    comm_row.max_error = std::max(comm_row.max_error, r);

  return {chi_row, eps_row, comm_row};
}

std::string verify_table(const std::vector<VerifyRow>& rows) {
  std::string out = "check,spectrum,kind,max_error,tolerance,result\n";
  for (const auto& row : rows) {
    out += row.check + ',' + row.spectrum + ',' + std::string(to_string(row.kind)) + ',' +
           io::format_real(row.max_error) + ',' + io::format_real(row.tolerance) + ',' +
           (row.passed() ? "PASS" : "FAIL") + '\n';
  }
  return out;
}

}  // namespace coboson
