#include "coboson/symfunc.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "coboson/errors.hpp"
#include "coboson/ext_real.hpp"

namespace coboson {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_finite(const ExtReal& x, int n) {
  if (!x.is_finite())
    throw NumericInstability("symmetric-function recurrence produced a non-finite value at n=" +
                                 std::to_string(n),
                             n);
}

// ln((n+1) g_{n+1}/g_n) for n = 0..max_n-1; g_k = 0 entries map to -inf.
Eigen::VectorXd log_ratios(const std::vector<ExtReal>& g, int max_n) {
  Eigen::VectorXd out(max_n);
  for (int n = 0; n < max_n; ++n) {
    const auto next = static_cast<std::size_t>(n + 1);
    if (next >= g.size() || g[next].is_zero()) {
      out[n] = kNegInf;
      continue;
    }
    out[n] = std::log(static_cast<double>(n + 1)) + (g[next] / g[next - 1]).log_abs();
  }
  return out;
}

void require_max_n(int max_n) {
  if (max_n < 1) throw std::invalid_argument("chi ratio table: max_n must be >= 1");
}

bool uses_symmetric_functions(ConstituentKind kind) {
  return kind == ConstituentKind::FermionPair || kind == ConstituentKind::BosonPair;
}

}  // namespace

ChiRatioTable::ChiRatioTable(ConstituentKind kind, Eigen::VectorXd log_ratio,
                             std::shared_ptr<const SchmidtSpectrum> source)
    : kind_(kind), log_ratio_(std::move(log_ratio)), source_(std::move(source)) {
  for (Eigen::Index n = 0; n < log_ratio_.size(); ++n) {
    if (log_ratio_[n] == kNegInf) {
      exhausted_at_ = static_cast<int>(n) + 1;
      break;
    }
  }
}

double ChiRatioTable::ratio(int n) const {
  const double lr = log_ratio_[n];
  return lr == kNegInf ? 0.0 : std::exp(lr);
}

ChiRatioTable chi_ratio_table(const SchmidtSpectrum& s, int max_n) {
  require_max_n(max_n);
  auto source = std::make_shared<const SchmidtSpectrum>(s);
  if (!uses_symmetric_functions(s.kind()))
    return ChiRatioTable(s.kind(), Eigen::VectorXd::Zero(max_n), std::move(source));

  const bool fermion = s.kind() == ConstituentKind::FermionPair;
  // e_k vanishes for k > rank, so the fermionic row stops there.
  const int top = fermion ? std::min(max_n, s.rank()) : max_n;
  std::vector<ExtReal> g(static_cast<std::size_t>(top) + 1);
  g[0] = ExtReal(1.0);

  int modes_seen = 0;
  for (Eigen::Index p = 0; p < s.lambdas().size(); ++p) {
    const ExtReal lambda(s[p]);
    ++modes_seen;
    if (fermion) {
      for (int k = std::min(top, modes_seen); k >= 1; --k) g[k] += lambda * g[k - 1];
    } else {
      for (int k = 1; k <= top; ++k) g[k] += lambda * g[k - 1];
    }
  }
  for (int k = 0; k <= top; ++k) check_finite(g[k], k);

  ChiRatioTable table(s.kind(), log_ratios(g, max_n), std::move(source));
  if (fermion) table.exhausted_at_ = s.rank() + 1;
  return table;
}

ChiRatioTable newton_chi_ratio_table(const SchmidtSpectrum& s, int max_n) {
  require_max_n(max_n);
  auto source = std::make_shared<const SchmidtSpectrum>(s);
  if (!uses_symmetric_functions(s.kind()))
    return ChiRatioTable(s.kind(), Eigen::VectorXd::Zero(max_n), std::move(source));

  const bool fermion = s.kind() == ConstituentKind::FermionPair;
  const int top = fermion ? std::min(max_n, s.rank()) : max_n;

  // Power sums p_k, carried with their own exponent.
  std::vector<ExtReal> power(static_cast<std::size_t>(top) + 1);
  {
    std::vector<ExtReal> lambda_pow;
    lambda_pow.reserve(static_cast<std::size_t>(s.rank()));
    for (Eigen::Index p = 0; p < s.lambdas().size(); ++p) lambda_pow.emplace_back(s[p]);
    for (int k = 1; k <= top; ++k) {
      ExtReal sum;
      for (std::size_t p = 0; p < lambda_pow.size(); ++p) {
        sum += lambda_pow[p];
        lambda_pow[p] *= ExtReal(s[static_cast<Eigen::Index>(p)]);
      }
      power[static_cast<std::size_t>(k)] = sum;
    }
  }

  // Each g_n keeps its own binary scale, so the row is renormalized at every
  // step and no g_n ever leaves the double range.
  std::vector<ExtReal> g(static_cast<std::size_t>(top) + 1);
  g[0] = ExtReal(1.0);
  for (int n = 1; n <= top; ++n) {
    ExtReal sum;
    for (int k = 1; k <= n; ++k) {
      const ExtReal term = g[static_cast<std::size_t>(n - k)] * power[static_cast<std::size_t>(k)];
      if (fermion && (k % 2 == 0))
        sum -= term;
      else
        sum += term;
    }
    g[static_cast<std::size_t>(n)] = sum / static_cast<double>(n);
    check_finite(g[static_cast<std::size_t>(n)], n);
    if (g[static_cast<std::size_t>(n)].sign() <= 0)
      throw NumericInstability(
          "Newton recurrence lost positivity at n=" + std::to_string(n) + " (cancellation)", n);
  }

  ChiRatioTable table(s.kind(), log_ratios(g, max_n), std::move(source));
  if (fermion) table.exhausted_at_ = s.rank() + 1;
  return table;
}

ChiRatioTable ideal_chi_ratio_table(int max_n) {
  require_max_n(max_n);
  return ChiRatioTable(ConstituentKind::Ideal, Eigen::VectorXd::Zero(max_n));
}

double chi_ratio_uniform_closed_form(int d, ConstituentKind kind, int n) {
  if (d < 1) throw std::invalid_argument("closed form: d must be >= 1");
  switch (kind) {
    case ConstituentKind::FermionPair:
      if (n < 1 || n > d) throw std::invalid_argument("closed form: fermion n must lie in [1, d]");
      return static_cast<double>(d - n) / d;
    case ConstituentKind::BosonPair:
      if (n < 1) throw std::invalid_argument("closed form: boson n must be >= 1");
      return static_cast<double>(d + n) / d;
    default:
      throw std::invalid_argument("closed form: only fermion or boson pairs");
  }
}

}  // namespace coboson
