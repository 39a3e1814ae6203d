#include "coboson/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "coboson/errors.hpp"

namespace coboson {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kClampTolerance = 1e-12;

void require_rows(int max_n) {
  if (max_n < 1) throw std::invalid_argument("ladder: max_n must be >= 1");
}

}  // namespace

LadderTable classical_ladder(int max_n) {
  require_rows(max_n);
  LadderTable t;
  t.kind_ = ConstituentKind::Classical;
  t.f_ = Eigen::VectorXd::Ones(max_n + 1);
  t.f_sq_ = t.f_;
  t.eps_norm_ = Eigen::VectorXd::Zero(max_n);
  return t;
}

LadderTable ideal_ladder(int max_n) {
  require_rows(max_n);
  LadderTable t;
  t.kind_ = ConstituentKind::Ideal;
  t.f_sq_ = Eigen::VectorXd::LinSpaced(max_n + 1, 0.0, static_cast<double>(max_n));
  t.f_sq_[0] = 1.0;  // f_0 = 1 convention
  t.f_ = t.f_sq_.cwiseSqrt();
  t.eps_norm_ = Eigen::VectorXd::Zero(max_n);
  return t;
}

LadderTable ladder_table(const ChiRatioTable& chi, ConstituentKind kind, int max_n) {
  require_rows(max_n);
  if (kind == ConstituentKind::Classical) return classical_ladder(max_n);
  if (kind == ConstituentKind::Ideal) return ideal_ladder(max_n);
  if (chi.max_n() < max_n)
    throw std::invalid_argument("ladder: chi table has " + std::to_string(chi.max_n()) +
                                " ratios, need " + std::to_string(max_n));

  LadderTable t;
  t.kind_ = kind;
  t.source_ = chi.source();
  t.f_sq_.resize(max_n + 1);
  t.f_sq_[0] = 1.0;
  for (int n = 1; n <= max_n; ++n) {
    const double lr = chi.log_ratio(n - 1);
    t.f_sq_[n] = lr == kNegInf ? 0.0 : std::exp(std::log(static_cast<double>(n)) + lr);
  }
  t.f_ = t.f_sq_.cwiseSqrt();

  t.eps_norm_ = Eigen::VectorXd::Zero(max_n);
  for (int n = 1; n < max_n; ++n) t.eps_norm_[n] = epsilon_norm(chi, n);

  t.exhausted_at_ = chi.exhausted_at();
  return t;
}

LadderTable ladder_table(const SchmidtSpectrum& s, int max_n) {
  return ladder_table(chi_ratio_table(s, max_n), s.kind(), max_n);
}

bool LadderTable::extendable() const {
  return kind_ == ConstituentKind::Classical || kind_ == ConstituentKind::Ideal ||
         source_ != nullptr;
}

LadderTable LadderTable::extended(int max_n) const {
  max_n = std::max(max_n, this->max_n());
  switch (kind_) {
    case ConstituentKind::Classical: return classical_ladder(max_n);
    case ConstituentKind::Ideal: return ideal_ladder(max_n);
    default: break;
  }
  if (!source_) throw std::logic_error("ladder: table has no spectrum to extend from");
  return ladder_table(chi_ratio_table(*source_, max_n), kind_, max_n);
}

double epsilon_norm(const ChiRatioTable& chi, int n) {
  if (n < 1) throw std::invalid_argument("epsilon_norm: n must be >= 1");
  if (chi.max_n() <= n)
    throw std::invalid_argument("epsilon_norm: chi table must cover n+1 = " +
                                std::to_string(n + 1));
  const bool chi_n_zero = chi.log_ratio(n - 1) == kNegInf;
  const bool chi_next_zero = chi.log_ratio(n) == kNegInf;
  if (chi_n_zero) {
    if (!chi_next_zero)
      throw InconsistentTable("epsilon_norm: chi_" + std::to_string(n) +
                              " = 0 but chi_" + std::to_string(n + 1) + " != 0");
    return 0.0;  // |n> does not exist
  }
  const double lowering = n * chi.ratio(n - 1);
  const double raising = (n - 1) * chi.ratio(n);
  const double value = 1.0 - lowering + raising;
  if (value >= 0.0) return value;
  const double scale = std::max(1.0, lowering + raising);
  if (value >= -kClampTolerance * scale) return 0.0;
  throw InconsistentTable("epsilon_norm: negative squared norm " + std::to_string(value) +
                          " at n=" + std::to_string(n));
}

Eigen::VectorXd commutator_diagonal(const LadderTable& ladder, int max_n) {
  if (max_n < 0 || ladder.max_n() <= max_n)
    throw std::invalid_argument("commutator_diagonal: ladder must cover max_n+1");
  const auto& fsq = ladder.f_squared();
  Eigen::VectorXd diag(max_n + 1);
  diag[0] = fsq[1];
  diag.tail(max_n) = fsq.segment(2, max_n) - fsq.segment(1, max_n);
  return diag;
}

}  // namespace coboson
