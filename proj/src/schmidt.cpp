#include "coboson/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace coboson {
namespace {

constexpr double kRelativeZero = 1e-15;

std::string format_param(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

double stable_sum(std::span<const double> values) {
  double sum = 0.0;
  double comp = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  return sum + comp;
}

double stable_sum(const Eigen::Ref<const Eigen::VectorXd>& values) {
  return stable_sum(std::span<const double>(values.data(), static_cast<std::size_t>(values.size())));
}

SchmidtSpectrum SchmidtSpectrum::with_kind(ConstituentKind kind) const {
  SchmidtSpectrum copy = *this;
  copy.kind_ = kind;
  return copy;
}

SchmidtSpectrum SchmidtSpectrum::with_descriptor(std::string descriptor) const {
  SchmidtSpectrum copy = *this;
  copy.descriptor_ = std::move(descriptor);
  return copy;
}

SchmidtSpectrum make_uniform(int d, ConstituentKind kind) {
  if (d < 1) throw std::invalid_argument("make_uniform: d must be >= 1");
  return SchmidtSpectrum(Eigen::VectorXd::Constant(d, 1.0 / d), kind,
                         "uniform(" + std::to_string(d) + ")");
}

SchmidtSpectrum make_geometric(double q, double tail_tol, ConstituentKind kind) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("make_geometric: q must lie in (0,1)");
  if (!(tail_tol > 0.0 && tail_tol < 1.0))
    throw std::invalid_argument("make_geometric: tail_tol must lie in (0,1)");
  int count = 1;
  while (std::pow(q, count) >= tail_tol) ++count;
  return make_geometric_rank(q, count, kind)
      .with_descriptor("geometric(" + format_param(q) + ";tol=" + format_param(tail_tol) + ")");
}

SchmidtSpectrum make_geometric_rank(double q, int rank, ConstituentKind kind) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("make_geometric: q must lie in (0,1)");
  if (rank < 1) throw std::invalid_argument("make_geometric: rank must be >= 1");
  std::vector<double> values(static_cast<std::size_t>(rank));
  double term = 1.0 - q;
  for (auto& v : values) {
    v = term;
    term *= q;
  }
  return from_values(values, kind)
      .with_descriptor("geometric(" + format_param(q) + ";rank=" + std::to_string(rank) + ")");
}

SchmidtSpectrum from_values(std::span<const double> values, ConstituentKind kind) {
  if (values.empty()) throw std::invalid_argument("spectrum: no values");
  double max_value = 0.0;
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("spectrum: non-finite value");
    if (v < 0.0) throw std::invalid_argument("spectrum: negative value");
    max_value = std::max(max_value, v);
  }
  if (max_value == 0.0) throw std::invalid_argument("spectrum: all values are zero");

  std::vector<double> kept;
  kept.reserve(values.size());
  for (double v : values)
    if (v > kRelativeZero * max_value) kept.push_back(v);
  std::sort(kept.begin(), kept.end(), std::greater<>());

  const double total = stable_sum(kept);
  Eigen::VectorXd lambdas(static_cast<Eigen::Index>(kept.size()));
  for (std::size_t i = 0; i < kept.size(); ++i) lambdas[static_cast<Eigen::Index>(i)] = kept[i] / total;
  return SchmidtSpectrum(std::move(lambdas), kind, "values(" + std::to_string(kept.size()) + ")");
}

double purity(const SchmidtSpectrum& s) {
  const Eigen::VectorXd squares = s.lambdas().array().square();
  return stable_sum(squares);
}

std::vector<double> power_sums(const SchmidtSpectrum& s, int max_power) {
  if (max_power < 1) throw std::invalid_argument("power_sums: K must be >= 1");
  std::vector<double> sums;
  sums.reserve(static_cast<std::size_t>(max_power));
  Eigen::VectorXd powers = s.lambdas();
  for (int k = 1; k <= max_power; ++k) {
    sums.push_back(stable_sum(powers));
    powers.array() *= s.lambdas().array();
  }
  return sums;
}

}  // namespace coboson
