#include "coboson/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "coboson/errors.hpp"

namespace coboson::oracle {
namespace {

enum class Species { A = 0, B = 1 };

struct Context {
  int modes;
  bool fermion;
  const FockOptions& opts;

  std::size_t slot(Species sp, int p) const {
    return static_cast<std::size_t>(static_cast<int>(sp) * modes + p);
  }

  int position(Species sp, int p) const {
    if (opts.ordering == ModeOrdering::ABlocked) return static_cast<int>(sp) * modes + p;
    return 2 * p + static_cast<int>(sp);
  }

  // (-1)^(occupied modes ordered before the target).
  double fermion_sign(const Occupation& occ, Species sp, int p) const {
    const int target = position(sp, p);
    int count = 0;
    for (int q = 0; q < modes; ++q) {
      if (occ[slot(Species::A, q)] && position(Species::A, q) < target) ++count;
      if (occ[slot(Species::B, q)] && position(Species::B, q) < target) ++count;
    }
    return (count % 2) ? -1.0 : 1.0;
  }

  // Applies a† (raise) or a to one configuration in place; returns the matrix
  // element, 0 when the result vanishes.
  double raise(Occupation& occ, Species sp, int p) const {
    auto& k = occ[slot(sp, p)];
    if (fermion) {
      if (k) return 0.0;
      const double sign = fermion_sign(occ, sp, p);
      k = 1;
      return sign;
    }
    if (k + 1 > opts.boson_cap)
      throw TruncationError("oracle: bosonic occupation would exceed cap " +
                            std::to_string(opts.boson_cap));
    ++k;
    return std::sqrt(static_cast<double>(k));
  }

  double lower(Occupation& occ, Species sp, int p) const {
    auto& k = occ[slot(sp, p)];
    if (k == 0) return 0.0;
    if (fermion) {
      const double sign = fermion_sign(occ, sp, p);
      k = 0;
      return sign;
    }
    const double elem = std::sqrt(static_cast<double>(k));
    --k;
    return elem;
  }
};

Context make_context(const SchmidtSpectrum& s, const FockOptions& opts) {
  if (s.kind() != ConstituentKind::FermionPair && s.kind() != ConstituentKind::BosonPair)
    throw std::invalid_argument("oracle: only fermion or boson pair spectra");
  return {s.rank(), s.kind() == ConstituentKind::FermionPair, opts};
}

void check_size(const FockState& v, const FockOptions& opts) {
  if (v.size() > opts.max_basis_states)
    throw InstanceTooLarge("oracle: intermediate state has " + std::to_string(v.size()) +
                           " configurations (cap " + std::to_string(opts.max_basis_states) + ")");
}

void check_modes(const FockState& v, const SchmidtSpectrum& s) {
  if (v.modes() != s.rank())
    throw std::invalid_argument("oracle: state has " + std::to_string(v.modes()) +
                                " mode pairs, spectrum has " + std::to_string(s.rank()));
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

FockState power_of_creation(const SchmidtSpectrum& s, int n, const FockOptions& opts) {
  FockState v = FockState::vacuum(s.rank());
  for (int i = 0; i < n; ++i) v = apply_pair_creation(v, s, opts);
  return v;
}

}  // namespace

FockState FockState::vacuum(int modes) {
  FockState v(modes);
  v.add(Occupation(static_cast<std::size_t>(2 * modes), 0), 1.0);
  return v;
}

void FockState::add(const Occupation& occ, Complex amp) {
  if (occ.size() != static_cast<std::size_t>(2 * modes_))
    throw std::invalid_argument("FockState: occupation length mismatch");
  amps_[occ] += amp;
}

Complex FockState::amplitude(const Occupation& occ) const {
  const auto it = amps_.find(occ);
  return it == amps_.end() ? Complex{} : it->second;
}

FockState& FockState::operator+=(const FockState& o) {
  for (const auto& [occ, amp] : o.amps_) add(occ, amp);
  return *this;
}

FockState& FockState::operator-=(const FockState& o) {
  for (const auto& [occ, amp] : o.amps_) add(occ, -amp);
  return *this;
}

FockState& FockState::operator*=(Complex s) {
  for (auto& [occ, amp] : amps_) amp *= s;
  return *this;
}

bool FockState::is_pair_symmetric() const {
  const auto half = static_cast<std::size_t>(modes_);
  for (const auto& [occ, amp] : amps_)
    for (std::size_t p = 0; p < half; ++p)
      if (occ[p] != occ[half + p]) return false;
  return true;
}

Complex inner(const FockState& u, const FockState& v) {
  Complex sum{};
  for (const auto& [occ, amp] : u.amplitudes()) sum += std::conj(amp) * v.amplitude(occ);
  return sum;
}

double norm(const FockState& v) {
  double sum = 0.0;
  for (const auto& [occ, amp] : v.amplitudes()) sum += std::norm(amp);
  return std::sqrt(sum);
}

FockState apply_pair_creation(const FockState& state, const SchmidtSpectrum& s,
                              const FockOptions& opts) {
  check_modes(state, s);
  const Context ctx = make_context(s, opts);
  FockState out(s.rank());
  for (const auto& [occ, amp] : state.amplitudes()) {
    for (int p = 0; p < s.rank(); ++p) {
      Occupation next = occ;
      const double b_elem = ctx.raise(next, Species::B, p);
      if (b_elem == 0.0) continue;
      const double a_elem = ctx.raise(next, Species::A, p);
      if (a_elem == 0.0) continue;
      out.add(next, std::sqrt(s[p]) * a_elem * b_elem * amp);
    }
  }
  check_size(out, opts);
  return out;
}

FockState apply_pair_annihilation(const FockState& state, const SchmidtSpectrum& s,
                                  const FockOptions& opts) {
  check_modes(state, s);
  const Context ctx = make_context(s, opts);
  FockState out(s.rank());
  for (const auto& [occ, amp] : state.amplitudes()) {
    for (int p = 0; p < s.rank(); ++p) {
      Occupation next = occ;
      const double a_elem = ctx.lower(next, Species::A, p);
      if (a_elem == 0.0) continue;
      const double b_elem = ctx.lower(next, Species::B, p);
      if (b_elem == 0.0) continue;
      out.add(next, std::sqrt(s[p]) * a_elem * b_elem * amp);
    }
  }
  check_size(out, opts);
  return out;
}

FockState apply_delta(const FockState& state, const SchmidtSpectrum& s) {
  check_modes(state, s);
  const auto modes = static_cast<std::size_t>(s.rank());
  FockState out(s.rank());
  for (const auto& [occ, amp] : state.amplitudes()) {
    double weight = 0.0;
    for (std::size_t p = 0; p < modes; ++p)
      weight += s[static_cast<Eigen::Index>(p)] * (occ[p] + occ[modes + p]);
    if (weight != 0.0) out.add(occ, weight * amp);
  }
  return out;
}

double chi_exact(const SchmidtSpectrum& s, int n, const FockOptions& opts) {
  if (n < 0) throw std::invalid_argument("chi_exact: n must be >= 0");
  FockState v = power_of_creation(s, n, opts);
  for (int i = 0; i < n; ++i) v = apply_pair_annihilation(v, s, opts);
  const Occupation vac(static_cast<std::size_t>(2 * s.rank()), 0);
  return v.amplitude(vac).real() / factorial(n);
}

FockState number_state(const SchmidtSpectrum& s, int n, const FockOptions& opts) {
  if (n < 0) throw std::invalid_argument("number_state: n must be >= 0");
  FockState v = power_of_creation(s, n, opts);
  const double length = norm(v);
  if (length == 0.0)
    throw std::invalid_argument("number_state: |" + std::to_string(n) + "> does not exist");
  v *= 1.0 / length;
  return v;
}

double eps_exact(const SchmidtSpectrum& s, int n, const FockOptions& opts) {
  if (n < 1) throw std::invalid_argument("eps_exact: n must be >= 1");
  if (norm(power_of_creation(s, n, opts)) == 0.0) return 0.0;
  const FockState upper = number_state(s, n, opts);
  const FockState lower = number_state(s, n - 1, opts);
  FockState lowered = apply_pair_annihilation(upper, s, opts);
  const Complex overlap = inner(lower, lowered);
  lowered -= overlap * lower;
  const double r = norm(lowered);
  return r * r;
}

FockState random_pair_probe(const SchmidtSpectrum& s, std::mt19937_64& rng,
                            int max_pairs_per_mode) {
  const int modes = s.rank();
  const int top = s.kind() == ConstituentKind::FermionPair ? 1 : max_pairs_per_mode;
  std::normal_distribution<double> gauss;
  FockState v(modes);
  Occupation occ(static_cast<std::size_t>(2 * modes), 0);
  // Odometer over all per-mode pair counts in [0, top].
  for (;;) {
    v.add(occ, Complex(gauss(rng), gauss(rng)));
    int p = 0;
    for (; p < modes; ++p) {
      auto idx = static_cast<std::size_t>(p);
      if (occ[idx] < top) {
        ++occ[idx];
        ++occ[idx + static_cast<std::size_t>(modes)];
        break;
      }
      occ[idx] = 0;
      occ[idx + static_cast<std::size_t>(modes)] = 0;
    }
    if (p == modes) break;
  }
  v *= 1.0 / norm(v);
  return v;
}

std::vector<double> verify_commutator_identity(const SchmidtSpectrum& s,
                                               const std::vector<FockState>& probes,
                                               const FockOptions& opts) {
  const double sign = commutator_sign(s.kind());
  std::vector<double> residuals;
  residuals.reserve(probes.size());
  for (const auto& probe : probes) {
    FockState diff = apply_pair_annihilation(apply_pair_creation(probe, s, opts), s, opts);
    diff -= apply_pair_creation(apply_pair_annihilation(probe, s, opts), s, opts);
    diff -= probe;
    diff -= Complex(sign) * apply_delta(probe, s);
    residuals.push_back(norm(diff));
  }
  return residuals;
}

OracleReport oracle_report(const SchmidtSpectrum& s, int max_n,
                           const std::vector<FockState>& probes, const FockOptions& opts) {
  OracleReport report;
  for (int n = 0; n <= max_n; ++n) {
    report.chi_exact.push_back(chi_exact(s, n, opts));
    report.eps_exact.push_back(n == 0 ? 0.0 : eps_exact(s, n, opts));
  }
  report.commutator_residuals = verify_commutator_identity(s, probes, opts);
  return report;
}

}  // namespace coboson::oracle
