#include "coboson/sweep.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "coboson/errors.hpp"
#include "coboson/io.hpp"
#include "json.hpp"

namespace coboson {
namespace {

std::string csv_cell(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char ch : text) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + '"';
}

std::vector<SchmidtSpectrum> sweep_spectra(const SweepSpec& spec) {
  std::vector<SchmidtSpectrum> out;
  switch (spec.family) {
    case SpectrumFamily::Uniform:
      for (double d : spec.parameters) {
        if (d < 1 || d != std::floor(d))
          throw std::invalid_argument("sweep: uniform rank must be a positive integer");
        out.push_back(make_uniform(static_cast<int>(d), spec.kind));
      }
      break;
    case SpectrumFamily::Geometric:
      for (double q : spec.parameters) out.push_back(make_geometric(q, spec.spectrum_tail_tol, spec.kind));
      break;
    case SpectrumFamily::File:
      out.push_back(io::load_spectrum(spec.file, spec.kind));
      break;
    case SpectrumFamily::None:
      if (spec.kind != ConstituentKind::Classical && spec.kind != ConstituentKind::Ideal)
        throw std::invalid_argument("sweep: fermion/boson kinds need a spectrum");
      out.push_back(make_uniform(1, spec.kind).with_descriptor("none"));
      break;
  }
  if (out.empty()) throw std::invalid_argument("sweep: empty spectrum grid");
  return out;
}

std::string status_for(const std::exception_ptr& error) {
  try {
    std::rethrow_exception(error);
  } catch (const DivergentEigenvalue&) {
    return "DIVERGENT";
  } catch (const ExhaustedLadder&) {
    return "EXHAUSTED";
  } catch (const TailNotBounded&) {
    return "TAIL_UNBOUNDED";
  } catch (...) {
    return "ERROR";
  }
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  const auto first = text.find(':');
  if (first == std::string::npos) return {std::stod(text)};
  const auto second = text.find(':', first + 1);
  if (second == std::string::npos)
    throw std::invalid_argument("grid must be START:STOP:STEP, got '" + text + "'");
  const double start = std::stod(text.substr(0, first));
  const double stop = std::stod(text.substr(first + 1, second - first - 1));
  const double step = std::stod(text.substr(second + 1));
  if (!(step > 0.0) || stop < start)
    throw std::invalid_argument("grid needs STEP > 0 and STOP >= START: '" + text + "'");
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) grid.push_back(start + static_cast<double>(i) * step);
  return grid;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  if (spec.gamma_abs.empty()) throw std::invalid_argument("sweep: empty gamma grid");
  if (spec.jobs < 1) throw std::invalid_argument("sweep: jobs must be >= 1");
  const auto spectra = sweep_spectra(spec);

  // One ladder per spectrum, shared read-only by all workers.
  std::vector<std::optional<LadderTable>> ladders(spectra.size());
  std::vector<std::exception_ptr> ladder_errors(spectra.size());
  for (std::size_t i = 0; i < spectra.size(); ++i) {
    try {
      ladders[i] = ladder_table(spectra[i], spec.max_n);
    } catch (...) {
      ladder_errors[i] = std::current_exception();
    }
  }

  const std::size_t per_spectrum = spec.gamma_abs.size();
  std::vector<SweepRow> rows(spectra.size() * per_spectrum);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      const std::size_t s = i / per_spectrum;
      SweepRow& row = rows[i];
      row.spectrum = spectra[s].descriptor();
      row.kind = spec.kind;
      row.gamma_abs = spec.gamma_abs[i % per_spectrum];
      if (ladder_errors[s]) {
        row.status = status_for(ladder_errors[s]);
        continue;
      }
      try {
        const auto state = build(Complex(row.gamma_abs, 0.0), *ladders[s], spec.tail_tol);
        row.report = observe(state, row.spectrum);
      } catch (...) {
        row.status = status_for(std::current_exception());
      }
    }
  };

  const auto threads = std::min<std::size_t>(static_cast<std::size_t>(spec.jobs), rows.size());
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out(io::kSweepHeader);
  out += '\n';
  for (const auto& row : rows) {
    out += csv_cell(row.spectrum) + ',' + std::string(to_string(row.kind)) + ',' +
           io::format_real(row.gamma_abs) + ',';
    if (row.report) {
      const auto& r = *row.report;
      out += io::format_real(r.commutator_expectation) + ',' + io::format_real(r.var_x) + ',' +
             (r.mandel_q_eff ? io::format_real(*r.mandel_q_eff) : std::string("NA")) + ',' +
             io::format_real(r.mean_n) + ',' + io::format_mon(r.mon) + ',' +
             std::to_string(r.cutoff) + ',' + io::format_real(r.tail_mass_bound) + ',';
    } else {
      out += ",,,,,,,";
    }
    out += row.status + '\n';
  }
  return out;
}

std::string sweep_json(const std::vector<SweepRow>& rows) {
  auto doc = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json item;
    if (row.report) {
      item = nlohmann::ordered_json::parse(io::report_json(*row.report));
    } else {
      item["spectrum"] = row.spectrum;
      item["kind"] = std::string(to_string(row.kind));
      item["gamma_abs"] = std::stod(io::format_real(row.gamma_abs));
    }
    item["status"] = row.status;
    doc.push_back(std::move(item));
  }
  return doc.dump(2) + "\n";
}

}  // namespace coboson
