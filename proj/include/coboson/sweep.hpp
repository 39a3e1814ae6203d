#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coboson/coherent.hpp"
#include "coboson/schmidt.hpp"

namespace coboson {

enum class SpectrumFamily { Uniform, Geometric, File, None };

// Parameter grid for a sweep: one spectrum per family parameter, crossed with
// a grid of |γ| values.
struct SweepSpec {
  SpectrumFamily family = SpectrumFamily::Uniform;
  std::vector<double> parameters;  // d values, q values; unused otherwise
  std::string file;
  ConstituentKind kind = ConstituentKind::FermionPair;
  std::vector<double> gamma_abs;
  double tail_tol = 1e-12;
  // Tail tolerance used when truncating geometric spectra.
  double spectrum_tail_tol = 1e-12;
  int max_n = 4096;
  int jobs = 1;
};

// Inclusive START:STOP:STEP grid. Throws std::invalid_argument on a bad spec.
std::vector<double> parse_grid(const std::string& text);

struct SweepRow {
  std::string spectrum;
  ConstituentKind kind;
  double gamma_abs = 0.0;
  // OK, DIVERGENT, EXHAUSTED, TAIL_UNBOUNDED or ERROR.
  std::string status = "OK";
  std::optional<ObservablesReport> report;
};

// Rows in grid order (spectrum parameter outer, |γ| inner) regardless of
// jobs. Per-row failures become status values.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string sweep_json(const std::vector<SweepRow>& rows);

}  // namespace coboson
