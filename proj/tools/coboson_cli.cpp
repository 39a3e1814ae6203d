// Command-line front end: spectrum | ladder | coherent | sweep | verify.

#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coboson/coherent.hpp"
#include "coboson/io.hpp"
#include "coboson/ladder.hpp"
#include "coboson/schmidt.hpp"
#include "coboson/sweep.hpp"
#include "coboson/verify.hpp"
#include "json.hpp"

namespace {

using namespace coboson;

struct SourceOptions {
  std::vector<double> uniform;
  std::vector<double> geometric;
  std::string file;
  std::string kind = "fermion";
  double tail_tol = 1e-12;
  int max_n = 4096;
  std::string out;
  std::string format;
};

void add_source_options(CLI::App* cmd, SourceOptions& o, bool lists) {
  auto* uni = cmd->add_option("--uniform", o.uniform, "Uniform spectrum rank D")->delimiter(',');
  auto* geo = cmd->add_option("--geometric", o.geometric, "Geometric spectrum ratio Q")->delimiter(',');
  auto* file = cmd->add_option("--file", o.file, "Spectrum file (text/CSV/JSON array)");
  uni->excludes(geo)->excludes(file);
  geo->excludes(file);
  if (!lists) {
    uni->expected(1);
    geo->expected(1);
  }
  cmd->add_option("--kind", o.kind, "fermion | boson | classical | ideal")
      ->check(CLI::IsMember({"fermion", "boson", "classical", "ideal"}));
  cmd->add_option("--tail-tol", o.tail_tol, "Tail tolerance (spectrum truncation and state cutoff)");
  cmd->add_option("--max-n", o.max_n, "Initial ladder table size");
  cmd->add_option("--out", o.out, "Write output to PATH instead of stdout");
}

std::optional<SchmidtSpectrum> single_spectrum(const SourceOptions& o) {
  const ConstituentKind kind = parse_kind(o.kind);
  if (!o.uniform.empty()) {
    const double d = o.uniform.front();
    if (d < 1 || d != static_cast<int>(d)) throw std::invalid_argument("--uniform needs a positive integer");
    return make_uniform(static_cast<int>(d), kind);
  }
  if (!o.geometric.empty()) return make_geometric(o.geometric.front(), o.tail_tol, kind);
  if (!o.file.empty()) return io::load_spectrum(o.file, kind);
  if (kind == ConstituentKind::Classical || kind == ConstituentKind::Ideal) return std::nullopt;
  throw std::invalid_argument("one of --uniform, --geometric, --file is required");
}

LadderTable ladder_for(const SourceOptions& o, const std::optional<SchmidtSpectrum>& s, int max_n) {
  switch (parse_kind(o.kind)) {
    case ConstituentKind::Classical: return classical_ladder(max_n);
    case ConstituentKind::Ideal: return ideal_ladder(max_n);
    default: return ladder_table(*s, max_n);
  }
}

void emit(const SourceOptions& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write '" + o.out + "'");
  file << text;
}

Complex parse_gamma(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return {std::stod(text), 0.0};
  return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

int run_spectrum(const SourceOptions& o, int powers) {
  const auto s = single_spectrum(o);
  if (!s) throw std::invalid_argument("spectrum needs --uniform, --geometric or --file");
  const auto sums = power_sums(*s, powers);
  if (o.format == "json") {
    nlohmann::ordered_json doc;
    doc["spectrum"] = s->descriptor();
    doc["kind"] = std::string(to_string(s->kind()));
    doc["rank"] = s->rank();
    doc["purity"] = std::stod(io::format_real(purity(*s)));
    auto arr = nlohmann::ordered_json::array();
    for (double p : sums) arr.push_back(std::stod(io::format_real(p)));
    doc["power_sums"] = arr;
    emit(o, doc.dump(2) + "\n");
    return 0;
  }
  std::string text = "field,value\n";
  text += "spectrum," + s->descriptor() + "\n";
  text += "kind," + std::string(to_string(s->kind())) + "\n";
  text += "rank," + std::to_string(s->rank()) + "\n";
  text += "purity," + io::format_real(purity(*s)) + "\n";
  for (std::size_t k = 0; k < sums.size(); ++k)
    text += "p_" + std::to_string(k + 1) + "," + io::format_real(sums[k]) + "\n";
  emit(o, text);
  return 0;
}

int run_ladder(const SourceOptions& o, int rows) {
  const auto s = single_spectrum(o);
  const LadderTable ladder = ladder_for(o, s, std::max(o.max_n, rows + 1));
  emit(o, io::ladder_csv(ladder, rows));
  return 0;
}

int run_coherent(const SourceOptions& o, const std::string& gamma_text) {
  const auto s = single_spectrum(o);
  const LadderTable ladder = ladder_for(o, s, o.max_n);
  const auto state = build(parse_gamma(gamma_text), ladder, o.tail_tol);
  const auto report = observe(state, s ? s->descriptor() : "none");
  if (o.format == "csv") {
    SweepRow row{report.spectrum_descriptor, report.kind, std::abs(report.gamma), "OK", report};
    emit(o, sweep_csv({row}));
  } else {
    emit(o, io::report_json(report));
  }
  return 0;
}

int run_sweep_cmd(const SourceOptions& o, const std::string& grid, int jobs) {
  SweepSpec spec;
  spec.kind = parse_kind(o.kind);
  if (!o.uniform.empty()) {
    spec.family = SpectrumFamily::Uniform;
    spec.parameters = o.uniform;
  } else if (!o.geometric.empty()) {
    spec.family = SpectrumFamily::Geometric;
    spec.parameters = o.geometric;
  } else if (!o.file.empty()) {
    spec.family = SpectrumFamily::File;
    spec.file = o.file;
  } else {
    spec.family = SpectrumFamily::None;
  }
  spec.gamma_abs = parse_grid(grid);
  spec.tail_tol = o.tail_tol;
  spec.spectrum_tail_tol = o.tail_tol;
  spec.max_n = o.max_n;
  spec.jobs = jobs;
  const auto rows = run_sweep(spec);
  emit(o, o.format == "json" ? sweep_json(rows) : sweep_csv(rows));
  return 0;
}

int run_verify(const SourceOptions& o, int probes) {
  std::vector<SchmidtSpectrum> spectra;
  if (!o.uniform.empty() || !o.geometric.empty() || !o.file.empty())
    spectra.push_back(*single_spectrum(o));
  else
    spectra = oracle_grid();
  std::vector<VerifyRow> rows;
  for (const auto& s : spectra)
    for (auto& row : verify_spectrum(s, 5, probes)) rows.push_back(std::move(row));
  emit(o, verify_table(rows));
  for (const auto& row : rows)
    if (!row.passed()) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Composite-boson ladder algebra and coherent-state observables"};
  app.require_subcommand(1);

  SourceOptions spectrum_opts, ladder_opts, coherent_opts, sweep_opts, verify_opts;
  int powers = 4;
  int rows = 20;
  std::string gamma = "0";
  std::string grid;
  int jobs = 1;
  int probes = 20;

  auto* spectrum = app.add_subcommand("spectrum", "Rank, purity and power sums of a spectrum");
  add_source_options(spectrum, spectrum_opts, false);
  spectrum->add_option("--powers", powers, "Number of power sums")->check(CLI::PositiveNumber);
  spectrum->add_option("--format", spectrum_opts.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* ladder = app.add_subcommand("ladder", "CSV of n, f_n, eps_norm, commutator diagonal");
  add_source_options(ladder, ladder_opts, false);
  ladder->add_option("--rows", rows, "Last n printed")->check(CLI::NonNegativeNumber);

  auto* coherent = app.add_subcommand("coherent", "Observables of one coherent state");
  add_source_options(coherent, coherent_opts, false);
  coherent->add_option("--gamma", gamma, "Eigenvalue RE[,IM]")->required();
  coherent->add_option("--format", coherent_opts.format, "json | csv")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* sweep = app.add_subcommand("sweep", "Observables over a spectrum x |gamma| grid");
  add_source_options(sweep, sweep_opts, true);
  sweep->add_option("--gamma-grid", grid, "START:STOP:STEP")->required();
  sweep->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  sweep->add_option("--format", sweep_opts.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* verify = app.add_subcommand("verify", "Oracle-vs-analytic comparison table");
  add_source_options(verify, verify_opts, false);
  verify->add_option("--probes", probes, "Random pair-sector probes per spectrum")
      ->check(CLI::NonNegativeNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*spectrum) return run_spectrum(spectrum_opts, powers);
    if (*ladder) return run_ladder(ladder_opts, rows);
    if (*coherent) return run_coherent(coherent_opts, gamma);
    if (*sweep) return run_sweep_cmd(sweep_opts, grid, jobs);
    if (*verify) return run_verify(verify_opts, probes);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
