#include "coboson/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace coboson::io {
namespace {

using Json = nlohmann::ordered_json;

double parse_number(const std::string& token) {
  const char* begin = token.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw std::invalid_argument("spectrum file: not a number: '" + token + "'");
  return value;
}

// Rounded to the printed precision so JSON and CSV carry identical digits.
Json real_json(double x) {
  if (!std::isfinite(x)) return format_real(x);
  return std::stod(format_real(x));
}

}  // namespace

std::vector<double> parse_spectrum_values(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw std::invalid_argument("spectrum file: empty");

  std::vector<double> values;
  if (text[first] == '[') {
    const Json doc = Json::parse(text.substr(first), nullptr, false);
    if (doc.is_discarded() || !doc.is_array())
      throw std::invalid_argument("spectrum file: malformed JSON array");
    for (const auto& item : doc) {
      if (!item.is_number()) throw std::invalid_argument("spectrum file: non-numeric JSON entry");
      values.push_back(item.get<double>());
    }
    return values;
  }

  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string token;
    for (char ch : line + ",") {
      if (ch == ',' || ch == ';' || ch == ' ' || ch == '\t' || ch == '\r') {
        if (!token.empty()) values.push_back(parse_number(token));
        token.clear();
      } else {
        token.push_back(ch);
      }
    }
  }
  return values;
}

SchmidtSpectrum load_spectrum(const std::string& path, ConstituentKind kind) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open spectrum file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const auto values = parse_spectrum_values(buffer.str());
  return from_values(values, kind)
      .with_descriptor("file(" + std::filesystem::path(path).filename().string() + ")");
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string format_mon(const MonEstimate& mon) {
  if (mon.status == RadiusStatus::Unbounded) return "UNBOUNDED";
  return format_real(mon.value);
}

std::string report_json(const ObservablesReport& r) {
  Json doc;
  doc["spectrum"] = r.spectrum_descriptor;
  doc["kind"] = std::string(to_string(r.kind));
  doc["gamma"] = Json::array({real_json(r.gamma.real()), real_json(r.gamma.imag())});
  doc["gamma_abs"] = real_json(std::abs(r.gamma));
  doc["commutator"] = real_json(r.commutator_expectation);
  doc["var_x"] = real_json(r.var_x);
  doc["var_p"] = real_json(r.var_p);
  doc["q_eff"] = r.mandel_q_eff ? real_json(*r.mandel_q_eff) : Json(nullptr);
  doc["mean_n"] = real_json(r.mean_n);
  if (r.mon.status == RadiusStatus::Unbounded)
    doc["mon"] = "UNBOUNDED";
  else
    doc["mon"] = real_json(r.mon.value);
  doc["mon_status"] = std::string(to_string(r.mon.status));
  doc["cutoff_n"] = r.cutoff;
  doc["tail_bound"] = real_json(r.tail_mass_bound);
  doc["norm_constant"] = real_json(r.norm_constant);
  return doc.dump(2) + "\n";
}

std::string ladder_csv(const LadderTable& ladder, int rows) {
  if (rows < 0 || ladder.max_n() <= rows)
    throw std::invalid_argument("ladder_csv: table must cover rows+1");
  const Eigen::VectorXd diag = commutator_diagonal(ladder, rows);
  std::string out = "n,f_n,eps_norm,commutator_diag\n";
  for (int n = 0; n <= rows; ++n) {
    out += std::to_string(n) + ',' + format_real(ladder.f(n)) + ',' +
           format_real(ladder.eps_norm()[n]) + ',' + format_real(diag[n]) + '\n';
  }
  return out;
}

}  // namespace coboson::io
