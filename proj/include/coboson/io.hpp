#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "coboson/coherent.hpp"
#include "coboson/schmidt.hpp"

namespace coboson::io {

// One value per line or CSV cell, '#' starts a comment; a document whose
// first non-blank character is '[' is read as a JSON array.
std::vector<double> parse_spectrum_values(std::string_view text);
SchmidtSpectrum load_spectrum(const std::string& path, ConstituentKind kind);

// 12 significant digits, "%.12g".
std::string format_real(double x);

// Number, or "UNBOUNDED".
std::string format_mon(const MonEstimate& mon);

std::string report_json(const ObservablesReport& report);

inline constexpr std::string_view kSweepHeader =
    "spectrum,kind,gamma_abs,commutator,var_x,q_eff,mean_n,mon_bound,cutoff_n,tail_bound,status";

std::string ladder_csv(const LadderTable& ladder, int rows);

}  // namespace coboson::io
