#pragma once

#include <string>
#include <string_view>

namespace coboson {

// Statistics of the two constituents bound into one coboson.
//
// FermionPair/BosonPair select elementary / complete homogeneous symmetric
// functions of the Schmidt spectrum. Classical is the distinguishable-particle
// ladder (f_n = 1) and Ideal the elementary-boson ladder (f_n = sqrt(n)); both
// ignore the spectrum.
enum class ConstituentKind { FermionPair, BosonPair, Classical, Ideal };

std::string_view to_string(ConstituentKind kind);

// Accepts "fermion", "boson", "classical", "ideal".
ConstituentKind parse_kind(std::string_view text);

// +1 for bosonic constituents, -1 for fermionic; 0 otherwise.
int commutator_sign(ConstituentKind kind);

}  // namespace coboson
