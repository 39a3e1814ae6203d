#include "coboson/kind.hpp"

#include <stdexcept>

namespace coboson {

std::string_view to_string(ConstituentKind kind) {
  switch (kind) {
    case ConstituentKind::FermionPair: return "fermion";
    case ConstituentKind::BosonPair: return "boson";
    case ConstituentKind::Classical: return "classical";
    case ConstituentKind::Ideal: return "ideal";
  }
  return "unknown";
}

ConstituentKind parse_kind(std::string_view text) {
  if (text == "fermion") return ConstituentKind::FermionPair;
  if (text == "boson") return ConstituentKind::BosonPair;
  if (text == "classical") return ConstituentKind::Classical;
  if (text == "ideal") return ConstituentKind::Ideal;
  throw std::invalid_argument("unknown constituent kind '" + std::string(text) + "'");
}

int commutator_sign(ConstituentKind kind) {
  switch (kind) {
    case ConstituentKind::FermionPair: return -1;
    case ConstituentKind::BosonPair: return 1;
    default: return 0;
  }
}

}  // namespace coboson
