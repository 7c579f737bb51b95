#pragma once

#include <string>

#include "hecke/compatsys.hpp"
#include "hecke/heckechar.hpp"

namespace hecke {

/// Character and system files are JSON with canonical key order and
/// canonical rational-string coordinates, so saving is byte-stable.

void character_save(const HeckeCharacter& chi, const std::string& path);
HeckeCharacter character_load(const std::string& path);

void system_save(const CompatibleSystem& sys, const std::string& path);
CompatibleSystem system_load(const std::string& path);

std::string character_dump(const HeckeCharacter& chi);
std::string system_dump(const CompatibleSystem& sys);

/// Recover a prime ideal of F from a stored generator.
PrimeIdeal prime_from_coords(const NFPtr& F, const FE& gen);

/// Parse an element literal like "-1+2*t" or "3/2" against F's power basis;
/// "i" is accepted for the gaussian field's generator.
FE parse_element(const NFPtr& F, const std::string& text);

}  // namespace hecke
