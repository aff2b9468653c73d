#pragma once

#include <string>

#include "autoseq/apk.hpp"
#include "autoseq/structure.hpp"

namespace autoseq {

// JSON documents with states written by name. Key order is fixed, so equal
// inputs give byte-identical output.
std::string structure_report_json(const StructureReport& report);
std::string effective_alphabet_json(const EffectiveAlphabet& result);
std::string masc_json(const MascResult& result);

}  // namespace autoseq
