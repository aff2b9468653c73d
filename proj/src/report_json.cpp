#include "autoseq/report.hpp"

#include "json.hpp"

namespace autoseq {

namespace {

using ojson = nlohmann::ordered_json;

ojson names(const Dfao& a, const std::vector<StateId>& states) {
  ojson out = ojson::array();
  for (StateId s : states) out.push_back(a.state_name(s));
  return out;
}

ojson structure(const StructureReport& rep) {
  const Dfao& a = rep.automaton;
  ojson j;
  j["base_used"] = rep.base_used;
  j["rank"] = rep.rank;
  j["images"] = ojson::array();
  for (const auto& m : rep.images) j["images"].push_back(names(a, m));
  j["image_transitions"] = rep.image_transitions;
  j["height"] = rep.height;
  j["residue"] = ojson::object();
  for (StateId s = 0; s < a.num_states(); ++s) j["residue"][a.state_name(s)] = rep.residue[static_cast<std::size_t>(s)];
  j["classes"] = ojson::array();
  for (const auto& c : rep.classes) j["classes"].push_back(names(a, c));
  j["sij"] = ojson::array();
  for (const auto& row : rep.sij) {
    ojson r = ojson::array();
    for (const auto& cell : row) r.push_back(names(a, cell));
    j["sij"].push_back(std::move(r));
  }
  j["r"] = rep.r;
  return j;
}

ojson bracket(const EmpiricalBracket& b) {
  ojson j;
  j["r_lo"] = b.r_lo;
  j["r_hi"] = b.r_hi;
  j["candidates"] = b.candidates;
  j["best_lo"] = b.best_lo ? ojson(b.best_lo->str()) : ojson(nullptr);
  j["best_hi"] = b.best_hi ? ojson(b.best_hi->str()) : ojson(nullptr);
  return j;
}

}  // namespace

std::string structure_report_json(const StructureReport& report) { return structure(report).dump(2) + "\n"; }

std::string effective_alphabet_json(const EffectiveAlphabet& result) {
  ojson j;
  j["r"] = result.r;
  j["attained_labels"] = result.attained_labels;
  j["zero_power"] = result.zero_power;
  j["components"] = ojson::array();
  for (const auto& c : result.components) {
    ojson e;
    e["states"] = c.states;
    e["start"] = c.start;
    e["report"] = structure(c.report);
    j["components"].push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

std::string masc_json(const MascResult& result) {
  ojson j;
  j["verdict"] = to_string(result.verdict);
  j["structural_r"] = result.structural_r;
  j["attained_labels"] = result.attained_labels;
  j["evidence"] = result.evidence ? bracket(*result.evidence) : ojson(nullptr);
  if (!result.note.empty()) j["note"] = result.note;
  return j.dump(2) + "\n";
}

}  // namespace autoseq
