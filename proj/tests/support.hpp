#pragma once

#include <random>
#include <string>
#include <vector>

#include "autoseq/dfao.hpp"

namespace testing {

inline std::string data_path(const std::string& name) { return std::string(AUTOSEQ_DATA_DIR) + "/" + name + ".dfao"; }

inline autoseq::Dfao load(const std::string& name) { return autoseq::load_dfao(data_path(name)); }

// Machine with states s0.., transitions row-major and integer outputs.
inline autoseq::Dfao machine(int k, const std::vector<int>& delta, const std::vector<int>& out) {
  std::vector<std::string> names, labels;
  for (std::size_t i = 0; i < out.size(); ++i) {
    names.push_back("s" + std::to_string(i));
    labels.push_back(std::to_string(out[i]));
  }
  return autoseq::Dfao(k, names, 0, delta, labels);
}

inline autoseq::Dfao random_machine(std::mt19937_64& rng, int k, int states, int labels) {
  std::vector<int> delta(static_cast<std::size_t>(k * states)), out(static_cast<std::size_t>(states));
  for (auto& t : delta) t = static_cast<int>(rng() % static_cast<unsigned>(states));
  for (auto& o : out) o = static_cast<int>(rng() % static_cast<unsigned>(labels));
  return machine(k, delta, out);
}

// Every binary-output machine over k = 2 with the given number of states.
inline std::vector<autoseq::Dfao> all_binary_machines(int states) {
  std::vector<autoseq::Dfao> out;
  const int slots = 2 * states;
  long total = 1;
  for (int i = 0; i < slots; ++i) total *= states;
  for (long code = 0; code < total; ++code) {
    std::vector<int> delta;
    long c = code;
    for (int i = 0; i < slots; ++i) {
      delta.push_back(static_cast<int>(c % states));
      c /= states;
    }
    for (int o = 0; o < (1 << states); ++o) {
      std::vector<int> labels;
      for (int s = 0; s < states; ++s) labels.push_back((o >> s) & 1);
      out.push_back(machine(2, delta, labels));
    }
  }
  return out;
}

// Thue-Morse by popcount parity.
inline int thue_morse(std::uint64_t n) { return __builtin_popcountll(n) & 1; }

}  // namespace testing
