#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "autoseq/dfao.hpp"

namespace autoseq {

// A search hit its configured cap before finishing.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ComponentDecomposition {
  std::vector<std::vector<StateId>> components;  // each sorted ascending
  std::vector<int> component_of;                 // per state
  std::vector<std::vector<int>> successors;      // condensation DAG, sorted
  std::vector<bool> final_flags;                 // no outgoing condensation edge
};

// Strongly connected components of the transition digraph. Components are
// numbered by their smallest member state.
ComponentDecomposition decompose(const Dfao& a);

struct Primitivity {
  bool strongly_connected = false;
  bool primitive = false;
  // gcd of the lengths of all cycles through s0 (0 if s0 lies on no cycle).
  int period = 0;
};
Primitivity is_primitive(const Dfao& a);

struct MinimalImages {
  int rank = 0;
  // M_0 contains s0 and is the lexicographically smallest such image; the
  // rest follow in lexicographic order of their sorted state lists.
  std::vector<std::vector<StateId>> images;
  // transitions[i * k + d] = index of delta(M_i, d).
  std::vector<int> transitions;
  std::size_t explored = 0;
};

inline constexpr std::size_t kDefaultImageCap = std::size_t{1} << 18;

// Subset BFS over delta(S, w). Requires a strongly connected automaton with
// at most 64 states. Throws BudgetExceeded past `cap` distinct images.
MinimalImages minimal_images(const Dfao& a, std::size_t cap = kDefaultImageCap);

// phi with phi(s0) = 0 and phi(delta(s,d)) = k*phi(s) + d (mod m) on all
// reachable states, or nullopt if the propagation hits a conflict.
// Unreachable states are labelled -1.
std::optional<std::vector<int>> residue_labeling(const Dfao& a, int m);

struct Height {
  int h = 1;
  std::vector<int> phi;
};

// Largest m <= #S coprime to k admitting a residue labeling. Requires
// delta(s0,0) = s0.
Height height(const Dfao& a);

// gcd{ d in [1,n) : t(d) = t(0) } from the state sequence; 0 if empty.
std::uint64_t height_gcd_oracle(const Dfao& a, std::size_t n);

// Structural quantities of one primitive automaton (working base K with
// K = 1 mod h).
struct StructureReport {
  Dfao automaton;  // the analyzed machine, read in base_used
  int base_used = 0;
  int rank = 0;
  std::vector<std::vector<StateId>> images;
  std::vector<int> image_transitions;
  int height = 1;
  std::vector<int> residue;                           // phi per state
  std::vector<std::vector<StateId>> classes;          // C_j
  std::vector<std::vector<std::vector<StateId>>> sij; // [i][j] = M_i & C_j
  int r = 0;
};

// Requires a primitive automaton with delta(s0,0) = s0.
StructureReport analyze_primitive(const Dfao& a, std::size_t image_cap = kDefaultImageCap);

struct ComponentAnalysis {
  std::vector<std::string> states;  // names in the input automaton
  std::string start;
  StructureReport report;
};

struct EffectiveAlphabet {
  int r = 0;
  int attained_labels = 0;
  int zero_power = 1;  // exponent making 0^e idempotent
  std::vector<ComponentAnalysis> components;  // one per final component
};

// r(a) as the maximum over final components of max_{i,j} #tau(S_{i,j}).
EffectiveAlphabet effective_alphabet_size(const Dfao& a, std::size_t image_cap = kDefaultImageCap);

// Number of distinct output labels over states reachable after
// normalizing leading zeros (the labels the sequence actually takes).
int attained_label_count(const Dfao& a);

// Shortest u with delta(s0,u) = s0, |u| = length_class (mod m) and
// [u]_k = residue (mod q). Requires gcd(q,k) = 1 and delta(s0,0) = s0.
// Returns nullopt when no such word exists; throws std::logic_error if the
// automaton is primitive and residue is a multiple of its height, since a
// witness must then exist.
std::optional<DigitWord> find_congruent_loop_word(const Dfao& a, int q, int m, int length_class,
                                                  std::int64_t residue);

}  // namespace autoseq
