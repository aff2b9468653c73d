#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "autoseq/digits.hpp"

namespace autoseq {

using StateId = int;

// Raised by the automaton text codec. line() is 1-based; 0 means the error
// concerns the file as a whole (e.g. a state without a transition line).
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

// Deterministic base-k automaton with output. Immutable after construction.
//
// Transitions are stored row-major: next(s, d) = transitions[s * k + d].
// Output labels are opaque strings; each state maps to an index into
// labels(), which lists distinct labels in order of first use by state.
class Dfao {
 public:
  Dfao(int base, std::vector<std::string> state_names, StateId initial,
       std::vector<StateId> transitions, std::vector<std::string> outputs);

  int base() const { return base_; }
  int num_states() const { return static_cast<int>(names_.size()); }
  StateId initial() const { return initial_; }

  StateId next(StateId s, int digit) const {
    return delta_[static_cast<std::size_t>(s) * static_cast<std::size_t>(base_) +
                  static_cast<std::size_t>(digit)];
  }
  StateId run(StateId s, const DigitWord& word) const;
  std::span<const StateId> row(StateId s) const {
    return {delta_.data() + static_cast<std::size_t>(s) * static_cast<std::size_t>(base_),
            static_cast<std::size_t>(base_)};
  }

  const std::string& state_name(StateId s) const { return names_[static_cast<std::size_t>(s)]; }
  const std::vector<std::string>& state_names() const { return names_; }
  std::optional<StateId> find_state(std::string_view name) const;

  int output(StateId s) const { return out_[static_cast<std::size_t>(s)]; }
  const std::string& output_label(StateId s) const { return labels_[static_cast<std::size_t>(output(s))]; }
  const std::string& label(int index) const { return labels_[static_cast<std::size_t>(index)]; }
  const std::vector<std::string>& labels() const { return labels_; }
  int num_labels() const { return static_cast<int>(labels_.size()); }

  bool ignores_leading_zeros() const { return next(initial_, 0) == initial_; }

  // States reachable from the initial state.
  std::vector<bool> reachable() const;

  const std::vector<StateId>& transitions() const { return delta_; }

 private:
  int base_;
  std::vector<std::string> names_;
  StateId initial_;
  std::vector<StateId> delta_;
  std::vector<int> out_;
  std::vector<std::string> labels_;
};

enum class UnreachablePolicy { kKeep, kPrune, kReject };

struct ParseOptions {
  UnreachablePolicy unreachable = UnreachablePolicy::kKeep;
  // Receives human-readable warnings (unreachable states under kKeep).
  std::vector<std::string>* warnings = nullptr;
};

// Automaton file format:
//   base k
//   states s1 s2 ...
//   initial s
//   trans s: t0 t1 ... t(k-1)      (one per state)
//   out s: label                    (one per state)
// '#' starts a comment. Throws ParseError.
Dfao parse_dfao(std::string_view text, const ParseOptions& options = {});
Dfao load_dfao(const std::string& path, const ParseOptions& options = {});
std::string serialize_dfao(const Dfao& a);

// a(n) = tau(delta(s0, (n)_k)), as a label index.
int evaluate(const Dfao& a, std::uint64_t n);
StateId state_at(const Dfao& a, std::uint64_t n);

// States t(0..n-1) via t(kn+j) = delta(t(n), j). Requires delta(s0,0) = s0
// and throws std::logic_error otherwise.
std::vector<StateId> generate_state_prefix(const Dfao& a, std::size_t n);
// Output label indices a(0..n-1); same precondition.
std::vector<int> generate_prefix(const Dfao& a, std::size_t n);

// Adds a fresh 0-looping initial state if delta(s0,0) != s0.
Dfao normalize_leading_zeros(const Dfao& a);

// The same machine read in base k^e, each digit taken as an e-block of
// base-k digits. Requires delta(s0,0) = s0 and e >= 1.
Dfao power_base(const Dfao& a, int e);

// Restriction to a transition-closed state set with start state s, which
// must satisfy delta(s,0) = s. States keep their relative order.
Dfao component_automaton(const Dfao& a, const std::vector<StateId>& states, StateId start);

// Drops states not reachable from the initial state.
Dfao prune_unreachable(const Dfao& a);

}  // namespace autoseq
