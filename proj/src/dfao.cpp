#include "autoseq/dfao.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace autoseq {

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

Dfao::Dfao(int base, std::vector<std::string> state_names, StateId initial,
           std::vector<StateId> transitions, std::vector<std::string> outputs)
    : base_(base), names_(std::move(state_names)), initial_(initial), delta_(std::move(transitions)) {
  if (base_ < 2) throw std::invalid_argument("base must be at least 2");
  if (names_.empty()) throw std::invalid_argument("automaton needs at least one state");
  const auto n = names_.size();
  if (initial_ < 0 || static_cast<std::size_t>(initial_) >= n) {
    throw std::invalid_argument("initial state out of range");
  }
  if (delta_.size() != n * static_cast<std::size_t>(base_)) {
    throw std::invalid_argument("transition table has wrong size");
  }
  for (StateId t : delta_) {
    if (t < 0 || static_cast<std::size_t>(t) >= n) throw std::invalid_argument("transition target out of range");
  }
  if (outputs.size() != n) throw std::invalid_argument("one output label per state required");
  std::unordered_set<std::string> seen;
  for (const auto& name : names_) {
    if (!seen.insert(name).second) throw std::invalid_argument("duplicate state name: " + name);
  }
  std::unordered_map<std::string, int> index;
  out_.reserve(n);
  for (auto& label : outputs) {
    auto [it, inserted] = index.emplace(label, static_cast<int>(labels_.size()));
    if (inserted) labels_.push_back(label);
    out_.push_back(it->second);
  }
}

StateId Dfao::run(StateId s, const DigitWord& word) const {
  for (int d : word) {
    if (d >= base_) throw std::invalid_argument("digit out of range for automaton base");
    s = next(s, d);
  }
  return s;
}

std::optional<StateId> Dfao::find_state(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<StateId>(i);
  }
  return std::nullopt;
}

std::vector<bool> Dfao::reachable() const {
  std::vector<bool> seen(names_.size(), false);
  std::vector<StateId> stack{initial_};
  seen[static_cast<std::size_t>(initial_)] = true;
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (StateId t : row(s)) {
      if (!seen[static_cast<std::size_t>(t)]) {
        seen[static_cast<std::size_t>(t)] = true;
        stack.push_back(t);
      }
    }
  }
  return seen;
}

// ---------------------------------------------------------------------------
// Text codec

namespace {

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

struct StateLine {
  int line = 0;
  std::vector<std::string> tokens;
};

// Splits "s: rest" into name and remainder.
std::pair<std::string, std::string_view> split_colon(int line, std::string_view body) {
  auto colon = body.find(':');
  if (colon == std::string_view::npos) throw ParseError(line, "expected '<state>:'");
  auto name = trim(body.substr(0, colon));
  if (name.empty()) throw ParseError(line, "missing state name before ':'");
  return {std::string(name), trim(body.substr(colon + 1))};
}

}  // namespace

Dfao parse_dfao(std::string_view text, const ParseOptions& options) {
  std::optional<int> base;
  int base_line = 0;
  std::vector<std::string> states;
  int states_line = 0;
  std::optional<std::string> initial;
  int initial_line = 0;
  std::map<std::string, StateLine> trans;
  std::map<std::string, std::pair<int, std::string>> outs;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view raw = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string_view line = trim(raw);
    if (line.empty()) {
      if (nl == text.size()) break;
      continue;
    }
    auto sp = line.find_first_of(" \t");
    std::string_view keyword = line.substr(0, sp);
    std::string_view body = sp == std::string_view::npos ? std::string_view{} : trim(line.substr(sp));

    if (keyword == "base") {
      if (base) throw ParseError(line_no, "duplicate 'base' line");
      auto toks = split_ws(body);
      if (toks.size() != 1) throw ParseError(line_no, "expected 'base <k>'");
      int k = 0;
      for (char c : toks[0]) {
        if (c < '0' || c > '9' || k > 1000000) throw ParseError(line_no, "base must be an integer");
        k = k * 10 + (c - '0');
      }
      if (k < 2) throw ParseError(line_no, "base must be at least 2");
      base = k;
      base_line = line_no;
    } else if (keyword == "states") {
      if (states_line) throw ParseError(line_no, "duplicate 'states' line");
      states = split_ws(body);
      if (states.empty()) throw ParseError(line_no, "no states declared");
      std::unordered_set<std::string> seen;
      for (const auto& s : states) {
        if (s.find(':') != std::string::npos) throw ParseError(line_no, "state names may not contain ':'");
        if (!seen.insert(s).second) throw ParseError(line_no, "duplicate state '" + s + "'");
      }
      states_line = line_no;
    } else if (keyword == "initial") {
      if (initial) throw ParseError(line_no, "duplicate 'initial' line");
      auto toks = split_ws(body);
      if (toks.size() != 1) throw ParseError(line_no, "expected 'initial <state>'");
      initial = toks[0];
      initial_line = line_no;
    } else if (keyword == "trans") {
      auto [name, rest] = split_colon(line_no, body);
      if (trans.count(name)) throw ParseError(line_no, "duplicate transitions for '" + name + "'");
      trans[name] = StateLine{line_no, split_ws(rest)};
    } else if (keyword == "out") {
      auto [name, rest] = split_colon(line_no, body);
      if (outs.count(name)) throw ParseError(line_no, "duplicate output for '" + name + "'");
      if (rest.empty()) throw ParseError(line_no, "empty output label for '" + name + "'");
      outs[name] = {line_no, std::string(rest)};
    } else {
      throw ParseError(line_no, "unknown keyword '" + std::string(keyword) + "'");
    }
    if (nl == text.size()) break;
  }

  if (!base) throw ParseError(0, "missing 'base' line");
  if (!states_line) throw ParseError(0, "missing 'states' line");
  if (!initial) throw ParseError(0, "missing 'initial' line");
  (void)base_line;

  std::unordered_map<std::string, StateId> index;
  for (std::size_t i = 0; i < states.size(); ++i) index[states[i]] = static_cast<StateId>(i);
  auto lookup = [&](int line, const std::string& name) {
    auto it = index.find(name);
    if (it == index.end()) throw ParseError(line, "unknown state '" + name + "'");
    return it->second;
  };

  const StateId init = lookup(initial_line, *initial);
  const auto k = static_cast<std::size_t>(*base);
  std::vector<StateId> delta(states.size() * k, -1);
  for (const auto& [name, sl] : trans) {
    StateId s = lookup(sl.line, name);
    if (sl.tokens.size() > k) {
      throw ParseError(sl.line, "digit " + std::to_string(k) + " out of range for base " + std::to_string(k));
    }
    if (sl.tokens.size() < k) {
      throw ParseError(sl.line, "missing transition on digit " + std::to_string(sl.tokens.size()) +
                                    " for state '" + name + "'");
    }
    for (std::size_t d = 0; d < k; ++d) delta[static_cast<std::size_t>(s) * k + d] = lookup(sl.line, sl.tokens[d]);
  }
  std::vector<std::string> labels(states.size());
  std::vector<bool> has_out(states.size(), false);
  for (const auto& [name, ol] : outs) {
    StateId s = lookup(ol.first, name);
    labels[static_cast<std::size_t>(s)] = ol.second;
    has_out[static_cast<std::size_t>(s)] = true;
  }
  for (std::size_t s = 0; s < states.size(); ++s) {
    if (delta[s * k] < 0) throw ParseError(0, "missing transition line for state '" + states[s] + "'");
    if (!has_out[s]) throw ParseError(0, "missing output line for state '" + states[s] + "'");
  }

  Dfao a(*base, states, init, std::move(delta), std::move(labels));
  auto reach = a.reachable();
  std::vector<std::string> unreachable;
  for (std::size_t s = 0; s < reach.size(); ++s) {
    if (!reach[s]) unreachable.push_back(states[s]);
  }
  if (!unreachable.empty()) {
    std::string list;
    for (const auto& s : unreachable) list += (list.empty() ? "" : " ") + s;
    switch (options.unreachable) {
      case UnreachablePolicy::kReject:
        throw ParseError(0, "unreachable states: " + list);
      case UnreachablePolicy::kPrune:
        return prune_unreachable(a);
      case UnreachablePolicy::kKeep:
        if (options.warnings) options.warnings->push_back("unreachable states kept: " + list);
        break;
    }
  }
  return a;
}

Dfao load_dfao(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open automaton file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_dfao(ss.str(), options);
}

std::string serialize_dfao(const Dfao& a) {
  std::string out = "base " + std::to_string(a.base()) + "\nstates";
  for (const auto& s : a.state_names()) out += " " + s;
  out += "\ninitial " + a.state_name(a.initial()) + "\n";
  for (StateId s = 0; s < a.num_states(); ++s) {
    out += "trans " + a.state_name(s) + ":";
    for (StateId t : a.row(s)) out += " " + a.state_name(t);
    out += "\n";
  }
  for (StateId s = 0; s < a.num_states(); ++s) {
    out += "out " + a.state_name(s) + ": " + a.output_label(s) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

StateId state_at(const Dfao& a, std::uint64_t n) {
  // Digits are consumed most significant first; collect them in reverse.
  int digits[64];
  int len = 0;
  const auto k = static_cast<std::uint64_t>(a.base());
  while (n > 0) {
    digits[len++] = static_cast<int>(n % k);
    n /= k;
  }
  StateId s = a.initial();
  for (int i = len - 1; i >= 0; --i) s = a.next(s, digits[i]);
  return s;
}

int evaluate(const Dfao& a, std::uint64_t n) { return a.output(state_at(a, n)); }

std::vector<StateId> generate_state_prefix(const Dfao& a, std::size_t n) {
  if (!a.ignores_leading_zeros()) {
    throw std::logic_error("generate_prefix requires delta(s0,0) = s0; normalize leading zeros first");
  }
  std::vector<StateId> t(n);
  if (n == 0) return t;
  t[0] = a.initial();
  const auto k = static_cast<std::size_t>(a.base());
  for (std::size_t i = 1; i < n; ++i) t[i] = a.next(t[i / k], static_cast<int>(i % k));
  return t;
}

std::vector<int> generate_prefix(const Dfao& a, std::size_t n) {
  auto states = generate_state_prefix(a, n);
  std::vector<int> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = a.output(states[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Normalizations

namespace {

std::string fresh_name(const Dfao& a, std::string base) {
  std::string name = std::move(base);
  do {
    name += "'";
  } while (a.find_state(name).has_value());
  return name;
}

std::vector<std::string> output_strings(const Dfao& a) {
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(a.num_states()));
  for (StateId s = 0; s < a.num_states(); ++s) out.push_back(a.output_label(s));
  return out;
}

}  // namespace

Dfao normalize_leading_zeros(const Dfao& a) {
  if (a.ignores_leading_zeros()) return a;
  const int n = a.num_states();
  const int k = a.base();
  auto names = a.state_names();
  names.push_back(fresh_name(a, a.state_name(a.initial())));
  std::vector<StateId> delta = a.transitions();
  const StateId fresh = n;
  for (int d = 0; d < k; ++d) delta.push_back(d == 0 ? fresh : a.next(a.initial(), d));
  auto outs = output_strings(a);
  outs.push_back(a.output_label(a.initial()));
  return Dfao(k, std::move(names), fresh, std::move(delta), std::move(outs));
}

Dfao power_base(const Dfao& a, int e) {
  if (e < 1) throw std::invalid_argument("power_base exponent must be positive");
  if (!a.ignores_leading_zeros()) throw std::logic_error("power_base requires delta(s0,0) = s0");
  if (e == 1) return a;
  const std::uint64_t big = checked_pow(static_cast<std::uint64_t>(a.base()), e);
  if (big > (1u << 24) || big * static_cast<std::uint64_t>(a.num_states()) > (1u << 26)) {
    throw std::invalid_argument("power_base: transition table for base " + std::to_string(big) + " too large");
  }
  const auto K = static_cast<std::size_t>(big);
  const int k = a.base();
  std::vector<StateId> delta(static_cast<std::size_t>(a.num_states()) * K);
  for (StateId s = 0; s < a.num_states(); ++s) {
    // Digit D corresponds to the width-e block of its base-k digits.
    std::vector<int> block(static_cast<std::size_t>(e));
    for (std::size_t D = 0; D < K; ++D) {
      std::size_t rest = D;
      for (int i = e - 1; i >= 0; --i) {
        block[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::size_t>(k));
        rest /= static_cast<std::size_t>(k);
      }
      StateId t = s;
      for (int d : block) t = a.next(t, d);
      delta[static_cast<std::size_t>(s) * K + D] = t;
    }
  }
  return Dfao(static_cast<int>(K), a.state_names(), a.initial(), std::move(delta), output_strings(a));
}

Dfao component_automaton(const Dfao& a, const std::vector<StateId>& states, StateId start) {
  std::vector<int> local(static_cast<std::size_t>(a.num_states()), -1);
  std::vector<StateId> members = states;
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i] < 0 || members[i] >= a.num_states()) throw std::invalid_argument("component state out of range");
    local[static_cast<std::size_t>(members[i])] = static_cast<int>(i);
  }
  if (start < 0 || start >= a.num_states() || local[static_cast<std::size_t>(start)] < 0) {
    throw std::invalid_argument("component start state is not in the component");
  }
  if (a.next(start, 0) != start) throw std::invalid_argument("component start state must loop on digit 0");
  std::vector<std::string> names;
  std::vector<std::string> outs;
  std::vector<StateId> delta;
  for (StateId s : members) {
    names.push_back(a.state_name(s));
    outs.push_back(a.output_label(s));
    for (StateId t : a.row(s)) {
      if (local[static_cast<std::size_t>(t)] < 0) {
        throw std::invalid_argument("component not closed: " + a.state_name(s) + " -> " + a.state_name(t));
      }
      delta.push_back(local[static_cast<std::size_t>(t)]);
    }
  }
  return Dfao(a.base(), std::move(names), local[static_cast<std::size_t>(start)], std::move(delta),
              std::move(outs));
}

Dfao prune_unreachable(const Dfao& a) {
  auto reach = a.reachable();
  if (std::all_of(reach.begin(), reach.end(), [](bool b) { return b; })) return a;
  std::vector<StateId> keep;
  std::vector<int> local(reach.size(), -1);
  for (std::size_t s = 0; s < reach.size(); ++s) {
    if (reach[s]) {
      local[s] = static_cast<int>(keep.size());
      keep.push_back(static_cast<StateId>(s));
    }
  }
  std::vector<std::string> names;
  std::vector<std::string> outs;
  std::vector<StateId> delta;
  for (StateId s : keep) {
    names.push_back(a.state_name(s));
    outs.push_back(a.output_label(s));
    for (StateId t : a.row(s)) delta.push_back(local[static_cast<std::size_t>(t)]);
  }
  return Dfao(a.base(), std::move(names), local[static_cast<std::size_t>(a.initial())], std::move(delta),
              std::move(outs));
}

}  // namespace autoseq
