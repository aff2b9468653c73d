#include "autoseq/structure.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>
#include <unordered_map>

namespace autoseq {

namespace {

std::size_t idx(int v) { return static_cast<std::size_t>(v); }

// Tarjan's algorithm, iterative.
std::vector<std::vector<StateId>> tarjan(const Dfao& a) {
  const int n = a.num_states();
  const int k = a.base();
  std::vector<int> index(idx(n), -1), low(idx(n), 0);
  std::vector<bool> on_stack(idx(n), false);
  std::vector<StateId> stack;
  std::vector<std::vector<StateId>> out;
  int counter = 0;

  struct Frame {
    StateId s;
    int digit;
  };
  for (StateId root = 0; root < n; ++root) {
    if (index[idx(root)] >= 0) continue;
    std::vector<Frame> call{{root, 0}};
    index[idx(root)] = low[idx(root)] = counter++;
    stack.push_back(root);
    on_stack[idx(root)] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.digit < k) {
        StateId t = a.next(f.s, f.digit++);
        if (index[idx(t)] < 0) {
          index[idx(t)] = low[idx(t)] = counter++;
          stack.push_back(t);
          on_stack[idx(t)] = true;
          call.push_back({t, 0});
        } else if (on_stack[idx(t)]) {
          low[idx(f.s)] = std::min(low[idx(f.s)], index[idx(t)]);
        }
        continue;
      }
      StateId s = f.s;
      call.pop_back();
      if (!call.empty()) low[idx(call.back().s)] = std::min(low[idx(call.back().s)], low[idx(s)]);
      if (low[idx(s)] == index[idx(s)]) {
        std::vector<StateId> comp;
        StateId t;
        do {
          t = stack.back();
          stack.pop_back();
          on_stack[idx(t)] = false;
          comp.push_back(t);
        } while (t != s);
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.front() < y.front(); });
  return out;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

int multiplicative_order(int k, int h) {
  if (h <= 1) return 1;
  int value = k % h;
  for (int e = 1; e <= h; ++e) {
    if (value == 1) return e;
    value = static_cast<int>((static_cast<std::int64_t>(value) * k) % h);
  }
  throw std::logic_error("base is not invertible modulo the height");
}

// Smallest e >= 1 with 0^e idempotent: delta(s, 0^(2e)) = delta(s, 0^e).
int zero_idempotent_exponent(const Dfao& a) {
  const int n = a.num_states();
  std::int64_t cycle_lcm = 1;
  int max_tail = 0;
  for (StateId s = 0; s < n; ++s) {
    std::vector<int> seen(idx(n), -1);
    StateId cur = s;
    int step = 0;
    while (seen[idx(cur)] < 0) {
      seen[idx(cur)] = step++;
      cur = a.next(cur, 0);
    }
    max_tail = std::max(max_tail, seen[idx(cur)]);
    cycle_lcm = std::lcm(cycle_lcm, static_cast<std::int64_t>(step - seen[idx(cur)]));
    if (cycle_lcm > 64) throw BudgetExceeded("0-cycle structure needs a base power above 64");
  }
  std::int64_t e = cycle_lcm;
  while (e < max_tail) e += cycle_lcm;
  return static_cast<int>(e);
}

std::vector<StateId> mask_states(std::uint64_t mask) {
  std::vector<StateId> out;
  while (mask) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

}  // namespace

ComponentDecomposition decompose(const Dfao& a) {
  ComponentDecomposition dec;
  dec.components = tarjan(a);
  dec.component_of.assign(idx(a.num_states()), -1);
  for (std::size_t c = 0; c < dec.components.size(); ++c) {
    for (StateId s : dec.components[c]) dec.component_of[idx(s)] = static_cast<int>(c);
  }
  dec.successors.assign(dec.components.size(), {});
  for (StateId s = 0; s < a.num_states(); ++s) {
    int cs = dec.component_of[idx(s)];
    for (StateId t : a.row(s)) {
      int ct = dec.component_of[idx(t)];
      if (ct != cs) dec.successors[idx(cs)].push_back(ct);
    }
  }
  dec.final_flags.assign(dec.components.size(), false);
  for (std::size_t c = 0; c < dec.components.size(); ++c) {
    auto& succ = dec.successors[c];
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
    dec.final_flags[c] = succ.empty();
  }
  return dec;
}

Primitivity is_primitive(const Dfao& a) {
  Primitivity out;
  auto dec = decompose(a);
  out.strongly_connected = dec.components.size() == 1;
  const int comp = dec.component_of[idx(a.initial())];
  // BFS levels inside the initial state's component; the period is the gcd
  // of level[u] + 1 - level[v] over internal edges u -> v.
  std::vector<int> level(idx(a.num_states()), -1);
  std::deque<StateId> queue{a.initial()};
  level[idx(a.initial())] = 0;
  std::uint64_t g = 0;
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    for (StateId t : a.row(s)) {
      if (dec.component_of[idx(t)] != comp) continue;
      if (level[idx(t)] < 0) {
        level[idx(t)] = level[idx(s)] + 1;
        queue.push_back(t);
      } else {
        auto diff = static_cast<std::int64_t>(level[idx(s)]) + 1 - level[idx(t)];
        g = gcd_u64(g, static_cast<std::uint64_t>(diff < 0 ? -diff : diff));
      }
    }
  }
  out.period = static_cast<int>(g);
  out.primitive = out.strongly_connected && out.period == 1;
  return out;
}

MinimalImages minimal_images(const Dfao& a, std::size_t cap) {
  const int n = a.num_states();
  const int k = a.base();
  if (n > 64) throw std::invalid_argument("minimal image analysis supports at most 64 states");
  if (!is_primitive(a).strongly_connected) {
    throw std::invalid_argument("minimal_images requires a strongly connected automaton");
  }
  auto apply = [&](std::uint64_t mask, int d) {
    std::uint64_t image = 0;
    for (std::uint64_t m = mask; m; m &= m - 1) image |= std::uint64_t{1} << a.next(std::countr_zero(m), d);
    return image;
  };

  const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  std::unordered_map<std::uint64_t, int> seen{{full, 0}};
  std::vector<std::uint64_t> order{full};
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (int d = 0; d < k; ++d) {
      std::uint64_t image = apply(order[head], d);
      if (seen.emplace(image, static_cast<int>(order.size())).second) {
        order.push_back(image);
        if (order.size() > cap) {
          throw BudgetExceeded("minimal image search exceeded " + std::to_string(cap) + " images");
        }
      }
    }
  }

  MinimalImages out;
  out.explored = order.size();
  out.rank = n;
  for (auto m : order) out.rank = std::min(out.rank, std::popcount(m));
  std::vector<std::vector<StateId>> family;
  for (auto m : order) {
    if (std::popcount(m) == out.rank) family.push_back(mask_states(m));
  }
  std::sort(family.begin(), family.end());
  const StateId s0 = a.initial();
  auto first = std::find_if(family.begin(), family.end(), [s0](const auto& img) {
    return std::binary_search(img.begin(), img.end(), s0);
  });
  if (first == family.end()) throw std::logic_error("no minimal image contains the initial state");
  std::rotate(family.begin(), first, first + 1);
  out.images = std::move(family);

  std::unordered_map<std::uint64_t, int> position;
  std::vector<std::uint64_t> masks;
  for (std::size_t i = 0; i < out.images.size(); ++i) {
    std::uint64_t m = 0;
    for (StateId s : out.images[i]) m |= std::uint64_t{1} << s;
    masks.push_back(m);
    position[m] = static_cast<int>(i);
  }
  out.transitions.resize(out.images.size() * idx(k));
  for (std::size_t i = 0; i < masks.size(); ++i) {
    for (int d = 0; d < k; ++d) {
      auto it = position.find(apply(masks[i], d));
      if (it == position.end()) throw std::logic_error("minimal image family not closed under digits");
      out.transitions[i * idx(k) + idx(d)] = it->second;
    }
  }
  return out;
}

std::optional<std::vector<int>> residue_labeling(const Dfao& a, int m) {
  if (m < 1) throw std::invalid_argument("residue modulus must be positive");
  const std::int64_t k = a.base() % m;
  std::vector<int> phi(idx(a.num_states()), -1);
  phi[idx(a.initial())] = 0;
  std::vector<StateId> stack{a.initial()};
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (int d = 0; d < a.base(); ++d) {
      StateId t = a.next(s, d);
      auto want = static_cast<int>((k * phi[idx(s)] + d) % m);
      if (phi[idx(t)] < 0) {
        phi[idx(t)] = want;
        stack.push_back(t);
      } else if (phi[idx(t)] != want) {
        return std::nullopt;
      }
    }
  }
  return phi;
}

Height height(const Dfao& a) {
  if (!a.ignores_leading_zeros()) throw std::logic_error("height requires delta(s0,0) = s0");
  for (int m = a.num_states(); m >= 1; --m) {
    if (std::gcd(m, a.base()) != 1) continue;
    if (auto phi = residue_labeling(a, m)) return Height{m, std::move(*phi)};
  }
  throw std::logic_error("trivial residue labeling failed");
}

std::uint64_t height_gcd_oracle(const Dfao& a, std::size_t n) {
  auto t = generate_state_prefix(a, n);
  std::uint64_t g = 0;
  for (std::size_t d = 1; d < n; ++d) {
    if (t[d] == t[0]) g = gcd_u64(g, d);
  }
  return g;
}

StructureReport analyze_primitive(const Dfao& a, std::size_t image_cap) {
  if (!a.ignores_leading_zeros()) throw std::logic_error("analyze_primitive requires delta(s0,0) = s0");
  if (!is_primitive(a).primitive) throw std::invalid_argument("analyze_primitive requires a primitive automaton");
  const int h = height(a).h;
  Dfao work = power_base(a, multiplicative_order(a.base(), h));
  auto phi = residue_labeling(work, h);
  if (!phi) throw std::logic_error("residue labeling lost under base power");
  auto images = minimal_images(work, image_cap);

  StructureReport rep{work, work.base(), images.rank, images.images, images.transitions, h, *phi, {}, {}, 0};
  rep.classes.assign(idx(h), {});
  for (StateId s = 0; s < work.num_states(); ++s) rep.classes[idx((*phi)[idx(s)])].push_back(s);
  rep.sij.assign(rep.images.size(), std::vector<std::vector<StateId>>(idx(h)));
  for (std::size_t i = 0; i < rep.images.size(); ++i) {
    for (StateId s : rep.images[i]) rep.sij[i][idx((*phi)[idx(s)])].push_back(s);
  }
  rep.r = 0;
  for (const auto& row : rep.sij) {
    for (const auto& cell : row) {
      std::vector<int> labels;
      for (StateId s : cell) labels.push_back(work.output(s));
      std::sort(labels.begin(), labels.end());
      labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
      rep.r = std::max(rep.r, static_cast<int>(labels.size()));
    }
  }
  return rep;
}

int attained_label_count(const Dfao& a) {
  Dfao norm = prune_unreachable(normalize_leading_zeros(a));
  std::vector<bool> used(idx(norm.num_labels()), false);
  for (StateId s = 0; s < norm.num_states(); ++s) used[idx(norm.output(s))] = true;
  return static_cast<int>(std::count(used.begin(), used.end(), true));
}

EffectiveAlphabet effective_alphabet_size(const Dfao& a, std::size_t image_cap) {
  Dfao norm = prune_unreachable(normalize_leading_zeros(a));
  EffectiveAlphabet out;
  out.attained_labels = attained_label_count(norm);
  out.zero_power = zero_idempotent_exponent(norm);
  Dfao powered = power_base(norm, out.zero_power);
  auto dec = decompose(powered);
  for (std::size_t c = 0; c < dec.components.size(); ++c) {
    if (!dec.final_flags[c]) continue;
    const auto& members = dec.components[c];
    StateId start = -1;
    if (std::binary_search(members.begin(), members.end(), powered.initial())) {
      start = powered.initial();
    } else {
      for (StateId s : members) {
        if (powered.next(s, 0) == s) {
          start = s;
          break;
        }
      }
    }
    if (start < 0) throw std::logic_error("final component without a 0-looping state");
    Dfao comp = component_automaton(powered, members, start);
    ComponentAnalysis ca{{}, powered.state_name(start), analyze_primitive(comp, image_cap)};
    for (StateId s : members) ca.states.push_back(powered.state_name(s));
    out.r = std::max(out.r, ca.report.r);
    out.components.push_back(std::move(ca));
  }
  return out;
}

std::optional<DigitWord> find_congruent_loop_word(const Dfao& a, int q, int m, int length_class,
                                                  std::int64_t residue) {
  if (q < 1 || m < 1) throw std::invalid_argument("moduli must be positive");
  if (std::gcd(q, a.base()) != 1) throw std::invalid_argument("q must be coprime to the base");
  if (!a.ignores_leading_zeros()) throw std::logic_error("find_congruent_loop_word requires delta(s0,0) = s0");
  const int k = a.base();
  const auto node_count = idx(a.num_states()) * idx(q) * idx(m);
  auto node = [&](StateId s, int v, int len) { return (idx(s) * idx(q) + idx(v)) * idx(m) + idx(len); };
  const int target_v = static_cast<int>(((residue % q) + q) % q);
  const int target_len = ((length_class % m) + m) % m;
  const std::size_t start = node(a.initial(), 0, 0);
  const std::size_t target = node(a.initial(), target_v, target_len);
  if (start == target) return DigitWord();

  std::vector<std::int64_t> parent(node_count, -1);
  std::vector<int> via(node_count, -1);
  parent[start] = static_cast<std::int64_t>(start);
  std::deque<std::size_t> queue{start};
  bool found = false;
  while (!queue.empty() && !found) {
    std::size_t cur = queue.front();
    queue.pop_front();
    const int len = static_cast<int>(cur % idx(m));
    const int v = static_cast<int>((cur / idx(m)) % idx(q));
    const auto s = static_cast<StateId>(cur / idx(m) / idx(q));
    for (int d = 0; d < k; ++d) {
      std::size_t nxt = node(a.next(s, d), static_cast<int>((static_cast<std::int64_t>(v) * k + d) % q), (len + 1) % m);
      if (parent[nxt] >= 0) continue;
      parent[nxt] = static_cast<std::int64_t>(cur);
      via[nxt] = d;
      if (nxt == target) {
        found = true;
        break;
      }
      queue.push_back(nxt);
    }
  }
  if (!found) {
    if (is_primitive(a).primitive && residue % height(a).h == 0) {
      throw std::logic_error("no congruent loop word although the residue is a multiple of the height");
    }
    return std::nullopt;
  }
  std::vector<int> digits;
  for (std::size_t cur = target; cur != start; cur = static_cast<std::size_t>(parent[cur])) digits.push_back(via[cur]);
  std::reverse(digits.begin(), digits.end());
  return DigitWord(std::move(digits));
}

}  // namespace autoseq
