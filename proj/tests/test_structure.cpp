#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "autoseq/structure.hpp"
#include "support.hpp"

using namespace autoseq;

namespace {

using Matrix = std::vector<std::vector<bool>>;

Matrix adjacency(const Dfao& a) {
  const auto n = static_cast<std::size_t>(a.num_states());
  Matrix m(n, std::vector<bool>(n, false));
  for (StateId s = 0; s < a.num_states(); ++s) {
    for (int d = 0; d < a.base(); ++d) m[static_cast<std::size_t>(s)][static_cast<std::size_t>(a.next(s, d))] = true;
  }
  return m;
}

// Reflexive-transitive closure by Warshall.
Matrix closure(const Dfao& a) {
  Matrix m = adjacency(a);
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) m[i][i] = true;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (m[i][k] && m[k][j]) m[i][j] = true;
      }
    }
  }
  return m;
}

Matrix multiply(const Matrix& x, const Matrix& y) {
  const std::size_t n = x.size();
  Matrix z(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (!x[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (y[k][j]) z[i][j] = true;
      }
    }
  }
  return z;
}

// gcd of closed-walk lengths through s0 up to a length that covers every
// simple cycle combination for small machines.
int period_oracle(const Dfao& a) {
  const Matrix adj = adjacency(a);
  Matrix p = adj;
  int g = 0;
  const int s0 = a.initial();
  const int limit = 4 * a.num_states() * a.num_states() + 4;
  for (int len = 1; len <= limit; ++len) {
    if (p[static_cast<std::size_t>(s0)][static_cast<std::size_t>(s0)]) g = std::gcd(g, len);
    p = multiply(p, adj);
  }
  return g;
}

std::vector<StateId> image_of(const Dfao& a, const std::vector<int>& word) {
  std::set<StateId> cur;
  for (StateId s = 0; s < a.num_states(); ++s) cur.insert(s);
  for (int d : word) {
    std::set<StateId> next;
    for (StateId s : cur) next.insert(a.next(s, d));
    cur = std::move(next);
  }
  return {cur.begin(), cur.end()};
}

// Minimal images by enumerating every word up to the given length.
std::set<std::vector<StateId>> images_oracle(const Dfao& a, int max_len) {
  std::map<std::size_t, std::set<std::vector<StateId>>> by_size;
  std::vector<int> word;
  for (int len = 0; len <= max_len; ++len) {
    std::vector<int> digits(static_cast<std::size_t>(len), 0);
    while (true) {
      auto img = image_of(a, digits);
      by_size[img.size()].insert(img);
      std::size_t i = 0;
      while (i < digits.size() && ++digits[i] == a.base()) digits[i++] = 0;
      if (i == digits.size()) break;
    }
  }
  return by_size.begin()->second;
}

// Largest m <= #S coprime to k such that the state at n determines n mod m,
// read off the state sequence.
int height_from_prefix(const Dfao& a, std::size_t n) {
  auto t = generate_state_prefix(a, n);
  for (int m = a.num_states(); m >= 1; --m) {
    if (std::gcd(m, a.base()) != 1) continue;
    std::map<StateId, std::size_t> residue;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      auto [it, fresh] = residue.emplace(t[i], i % static_cast<std::size_t>(m));
      if (!fresh && it->second != i % static_cast<std::size_t>(m)) ok = false;
    }
    if (ok) return m;
  }
  return 0;
}

std::vector<std::string> names(const Dfao& a, const std::vector<StateId>& states) {
  std::vector<std::string> out;
  for (StateId s : states) out.push_back(a.state_name(s));
  return out;
}

// Random primitive machines with delta(s0, 0) = s0.
std::vector<Dfao> primitive_sample(std::mt19937_64& rng, int count, int k, int max_states) {
  std::vector<Dfao> out;
  while (static_cast<int>(out.size()) < count) {
    const int n = 2 + static_cast<int>(rng() % static_cast<unsigned>(max_states - 1));
    Dfao a = testing::random_machine(rng, k, n, 3);
    std::vector<int> delta(a.transitions());
    delta[0] = 0;
    std::vector<int> labels;
    for (StateId s = 0; s < n; ++s) labels.push_back(std::stoi(a.output_label(s)));
    Dfao b = testing::machine(k, delta, labels);
    if (is_primitive(b).primitive) out.push_back(b);
  }
  return out;
}

}  // namespace

TEST_CASE("strongly connected components match the closure oracle") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 300; ++t) {
    Dfao a = testing::random_machine(rng, 2 + static_cast<int>(rng() % 2), 1 + static_cast<int>(rng() % 7), 2);
    auto dec = decompose(a);
    auto reach = closure(a);
    const auto n = static_cast<std::size_t>(a.num_states());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const bool same = reach[i][j] && reach[j][i];
        REQUIRE((dec.component_of[i] == dec.component_of[j]) == same);
      }
    }
    for (std::size_t c = 0; c < dec.components.size(); ++c) {
      bool final = true;
      for (StateId s : dec.components[c]) {
        for (std::size_t j = 0; j < n; ++j) {
          if (reach[static_cast<std::size_t>(s)][j] && dec.component_of[j] != static_cast<int>(c)) final = false;
        }
      }
      REQUIRE(dec.final_flags[c] == final);
      REQUIRE(std::is_sorted(dec.components[c].begin(), dec.components[c].end()));
    }
  }
}

TEST_CASE("component decomposition of a transient prefix") {
  Dfao a = testing::load("two_components");
  auto dec = decompose(a);
  std::set<std::vector<std::string>> finals;
  for (std::size_t c = 0; c < dec.components.size(); ++c) {
    if (dec.final_flags[c]) finals.insert(names(a, dec.components[c]));
  }
  CHECK(finals == std::set<std::vector<std::string>>{{"T0", "T1"}, {"K"}});

  Dfao chain = testing::machine(2, {1, 1, 1, 1}, {0, 1});
  auto cd = decompose(chain);
  CHECK(cd.components.size() == 2);
  CHECK(cd.final_flags == std::vector<bool>{false, true});
}

TEST_CASE("primitivity and period") {
  CHECK(is_primitive(testing::load("thue_morse")).primitive);
  CHECK(is_primitive(testing::load("example_41")).primitive);
  CHECK_FALSE(is_primitive(testing::load("two_components")).strongly_connected);
  Dfao swap = testing::machine(2, {1, 1, 0, 0}, {0, 1});
  auto p = is_primitive(swap);
  CHECK(p.strongly_connected);
  CHECK(p.period == 2);
  CHECK_FALSE(p.primitive);

  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    Dfao a = testing::random_machine(rng, 2, 1 + static_cast<int>(rng() % 6), 2);
    REQUIRE(is_primitive(a).period == period_oracle(a));
  }
}

TEST_CASE("worked example: minimal images, height and classes") {
  Dfao a = testing::load("example_41");
  auto rep = analyze_primitive(a);
  CHECK(rep.height == 2);
  CHECK(rep.rank == 4);
  CHECK(rep.base_used == 3);
  REQUIRE(rep.images.size() == 2);
  CHECK(names(rep.automaton, rep.images[0]) == std::vector<std::string>{"α", "β", "γ", "ε"});
  CHECK(names(rep.automaton, rep.images[1]) == std::vector<std::string>{"α", "γ", "δ", "ε"});
  REQUIRE(rep.classes.size() == 2);
  CHECK(names(rep.automaton, rep.classes[0]) == std::vector<std::string>{"α", "β", "δ"});
  CHECK(names(rep.automaton, rep.classes[1]) == std::vector<std::string>{"γ", "ε"});
  CHECK(names(rep.automaton, rep.sij[0][0]) == std::vector<std::string>{"α", "β"});
  CHECK(names(rep.automaton, rep.sij[0][1]) == std::vector<std::string>{"γ", "ε"});
  CHECK(names(rep.automaton, rep.sij[1][0]) == std::vector<std::string>{"α", "δ"});
  CHECK(names(rep.automaton, rep.sij[1][1]) == std::vector<std::string>{"γ", "ε"});
  CHECK(rep.r == 2);
}

TEST_CASE("minimal images match word enumeration") {
  std::mt19937_64 rng(9);
  auto sample = primitive_sample(rng, 120, 2, 4);
  for (const auto& a : sample) {
    auto mi = minimal_images(a);
    // Subset paths have at most 2^4 - 1 steps.
    auto oracle = images_oracle(a, 15);
    REQUIRE(static_cast<std::size_t>(mi.rank) == oracle.begin()->size());
    REQUIRE(std::set<std::vector<StateId>>(mi.images.begin(), mi.images.end()) == oracle);
    REQUIRE(std::find(mi.images[0].begin(), mi.images[0].end(), a.initial()) != mi.images[0].end());
    // Closed under every digit, with consistent transitions.
    for (std::size_t i = 0; i < mi.images.size(); ++i) {
      for (int d = 0; d < a.base(); ++d) {
        std::set<StateId> img;
        for (StateId s : mi.images[i]) img.insert(a.next(s, d));
        const auto target = mi.transitions[i * static_cast<std::size_t>(a.base()) + static_cast<std::size_t>(d)];
        REQUIRE(std::vector<StateId>(img.begin(), img.end()) == mi.images[static_cast<std::size_t>(target)]);
      }
    }
  }
}

TEST_CASE("minimal image cap") {
  Dfao a = testing::load("example_41");
  CHECK_THROWS_AS(minimal_images(a, 1), BudgetExceeded);
}

TEST_CASE("height: labeling, maximality and the prefix oracle") {
  std::mt19937_64 rng(13);
  auto sample = primitive_sample(rng, 150, 2, 6);
  auto more = primitive_sample(rng, 50, 3, 5);
  sample.insert(sample.end(), more.begin(), more.end());
  sample.push_back(testing::load("example_41"));
  sample.push_back(testing::load("thue_morse"));
  sample.push_back(testing::load("mod3_base2"));
  for (const auto& a : sample) {
    auto h = height(a);
    const int k = a.base();
    auto reach = a.reachable();
    for (StateId s = 0; s < a.num_states(); ++s) {
      if (!reach[static_cast<std::size_t>(s)]) continue;
      for (int d = 0; d < k; ++d) {
        REQUIRE(h.phi[static_cast<std::size_t>(a.next(s, d))] ==
                (k * h.phi[static_cast<std::size_t>(s)] + d) % h.h);
      }
    }
    for (int m = h.h + 1; m <= a.num_states(); ++m) {
      if (std::gcd(m, k) == 1) REQUIRE_FALSE(residue_labeling(a, m).has_value());
    }
    REQUIRE(height_from_prefix(a, 20000) == h.h);
    const auto g = height_gcd_oracle(a, 10000);
    if (g != 0) REQUIRE(g % static_cast<std::uint64_t>(h.h) == 0);
  }
  CHECK(height(testing::load("mod3_base2")).h == 3);
  CHECK(height(testing::load("thue_morse")).h == 1);
}

TEST_CASE("effective alphabet size") {
  CHECK(effective_alphabet_size(testing::load("thue_morse")).r == 2);
  CHECK(effective_alphabet_size(testing::load("rudin_shapiro")).r == 2);
  CHECK(effective_alphabet_size(testing::load("example_41")).r == 2);
  // Periodic and synchronizing sequences have r = 1.
  for (const char* name : {"contains11", "period2", "mod3_base2", "mod3_base3", "constant"}) {
    CAPTURE(name);
    CHECK(effective_alphabet_size(testing::load(name)).r == 1);
  }
  auto two = effective_alphabet_size(testing::load("two_components"));
  CHECK(two.r == 2);
  CHECK(two.components.size() == 2);
  CHECK(two.attained_labels == 3);
  CHECK(attained_label_count(testing::load("mod3_base2")) == 3);
}

TEST_CASE("non-primitive reduction powers the digit-0 map to an idempotent") {
  // 0 cycles s0 -> s1 -> s0; the reduction must square the base.
  Dfao a = testing::machine(2, {1, 0, 0, 1}, {0, 1});
  auto eff = effective_alphabet_size(a);
  CHECK(eff.zero_power == 2);
  CHECK(eff.r >= 1);
}

TEST_CASE("congruent loop words are self-certifying") {
  auto check_word = [](const Dfao& a, int q, int m, int len_class, std::int64_t residue) {
    auto u = find_congruent_loop_word(a, q, m, len_class, residue);
    REQUIRE(u.has_value());
    CHECK(a.run(a.initial(), *u) == a.initial());
    CHECK(static_cast<int>(u->size()) % m == len_class);
    std::uint64_t v = 0;
    for (int d : *u) v = (v * static_cast<std::uint64_t>(a.base()) + static_cast<std::uint64_t>(d)) % static_cast<std::uint64_t>(q);
    CHECK(static_cast<std::int64_t>(v) == residue % q);
    return *u;
  };
  Dfao ex = testing::load("example_41");
  for (int lc = 0; lc < 3; ++lc) check_word(ex, 5, 3, lc, 2);
  Dfao tm = testing::load("thue_morse");
  check_word(tm, 3, 2, 0, 1);
  check_word(tm, 3, 2, 1, 1);
  CHECK(check_word(tm, 1, 1, 0, 0).empty());

  std::mt19937_64 rng(17);
  auto sample = primitive_sample(rng, 60, 2, 5);
  for (const auto& a : sample) {
    const int h = height(a).h;
    for (int q : {1, 3, 5, 7}) {
      for (int m : {1, 2, 3}) {
        for (int lc = 0; lc < m; ++lc) check_word(a, q, m, lc, 2 * h);
      }
    }
  }
  CHECK_THROWS_AS(find_congruent_loop_word(tm, 2, 1, 0, 0), std::invalid_argument);
}
