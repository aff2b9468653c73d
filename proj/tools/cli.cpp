#include "cli.hpp"

#include <omp.h>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "autoseq/apk.hpp"
#include "autoseq/complexity.hpp"
#include "autoseq/cover.hpp"
#include "autoseq/report.hpp"
#include "autoseq/structure.hpp"
#include "autoseq/uniformity.hpp"
#include "json.hpp"

namespace autoseq::cli {

namespace {

using ojson = nlohmann::ordered_json;

// Malformed input: unreadable files, bad literals, bad option values.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string input;
  std::string out_path;
  std::string format = "json";
  std::uint64_t seed = 0;
  int threads = 0;

  // complexity
  std::string kind = "ap";
  int ell = 6;
  std::uint64_t n = std::uint64_t{1} << 14;
  std::uint64_t m_max = 64;
  int degree = 1;
  std::uint64_t coeff_bound = 16;
  std::string witness_path;

  // verify
  int ell_min = 1;
  int ell_max = 8;
  std::uint64_t chain_n = 32;
  int chain_ell = 6;

  // cover
  std::string poly = "0,1";
  std::string word = "1";
  std::int64_t cover_ell = 1000;
  int base = 2;

  // gowers
  std::string label = "1";
  int d = 2;
  std::vector<std::size_t> sizes{64, 128, 256};
  int cyclic_checks = 0;
  std::size_t cyclic_n = 32;

  // density
  std::string set;

  // masc
  BracketOptions bracket;
};

Dfao load(const Config& cfg) {
  if (cfg.input.empty()) throw InputError("--input is required for this command");
  try {
    return load_dfao(cfg.input);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

std::string header_line(const std::string& command, const Config& cfg) {
  return "# autoseq " + command + " seed=" + std::to_string(cfg.seed) + " input=" + cfg.input + "\n";
}

std::string document(const std::string& command, const Config& cfg, ojson result) {
  ojson j;
  j["tool"] = "autoseq";
  j["command"] = command;
  j["seed"] = cfg.seed;
  j["input"] = cfg.input;
  j["result"] = std::move(result);
  return j.dump(2) + "\n";
}

ojson parsed(const std::string& text) { return ojson::parse(text); }

std::string cmd_analyze(const Config& cfg) {
  Dfao a = load(cfg);
  auto eff = effective_alphabet_size(a);
  if (cfg.format == "csv") {
    std::ostringstream out;
    out << header_line("analyze", cfg);
    out << "component,start,states,base_used,rank,height,r\n";
    for (std::size_t i = 0; i < eff.components.size(); ++i) {
      const auto& c = eff.components[i];
      out << i << ',' << c.start << ',' << c.states.size() << ',' << c.report.base_used << ',' << c.report.rank << ','
          << c.report.height << ',' << c.report.r << '\n';
    }
    out << "global,,,,,," << eff.r << '\n';
    return out.str();
  }
  ojson result;
  result["automaton"] = {{"base", a.base()}, {"states", a.state_names()}, {"labels", a.labels()}};
  result["analysis"] = parsed(effective_alphabet_json(eff));
  return document("analyze", cfg, std::move(result));
}

void write_witnesses(const Config& cfg, const WordCount& count, const Dfao& a) {
  ojson j = ojson::array();
  const auto norm = normalize_leading_zeros(a);
  for (const auto& hit : count.witnesses) {
    ojson word = ojson::array();
    for (int x : hit.word) word.push_back(norm.label(x));
    j.push_back({{"word", word}, {"where", hit.where}});
  }
  std::ofstream f(cfg.witness_path, std::ios::binary);
  if (!f) throw InputError("cannot write " + cfg.witness_path);
  f << j.dump(2) << "\n";
}

std::string cmd_complexity(const Config& cfg) {
  Dfao a = load(cfg);
  if (cfg.ell < 1) throw InputError("--ell must be positive");
  ComplexityProfile prof;
  if (cfg.kind == "ordinary") {
    if (cfg.n < static_cast<std::uint64_t>(cfg.ell)) throw InputError("--N must be at least --ell");
    prof = subword_complexity_profile(a, cfg.ell, cfg.n);
  } else if (cfg.kind == "ap") {
    prof = ap_complexity_profile(a, cfg.ell, cfg.n, cfg.m_max);
    if (!cfg.witness_path.empty()) write_witnesses(cfg, ap_complexity(a, cfg.ell, cfg.n, cfg.m_max, true), a);
  } else if (cfg.kind == "poly") {
    if (cfg.degree < 1) throw InputError("--degree must be at least 1");
    prof = poly_complexity_profile(a, cfg.ell, cfg.degree, cfg.coeff_bound);
    if (!cfg.witness_path.empty()) {
      write_witnesses(cfg, poly_complexity(a, cfg.ell, cfg.degree, cfg.coeff_bound, true), a);
    }
  } else {
    throw InputError("--kind must be ordinary, ap or poly");
  }
  if (cfg.format == "csv") return header_line("complexity", cfg) + prof.csv();
  return document("complexity", cfg, parsed(prof.json()));
}

std::string cmd_verify(const Config& cfg, int& status) {
  Dfao a = load(cfg);
  if (cfg.ell_min < 1 || cfg.ell_max < cfg.ell_min) throw InputError("need 1 <= --ell-min <= --ell-max");
  std::vector<int> ells;
  for (int ell = cfg.ell_min; ell <= cfg.ell_max; ++ell) ells.push_back(ell);
  BoundBudgets budgets;
  budgets.n = cfg.n;
  budgets.m_max = cfg.m_max;
  budgets.chain_n = cfg.chain_n;
  budgets.chain_ell_max = cfg.chain_ell;
  auto rep = verify_theorem_bounds(a, ells, budgets);
  if (!rep.sanity_ok) status = kContractViolation;
  if (cfg.format == "csv") return header_line("verify", cfg) + rep.csv();
  return document("verify", cfg, parsed(rep.json()));
}

IntegerPolynomial parse_poly(const std::string& text) {
  IntegerPolynomial p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      p.coeffs.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("bad polynomial coefficient '" + item + "'");
    }
  }
  return p;
}

std::string cmd_cover(const Config& cfg, std::ostream& err, int& status) {
  IntegerPolynomial p = parse_poly(cfg.poly);
  DigitWord w;
  try {
    w = DigitWord::parse(cfg.word);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  Cover cover = build_cover(p, w, cfg.cover_ell, cfg.base);
  auto verdict = verify_cover(cover.pieces, p, w, cfg.cover_ell, cfg.base, cover.params.theta);
  err << "cover: " << (verdict.ok() ? "valid" : "INVALID") << ", " << verdict.pieces << " pieces ("
      << verdict.blocks << " blocks, " << verdict.singletons << " singletons), pieces/ell^theta = " << verdict.ratio
      << (verdict.problem.empty() ? "" : ", " + verdict.problem) << "\n";
  if (!verdict.ok()) status = kContractViolation;
  if (cfg.format == "csv") {
    std::ostringstream out;
    out << header_line("cover", cfg) << "kind,x0,x1,m,i\n";
    for (const auto& piece : cover.pieces) {
      if (piece.kind == CoverPiece::Kind::kSingleton) {
        out << "singleton," << piece.point << ',' << piece.point + 1 << ",,\n";
      } else {
        out << "block," << piece.x0 << ',' << piece.x1 << ',' << piece.m << ',' << piece.i << '\n';
      }
    }
    return out.str();
  }
  ojson result = parsed(cover_json(cover, verdict));
  result["polynomial"] = p.coeffs;
  result["word"] = w.str();
  result["ell"] = cfg.cover_ell;
  return document("cover", cfg, std::move(result));
}

std::string cmd_gowers(const Config& cfg) {
  Dfao a = load(cfg);
  struct Row {
    std::size_t n;
    GowersValue v;
  };
  std::vector<Row> rows;
  for (auto n : cfg.sizes) rows.push_back({n, uniformity_probe(a, cfg.label, cfg.d, n)});

  double worst = 0;
  if (cfg.cyclic_checks > 0) {
    std::mt19937_64 rng(cfg.seed);
    for (int t = 0; t < cfg.cyclic_checks; ++t) {
      std::vector<double> v(cfg.cyclic_n);
      for (auto& x : v) x = (rng() >> 63) ? 1.0 : -1.0;
      auto f = FiniteSignal::real(v);
      worst = std::max(worst, std::abs(gowers_u2_cyclic(f) - gowers_u2_cyclic_cubes(f)));
    }
  }
  if (cfg.format == "csv") {
    std::ostringstream out;
    out.precision(17);
    out << header_line("gowers", cfg) << "N,d,value,cubes,empty\n";
    for (const auto& r : rows) {
      out << r.n << ',' << cfg.d << ',' << r.v.value << ',' << r.v.cubes << ',' << (r.v.empty ? 1 : 0) << '\n';
    }
    return out.str();
  }
  ojson result;
  result["label"] = cfg.label;
  result["d"] = cfg.d;
  result["probes"] = ojson::array();
  for (const auto& r : rows) {
    result["probes"].push_back({{"N", r.n}, {"value", r.v.value}, {"cubes", r.v.cubes}, {"empty", r.v.empty}});
  }
  if (cfg.cyclic_checks > 0) {
    result["cyclic_check"] = {{"signals", cfg.cyclic_checks}, {"N", cfg.cyclic_n}, {"max_difference", worst}};
  }
  return document("gowers", cfg, std::move(result));
}

std::string cmd_density(const Config& cfg) {
  Dfao a = load(cfg);
  ApkSet set(a.base());
  try {
    set = ApkSet::parse(cfg.set, a.base());
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  const double dens = log_density_estimate(a, cfg.label, set, cfg.n);
  auto values = value_set(a, set, cfg.n);
  if (cfg.format == "csv") {
    std::ostringstream out;
    out.precision(17);
    out << header_line("density", cfg) << "set,label,N,log_density\n"
        << '"' << set.str() << "\"," << cfg.label << ',' << cfg.n << ',' << dens << '\n';
    return out.str();
  }
  ojson result;
  result["set"] = set.str();
  result["label"] = cfg.label;
  result["N"] = cfg.n;
  result["log_density"] = dens;
  result["values"] = values;
  return document("density", cfg, std::move(result));
}

std::string cmd_masc(const Config& cfg) {
  Dfao a = load(cfg);
  auto res = masc_check(a, cfg.bracket);
  if (cfg.format == "csv") {
    std::ostringstream out;
    out << header_line("masc", cfg) << "verdict,structural_r,attained_labels,r_lo,r_hi\n"
        << to_string(res.verdict) << ',' << res.structural_r << ',' << res.attained_labels << ','
        << (res.evidence ? std::to_string(res.evidence->r_lo) : "") << ','
        << (res.evidence ? std::to_string(res.evidence->r_hi) : "") << '\n';
    return out.str();
  }
  return document("masc", cfg, parsed(masc_json(res)));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Structure and complexity of automatic sequences", "autoseq"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("-i,--input", cfg.input, "Automaton file");
  app.add_option("-o,--out", cfg.out_path, "Output file (default: standard output)");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", cfg.seed, "Seed for every sampled quantity");
  app.add_option("--threads", cfg.threads, "Worker threads (0: OpenMP default)")->check(CLI::NonNegativeNumber);

  auto* analyze = app.add_subcommand("analyze", "Height, minimal images and effective alphabet size");

  auto* complexity = app.add_subcommand("complexity", "Word counts along windows, progressions or polynomials");
  complexity->add_option("--kind", cfg.kind, "ordinary, ap or poly")->check(CLI::IsMember({"ordinary", "ap", "poly"}));
  complexity->add_option("--ell", cfg.ell, "Largest word length");
  complexity->add_option("--N", cfg.n, "Prefix length / starting points");
  complexity->add_option("--Mmax", cfg.m_max, "Largest common difference");
  complexity->add_option("--degree", cfg.degree, "Polynomial degree");
  complexity->add_option("--coeff-bound", cfg.coeff_bound, "Bound on binomial-basis coefficients");
  complexity->add_option("--witnesses", cfg.witness_path, "Write one occurrence per word at the largest length");

  auto* verify = app.add_subcommand("verify", "Observed arithmetic complexity against r^ell");
  verify->add_option("--ell-min", cfg.ell_min, "Smallest word length");
  verify->add_option("--ell-max", cfg.ell_max, "Largest word length");
  verify->add_option("--N", cfg.n, "Starting points");
  verify->add_option("--Mmax", cfg.m_max, "Largest common difference");
  verify->add_option("--chain-N", cfg.chain_n, "Budget of the equal-budget chain check");
  verify->add_option("--chain-ell", cfg.chain_ell, "Largest word length of the chain check");

  auto* cover = app.add_subcommand("cover", "Cover [0, ell) by singletons and digit-block preimages");
  cover->add_option("--poly", cfg.poly, "Binomial-basis coefficients c0,c1,...");
  cover->add_option("--word", cfg.word, "Digit word w");
  cover->add_option("--ell", cfg.cover_ell, "Length of the covered range [0, ell)");
  cover->add_option("--base", cfg.base, "Digit base k");

  auto* gowers = app.add_subcommand("gowers", "Gowers norm of the balanced indicator of a label");
  gowers->add_option("--label", cfg.label, "Output label of the indicator");
  gowers->add_option("--d", cfg.d, "Norm order (2 or 3)");
  gowers->add_option("--N", cfg.sizes, "Prefix lengths")->delimiter(',');
  gowers->add_option("--cyclic-check", cfg.cyclic_checks, "Random signals for the Fourier cross-check");
  gowers->add_option("--cyclic-N", cfg.cyclic_n, "Largest random signal length");

  auto* density = app.add_subcommand("density", "Logarithmic density of a label on a residue class");
  density->add_option("--label", cfg.label, "Output label");
  density->add_option("--set", cfg.set, "u=..,v=..,len=l%m,res=c%q");
  density->add_option("--N", cfg.n, "Prefix length");

  auto* masc = app.add_subcommand("masc", "Maximal arithmetical subword complexity check");
  masc->add_option("--depth", cfg.bracket.depth, "Refinement depth and largest modulus");
  masc->add_option("--candidate-depth", cfg.bracket.candidate_depth, "Largest prefix/suffix length of a candidate");
  masc->add_option("--N", cfg.bracket.limit, "Member bound");
  masc->add_option("--min-lo", cfg.bracket.min_members_lo, "Fewest members of a refinement counted by r_lo");
  masc->add_option("--min-hi", cfg.bracket.min_members_hi, "Fewest members of a refinement counted by r_hi");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);

  int status = kOk;
  std::string text;
  try {
    if (analyze->parsed()) {
      text = cmd_analyze(cfg);
    } else if (complexity->parsed()) {
      text = cmd_complexity(cfg);
    } else if (verify->parsed()) {
      text = cmd_verify(cfg, status);
    } else if (cover->parsed()) {
      text = cmd_cover(cfg, err, status);
    } else if (gowers->parsed()) {
      text = cmd_gowers(cfg);
    } else if (density->parsed()) {
      text = cmd_density(cfg);
    } else if (masc->parsed()) {
      text = cmd_masc(cfg);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kContractViolation;
  }

  if (cfg.out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << cfg.out_path << "\n";
      return kInputError;
    }
    f << text;
  }
  return status;
}

int run(int argc, const char* const* argv) { return run(argc, argv, std::cout, std::cerr); }

}  // namespace autoseq::cli
