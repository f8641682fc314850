#include "zbases/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "zbases/certificate.hpp"
#include "zbases/constructions.hpp"
#include "zbases/errors.hpp"
#include "zbases/exact_search.hpp"
#include "zbases/primes.hpp"
#include "zbases/set_file.hpp"
#include "zbases/tables.hpp"

namespace zbases::cli {

namespace {

// Flag values as they arrive from the command line, validated in dispatch.
struct RunConfig {
  std::string kind;
  std::uint64_t m = 0;
  std::string eps = "1/10";
  std::string policy = "adaptive";
  std::string out_path;
  std::string in_path;
  std::uint64_t from = 0;
  std::uint64_t to = 0;
  std::optional<std::uint64_t> samples;
  std::uint64_t seed = 20240601;
  std::uint64_t max_m = 0;
  bool oracle = false;
  std::string cache_path = "search_cache.ndjson";
  bool no_cache = false;
  unsigned jobs = 0;
  std::uint64_t node_budget = SearchOptions{}.node_budget;
  std::string window_lo;
  std::string window_hi;
  std::uint64_t p = 0;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Rational parse_eps(const std::string& text) {
  Rational eps;
  try {
    eps = parse_rational(text);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
  if (!(eps > 0 && eps < 1)) throw UsageError("--eps must lie strictly between 0 and 1");
  return eps;
}

std::string summary_line(const Certificate& cert) {
  return "m=" + std::to_string(cert.m) + " size=" + std::to_string(cert.set.size()) + " mean=" + to_string(cert.mean) +
         " bound=" + to_string(cert.bound) + " eps=" + to_string(cert.eps_used);
}

int cmd_construct(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const BasisKind kind = parse_basis_kind(cfg.kind);
  const Rational eps = parse_eps(cfg.eps);
  const WindowPolicy policy = parse_window_policy(cfg.policy);
  if (cfg.m == 0 || cfg.m > kMaxModulus) throw UsageError("--m out of range");
  try {
    const Certificate cert = build_basis(kind, cfg.m, eps, policy);
    const std::string path = cfg.out_path.empty()
                                 ? "certificate_" + std::string(to_string(kind)) + "_" + std::to_string(cfg.m) + ".json"
                                 : cfg.out_path;
    write_certificate(path, cert);
    out << "certificate: " << path << '\n' << summary_line(cert) << '\n';
    return kExitOk;
  } catch (const NoPrimeInWindow& e) {
    err << "construction infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const ConstructionInfeasible& e) {
    err << "construction infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const VerificationFailed& e) {
    err << "verification failed: " << e.what() << '\n';
    return kExitVerificationFailed;
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::string text = slurp(cfg.in_path);
  const auto first = text.find_first_not_of(" \t\r\n");
  std::optional<Certificate> cert;
  std::optional<ResidueSet> set;
  if (first != std::string::npos && text[first] == '{') {
    cert = certificate_from_json(text);
    set = cert->set;
  } else {
    set = parse_set_file(text);
  }
  if (cfg.kind.empty() && !cert) throw UsageError("--kind is required for set files");
  const BasisKind requested = cfg.kind.empty() ? cert->kind : parse_basis_kind(cfg.kind);

  bool holds = false;
  for (const BasisKind kind : {BasisKind::additive, BasisKind::subtractive}) {
    const auto check = verify_basis(*set, kind);
    out << to_string(kind) << ": min=" << check.profile.min << " max=" << check.profile.max
        << " mean=" << to_string(check.profile.mean) << " basis=" << (check.is_basis ? "yes" : "no") << '\n';
    if (kind == requested) holds = check.is_basis;
  }
  if (cert) {
    const auto check = verify_basis(cert->set, cert->kind);
    const bool consistent = check.profile.min == cert->min_rep && check.profile.max == cert->max_rep &&
                            cert->mean == mean_of(cert->set) && cert->mean <= cert->bound;
    out << "certificate: " << (consistent ? "consistent" : "INCONSISTENT") << '\n';
    if (!consistent) {
      err << "certificate fields do not match the stored set\n";
      return kExitVerificationFailed;
    }
  }
  out << "requested " << to_string(requested) << " basis: " << (holds ? "holds" : "fails") << '\n';
  return holds ? kExitOk : kExitVerificationFailed;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const BasisKind kind = parse_basis_kind(cfg.kind);
  const Rational eps = parse_eps(cfg.eps);
  const WindowPolicy policy = parse_window_policy(cfg.policy);
  const auto moduli = scan_moduli(cfg.from, cfg.to, cfg.samples, cfg.seed);
  const auto rows = run_scan(kind, moduli, eps, policy, cfg.jobs);
  std::ofstream file;
  std::ostream* sink = &out;
  if (!cfg.out_path.empty()) {
    file.open(cfg.out_path, std::ios::binary);
    if (!file) throw UsageError("cannot write " + cfg.out_path);
    sink = &file;
  }
  *sink << scan_csv_header();
  for (const auto& row : rows) *sink << format_scan_row(row);
  return kExitOk;
}

int cmd_search(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const SearchKind kind = parse_search_kind(cfg.kind);
  SearchOptions options;
  options.node_budget = cfg.node_budget;
  const std::uint64_t limit = cfg.oracle ? kNaiveOracleLimit : default_search_limit(kind);
  if (cfg.max_m > limit) throw UsageError("--max-m above the limit of " + std::to_string(limit));
  std::optional<SearchCache> cache;
  if (!cfg.no_cache && !cfg.oracle) {
    std::vector<std::string> warnings;
    cache.emplace(cfg.cache_path, &warnings);
    for (const auto& w : warnings) err << "warning: " << w << '\n';
  }
  const auto rows = run_search_table(kind, cfg.max_m, cfg.oracle, cache ? &*cache : nullptr, options, cfg.jobs);
  out << search_csv_header();
  for (const auto& row : rows) out << format_search_row(row);
  return kExitOk;
}

int cmd_primes(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  Rational lo, hi;
  try {
    lo = parse_decimal(cfg.window_lo);
    hi = parse_decimal(cfg.window_hi);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
  if (!(lo < hi) || lo < 0) throw UsageError("--window needs 0 <= LO < HI");
  const auto primes = primes_in(PrimeWindow::between(lo, hi));
  for (std::size_t i = 0; i < primes.size(); ++i) out << (i ? "," : "") << primes[i];
  out << '\n';
  return kExitOk;
}

int cmd_singer(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!is_prime(cfg.p) || cfg.p > 100'000) throw UsageError("--p must be a prime <= 100000");
  try {
    const auto singer = singer_construction(cfg.p);
    out << format_set_file(singer.basis.set());
    err << "field=" << singer.field.modulus_string() << " primitive=" << to_string(singer.primitive)
        << " size=" << singer.basis.set().size() << '\n';
    return kExitOk;
  } catch (const VerificationFailed& e) {
    err << "verification failed: " << e.what() << '\n';
    return kExitVerificationFailed;
  }
}

int cmd_chen(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.p < 3 || !is_prime(cfg.p) || cfg.p > 10'000) throw UsageError("--p must be an odd prime <= 10000");
  try {
    const std::uint64_t r = admissible_nonresidue(cfg.p);
    const auto b = chen_plane_set(cfg.p, r);
    const auto prof = plane_profile(b);
    out << "p=" << cfg.p << " nonresidue=" << r << " size=" << b.points.size() << " min=" << prof.min
        << " max=" << prof.max << '\n';
    return kExitOk;
  } catch (const NoAdmissibleNonresidue& e) {
    err << e.what() << '\n';
    return kExitInfeasible;
  } catch (const VerificationFailed& e) {
    err << "verification failed: " << e.what() << '\n';
    return kExitVerificationFailed;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Additive and subtractive bases of Z_m: constructions, verification, exact search", "zbases"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* construct = app.add_subcommand("construct", "Build and certify a basis of Z_m");
  construct->add_option("kind", cfg.kind, "additive | subtractive")->required();
  construct->add_option("--m", cfg.m, "Target modulus")->required();
  construct->add_option("--eps", cfg.eps, "Window parameter as N/D")->capture_default_str();
  construct->add_option("--policy", cfg.policy, "strict | adaptive")->capture_default_str();
  construct->add_option("--out", cfg.out_path, "Certificate path");

  auto* verify = app.add_subcommand("verify", "Check a set file or certificate");
  verify->add_option("path", cfg.in_path)->required();
  verify->add_option("--kind", cfg.kind, "additive | subtractive");

  auto* scan = app.add_subcommand("scan", "Run a pipeline over a range of moduli, CSV to stdout");
  scan->add_option("kind", cfg.kind, "additive | subtractive")->required();
  scan->add_option("--from", cfg.from)->required();
  scan->add_option("--to", cfg.to)->required();
  scan->add_option("--samples", cfg.samples, "Sample this many m instead of every m");
  scan->add_option("--seed", cfg.seed)->capture_default_str();
  scan->add_option("--eps", cfg.eps)->capture_default_str();
  scan->add_option("--policy", cfg.policy)->capture_default_str();
  scan->add_option("--out", cfg.out_path, "Write CSV here instead of stdout");
  scan->add_option("--jobs", cfg.jobs, "Worker threads (0 = all cores)");

  auto* search = app.add_subcommand("search", "Exact ell_m, g_m or R_m for m = 1..N");
  search->add_option("kind", cfg.kind, "ell | g | ruzsa")->required();
  search->add_option("--max-m", cfg.max_m)->required();
  search->add_flag("--oracle", cfg.oracle, "Use plain enumeration (m <= 16)");
  search->add_option("--cache", cfg.cache_path)->capture_default_str();
  search->add_flag("--no-cache", cfg.no_cache);
  search->add_option("--node-budget", cfg.node_budget)->capture_default_str();
  search->add_option("--jobs", cfg.jobs);

  auto* primes = app.add_subcommand("primes", "List primes strictly inside (LO, HI)");
  primes->add_option("--window", [&](const CLI::results_t& r) {
          cfg.window_lo = r.at(0);
          cfg.window_hi = r.at(1);
          return true;
        })
      ->expected(2)
      ->type_name("LO HI")
      ->required();

  auto* singer = app.add_subcommand("singer", "Print the Singer difference set for prime p");
  singer->add_option("--p", cfg.p)->required();

  auto* chen = app.add_subcommand("chen", "Check the Chen plane set for odd prime p");
  chen->add_option("--p", cfg.p)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (construct->parsed()) return cmd_construct(cfg, out, err);
    if (verify->parsed()) return cmd_verify(cfg, out, err);
    if (scan->parsed()) return cmd_scan(cfg, out, err);
    if (search->parsed()) return cmd_search(cfg, out, err);
    if (primes->parsed()) return cmd_primes(cfg, out, err);
    if (singer->parsed()) return cmd_singer(cfg, out, err);
    if (chen->parsed()) return cmd_chen(cfg, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "malformed input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionViolated& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const VerificationFailed& e) {
    err << "verification failed: " << e.what() << '\n';
    return kExitVerificationFailed;
  }
  return kExitUsage;
}

}  // namespace zbases::cli
