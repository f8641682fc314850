#include "zbases/tables.hpp"

#include <atomic>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "zbases/errors.hpp"

namespace zbases {

namespace {

unsigned resolve_jobs(unsigned jobs, std::size_t tasks) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(tasks, 1)));
}

// Runs task(i) for i in [0, n) on a small pool; tasks must not throw.
template <typename Task>
void parallel_for(std::size_t n, unsigned jobs, Task task) {
  jobs = resolve_jobs(jobs, n);
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> workers;
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) task(i);
    });
  }
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

using Json = nlohmann::ordered_json;

Json result_to_json(const SearchResult& r) {
  Json j;
  j["kind"] = std::string(to_string(r.kind));
  j["m"] = r.m;
  j["optimum"] = r.optimum;
  j["value"] = Json{{"num", r.value.numerator()}, {"den", r.value.denominator()}};
  Json w = Json::array();
  for (const Residue x : r.witness.members()) w.push_back(x);
  j["witness"] = std::move(w);
  j["nodes"] = r.nodes_explored;
  return j;
}

SearchResult result_from_json(const Json& j) {
  SearchResult r;
  r.kind = parse_search_kind(j.at("kind").get<std::string>());
  r.m = j.at("m").get<std::uint64_t>();
  if (r.m == 0 || r.m > kSearchModulusCeiling) throw ParseError("cache entry modulus out of range");
  r.optimum = j.at("optimum").get<std::uint64_t>();
  const auto den = j.at("value").at("den").get<std::int64_t>();
  if (den <= 0) throw ParseError("cache entry has bad denominator");
  r.value = Rational(j.at("value").at("num").get<std::int64_t>(), den);
  const auto w = j.at("witness").get<std::vector<std::uint64_t>>();
  r.witness = ResidueSet(r.m, w);
  r.nodes_explored = j.at("nodes").get<std::uint64_t>();
  return r;
}

}  // namespace

std::vector<std::uint64_t> scan_moduli(std::uint64_t from, std::uint64_t to, std::optional<std::uint64_t> samples,
                                       std::uint64_t seed) {
  std::vector<std::uint64_t> out;
  if (from > to) return out;
  if (!samples) {
    for (std::uint64_t m = from; m <= to; ++m) out.push_back(m);
    return out;
  }
  std::mt19937_64 rng(seed);
  const std::uint64_t span = to - from + 1;
  for (std::uint64_t i = 0; i < *samples; ++i) out.push_back(from + rng() % span);
  return out;
}

std::vector<ScanRow> run_scan(BasisKind kind, const std::vector<std::uint64_t>& moduli, const Rational& eps,
                              WindowPolicy policy, unsigned jobs,
                              const std::function<void(const Certificate&)>& on_certificate) {
  std::vector<ScanRow> rows(moduli.size());
  parallel_for(moduli.size(), jobs, [&](std::size_t i) {
    ScanRow& row = rows[i];
    row.m = moduli[i];
    try {
      const Certificate cert = build_basis(kind, row.m, eps, policy);
      row.p = cert.p;
      row.eps = cert.eps_used;
      row.size = cert.set.size();
      row.mean = cert.mean;
      row.bound = cert.bound;
      row.min_rep = cert.min_rep;
      row.max_rep = cert.max_rep;
      if (on_certificate) on_certificate(cert);
    } catch (const std::exception& e) {
      row.error = e.what();
      if (row.error.empty()) row.error = "unknown error";
    }
  });
  return rows;
}

std::string scan_csv_header() {
  return "m,p,eps_num,eps_den,size,mean_num,mean_den,bound_num,bound_den,min_rep,max_rep,error\n";
}

std::string format_scan_row(const ScanRow& row) {
  std::ostringstream out;
  out << row.m << ',';
  if (row.ok()) {
    out << row.p << ',' << row.eps.numerator() << ',' << row.eps.denominator() << ',' << row.size << ','
        << row.mean.numerator() << ',' << row.mean.denominator() << ',' << row.bound.numerator() << ','
        << row.bound.denominator() << ',' << row.min_rep << ',' << row.max_rep << ',';
  } else {
    out << ",,,,,,,,,," << csv_quote(row.error);
  }
  out << '\n';
  return out.str();
}

std::string search_csv_header() { return "m,k_or_r,value_num,value_den,witness,error\n"; }

std::string format_search_row(const SearchRow& row) {
  std::ostringstream out;
  out << row.m << ',';
  if (row.result) {
    const auto& r = *row.result;
    out << r.optimum << ',' << r.value.numerator() << ',' << r.value.denominator() << ',';
    bool first = true;
    for (const Residue x : r.witness.members()) {
      out << (first ? "" : " ") << x;
      first = false;
    }
    out << ',';
  } else {
    out << ",,,," << csv_quote(row.error);
  }
  out << '\n';
  return out.str();
}

SearchCache::SearchCache(std::filesystem::path path, std::vector<std::string>* warnings) : path_(std::move(path)) {
  auto warn = [&](std::string msg) {
    if (warnings) warnings->push_back(std::move(msg));
  };
  std::ifstream in(path_, std::ios::binary);
  if (!in) {
    std::ofstream(path_, std::ios::binary) << kHeader << '\n';
    return;
  }
  std::string line;
  std::uint64_t good_bytes = 0;
  bool header_ok = static_cast<bool>(std::getline(in, line)) && line == kHeader && !in.eof();
  if (!header_ok) {
    warn("search cache " + path_.string() + ": missing or unknown schema header, starting fresh");
    std::ofstream(path_, std::ios::binary | std::ios::trunc) << kHeader << '\n';
    return;
  }
  good_bytes = line.size() + 1;
  while (std::getline(in, line)) {
    // A line without its newline is an interrupted append.
    if (in.eof()) break;
    try {
      SearchResult r = result_from_json(Json::parse(line));
      entries_.insert_or_assign({r.kind, r.m}, std::move(r));
    } catch (const std::exception&) {
      break;
    }
    good_bytes += line.size() + 1;
  }
  in.close();
  const auto total = std::filesystem::file_size(path_);
  if (total != good_bytes) {
    warn("search cache " + path_.string() + ": truncated corrupt tail (" + std::to_string(total - good_bytes) +
         " bytes)");
    std::filesystem::resize_file(path_, good_bytes);
  }
}

std::optional<SearchResult> SearchCache::find(SearchKind kind, std::uint64_t m) const {
  const auto it = entries_.find({kind, m});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void SearchCache::append(const SearchResult& result) {
  std::ofstream out(path_, std::ios::binary | std::ios::app);
  if (!out) throw std::runtime_error("cannot append to " + path_.string());
  out << result_to_json(result).dump() << '\n';
  out.flush();
  entries_.insert_or_assign({result.kind, result.m}, result);
}

std::vector<SearchRow> run_search_table(SearchKind kind, std::uint64_t max_m, bool use_oracle, SearchCache* cache,
                                        const SearchOptions& options, unsigned jobs) {
  std::vector<SearchRow> rows(max_m);
  std::vector<char> fresh(max_m, 0);
  parallel_for(max_m, jobs, [&](std::size_t i) {
    SearchRow& row = rows[i];
    row.m = i + 1;
    if (!use_oracle && cache) {
      if (auto hit = cache->find(kind, row.m)) {
        row.result = std::move(hit);
        return;
      }
    }
    try {
      row.result = use_oracle ? naive_oracle(row.m, kind) : exact_search(kind, row.m, options);
      fresh[i] = 1;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  });
  if (cache && !use_oracle) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (fresh[i]) cache->append(*rows[i].result);
    }
  }
  return rows;
}

}  // namespace zbases
