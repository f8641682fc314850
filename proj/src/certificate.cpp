#include "zbases/certificate.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "zbases/errors.hpp"

namespace zbases {

namespace {

using Json = nlohmann::ordered_json;

Json rational_json(const Rational& q) { return Json{{"num", q.numerator()}, {"den", q.denominator()}}; }

Rational rational_from(const Json& j) {
  const auto num = j.at("num").get<std::int64_t>();
  const auto den = j.at("den").get<std::int64_t>();
  if (den <= 0) throw ParseError("certificate: rational with non-positive denominator");
  return Rational(num, den);
}

}  // namespace

std::string certificate_to_json(const Certificate& cert) {
  Json j;
  j["m"] = cert.m;
  j["kind"] = std::string(to_string(cert.kind));
  Json set = Json::array();
  for (const Residue x : cert.set.members()) set.push_back(x);
  j["set"] = std::move(set);
  j["size"] = cert.set.size();
  j["p"] = cert.p;
  j["eps_used"] = rational_json(cert.eps_used);
  j["construction"] = cert.construction;
  j["min_rep"] = cert.min_rep;
  j["max_rep"] = cert.max_rep;
  j["mean"] = rational_json(cert.mean);
  j["bound"] = rational_json(cert.bound);
  return j.dump() + "\n";
}

Certificate certificate_from_json(std::string_view text) {
  try {
    const Json j = Json::parse(text);
    Certificate cert;
    cert.m = j.at("m").get<std::uint64_t>();
    if (cert.m == 0 || cert.m > kMaxModulus) throw ParseError("certificate: modulus out of range");
    cert.kind = parse_basis_kind(j.at("kind").get<std::string>());
    const auto members = j.at("set").get<std::vector<std::uint64_t>>();
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (members[i] >= cert.m || (i > 0 && members[i] <= members[i - 1])) {
        throw ParseError("certificate: set must be strictly ascending residues in [0, m)");
      }
    }
    cert.set = ResidueSet(cert.m, members);
    if (j.at("size").get<std::size_t>() != cert.set.size()) throw ParseError("certificate: size does not match set");
    cert.p = j.at("p").get<std::uint64_t>();
    cert.eps_used = rational_from(j.at("eps_used"));
    cert.construction = j.at("construction").get<std::string>();
    cert.min_rep = j.at("min_rep").get<std::uint32_t>();
    cert.max_rep = j.at("max_rep").get<std::uint32_t>();
    cert.mean = rational_from(j.at("mean"));
    cert.bound = rational_from(j.at("bound"));
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("certificate: ") + e.what());
  }
}

void write_certificate(const std::filesystem::path& path, const Certificate& cert) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << certificate_to_json(cert);
}

Certificate read_certificate(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return certificate_from_json(buf.str());
}

}  // namespace zbases
