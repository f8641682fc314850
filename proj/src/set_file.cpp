#include "zbases/set_file.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "zbases/errors.hpp"

namespace zbases {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::uint64_t parse_u64(std::string_view text) {
  text = trim(text);
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError("set file: invalid integer '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::string format_set_file(const ResidueSet& a) {
  std::ostringstream out;
  out << "m=" << a.modulus() << '\n';
  bool first = true;
  for (const Residue x : a.members()) {
    if (!first) out << ',';
    out << x;
    first = false;
  }
  out << '\n';
  return out.str();
}

ResidueSet parse_set_file(std::string_view text) {
  const auto eol = text.find('\n');
  const std::string_view header = trim(text.substr(0, eol));
  if (header.substr(0, 2) != "m=") throw ParseError("set file: first line must be m=<modulus>");
  const std::uint64_t m = parse_u64(header.substr(2));
  if (m == 0 || m > kMaxModulus) throw ParseError("set file: modulus out of range");

  std::string_view body = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
  const auto eol2 = body.find('\n');
  const std::string_view line = trim(body.substr(0, eol2));
  if (eol2 != std::string_view::npos && !trim(body.substr(eol2 + 1)).empty()) {
    throw ParseError("set file: trailing content after member line");
  }

  std::vector<std::uint64_t> members;
  if (!line.empty()) {
    std::size_t pos = 0;
    while (true) {
      const auto comma = line.find(',', pos);
      const auto value = parse_u64(line.substr(pos, comma == std::string_view::npos ? line.npos : comma - pos));
      if (value >= m) throw ParseError("set file: member " + std::to_string(value) + " not in [0, m)");
      if (!members.empty() && value <= members.back()) throw ParseError("set file: members must be strictly ascending");
      members.push_back(value);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
  }
  return ResidueSet(m, members);
}

ResidueSet read_set_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_set_file(buf.str());
}

void write_set_file(const std::filesystem::path& path, const ResidueSet& a) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << format_set_file(a);
}

}  // namespace zbases
