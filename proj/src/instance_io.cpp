#include "auction/instance_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>
#include <vector>

namespace auction {

ParseError::ParseError(std::size_t line, const std::string& what)
    : InstanceError("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '\r') ++end;
    out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

std::int64_t to_int(std::string_view tok, std::size_t line_no) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(line_no, "expected integer, got '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace

Record parse_record(std::string_view line, std::size_t line_no) {
  auto tok = split(line);
  Record r;
  if (tok.empty() || tok[0] == "c") return r;
  if (tok[0] == "p") {
    if (tok.size() != 5 || tok[1] != "bm") throw ParseError(line_no, "malformed header");
    r.kind = Record::Kind::Header;
    r.a = to_int(tok[2], line_no);
    r.b = to_int(tok[3], line_no);
    r.c = to_int(tok[4], line_no);
    if (r.a < 0 || r.b < 0 || r.c < 0) throw ParseError(line_no, "negative count in header");
    return r;
  }
  if (tok[0] == "e") {
    if (tok.size() != 4) throw ParseError(line_no, "malformed edge line");
    r.kind = Record::Kind::Edge;
    r.a = to_int(tok[1], line_no) - 1;
    r.b = to_int(tok[2], line_no) - 1;
    r.c = to_int(tok[3], line_no);
    if (r.c <= 0) throw ParseError(line_no, "edge weight must be positive");
    return r;
  }
  if (tok[0] == "b") {
    if (tok.size() != 4 || (tok[1] != "l" && tok[1] != "r")) {
      throw ParseError(line_no, "malformed capacity line");
    }
    r.kind = tok[1] == "l" ? Record::Kind::BidderCapacity : Record::Kind::ItemCapacity;
    r.a = to_int(tok[2], line_no) - 1;
    r.b = to_int(tok[3], line_no);
    return r;
  }
  throw ParseError(line_no, "unknown line type '" + std::string(tok[0]) + "'");
}

BipartiteInstance read_instance(std::istream& in) {
  BipartiteInstance inst;
  bool have_header = false;
  std::int64_t declared_m = 0;
  std::unordered_set<std::uint64_t> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    Record r = parse_record(line, line_no);
    switch (r.kind) {
      case Record::Kind::Blank:
        break;
      case Record::Kind::Header:
        if (have_header) throw ParseError(line_no, "duplicate header");
        have_header = true;
        inst.n_l = static_cast<std::int32_t>(r.a);
        inst.n_r = static_cast<std::int32_t>(r.b);
        declared_m = r.c;
        inst.edges.reserve(static_cast<std::size_t>(declared_m));
        break;
      case Record::Kind::Edge: {
        if (!have_header) throw ParseError(line_no, "edge before header");
        if (r.a < 0 || r.a >= inst.n_l) throw ParseError(line_no, "bidder id out of range");
        if (r.b < 0 || r.b >= inst.n_r) throw ParseError(line_no, "item id out of range");
        auto key = (static_cast<std::uint64_t>(r.a) << 32) | static_cast<std::uint32_t>(r.b);
        if (!seen.insert(key).second) throw ParseError(line_no, "duplicate edge");
        inst.edges.push_back({static_cast<BidderId>(r.a), static_cast<ItemId>(r.b), r.c});
        break;
      }
      case Record::Kind::BidderCapacity:
      case Record::Kind::ItemCapacity: {
        if (!have_header) throw ParseError(line_no, "capacity before header");
        const bool bidder = r.kind == Record::Kind::BidderCapacity;
        const std::int32_t n = bidder ? inst.n_l : inst.n_r;
        const std::int32_t other = bidder ? inst.n_r : inst.n_l;
        if (r.a < 0 || r.a >= n) throw ParseError(line_no, "capacity vertex out of range");
        if (r.b < 1 || r.b > std::max(other, 1)) throw ParseError(line_no, "capacity out of range");
        auto& caps = bidder ? inst.b_l : inst.b_r;
        if (caps.empty()) caps.assign(static_cast<std::size_t>(n), 1);
        caps[static_cast<std::size_t>(r.a)] = static_cast<std::int32_t>(r.b);
        break;
      }
    }
  }
  if (!have_header) throw ParseError(line_no, "missing header");
  if (static_cast<std::int64_t>(inst.edges.size()) != declared_m) {
    throw ParseError(line_no, "header declares " + std::to_string(declared_m) + " edges, found " +
                                  std::to_string(inst.edges.size()));
  }
  return inst;
}

void write_instance(const BipartiteInstance& inst, std::ostream& out) {
  out << "p bm " << inst.n_l << ' ' << inst.n_r << ' ' << inst.edges.size() << '\n';
  for (std::size_t i = 0; i < inst.b_l.size(); ++i) out << "b l " << i + 1 << ' ' << inst.b_l[i] << '\n';
  for (std::size_t j = 0; j < inst.b_r.size(); ++j) out << "b r " << j + 1 << ' ' << inst.b_r[j] << '\n';
  for (const auto& e : inst.edges) {
    out << "e " << e.bidder + 1 << ' ' << e.item + 1 << ' ' << e.weight << '\n';
  }
}

BipartiteInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_instance(in);
}

void save_instance(const BipartiteInstance& inst, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_instance(inst, out);
}

}  // namespace auction
