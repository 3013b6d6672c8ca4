#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "auction/graph.hpp"

namespace auction {

class ParseError : public InstanceError {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// One line of the instance format, ids converted to 0-based.
struct Record {
  enum class Kind { Blank, Header, Edge, BidderCapacity, ItemCapacity };
  Kind kind = Kind::Blank;
  std::int64_t a = 0;  // header: n_l; edge: bidder; capacity: vertex
  std::int64_t b = 0;  // header: n_r; edge: item; capacity: value
  std::int64_t c = 0;  // header: m; edge: weight
};

/// Parses a single line. Comment lines ("c ...") and blank lines yield Kind::Blank.
Record parse_record(std::string_view line, std::size_t line_no);

BipartiteInstance read_instance(std::istream& in);
void write_instance(const BipartiteInstance& inst, std::ostream& out);

BipartiteInstance load_instance(const std::filesystem::path& path);
void save_instance(const BipartiteInstance& inst, const std::filesystem::path& path);

}  // namespace auction
