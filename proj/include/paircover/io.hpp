#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "paircover/family.hpp"

namespace paircover {

/// Parse failure with the 1-based line it occurred on (0 = file level).
class format_error : public error {
public:
  format_error(int line, const std::string& message)
      : error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

/// Canonical design-file text:
///
///   n k b                 header: ground size, block size, block count
///   1 2 3 4 5 6 # base 1  one line per block, members ascending, single
///   ...                   spaces; the trailing comment carries the
///                         construction tag when structure is present
///
/// Full-line '#' comments and blank lines are ignored on input. Writing is
/// canonical: read . write is the identity, and write . read is the identity
/// on canonical files.
std::string write_design(const design_family& fam);

/// Parses a design file. Malformed input never yields a family: unsorted or
/// duplicate members, out-of-range elements, count mismatches and bad
/// annotations all raise format_error with the offending line.
design_family read_design(const std::string& text);

design_family read_design_file(const std::filesystem::path& path);
void write_design_file(const design_family& fam, const std::filesystem::path& path);

}  // namespace paircover
