#pragma once

#include <iosfwd>
#include <string>

#include "iposets/iposet.hpp"

namespace iposets {

/// Reads one `.ipos` v1 document:
///
///   ipos v1
///   points <n>
///   source <i...>
///   target <j...>
///   rel
///   <a> <b>        (zero or more lines; any generating set of the order)
///   end
///
/// Blank lines are allowed between entries; the relation is transitively
/// closed on load. Throws IposetError with ParseError for malformed input
/// and with the usual validation codes for well-formed input that is not a
/// valid iposet.
Iposet read_ipos(std::istream& in);

Iposet read_ipos_file(const std::string& path);

Iposet read_ipos_string(const std::string& text);

/// Writes the canonical representative of p: full transitive relation,
/// pairs sorted lexicographically. read after write is the identity on
/// canonical representatives.
void write_ipos(std::ostream& out, const Iposet& p);

void write_ipos_file(const std::string& path, const Iposet& p);

std::string write_ipos_string(const Iposet& p);

}  // namespace iposets
