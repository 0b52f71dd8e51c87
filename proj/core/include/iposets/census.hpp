#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "iposets/iposet.hpp"

namespace iposets {

/// The six counted classes: all posets, series-parallel posets, interval
/// orders, gluing-parallel posets, all iposets, gluing-parallel iposets.
enum class CensusClass { GP, GPI, IO, IP, P, SP };

std::string_view census_class_name(CensusClass c);
std::optional<CensusClass> census_class_from_name(std::string_view name);

struct CensusOptions {
  int max_n = 6;
  std::set<CensusClass> classes = {CensusClass::GP, CensusClass::GPI,
                                   CensusClass::IO, CensusClass::IP,
                                   CensusClass::P,  CensusClass::SP};
  int jobs = 1;
  bool extended = false;
};

/// Exact per-size counts for each requested class, indexed 0..max_n.
struct CensusTable {
  std::map<CensusClass, std::vector<std::uint64_t>> counts;
};

/// Counts isomorphism classes per size for the requested classes. Poset
/// classes (P, SP, IO, GP) are capped at 8 points, iposet classes (IP, GPI)
/// at 7; the extended set raises the caps to 10 and 8. Gluing-parallel
/// counts within the closure cap are computed both by filtering the
/// enumeration and by closure generation, with equality asserted. The result
/// is identical for every jobs value.
CensusTable run_census(const CensusOptions& options);

/// Tab-separated rows `n  class  count` under a `n  class  count` header,
/// sorted by n, then by class name.
void write_census_tsv(std::ostream& out, const CensusTable& table);

}  // namespace iposets
