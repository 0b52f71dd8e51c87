#include <algorithm>
#include <exception>
#include <ostream>
#include <string>
#include <thread>

#include "iposets/census.hpp"
#include "iposets/enumerate.hpp"
#include "iposets/recognition.hpp"

namespace iposets {

namespace {

constexpr int kPosetCap = 8;
constexpr int kPosetCapExtended = 10;
constexpr int kIposetCap = 7;
constexpr int kIposetCapExtended = 8;
constexpr int kClosureCap = 7;

struct Counters {
  std::uint64_t p = 0;
  std::uint64_t sp = 0;
  std::uint64_t io = 0;
  std::uint64_t gp = 0;
  std::uint64_t ip = 0;
  std::uint64_t gpi = 0;
};

struct Needs {
  bool sp = false;
  bool io = false;
  bool gp = false;
  bool ip = false;
  bool gpi = false;
};

void count_shard(int n, int shard, int jobs, bool extended, const Needs& needs,
                 Counters& out) {
  for_each_poset_sharded(
      n, shard, jobs,
      [&](const Iposet& q) {
        ++out.p;
        if (needs.sp && is_sp(q)) {
          ++out.sp;
        }
        if (needs.io && is_interval_order(q)) {
          ++out.io;
        }
        if (needs.gp && is_gp(q)) {
          ++out.gp;
        }
        if (needs.ip || needs.gpi) {
          for_each_interface_assignment(q, [&](const Iposet& iq) {
            ++out.ip;
            if (needs.gpi && is_gp(iq)) {
              ++out.gpi;
            }
          });
        }
      },
      extended);
}

Counters count_size(int n, int jobs, bool extended, const Needs& needs) {
  const int workers = std::min(jobs, std::max(1, n));
  std::vector<Counters> partial(workers);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int shard = 0; shard < workers; ++shard) {
    threads.emplace_back([&, shard] {
      try {
        count_shard(n, shard, workers, extended, needs, partial[shard]);
      } catch (...) {
        errors[shard] = std::current_exception();
      }
    });
  }
  for (std::thread& t : threads) {
    t.join();
  }
  for (const std::exception_ptr& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
  Counters total;
  for (const Counters& c : partial) {
    total.p += c.p;
    total.sp += c.sp;
    total.io += c.io;
    total.gp += c.gp;
    total.ip += c.ip;
    total.gpi += c.gpi;
  }
  return total;
}

void cross_validate_gp(const CensusOptions& options, const CensusTable& table) {
  const bool need_gp = options.classes.count(CensusClass::GP) != 0;
  const bool need_gpi = options.classes.count(CensusClass::GPI) != 0;
  if ((!need_gp && !need_gpi) || options.max_n > kClosureCap) {
    return;
  }
  std::vector<std::uint64_t> gp_by_n(options.max_n + 1, 0);
  std::vector<std::uint64_t> gpi_by_n(options.max_n + 1, 0);
  for (const CanonicalKey& key : generate_gp_closure(options.max_n)) {
    const int kn = static_cast<unsigned char>(key.bytes[0]);
    const int dom = static_cast<unsigned char>(key.bytes[1]);
    const int cod = static_cast<unsigned char>(key.bytes[2]);
    ++gpi_by_n[kn];
    if (dom == 0 && cod == 0) {
      ++gp_by_n[kn];
    }
  }
  for (int n = 0; n <= options.max_n; ++n) {
    if (need_gp && table.counts.at(CensusClass::GP)[n] != gp_by_n[n]) {
      throw_error(Errc::InternalLawViolation,
                  "gp closure and filtered counts disagree at n=" +
                      std::to_string(n));
    }
    if (need_gpi && table.counts.at(CensusClass::GPI)[n] != gpi_by_n[n]) {
      throw_error(Errc::InternalLawViolation,
                  "gp iposet closure and filtered counts disagree at n=" +
                      std::to_string(n));
    }
  }
}

}  // namespace

std::string_view census_class_name(CensusClass c) {
  switch (c) {
    case CensusClass::GP:
      return "GP";
    case CensusClass::GPI:
      return "GPI";
    case CensusClass::IO:
      return "IO";
    case CensusClass::IP:
      return "IP";
    case CensusClass::P:
      return "P";
    case CensusClass::SP:
      return "SP";
  }
  return "";
}

std::optional<CensusClass> census_class_from_name(std::string_view name) {
  for (CensusClass c : {CensusClass::GP, CensusClass::GPI, CensusClass::IO,
                        CensusClass::IP, CensusClass::P, CensusClass::SP}) {
    if (name == census_class_name(c)) {
      return c;
    }
  }
  return std::nullopt;
}

CensusTable run_census(const CensusOptions& options) {
  if (options.max_n < 0) {
    throw_error(Errc::IndexOutOfRange, "negative point count");
  }
  if (options.jobs < 1) {
    throw_error(Errc::IndexOutOfRange, "jobs must be at least 1");
  }
  if (options.classes.empty()) {
    throw_error(Errc::IndexOutOfRange, "no census classes requested");
  }
  const int poset_cap = options.extended ? kPosetCapExtended : kPosetCap;
  const int iposet_cap = options.extended ? kIposetCapExtended : kIposetCap;
  Needs needs;
  for (CensusClass c : options.classes) {
    const bool iposet_class = c == CensusClass::IP || c == CensusClass::GPI;
    const int cap = iposet_class ? iposet_cap : poset_cap;
    if (options.max_n > cap) {
      throw_error(Errc::SizeCapExceeded,
                  std::string(census_class_name(c)) + " census capped at " +
                      std::to_string(cap) + " points");
    }
    switch (c) {
      case CensusClass::SP:
        needs.sp = true;
        break;
      case CensusClass::IO:
        needs.io = true;
        break;
      case CensusClass::GP:
        needs.gp = true;
        break;
      case CensusClass::IP:
        needs.ip = true;
        break;
      case CensusClass::GPI:
        needs.gpi = true;
        break;
      case CensusClass::P:
        break;
    }
  }

  CensusTable table;
  for (CensusClass c : options.classes) {
    table.counts[c].assign(options.max_n + 1, 0);
  }
  for (int n = 0; n <= options.max_n; ++n) {
    const Counters total = count_size(n, options.jobs, options.extended, needs);
    for (CensusClass c : options.classes) {
      std::uint64_t value = 0;
      switch (c) {
        case CensusClass::P:
          value = total.p;
          break;
        case CensusClass::SP:
          value = total.sp;
          break;
        case CensusClass::IO:
          value = total.io;
          break;
        case CensusClass::GP:
          value = total.gp;
          break;
        case CensusClass::IP:
          value = total.ip;
          break;
        case CensusClass::GPI:
          value = total.gpi;
          break;
      }
      table.counts[c][n] = value;
    }
  }
  cross_validate_gp(options, table);
  return table;
}

void write_census_tsv(std::ostream& out, const CensusTable& table) {
  out << "n\tclass\tcount\n";
  int max_n = -1;
  for (const auto& [c, column] : table.counts) {
    max_n = std::max(max_n, static_cast<int>(column.size()) - 1);
  }
  for (int n = 0; n <= max_n; ++n) {
    for (const auto& [c, column] : table.counts) {
      if (n < static_cast<int>(column.size())) {
        out << n << '\t' << census_class_name(c) << '\t' << column[n] << '\n';
      }
    }
  }
}

}  // namespace iposets
