#pragma once

// CSV emission for sweep series.
//
//   # key=value            metadata lines, in the order given
//   # param,tau,reflectance,phase
//   <param>,<tau>,<|R|^2>,<Arg R>
//
// Numbers are written in scientific notation with the shortest digit string
// that round-trips to the same double.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ringdelay/format.hpp"
#include "ringdelay/sweep.hpp"

namespace ringdelay {

inline constexpr const char* kCsvHeader = "# param,tau,reflectance,phase";

using Metadata = std::vector<std::pair<std::string, std::string>>;

void write_csv(std::ostream& out, const SweepSeries& series, const Metadata& metadata = {});

struct CsvDocument {
    Metadata metadata;
    std::vector<SweepRow> rows;  // tau_error is not stored and reads back as 0
};

/// Parses the format written by write_csv.  Throws InvalidArgument on
/// malformed input.
CsvDocument read_csv(std::istream& in);

}  // namespace ringdelay
