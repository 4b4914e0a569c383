#pragma once

#include <iosfwd>
#include <string>

#include "tjcm/scan.hpp"

namespace tjcm {

/// Header "T,<channel>,..." then one row per grid point, every number with
/// 17 significant digits so that read_csv recovers the doubles exactly.
void write_csv(std::ostream& out, const TimeSeries& series);
void write_csv(const std::string& path, const TimeSeries& series);

/// Inverse of write_csv. Throws UsageError on malformed input.
TimeSeries read_csv(std::istream& in);
TimeSeries read_csv_file(const std::string& path);

}  // namespace tjcm
